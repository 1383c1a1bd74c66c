// Copyright 2026 The tripletomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tripletomo/consistency.hpp"
#include "tripletomo/measurement.hpp"
#include "tripletomo/reconstruction.hpp"
#include "tripletomo/state.hpp"

namespace tripletomo {

/// Process exit statuses of a tomography run.
enum class PipelineStatus : int {
  kUniquePure = 0,
  kUsageError = 1,
  kRankDeficient = 2,
  kInconsistentMixed = 3,
};

struct PipelineOptions {
  /// Empty means exact mean values.
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
  /// Defaults follow default_sv_threshold / default_tolerance for the shot setting.
  std::optional<double> sv_threshold;
  std::optional<double> tolerance;

  double effective_sv_threshold() const;
  double effective_tolerance() const;
};

struct PipelineOutcome {
  PairwiseData data;
  ReconstructionResult result;
  /// Full tensor; for rank-deficient systems this is the minimum-norm representative.
  CorrelationTensor tensor;
  ResidualReport residuals;
  PositivityReport positivity;
  PipelineStatus status = PipelineStatus::kUniquePure;
};

/// Measure, build, solve, assemble and classify. Rank deficiency takes precedence over the
/// purity verdict.
PipelineOutcome run_pipeline(const DensityMatrix& rho, const PipelineOptions& options = {});

/// Reconstruction half of the pipeline, starting from already measured data.
PipelineOutcome reconstruct(const PairwiseData& data, const PipelineOptions& options = {});

/// Independent sub-seed for item `index` of a run seeded with `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct BatchSummary {
  std::int64_t count = 0;
  std::int64_t unique = 0;
  std::int64_t degenerate = 0;
  std::int64_t consistent_pure = 0;
  double max_tensor_error = 0.0;
  double min_fidelity = 1.0;
  double min_smallest_sv = 0.0;
  double min_relative_sv = 0.0;
  double max_residual = 0.0;
};

/// Exact pipeline over `count` Haar-random states seeded from derive_seed(master_seed, i).
/// Work is spread over `workers` threads; the reduction is order independent, so the summary
/// does not depend on the worker count. Throws std::invalid_argument for count < 1.
BatchSummary run_batch(std::int64_t count, std::uint64_t master_seed, unsigned workers = 1,
                       double sv_threshold = kDefaultSvThreshold);

struct GhzScanRow {
  double theta = 0.0;
  double phi = 0.0;
  double sv_min = 0.0;
  double sv_max = 0.0;
  int null_space_dim = 0;
  std::uint64_t data_hash = 0;
  bool theta_in_range = true;
};

/// Exact pairwise data and reconstruction spectrum for every (theta, phi) pair.
std::vector<GhzScanRow> ghz_scan(const std::vector<double>& thetas, const std::vector<double>& phis,
                                 double sv_threshold = kDefaultSvThreshold);

}  // namespace tripletomo
