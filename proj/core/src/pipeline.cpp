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

#include "tripletomo/pipeline.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "tripletomo/oracle.hpp"

namespace tripletomo {

double PipelineOptions::effective_sv_threshold() const {
  return sv_threshold.value_or(default_sv_threshold(shots));
}

double PipelineOptions::effective_tolerance() const {
  return tolerance.value_or(default_tolerance(shots));
}

PipelineOutcome reconstruct(const PairwiseData& data, const PipelineOptions& options) {
  const ReconstructionResult result = solve(build_system(data), options.effective_sv_threshold());
  const CorrelationTensor tensor = assemble_full_tensor(data, result, NonUniquePolicy::kAccept);
  const ResidualReport residuals = classify(tensor, options.effective_tolerance());

  PipelineStatus status = PipelineStatus::kUniquePure;
  if (!result.unique) {
    status = PipelineStatus::kRankDeficient;
  } else if (!residuals.pure()) {
    status = PipelineStatus::kInconsistentMixed;
  }
  return PipelineOutcome{data, result, tensor, residuals,
                         positivity_report(density_from_tensor(tensor)), status};
}

PipelineOutcome run_pipeline(const DensityMatrix& rho, const PipelineOptions& options) {
  const PairwiseData data = options.shots ? sampled_pairwise(rho, *options.shots, options.seed)
                                          : exact_pairwise(rho);
  return reconstruct(data, options);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x7470u};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

namespace {

struct BatchItem {
  bool unique = false;
  bool pure = false;
  double tensor_error = 0.0;
  double fidelity = 0.0;
  double sv_min = 0.0;
  double sv_relative = 0.0;
  double residual = 0.0;
};

BatchItem run_batch_item(std::uint64_t seed, double sv_threshold) {
  const PureState psi = random_pure_state(seed);
  const DensityMatrix rho = density_from_pure(psi);
  PipelineOptions options;
  options.sv_threshold = sv_threshold;
  const PipelineOutcome out = run_pipeline(rho, options);

  BatchItem item;
  item.unique = out.result.unique;
  item.pure = out.residuals.pure();
  item.tensor_error = oracle::tensor_max_error(out.tensor, rho);
  item.fidelity = oracle::fidelity_with_pure(psi, density_from_tensor(out.tensor));
  item.sv_min = out.result.sv_min();
  item.sv_relative = out.result.sv_min() / out.result.sv_max();
  item.residual = out.residuals.max_abs;
  return item;
}

}  // namespace

BatchSummary run_batch(std::int64_t count, std::uint64_t master_seed, unsigned workers,
                       double sv_threshold) {
  if (count < 1) throw std::invalid_argument("batch count must be at least 1");
  workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::int64_t>(count, 64)));

  std::vector<BatchItem> items(static_cast<std::size_t>(count));
  auto work = [&](unsigned worker) {
    for (std::int64_t i = worker; i < count; i += workers) {
      items[static_cast<std::size_t>(i)] =
          run_batch_item(derive_seed(master_seed, static_cast<std::uint64_t>(i)), sv_threshold);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  BatchSummary summary;
  summary.count = count;
  summary.min_smallest_sv = std::numeric_limits<double>::infinity();
  summary.min_relative_sv = std::numeric_limits<double>::infinity();
  for (const BatchItem& item : items) {
    if (item.unique) {
      ++summary.unique;
    } else {
      ++summary.degenerate;
    }
    if (item.pure) ++summary.consistent_pure;
    summary.max_tensor_error = std::max(summary.max_tensor_error, item.tensor_error);
    summary.min_fidelity = std::min(summary.min_fidelity, item.fidelity);
    summary.min_smallest_sv = std::min(summary.min_smallest_sv, item.sv_min);
    summary.min_relative_sv = std::min(summary.min_relative_sv, item.sv_relative);
    summary.max_residual = std::max(summary.max_residual, item.residual);
  }
  return summary;
}

std::vector<GhzScanRow> ghz_scan(const std::vector<double>& thetas, const std::vector<double>& phis,
                                 double sv_threshold) {
  std::vector<GhzScanRow> rows;
  rows.reserve(thetas.size() * phis.size());
  for (double theta : thetas) {
    for (double phi : phis) {
      const PairwiseData data = exact_pairwise(density_from_pure(ghz_state(theta, phi)));
      const ReconstructionResult result = solve(build_system(data), sv_threshold);
      GhzScanRow row;
      row.theta = theta;
      row.phi = phi;
      row.sv_min = result.sv_min();
      row.sv_max = result.sv_max();
      row.null_space_dim = result.null_space_dim;
      row.data_hash = data_hash(data);
      row.theta_in_range = !ghz_theta_warning(theta).has_value();
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace tripletomo
