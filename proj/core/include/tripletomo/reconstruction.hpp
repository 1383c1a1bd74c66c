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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

#include "tripletomo/measurement.hpp"
#include "tripletomo/state.hpp"

namespace tripletomo {

inline constexpr int kUnknowns = 27;

using Matrix27 = Eigen::Matrix<double, kUnknowns, kUnknowns>;
using Vector27 = Eigen::Matrix<double, kUnknowns, 1>;

/// Row/column index of the three-body coefficient a_{ijk}, i, j, k in 1..3.
constexpr int unknown_index(int i, int j, int k) { return 9 * (i - 1) + 3 * (j - 1) + (k - 1); }

/// M x = c, where x holds the 27 three-body coefficients a_{ijk}.
struct LinearSystem {
  Matrix27 matrix;
  Vector27 rhs;
};

struct ReconstructionResult {
  std::array<double, kUnknowns> a_ijk{};
  /// Descending.
  std::array<double, kUnknowns> singular_values{};
  int rank = 0;
  bool unique = false;
  int null_space_dim = 0;
  double residual_norm = 0.0;
  /// Relative threshold that was applied.
  double sv_threshold = 0.0;

  double sv_max() const { return singular_values.front(); }
  double sv_min() const { return singular_values.back(); }
  double coefficient(int i, int j, int k) const { return a_ijk[unknown_index(i, j, k)]; }
};

class DegenerateSystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUniqueReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultSvThreshold = 1e-8;
inline constexpr double kSingularValueFloor = 1e-300;

/// 1e-8 for exact data, max(1e-8, 10/sqrt(shots)) for sampled data.
double default_sv_threshold(std::optional<std::int64_t> shots);

/// Assembles the 27 equations for a_{ijk} that follow from rho^2 = rho at three-body order:
///
///   3 a_ijk + eps_ilt eps_jmu a_tu0 a_lmk + eps_ilt eps_knv a_t0v a_ljn
///           + eps_jmu eps_knv a_0uv a_imn  =  a_i00 a_0jk + a_0j0 a_i0k + a_00k a_ij0
///
/// with every repeated index summed over 1..3. The matrix depends linearly on the two-body
/// data and the right-hand side quadratically on the 36 measured values.
LinearSystem build_system(const PairwiseData& data);

/// Same assembly from a raw value array in PairwiseData order, without range checks.
LinearSystem build_system(const std::array<double, PairwiseData::kSize>& values);

/// SVD-based solve. Rank counts singular values above sv_threshold * sigma_max. Full rank
/// gives the unique solution; otherwise the minimum-norm least-squares solution is returned
/// with unique = false. Throws std::domain_error for sv_threshold <= 0 and
/// DegenerateSystemError when sigma_max < kSingularValueFloor.
ReconstructionResult solve(const LinearSystem& system, double sv_threshold = kDefaultSvThreshold);

enum class NonUniquePolicy { kRefuse, kAccept };

/// a_000 = 1, the 36 measured entries, and the 27 solved ones. Throws
/// NonUniqueReconstructionError for a non-unique result under kRefuse.
CorrelationTensor assemble_full_tensor(const PairwiseData& data, const ReconstructionResult& result,
                                       NonUniquePolicy policy = NonUniquePolicy::kRefuse);

/// First-order standard errors of the solved coefficients, propagating the data's standard
/// errors through both the matrix and the right-hand side. Zeros for exact data.
std::array<double, kUnknowns> propagated_standard_errors(const PairwiseData& data,
                                                         const ReconstructionResult& result);

/// Lines "i j k value", then rank=, sv_min=, sv_max=, unique=, residual=.
void write_reconstruction_report(std::ostream& out, const ReconstructionResult& result);

}  // namespace tripletomo
