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

#include "tripletomo/state.hpp"

namespace tripletomo {

// Residuals of the coefficient identities implied by rho^2 = rho, each written as
// (right-hand side) - (left-hand side) so that a pure state gives zeros.

/// Sum of the 63 non-identity squares minus 7.
double sum_equation_residual(const CorrelationTensor& a);

/// sum_j a_ij0 a_0j0 + sum_k a_i0k a_00k + sum_jk a_ijk a_0jk - 3 a_i00, and the same identity
/// with the tensor slots cyclically relabelled for a_0j0 and a_00k. Order: a_100, a_200,
/// a_300, a_010, ..., a_003.
std::array<double, 9> bloch_equation_residuals(const CorrelationTensor& a);

/// The two-body identities: 9 for a_ij0, then 9 for a_i0k, then 9 for a_0jk, row-major in
/// the two nonzero indices (the PairwiseData order).
std::array<double, 27> pair_equation_residuals(const CorrelationTensor& a);

/// The 27 three-body identities evaluated on a full tensor, ordered by 9(i-1)+3(j-1)+(k-1).
std::array<double, 27> three_body_residuals(const CorrelationTensor& a);

/// All 64 residuals, each stored at the linear index of the coefficient its identity fixes
/// (a_000 holds the sum equation).
std::array<double, 64> residuals_by_coefficient(const CorrelationTensor& a);

enum class Verdict { kConsistentPure, kInconsistentMixed };

struct ResidualReport {
  double sum_residual = 0.0;
  std::array<double, 9> bloch_residuals{};
  std::array<double, 27> pair_residuals{};
  std::array<double, 27> three_body_residuals{};
  double max_abs = 0.0;
  double tolerance_used = 0.0;
  Verdict verdict = Verdict::kConsistentPure;

  bool pure() const { return verdict == Verdict::kConsistentPure; }
};

inline constexpr double kDefaultExactTolerance = 1e-8;

/// 1e-8 for exact data, 50/sqrt(shots) for sampled data.
double default_tolerance(std::optional<std::int64_t> shots);

/// consistent-pure iff every residual is within tolerance. Throws std::domain_error for
/// tolerance <= 0.
ResidualReport classify(const CorrelationTensor& a, double tolerance);

/// One line "EQ<group>:<gmn> <value>" per residual, then max_abs=, tolerance=, verdict=.
void write_residual_report(std::ostream& out, const ResidualReport& report);

}  // namespace tripletomo
