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
#include <functional>

#include "tripletomo/pauli.hpp"
#include "tripletomo/state.hpp"

// Brute-force ground truth. Depends only on pauli and state types plus dense matrix
// arithmetic; it never links against the reconstruction or consistency code, so agreement
// with them is an independent check.
namespace tripletomo::oracle {

struct OracleReport {
  double idempotency_frobenius = 0.0;
  double equation_max_residual = 0.0;
  double tensor_max_error = 0.0;
  double fidelity = 0.0;
};

/// ||rho*rho - rho||_F by dense multiplication.
double idempotency_residual(const DensityMatrix& rho);

/// a_t = Tr(rho * S_t) with S_t built densely by Kronecker products.
std::array<double, kTensorSize> dense_tensor(const DensityMatrix& rho);

/// Coefficients of (sum_a a_a S_a)(sum_b a_b S_b) in the S basis, expanded term by term with
/// the single-qubit Pauli product table.
std::array<Complex, kTensorSize> symbolic_square(const std::array<double, kTensorSize>& a);

/// The 64 coefficient identities of rho^2 = rho, normalized as in the implemented equation
/// set: Q_000 = sum_a a_a^2 - 8, and Q_g = (sq_g - 8 a_g) / 2 otherwise, where sq is
/// symbolic_square. These are polynomial in a, so they may be evaluated off the pure states.
std::array<double, kTensorSize> symbolic_identity_residuals(const std::array<double, kTensorSize>& a);

/// Implemented equation set under test: 64 residuals, each at the linear index of the
/// coefficient its identity fixes.
using EquationSet = std::function<std::array<double, kTensorSize>(const CorrelationTensor&)>;

/// Max |implemented - symbolic| over all 64 identities. Both sides are evaluated on the
/// tensor of rho and on its depolarized version (non-identity entries halved), where the
/// residuals no longer vanish; agreement there pins every sign and factor. Throws
/// std::invalid_argument unless rho is pure (idempotency residual < 1e-10).
double validate_equation_set(const DensityMatrix& rho, const EquationSet& implemented);

/// <psi|rho|psi>, clipped to [0, 1].
double fidelity_with_pure(const PureState& target, const DensityMatrix& rho);

/// Max |a_t - Tr(rho_source S_t)|.
double tensor_max_error(const CorrelationTensor& reconstructed, const DensityMatrix& source);

}  // namespace tripletomo::oracle
