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

#include "tripletomo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tripletomo::oracle {

double idempotency_residual(const DensityMatrix& rho) {
  const Matrix8c& m = rho.matrix();
  return (m * m - m).norm();
}

std::array<double, kTensorSize> dense_tensor(const DensityMatrix& rho) {
  std::array<double, kTensorSize> out{};
  for (int t = 0; t < kTensorSize; ++t) {
    out[t] = (rho.matrix() * basis_operator(TripleIndex::from_linear(t))).trace().real();
  }
  return out;
}

std::array<Complex, kTensorSize> symbolic_square(const std::array<double, kTensorSize>& a) {
  std::array<Complex, kTensorSize> out{};
  for (int x = 0; x < kTensorSize; ++x) {
    if (a[x] == 0.0) continue;
    const TripleIndex lhs = TripleIndex::from_linear(x);
    for (int y = 0; y < kTensorSize; ++y) {
      if (a[y] == 0.0) continue;
      const TripleIndex rhs = TripleIndex::from_linear(y);
      Complex coeff = 1.0;
      std::array<PauliIndex, 3> result;
      for (int slot = 0; slot < 3; ++slot) {
        const PauliProduct p = pauli_product(lhs[slot], rhs[slot]);
        coeff *= p.coeff;
        result[slot] = p.result;
      }
      out[TripleIndex(result[0], result[1], result[2]).linear()] += coeff * a[x] * a[y];
    }
  }
  return out;
}

std::array<double, kTensorSize> symbolic_identity_residuals(
    const std::array<double, kTensorSize>& a) {
  const auto sq = symbolic_square(a);
  std::array<double, kTensorSize> out{};
  out[0] = sq[0].real() - 8.0;
  for (int t = 1; t < kTensorSize; ++t) out[t] = (sq[t].real() - 8.0 * a[t]) / 2.0;
  return out;
}

double validate_equation_set(const DensityMatrix& rho, const EquationSet& implemented) {
  if (idempotency_residual(rho) >= 1e-10) {
    throw std::invalid_argument("equation-set validation requires a pure density matrix");
  }
  const auto pure = dense_tensor(rho);
  auto depolarized = pure;
  for (int t = 1; t < kTensorSize; ++t) depolarized[t] *= 0.5;

  double worst = 0.0;
  for (const auto& point : {pure, depolarized}) {
    const auto expected = symbolic_identity_residuals(point);
    const auto got = implemented(CorrelationTensor::from_values(point));
    for (int t = 0; t < kTensorSize; ++t) worst = std::max(worst, std::abs(got[t] - expected[t]));
  }
  return worst;
}

double fidelity_with_pure(const PureState& target, const DensityMatrix& rho) {
  Eigen::Matrix<Complex, 8, 1> psi;
  for (int r = 0; r < 8; ++r) psi(r) = target.amplitude(r);
  const Complex f = (psi.adjoint() * rho.matrix() * psi)(0, 0);
  return std::clamp(f.real(), 0.0, 1.0);
}

double tensor_max_error(const CorrelationTensor& reconstructed, const DensityMatrix& source) {
  const auto truth = dense_tensor(source);
  double worst = 0.0;
  for (int t = 0; t < kTensorSize; ++t) {
    worst = std::max(worst, std::abs(reconstructed.values()[t] - truth[t]));
  }
  return worst;
}

}  // namespace tripletomo::oracle
