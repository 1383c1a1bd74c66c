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

// Test-only helpers: qubit relabelling and dense reference computations that do not go
// through the sparse code paths of the library.

#include <array>
#include <cmath>
#include <numbers>

#include "tripletomo/measurement.hpp"
#include "tripletomo/pauli.hpp"
#include "tripletomo/state.hpp"

namespace tripletomo::testing {

inline constexpr double kPi = std::numbers::pi;

/// Qubit perm[s] of the input becomes qubit s of the output.
using QubitPermutation = std::array<int, 3>;

inline constexpr std::array<QubitPermutation, 6> kAllPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0},
}};

inline int bit_of(int basis, int slot) { return (basis >> (2 - slot)) & 1; }

inline PureState permute_state(const PureState& psi, const QubitPermutation& perm) {
  std::array<double, 8> mags{};
  std::array<double, 8> phases{};
  for (int old_basis = 0; old_basis < 8; ++old_basis) {
    int new_basis = 0;
    for (int s = 0; s < 3; ++s) new_basis |= bit_of(old_basis, perm[s]) << (2 - s);
    mags[new_basis] = psi.magnitude(old_basis);
    phases[new_basis] = psi.phase(old_basis);
  }
  return PureState::from_polar(mags, phases);
}

inline TripleIndex permute_index(TripleIndex t, const QubitPermutation& perm) {
  // Output slot s carries the label of input slot perm[s].
  return TripleIndex(t[perm[0]], t[perm[1]], t[perm[2]]);
}

inline CorrelationTensor permute_tensor(const CorrelationTensor& a, const QubitPermutation& perm) {
  std::array<double, kTensorSize> out{};
  for (int t = 0; t < kTensorSize; ++t) {
    out[permute_index(TripleIndex::from_linear(t), perm).linear()] = a.values()[t];
  }
  return CorrelationTensor::from_values(out);
}

inline PairwiseData permute_data(const PairwiseData& d, const QubitPermutation& perm) {
  std::array<double, PairwiseData::kSize> out{};
  for (int p = 0; p < PairwiseData::kSize; ++p) {
    out[PairwiseData::position_of(permute_index(PairwiseData::index_at(p), perm))] = d.values()[p];
  }
  return PairwiseData::from_values(out);
}

/// Dense Kronecker product of two 2x2 Paulis.
inline Matrix4c pauli_pair(int p, int q) {
  const Matrix2c a = pauli_matrix(PauliIndex(p));
  const Matrix2c b = pauli_matrix(PauliIndex(q));
  Matrix4c out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) out(r, c) = a(r >> 1, c >> 1) * b(r & 1, c & 1);
  }
  return out;
}

/// Pauli expansion of a 4x4 two-qubit operator: Tr(m (sigma_p x sigma_q)).
inline std::array<double, 16> pair_expansion(const Matrix4c& m) {
  std::array<double, 16> out{};
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) out[4 * p + q] = (m * pauli_pair(p, q)).trace().real();
  }
  return out;
}

inline DensityMatrix ghz_mixture() {
  return DensityMatrix::mixture(0.5, density_from_pure(basis_state(0)),
                                density_from_pure(basis_state(7)));
}

inline double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

}  // namespace tripletomo::testing
