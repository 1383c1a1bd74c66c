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
#include <complex>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace tripletomo {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;

/// Label of a single-qubit Pauli operator. 0 is the identity, 1..3 are X, Y, Z.
class PauliIndex {
 public:
  constexpr PauliIndex() = default;
  constexpr explicit PauliIndex(int value) : value_(static_cast<std::uint8_t>(value)) {
    if (value < 0 || value > 3) {
      throw std::out_of_range("PauliIndex must be in {0,1,2,3}");
    }
  }

  constexpr int value() const { return value_; }
  constexpr bool is_identity() const { return value_ == 0; }
  /// True for X and Y, the two operators that flip the computational basis bit.
  constexpr bool flips() const { return value_ == 1 || value_ == 2; }

  friend constexpr bool operator==(PauliIndex, PauliIndex) = default;

 private:
  std::uint8_t value_ = 0;
};

/// Label (gamma, mu, nu) of the three-qubit operator sigma_gamma (x) sigma_mu (x) sigma_nu,
/// in qubit order A, B, C.
struct TripleIndex {
  PauliIndex a;
  PauliIndex b;
  PauliIndex c;

  constexpr TripleIndex() = default;
  constexpr TripleIndex(PauliIndex a_, PauliIndex b_, PauliIndex c_) : a(a_), b(b_), c(c_) {}
  constexpr TripleIndex(int g, int m, int n) : a(g), b(m), c(n) {}

  /// Canonical layout 16*gamma + 4*mu + nu.
  constexpr int linear() const { return 16 * a.value() + 4 * b.value() + c.value(); }

  static constexpr TripleIndex from_linear(int index) {
    if (index < 0 || index >= 64) {
      throw std::out_of_range("linear triple index must be in [0, 64)");
    }
    return TripleIndex(index / 16, (index / 4) % 4, index % 4);
  }

  constexpr PauliIndex operator[](int slot) const {
    return slot == 0 ? a : (slot == 1 ? b : c);
  }

  /// Number of slots holding a non-identity Pauli.
  constexpr int weight() const {
    return static_cast<int>(!a.is_identity()) + static_cast<int>(!b.is_identity()) +
           static_cast<int>(!c.is_identity());
  }

  friend constexpr bool operator==(const TripleIndex&, const TripleIndex&) = default;
};

inline constexpr int kTensorSize = 64;

Matrix2c pauli_matrix(PauliIndex mu);

/// Kronecker product sigma_a (x) sigma_b (x) sigma_c. Qubit A is the most significant
/// bit of the computational-basis index.
Matrix8c basis_operator(TripleIndex t);

/// Totally antisymmetric symbol on {1,2,3}. Throws std::domain_error outside that range.
int levi_civita(int i, int j, int k);

struct PauliProduct {
  Complex coeff;
  PauliIndex result;
};

/// sigma_mu * sigma_nu = coeff * sigma_result, coeff in {1, -1, i, -i}.
PauliProduct pauli_product(PauliIndex mu, PauliIndex nu);

struct SparseEntry {
  int col;
  Complex value;
};

/// The single nonzero entry of row `row` of S_t.
SparseEntry basis_row(TripleIndex t, int row);

/// Tr(rho * S_t) evaluated on the single nonzero per row of S_t.
///
/// Only entries rho(r ^ mask, r) are read, where mask marks the qubits flipped by S_t. An
/// exact zero result is returned as +0.0.
Complex basis_trace(const Matrix8c& rho, TripleIndex t);

}  // namespace tripletomo
