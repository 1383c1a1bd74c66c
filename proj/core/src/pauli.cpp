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

#include "tripletomo/pauli.hpp"

namespace tripletomo {

namespace {

constexpr Complex kI{0.0, 1.0};

// Entry (row, col) of sigma_p; nonzero only when col == row ^ flips(p).
Complex pauli_entry(PauliIndex p, int row) {
  switch (p.value()) {
    case 0:
      return 1.0;
    case 1:
      return 1.0;
    case 2:
      return row == 0 ? -kI : kI;
    default:
      return row == 0 ? 1.0 : -1.0;
  }
}

}  // namespace

Matrix2c pauli_matrix(PauliIndex mu) {
  Matrix2c m = Matrix2c::Zero();
  switch (mu.value()) {
    case 0:
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
  }
  return m;
}

Matrix8c basis_operator(TripleIndex t) {
  const Matrix2c sa = pauli_matrix(t.a);
  const Matrix2c sb = pauli_matrix(t.b);
  const Matrix2c sc = pauli_matrix(t.c);
  Matrix8c out;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      out(r, c) = sa(r >> 2, c >> 2) * sb((r >> 1) & 1, (c >> 1) & 1) * sc(r & 1, c & 1);
    }
  }
  return out;
}

int levi_civita(int i, int j, int k) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || k < 1 || k > 3) {
    throw std::domain_error("levi_civita indices must be in {1,2,3}");
  }
  // (i-j)(j-k)(k-i)/2 gives +1, -1, 0 on {1,2,3}.
  return (i - j) * (j - k) * (k - i) / 2;
}

PauliProduct pauli_product(PauliIndex mu, PauliIndex nu) {
  if (mu.is_identity()) return {1.0, nu};
  if (nu.is_identity()) return {1.0, mu};
  if (mu == nu) return {1.0, PauliIndex(0)};
  const int i = mu.value();
  const int j = nu.value();
  const int k = 6 - i - j;
  return {kI * static_cast<double>(levi_civita(i, j, k)), PauliIndex(k)};
}

SparseEntry basis_row(TripleIndex t, int row) {
  const int mask = (t.a.flips() ? 4 : 0) | (t.b.flips() ? 2 : 0) | (t.c.flips() ? 1 : 0);
  const Complex value = pauli_entry(t.a, row >> 2) * pauli_entry(t.b, (row >> 1) & 1) *
                        pauli_entry(t.c, row & 1);
  return {row ^ mask, value};
}

Complex basis_trace(const Matrix8c& rho, TripleIndex t) {
  Complex sum = 0.0;
  for (int r = 0; r < 8; ++r) {
    const SparseEntry e = basis_row(t, r);
    sum += e.value * rho(e.col, r);
  }
  // Canonical +0.0 so that bit patterns do not depend on signs of vanishing terms.
  return {sum.real() + 0.0, sum.imag() + 0.0};
}

}  // namespace tripletomo
