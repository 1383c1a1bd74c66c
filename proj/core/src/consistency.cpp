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

#include "tripletomo/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace tripletomo {

namespace {

// The tensor read with its slots cyclically shifted. The shifts carry the written
// representative of each identity family onto the other members.
enum class Shift { kNone, kOne, kTwo };

class SlotView {
 public:
  SlotView(const CorrelationTensor& a, Shift shift) : a_(a), shift_(shift) {}

  double operator()(int x, int y, int z) const {
    switch (shift_) {
      case Shift::kNone:
        return a_(x, y, z);
      case Shift::kOne:
        return a_(z, x, y);
      case Shift::kTwo:
        return a_(y, z, x);
    }
    return 0.0;
  }

 private:
  const CorrelationTensor& a_;
  Shift shift_;
};

int eps(int i, int j, int k) { return levi_civita(i, j, k); }

// 3 b_i00 = b_ij0 b_0j0 + b_i0k b_00k + b_ijk b_0jk
double bloch_identity(const SlotView& b, int i) {
  double rhs = 0.0;
  for (int j = 1; j <= 3; ++j) rhs += b(i, j, 0) * b(0, j, 0);
  for (int k = 1; k <= 3; ++k) rhs += b(i, 0, k) * b(0, 0, k);
  for (int j = 1; j <= 3; ++j) {
    for (int k = 1; k <= 3; ++k) rhs += b(i, j, k) * b(0, j, k);
  }
  return rhs - 3.0 * b(i, 0, 0);
}

// 3 b_ij0 = b_i00 b_0j0 + b_00k b_ijk + b_0jk b_i0k
//           - 1/2 eps_ilt eps_jmu b_lm0 b_tu0 - 1/2 eps_ilt eps_jmu b_tuk b_lmk
double pair_identity(const SlotView& b, int i, int j) {
  double rhs = b(i, 0, 0) * b(0, j, 0);
  for (int k = 1; k <= 3; ++k) rhs += b(0, 0, k) * b(i, j, k) + b(0, j, k) * b(i, 0, k);
  for (int l = 1; l <= 3; ++l) {
    for (int t = 1; t <= 3; ++t) {
      for (int m = 1; m <= 3; ++m) {
        for (int u = 1; u <= 3; ++u) {
          const int e = eps(i, l, t) * eps(j, m, u);
          if (e == 0) continue;
          double quad = b(l, m, 0) * b(t, u, 0);
          for (int k = 1; k <= 3; ++k) quad += b(t, u, k) * b(l, m, k);
          rhs -= 0.5 * e * quad;
        }
      }
    }
  }
  return rhs - 3.0 * b(i, j, 0);
}

// 3 a_ijk = a_i00 a_0jk + a_0j0 a_i0k + a_00k a_ij0 - eps_ilt eps_jmu a_tu0 a_lmk
//           - eps_ilt eps_knv a_t0v a_ljn - eps_jmu eps_knv a_0uv a_imn
double three_body_identity(const CorrelationTensor& a, int i, int j, int k) {
  double rhs = a(i, 0, 0) * a(0, j, k) + a(0, j, 0) * a(i, 0, k) + a(0, 0, k) * a(i, j, 0);
  for (int p = 1; p <= 3; ++p) {
    for (int q = 1; q <= 3; ++q) {
      for (int r = 1; r <= 3; ++r) {
        for (int s = 1; s <= 3; ++s) {
          rhs -= eps(i, p, q) * eps(j, r, s) * a(q, s, 0) * a(p, r, k);
          rhs -= eps(i, p, q) * eps(k, r, s) * a(q, 0, s) * a(p, j, r);
          rhs -= eps(j, p, q) * eps(k, r, s) * a(0, q, s) * a(i, p, r);
        }
      }
    }
  }
  return rhs - 3.0 * a(i, j, k);
}

}  // namespace

double sum_equation_residual(const CorrelationTensor& a) {
  double sum = 0.0;
  for (int t = 1; t < kTensorSize; ++t) sum += a.values()[t] * a.values()[t];
  return sum - 7.0;
}

std::array<double, 9> bloch_equation_residuals(const CorrelationTensor& a) {
  std::array<double, 9> out{};
  const std::array<Shift, 3> shifts = {Shift::kNone, Shift::kOne, Shift::kTwo};
  for (int slot = 0; slot < 3; ++slot) {
    const SlotView view(a, shifts[slot]);
    for (int i = 1; i <= 3; ++i) out[3 * slot + i - 1] = bloch_identity(view, i);
  }
  return out;
}

std::array<double, 27> pair_equation_residuals(const CorrelationTensor& a) {
  std::array<double, 27> out{};
  const SlotView ab(a, Shift::kNone);  // view(i, j, 0) = a_ij0
  const SlotView ac(a, Shift::kTwo);   // view(k, i, 0) = a_i0k
  const SlotView bc(a, Shift::kOne);   // view(j, k, 0) = a_0jk
  for (int x = 1; x <= 3; ++x) {
    for (int y = 1; y <= 3; ++y) {
      const int pos = 3 * (x - 1) + (y - 1);
      out[pos] = pair_identity(ab, x, y);
      out[9 + pos] = pair_identity(ac, y, x);
      out[18 + pos] = pair_identity(bc, x, y);
    }
  }
  return out;
}

std::array<double, 27> three_body_residuals(const CorrelationTensor& a) {
  std::array<double, 27> out{};
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        out[9 * (i - 1) + 3 * (j - 1) + (k - 1)] = three_body_identity(a, i, j, k);
      }
    }
  }
  return out;
}

std::array<double, 64> residuals_by_coefficient(const CorrelationTensor& a) {
  std::array<double, 64> out{};
  out[0] = sum_equation_residual(a);
  const auto bloch = bloch_equation_residuals(a);
  for (int axis = 1; axis <= 3; ++axis) {
    out[TripleIndex(axis, 0, 0).linear()] = bloch[axis - 1];
    out[TripleIndex(0, axis, 0).linear()] = bloch[3 + axis - 1];
    out[TripleIndex(0, 0, axis).linear()] = bloch[6 + axis - 1];
  }
  const auto pair = pair_equation_residuals(a);
  const auto three = three_body_residuals(a);
  for (int x = 1; x <= 3; ++x) {
    for (int y = 1; y <= 3; ++y) {
      const int pos = 3 * (x - 1) + (y - 1);
      out[TripleIndex(x, y, 0).linear()] = pair[pos];
      out[TripleIndex(x, 0, y).linear()] = pair[9 + pos];
      out[TripleIndex(0, x, y).linear()] = pair[18 + pos];
      for (int z = 1; z <= 3; ++z) out[TripleIndex(x, y, z).linear()] = three[3 * pos + z - 1];
    }
  }
  return out;
}

double default_tolerance(std::optional<std::int64_t> shots) {
  if (!shots) return kDefaultExactTolerance;
  return 50.0 / std::sqrt(static_cast<double>(*shots));
}

ResidualReport classify(const CorrelationTensor& a, double tolerance) {
  if (!(tolerance > 0.0)) throw std::domain_error("tolerance must be positive");
  ResidualReport report;
  report.sum_residual = sum_equation_residual(a);
  report.bloch_residuals = bloch_equation_residuals(a);
  report.pair_residuals = pair_equation_residuals(a);
  report.three_body_residuals = three_body_residuals(a);
  report.tolerance_used = tolerance;

  double m = std::abs(report.sum_residual);
  for (double r : report.bloch_residuals) m = std::max(m, std::abs(r));
  for (double r : report.pair_residuals) m = std::max(m, std::abs(r));
  for (double r : report.three_body_residuals) m = std::max(m, std::abs(r));
  report.max_abs = m;
  report.verdict = m <= tolerance ? Verdict::kConsistentPure : Verdict::kInconsistentMixed;
  return report;
}

void write_residual_report(std::ostream& out, const ResidualReport& report) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  out << "EQsum:000 " << report.sum_residual << '\n';
  for (int slot = 0; slot < 3; ++slot) {
    for (int axis = 1; axis <= 3; ++axis) {
      std::array<int, 3> idx{0, 0, 0};
      idx[slot] = axis;
      out << "EQbloch:" << idx[0] << idx[1] << idx[2] << ' '
          << report.bloch_residuals[3 * slot + axis - 1] << '\n';
    }
  }
  for (int block = 0; block < 3; ++block) {
    for (int x = 1; x <= 3; ++x) {
      for (int y = 1; y <= 3; ++y) {
        std::array<int, 3> idx{x, y, 0};
        if (block == 1) idx = {x, 0, y};
        if (block == 2) idx = {0, x, y};
        out << "EQpair:" << idx[0] << idx[1] << idx[2] << ' '
            << report.pair_residuals[9 * block + 3 * (x - 1) + (y - 1)] << '\n';
      }
    }
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        out << "EQthree:" << i << j << k << ' '
            << report.three_body_residuals[9 * (i - 1) + 3 * (j - 1) + (k - 1)] << '\n';
      }
    }
  }
  out << "max_abs=" << report.max_abs << '\n'
      << "tolerance=" << report.tolerance_used << '\n'
      << "verdict=" << (report.pure() ? "pure" : "mixed") << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace tripletomo
