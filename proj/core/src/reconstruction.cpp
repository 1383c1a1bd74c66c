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

#include "tripletomo/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/SVD>

namespace tripletomo {

namespace {

// Accessors into the 36-value layout of PairwiseData.
struct MeasuredView {
  const std::array<double, PairwiseData::kSize>& v;

  double a_i00(int i) const { return v[i - 1]; }
  double a_0j0(int j) const { return v[3 + j - 1]; }
  double a_00k(int k) const { return v[6 + k - 1]; }
  double a_ij0(int i, int j) const { return v[9 + 3 * (i - 1) + (j - 1)]; }
  double a_i0k(int i, int k) const { return v[18 + 3 * (i - 1) + (k - 1)]; }
  double a_0jk(int j, int k) const { return v[27 + 3 * (j - 1) + (k - 1)]; }
};

using Svd = Eigen::JacobiSVD<Matrix27>;

Svd decompose(const LinearSystem& system) {
  return Svd(system.matrix, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

// Truncated pseudo-inverse applied to a vector.
Vector27 pseudo_solve(const Svd& svd, int rank, const Vector27& b) {
  const Vector27 ub = svd.matrixU().transpose() * b;
  Vector27 scaled = Vector27::Zero();
  for (int r = 0; r < rank; ++r) scaled(r) = ub(r) / svd.singularValues()(r);
  return svd.matrixV() * scaled;
}

}  // namespace

double default_sv_threshold(std::optional<std::int64_t> shots) {
  if (!shots) return kDefaultSvThreshold;
  return std::max(kDefaultSvThreshold, 10.0 / std::sqrt(static_cast<double>(*shots)));
}

LinearSystem build_system(const PairwiseData& data) { return build_system(data.values()); }

LinearSystem build_system(const std::array<double, PairwiseData::kSize>& values) {
  const MeasuredView a{values};
  LinearSystem sys{Matrix27::Zero(), Vector27::Zero()};

  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        const int row = unknown_index(i, j, k);
        sys.matrix(row, row) += 3.0;
        sys.rhs(row) = a.a_i00(i) * a.a_0jk(j, k) + a.a_0j0(j) * a.a_i0k(i, k) +
                       a.a_00k(k) * a.a_ij0(i, j);

        for (int p = 1; p <= 3; ++p) {
          for (int q = 1; q <= 3; ++q) {
            for (int r = 1; r <= 3; ++r) {
              for (int s = 1; s <= 3; ++s) {
                // (l,t,m,u) = (p,q,r,s): couples a_tu0 to unknown a_lmk.
                const int e1 = levi_civita(i, p, q) * levi_civita(j, r, s);
                if (e1 != 0) sys.matrix(row, unknown_index(p, r, k)) += e1 * a.a_ij0(q, s);
                // (l,t,n,v) = (p,q,r,s): couples a_t0v to unknown a_ljn.
                const int e2 = levi_civita(i, p, q) * levi_civita(k, r, s);
                if (e2 != 0) sys.matrix(row, unknown_index(p, j, r)) += e2 * a.a_i0k(q, s);
                // (m,u,n,v) = (p,q,r,s): couples a_0uv to unknown a_imn.
                const int e3 = levi_civita(j, p, q) * levi_civita(k, r, s);
                if (e3 != 0) sys.matrix(row, unknown_index(i, p, r)) += e3 * a.a_0jk(q, s);
              }
            }
          }
        }
      }
    }
  }
  return sys;
}

ReconstructionResult solve(const LinearSystem& system, double sv_threshold) {
  if (!(sv_threshold > 0.0)) throw std::domain_error("sv_threshold must be positive");
  if (!system.matrix.allFinite() || !system.rhs.allFinite()) {
    throw std::domain_error("linear system has non-finite entries");
  }
  const Svd svd = decompose(system);
  const auto& sv = svd.singularValues();
  if (sv(0) < kSingularValueFloor) {
    throw DegenerateSystemError("all singular values of the reconstruction matrix vanish");
  }

  ReconstructionResult result;
  result.sv_threshold = sv_threshold;
  const double cutoff = sv_threshold * sv(0);
  for (int r = 0; r < kUnknowns; ++r) {
    result.singular_values[r] = sv(r);
    if (sv(r) > cutoff) ++result.rank;
  }
  result.null_space_dim = kUnknowns - result.rank;
  result.unique = result.null_space_dim == 0;

  const Vector27 x = pseudo_solve(svd, result.rank, system.rhs);
  for (int r = 0; r < kUnknowns; ++r) result.a_ijk[r] = x(r);
  result.residual_norm = (system.matrix * x - system.rhs).norm();
  return result;
}

CorrelationTensor assemble_full_tensor(const PairwiseData& data, const ReconstructionResult& result,
                                       NonUniquePolicy policy) {
  if (!result.unique && policy == NonUniquePolicy::kRefuse) {
    std::ostringstream msg;
    msg << "reconstruction is not unique: rank " << result.rank << " of " << kUnknowns
        << ", null space dimension " << result.null_space_dim
        << "; the pairwise data do not determine the three-body coefficients";
    throw NonUniqueReconstructionError(msg.str());
  }
  std::array<double, kTensorSize> values{};
  values[0] = 1.0;
  for (int p = 0; p < PairwiseData::kSize; ++p) {
    values[PairwiseData::index_at(p).linear()] = data.values()[p];
  }
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        values[TripleIndex(i, j, k).linear()] = result.coefficient(i, j, k);
      }
    }
  }
  return CorrelationTensor::from_values(values);
}

std::array<double, kUnknowns> propagated_standard_errors(const PairwiseData& data,
                                                         const ReconstructionResult& result) {
  std::array<double, kUnknowns> out{};
  if (!data.standard_errors()) return out;
  const auto& errors = *data.standard_errors();

  Vector27 x;
  for (int r = 0; r < kUnknowns; ++r) x(r) = result.a_ijk[r];
  const Svd svd = decompose(build_system(data));

  // g(d) = c(d) - M(d) x is quadratic in the data, so a central difference is exact up to
  // round-off; dx = M^+ dg.
  Vector27 variance = Vector27::Zero();
  constexpr double kStep = 1e-3;
  for (int q = 0; q < PairwiseData::kSize; ++q) {
    if (errors[q] == 0.0) continue;
    auto plus = data.values();
    auto minus = data.values();
    plus[q] += kStep;
    minus[q] -= kStep;
    const LinearSystem sp = build_system(plus);
    const LinearSystem sm = build_system(minus);
    const Vector27 dg = ((sp.rhs - sp.matrix * x) - (sm.rhs - sm.matrix * x)) / (2.0 * kStep);
    const Vector27 dx = pseudo_solve(svd, result.rank, dg) * errors[q];
    variance += dx.cwiseProduct(dx);
  }
  for (int r = 0; r < kUnknowns; ++r) out[r] = std::sqrt(variance(r));
  return out;
}

void write_reconstruction_report(std::ostream& out, const ReconstructionResult& result) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      for (int k = 1; k <= 3; ++k) {
        out << i << ' ' << j << ' ' << k << ' ' << result.coefficient(i, j, k) << '\n';
      }
    }
  }
  out << "rank=" << result.rank << '\n'
      << "sv_min=" << result.sv_min() << '\n'
      << "sv_max=" << result.sv_max() << '\n'
      << "unique=" << (result.unique ? "true" : "false") << '\n'
      << "residual=" << result.residual_norm << '\n';
  out.flags(flags);
  out.precision(prec);
}

}  // namespace tripletomo
