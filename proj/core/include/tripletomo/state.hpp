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
#include <span>
#include <string>
#include <string_view>

#include "tripletomo/pauli.hpp"

namespace tripletomo {

/// Three-qubit pure state. Amplitudes are held in polar form so that states differing only
/// in phases have bit-identical populations.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Throws std::domain_error unless sum |amp|^2 = 1 within kNormTolerance.
  static PureState from_amplitudes(std::span<const Complex, 8> amplitudes);
  static PureState from_polar(const std::array<double, 8>& magnitudes,
                              const std::array<double, 8>& phases);
  /// Rescales arbitrary nonzero amplitudes to unit norm.
  static PureState normalized(std::span<const Complex, 8> amplitudes);

  Complex amplitude(int basis) const;
  std::array<Complex, 8> amplitudes() const;
  double magnitude(int basis) const { return magnitudes_.at(basis); }
  double phase(int basis) const { return phases_.at(basis); }
  double norm_squared() const;

 private:
  PureState(const std::array<double, 8>& magnitudes, const std::array<double, 8>& phases);

  std::array<double, 8> magnitudes_{};
  std::array<double, 8> phases_{};
};

/// Hermitian, unit-trace 8x8 operator. Positivity is validated only on request.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-10;

  enum class Positivity { kEnforce, kSkip };

  /// Throws std::domain_error when the matrix is not Hermitian, not unit trace, or (with
  /// kEnforce) has an eigenvalue below kEigenvalueFloor.
  static DensityMatrix from_matrix(const Matrix8c& m, Positivity check = Positivity::kEnforce);

  static DensityMatrix maximally_mixed();

  const Matrix8c& matrix() const { return matrix_; }
  Complex operator()(int r, int c) const { return matrix_(r, c); }

  /// Convex combination p*first + (1-p)*second.
  static DensityMatrix mixture(double p, const DensityMatrix& first, const DensityMatrix& second);

 private:
  explicit DensityMatrix(const Matrix8c& m) : matrix_(m) {}
  Matrix8c matrix_;
};

struct PositivityReport {
  double min_eigenvalue = 0.0;
  bool positive = true;
};

PositivityReport positivity_report(const DensityMatrix& rho,
                                   double floor = DensityMatrix::kEigenvalueFloor);

/// The 64 real coefficients a_{gamma mu nu} = Tr(rho S_{gamma mu nu}), linearized as
/// 16*gamma + 4*mu + nu. a_000 = 1 always holds; the |a| <= 1 bound holds for tensors of
/// physical states but is not enforced, since tensors assembled from noisy data may exceed it.
class CorrelationTensor {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  /// Throws std::domain_error if values[0] differs from 1 by more than the tolerance.
  static CorrelationTensor from_values(const std::array<double, kTensorSize>& values);

  double operator()(int g, int m, int n) const { return values_[16 * g + 4 * m + n]; }
  double operator[](TripleIndex t) const { return values_[t.linear()]; }
  const std::array<double, kTensorSize>& values() const { return values_; }

  /// Largest |a| over all entries.
  double max_abs_entry() const;

 private:
  explicit CorrelationTensor(const std::array<double, kTensorSize>& values) : values_(values) {}
  std::array<double, kTensorSize> values_{};
};

/// Which qubit pair is kept; the remaining qubit is traced out.
enum class PairLabel { kBC, kAC, kAB };

inline constexpr std::array<PairLabel, 3> kAllPairs = {PairLabel::kAB, PairLabel::kAC,
                                                       PairLabel::kBC};

std::string_view pair_name(PairLabel pair);
/// Slot (0 = A, 1 = B, 2 = C) that is traced out for the pair.
int traced_slot(PairLabel pair);
/// The two kept slots, in increasing order.
std::array<int, 2> kept_slots(PairLabel pair);

DensityMatrix density_from_pure(const PureState& psi);

CorrelationTensor tensor_from_density(const DensityMatrix& rho);

/// rho = (1/8) sum a_t S_t. Throws std::domain_error if a_000 != 1. Positivity is not
/// enforced; see positivity_report.
DensityMatrix density_from_tensor(const CorrelationTensor& a);

/// 4x4 block a_{p q} of the kept pair with 0 in the traced slot, linearized as 4*p + q.
std::array<double, 16> reduced_pair(const CorrelationTensor& a, PairLabel which);

/// Explicit partial trace over the traced-out qubit. Kept qubits stay in A, B, C order with
/// the first kept qubit as the most significant bit.
Matrix4c partial_trace(const DensityMatrix& rho, PairLabel which);

/// Haar-random state from 8 complex standard Gaussians; deterministic in the seed.
PureState random_pure_state(std::uint64_t seed);

/// cos(theta)|000> + e^{i phi} sin(theta)|111>.
PureState ghz_state(double theta, double phi);

/// Warning text when theta lies outside (0, pi/2), where the GHZ family degenerates to a
/// product state.
std::optional<std::string> ghz_theta_warning(double theta);

/// (|000> + |010> + e^{i phi}|111>)/sqrt(3).
PureState diosi_state(double phi);

PureState basis_state(int index);

// Text formats. States: 8 lines "re im" with 17 significant digits, |000> first.
// Tensors: 64 lines "g m n value" in linear order.
void write_state(std::ostream& out, const PureState& psi);
PureState read_state(std::istream& in);
void write_tensor(std::ostream& out, const CorrelationTensor& a);
CorrelationTensor read_tensor(std::istream& in);

}  // namespace tripletomo
