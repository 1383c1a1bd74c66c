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

#include "tripletomo/state.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

namespace tripletomo {

namespace {

Complex canonical(Complex z) { return {z.real() + 0.0, z.imag() + 0.0}; }

std::vector<std::string> nonblank_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  return lines;
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(const std::array<double, 8>& magnitudes, const std::array<double, 8>& phases)
    : magnitudes_(magnitudes), phases_(phases) {
  for (int r = 0; r < 8; ++r) {
    if (!std::isfinite(magnitudes_[r]) || !std::isfinite(phases_[r]) || magnitudes_[r] < 0.0) {
      throw std::domain_error("pure state amplitudes must be finite with nonnegative modulus");
    }
    if (magnitudes_[r] == 0.0) phases_[r] = 0.0;
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::domain_error("pure state is not normalized");
  }
}

PureState PureState::from_polar(const std::array<double, 8>& magnitudes,
                                const std::array<double, 8>& phases) {
  return PureState(magnitudes, phases);
}

PureState PureState::from_amplitudes(std::span<const Complex, 8> amplitudes) {
  std::array<double, 8> mags{};
  std::array<double, 8> phases{};
  for (int r = 0; r < 8; ++r) {
    mags[r] = std::abs(amplitudes[r]);
    phases[r] = mags[r] == 0.0 ? 0.0 : std::arg(amplitudes[r]);
  }
  return PureState(mags, phases);
}

PureState PureState::normalized(std::span<const Complex, 8> amplitudes) {
  double norm2 = 0.0;
  for (const Complex& z : amplitudes) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw std::domain_error("cannot normalize a zero or non-finite state vector");
  }
  const double norm = std::sqrt(norm2);
  std::array<double, 8> mags{};
  std::array<double, 8> phases{};
  for (int r = 0; r < 8; ++r) {
    mags[r] = std::abs(amplitudes[r]) / norm;
    phases[r] = mags[r] == 0.0 ? 0.0 : std::arg(amplitudes[r]);
  }
  return PureState(mags, phases);
}

Complex PureState::amplitude(int basis) const {
  return canonical(std::polar(magnitudes_.at(basis), phases_.at(basis)));
}

std::array<Complex, 8> PureState::amplitudes() const {
  std::array<Complex, 8> out;
  for (int r = 0; r < 8; ++r) out[r] = amplitude(r);
  return out;
}

double PureState::norm_squared() const {
  double sum = 0.0;
  for (double m : magnitudes_) sum += m * m;
  return sum;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_matrix(const Matrix8c& m, Positivity check) {
  if (!m.allFinite()) throw std::domain_error("density matrix has non-finite entries");
  const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermitianTolerance) {
    throw std::domain_error("density matrix is not Hermitian");
  }
  if (std::abs(m.trace() - 1.0) > kTraceTolerance) {
    throw std::domain_error("density matrix does not have unit trace");
  }
  DensityMatrix rho(m);
  if (check == Positivity::kEnforce && !positivity_report(rho).positive) {
    throw std::domain_error("density matrix has a negative eigenvalue");
  }
  return rho;
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Matrix8c::Identity() / 8.0);
}

DensityMatrix DensityMatrix::mixture(double p, const DensityMatrix& first,
                                     const DensityMatrix& second) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("mixture weight must lie in [0, 1]");
  return from_matrix(p * first.matrix_ + (1.0 - p) * second.matrix_);
}

PositivityReport positivity_report(const DensityMatrix& rho, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix8c> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  const double min_ev = solver.eigenvalues().minCoeff();
  return {min_ev, min_ev >= floor};
}

// ---------------------------------------------------------------------------
// CorrelationTensor

CorrelationTensor CorrelationTensor::from_values(const std::array<double, kTensorSize>& values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw std::domain_error("correlation tensor has non-finite entries");
  }
  if (std::abs(values[0] - 1.0) > kNormalizationTolerance) {
    throw std::domain_error("correlation tensor must have a_000 = 1");
  }
  return CorrelationTensor(values);
}

double CorrelationTensor::max_abs_entry() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

// ---------------------------------------------------------------------------
// Pairs

std::string_view pair_name(PairLabel pair) {
  switch (pair) {
    case PairLabel::kAB:
      return "AB";
    case PairLabel::kAC:
      return "AC";
    case PairLabel::kBC:
      return "BC";
  }
  return "??";
}

int traced_slot(PairLabel pair) {
  switch (pair) {
    case PairLabel::kBC:
      return 0;
    case PairLabel::kAC:
      return 1;
    case PairLabel::kAB:
      return 2;
  }
  return 2;
}

std::array<int, 2> kept_slots(PairLabel pair) {
  switch (pair) {
    case PairLabel::kBC:
      return {1, 2};
    case PairLabel::kAC:
      return {0, 2};
    case PairLabel::kAB:
      return {0, 1};
  }
  return {0, 1};
}

// ---------------------------------------------------------------------------
// Conversions

DensityMatrix density_from_pure(const PureState& psi) {
  Matrix8c m;
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      const double mag = psi.magnitude(r) * psi.magnitude(c);
      m(r, c) = canonical(std::polar(mag, psi.phase(r) - psi.phase(c)));
    }
  }
  return DensityMatrix::from_matrix(m, DensityMatrix::Positivity::kSkip);
}

CorrelationTensor tensor_from_density(const DensityMatrix& rho) {
  std::array<double, kTensorSize> values{};
  for (int t = 0; t < kTensorSize; ++t) {
    values[t] = basis_trace(rho.matrix(), TripleIndex::from_linear(t)).real();
  }
  return CorrelationTensor::from_values(values);
}

DensityMatrix density_from_tensor(const CorrelationTensor& a) {
  Matrix8c m = Matrix8c::Zero();
  for (int t = 0; t < kTensorSize; ++t) {
    const double coeff = a.values()[t] / 8.0;
    if (coeff == 0.0) continue;
    const TripleIndex idx = TripleIndex::from_linear(t);
    for (int r = 0; r < 8; ++r) {
      const SparseEntry e = basis_row(idx, r);
      m(r, e.col) += coeff * e.value;
    }
  }
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) m(r, c) = canonical(m(r, c));
  }
  return DensityMatrix::from_matrix(m, DensityMatrix::Positivity::kSkip);
}

std::array<double, 16> reduced_pair(const CorrelationTensor& a, PairLabel which) {
  std::array<double, 16> out{};
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      double v = 0.0;
      switch (which) {
        case PairLabel::kAB:
          v = a(p, q, 0);
          break;
        case PairLabel::kAC:
          v = a(p, 0, q);
          break;
        case PairLabel::kBC:
          v = a(0, p, q);
          break;
      }
      out[4 * p + q] = v;
    }
  }
  return out;
}

Matrix4c partial_trace(const DensityMatrix& rho, PairLabel which) {
  const int traced_bit = 2 - traced_slot(which);  // slot 0 (A) is bit 2
  auto expand = [traced_bit](int pair_index, int traced_value) {
    const int low_mask = (1 << traced_bit) - 1;
    const int low = pair_index & low_mask;
    const int high = pair_index >> traced_bit;
    return (high << (traced_bit + 1)) | (traced_value << traced_bit) | low;
  };
  Matrix4c out = Matrix4c::Zero();
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      for (int b = 0; b < 2; ++b) out(r, c) += rho(expand(r, b), expand(c, b));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixtures

PureState random_pure_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<Complex, 8> z;
  for (auto& v : z) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v = {re, im};
  }
  return PureState::normalized(z);
}

PureState ghz_state(double theta, double phi) {
  std::array<double, 8> mags{};
  std::array<double, 8> phases{};
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  mags[0] = std::abs(c);
  phases[0] = c < 0.0 ? std::numbers::pi : 0.0;
  mags[7] = std::abs(s);
  phases[7] = s < 0.0 ? phi + std::numbers::pi : phi;
  return PureState::from_polar(mags, phases);
}

std::optional<std::string> ghz_theta_warning(double theta) {
  if (theta > 0.0 && theta < std::numbers::pi / 2.0) return std::nullopt;
  std::ostringstream msg;
  msg << "theta=" << theta
      << " lies outside (0, pi/2); the GHZ family degenerates to a product state there";
  return msg.str();
}

PureState diosi_state(double phi) {
  const double m = 1.0 / std::sqrt(3.0);
  std::array<double, 8> mags{};
  std::array<double, 8> phases{};
  mags[0] = m;
  mags[2] = m;
  mags[7] = m;
  phases[7] = phi;
  return PureState::from_polar(mags, phases);
}

PureState basis_state(int index) {
  if (index < 0 || index >= 8) throw std::out_of_range("basis index must be in [0, 8)");
  std::array<double, 8> mags{};
  mags[index] = 1.0;
  return PureState::from_polar(mags, {});
}

// ---------------------------------------------------------------------------
// Text formats

void write_state(std::ostream& out, const PureState& psi) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (int r = 0; r < 8; ++r) {
    const Complex z = psi.amplitude(r);
    out << z.real() << ' ' << z.imag() << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

PureState read_state(std::istream& in) {
  const auto lines = nonblank_lines(in);
  if (lines.size() != 8) {
    throw std::runtime_error("state file must have 8 lines, found " +
                             std::to_string(lines.size()));
  }
  std::array<Complex, 8> amps;
  for (int r = 0; r < 8; ++r) {
    std::istringstream ls(lines[r]);
    double re = 0.0;
    double im = 0.0;
    std::string extra;
    if (!(ls >> re >> im) || (ls >> extra)) {
      throw std::runtime_error("malformed state line " + std::to_string(r + 1) + ": '" +
                               lines[r] + "'");
    }
    amps[r] = {re, im};
  }
  return PureState::from_amplitudes(amps);
}

void write_tensor(std::ostream& out, const CorrelationTensor& a) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << std::setprecision(17);
  for (int t = 0; t < kTensorSize; ++t) {
    const TripleIndex idx = TripleIndex::from_linear(t);
    out << idx.a.value() << ' ' << idx.b.value() << ' ' << idx.c.value() << ' '
        << a.values()[t] << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

CorrelationTensor read_tensor(std::istream& in) {
  const auto lines = nonblank_lines(in);
  if (lines.size() != kTensorSize) {
    throw std::runtime_error("tensor file must have 64 lines, found " +
                             std::to_string(lines.size()));
  }
  std::array<double, kTensorSize> values{};
  for (int t = 0; t < kTensorSize; ++t) {
    std::istringstream ls(lines[t]);
    int g = -1;
    int m = -1;
    int n = -1;
    double v = 0.0;
    std::string extra;
    if (!(ls >> g >> m >> n >> v) || (ls >> extra)) {
      throw std::runtime_error("malformed tensor line " + std::to_string(t + 1));
    }
    if (16 * g + 4 * m + n != t || g < 0 || g > 3 || m < 0 || m > 3 || n < 0 || n > 3) {
      throw std::runtime_error("tensor line " + std::to_string(t + 1) +
                               " is out of canonical order");
    }
    values[t] = v;
  }
  return CorrelationTensor::from_values(values);
}

}  // namespace tripletomo
