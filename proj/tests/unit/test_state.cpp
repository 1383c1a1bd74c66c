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

#include <gtest/gtest.h>

#include <sstream>

#include "support/fixtures.hpp"

using namespace tripletomo;
using tripletomo::testing::kPi;

namespace {

double max_abs_diff(const Matrix8c& a, const Matrix8c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

double max_abs_diff(const CorrelationTensor& a, const CorrelationTensor& b) {
  double out = 0.0;
  for (int t = 0; t < kTensorSize; ++t) {
    out = std::max(out, std::abs(a.values()[t] - b.values()[t]));
  }
  return out;
}

CorrelationTensor tensor_with(std::initializer_list<std::pair<TripleIndex, double>> entries) {
  std::array<double, kTensorSize> v{};
  v[0] = 1.0;
  for (const auto& [t, x] : entries) v[t.linear()] = x;
  return CorrelationTensor::from_values(v);
}

/// Mixed test state: p |psi><psi| + (1 - p) I/8.
DensityMatrix depolarized(std::uint64_t seed, double p) {
  return DensityMatrix::mixture(p, density_from_pure(random_pure_state(seed)),
                                DensityMatrix::maximally_mixed());
}

}  // namespace

TEST(PureState, from_amplitudes_requires_unit_norm) {
  std::array<Complex, 8> amps{};
  amps[0] = 1.0;
  EXPECT_NO_THROW(PureState::from_amplitudes(amps));
  amps[1] = 0.1;
  EXPECT_THROW(PureState::from_amplitudes(amps), std::domain_error);
  const PureState n = PureState::normalized(amps);
  EXPECT_NEAR(n.norm_squared(), 1.0, 1e-15);
}

TEST(PureState, polar_round_trip) {
  const PureState psi = random_pure_state(3);
  const auto amps = psi.amplitudes();
  for (int i = 0; i < 8; ++i) {
    EXPECT_NEAR(std::abs(amps[i]), psi.magnitude(i), 1e-15);
    EXPECT_NEAR(std::abs(amps[i] - std::polar(psi.magnitude(i), psi.phase(i))), 0.0, 1e-15);
  }
}

TEST(DensityMatrix, validates_input) {
  Matrix8c m = Matrix8c::Zero();
  m(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityMatrix::from_matrix(m));

  Matrix8c not_hermitian = m;
  not_hermitian(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix::from_matrix(not_hermitian), std::domain_error);

  Matrix8c bad_trace = m * 2.0;
  EXPECT_THROW(DensityMatrix::from_matrix(bad_trace), std::domain_error);

  Matrix8c negative = Matrix8c::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix::from_matrix(negative), std::domain_error);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(negative, DensityMatrix::Positivity::kSkip));
}

TEST(DensityMatrix, positivity_report_on_unphysical_matrix) {
  Matrix8c negative = Matrix8c::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  const auto rho = DensityMatrix::from_matrix(negative, DensityMatrix::Positivity::kSkip);
  const PositivityReport report = positivity_report(rho);
  EXPECT_NEAR(report.min_eigenvalue, -0.5, 1e-14);
  EXPECT_FALSE(report.positive);
}

TEST(density_from_pure, basis_state) {
  const DensityMatrix rho = density_from_pure(basis_state(0));
  Matrix8c expected = Matrix8c::Zero();
  expected(0, 0) = 1.0;
  EXPECT_EQ(max_abs_diff(rho.matrix(), expected), 0.0);
}

TEST(density_from_pure, ghz_corners) {
  const DensityMatrix rho = density_from_pure(ghz_state(kPi / 4, 0.0));
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      const bool corner = (r == 0 || r == 7) && (c == 0 || c == 7);
      EXPECT_NEAR(std::abs(rho(r, c) - Complex(corner ? 0.5 : 0.0)), 0.0, 1e-15) << r << c;
    }
  }
}

TEST(density_from_pure, haar_state_is_a_projector) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DensityMatrix rho = density_from_pure(random_pure_state(seed));
    EXPECT_NEAR(tripletomo::testing::purity(rho), 1.0, 1e-12);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(tensor_from_density, maximally_mixed) {
  const CorrelationTensor a = tensor_from_density(DensityMatrix::maximally_mixed());
  EXPECT_EQ(a(0, 0, 0), 1.0);
  for (int t = 1; t < kTensorSize; ++t) EXPECT_EQ(a.values()[t], 0.0) << t;
}

TEST(tensor_from_density, product_state_has_seven_unit_entries) {
  const CorrelationTensor a = tensor_from_density(density_from_pure(basis_state(0)));
  const CorrelationTensor expected =
      tensor_with({{{3, 0, 0}, 1.0}, {{0, 3, 0}, 1.0}, {{0, 0, 3}, 1.0}, {{3, 3, 0}, 1.0},
                   {{3, 0, 3}, 1.0}, {{0, 3, 3}, 1.0}, {{3, 3, 3}, 1.0}});
  EXPECT_EQ(a.values(), expected.values());
}

TEST(tensor_from_density, ghz_entries) {
  const CorrelationTensor a = tensor_from_density(density_from_pure(ghz_state(kPi / 4, 0.0)));
  const CorrelationTensor expected =
      tensor_with({{{3, 3, 0}, 1.0}, {{3, 0, 3}, 1.0}, {{0, 3, 3}, 1.0}, {{1, 1, 1}, 1.0},
                   {{1, 2, 2}, -1.0}, {{2, 1, 2}, -1.0}, {{2, 2, 1}, -1.0}});
  EXPECT_LT(max_abs_diff(a, expected), 1e-15);
}

TEST(tensor_from_density, physical_tensor_entries_bounded) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LE(tensor_from_density(depolarized(seed, 0.7)).max_abs_entry(), 1.0 + 1e-12);
  }
}

TEST(tensor_from_density, sum_of_squares_for_pure_states) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const CorrelationTensor a = tensor_from_density(density_from_pure(random_pure_state(seed)));
    double squares = 0.0;
    for (int t = 1; t < kTensorSize; ++t) squares += a.values()[t] * a.values()[t];
    EXPECT_NEAR(squares, 7.0, 1e-12);
  }
}

TEST(density_from_tensor, identity_only) {
  const DensityMatrix rho = density_from_tensor(tensor_with({}));
  EXPECT_LT(max_abs_diff(rho.matrix(), DensityMatrix::maximally_mixed().matrix()), 1e-16);
}

TEST(density_from_tensor, product_state_round_trip) {
  const DensityMatrix source = density_from_pure(basis_state(0));
  EXPECT_EQ(max_abs_diff(density_from_tensor(tensor_from_density(source)).matrix(),
                         source.matrix()),
            0.0);
}

TEST(density_from_tensor, round_trips) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = seed % 2 == 0 ? density_from_pure(random_pure_state(seed))
                                            : depolarized(seed, 0.6);
    const CorrelationTensor a = tensor_from_density(rho);
    EXPECT_LT(max_abs_diff(density_from_tensor(a).matrix(), rho.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(tensor_from_density(density_from_tensor(a)), a), 1e-12);
  }
}

TEST(density_from_tensor, does_not_project_unphysical_tensors) {
  // a_300 = 2 is not the tensor of any state; it is reported, not repaired.
  const DensityMatrix rho = density_from_tensor(tensor_with({{{3, 0, 0}, 2.0}}));
  EXPECT_FALSE(positivity_report(rho).positive);
}

TEST(CorrelationTensor, requires_normalization) {
  std::array<double, kTensorSize> v{};
  EXPECT_THROW(CorrelationTensor::from_values(v), std::domain_error);
  v[0] = 1.0;
  EXPECT_NO_THROW(CorrelationTensor::from_values(v));
}

TEST(reduced_pair, product_state_slice) {
  const CorrelationTensor a = tensor_from_density(density_from_pure(basis_state(0)));
  const auto ab = reduced_pair(a, PairLabel::kAB);
  std::array<double, 16> expected{};
  expected[0] = expected[4 * 3] = expected[3] = expected[4 * 3 + 3] = 1.0;
  EXPECT_EQ(ab, expected);
}

TEST(reduced_pair, matches_explicit_partial_trace) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = seed % 2 == 0 ? density_from_pure(random_pure_state(seed))
                                            : depolarized(seed, 0.8);
    const CorrelationTensor a = tensor_from_density(rho);
    for (PairLabel pair : kAllPairs) {
      const auto slice = reduced_pair(a, pair);
      const auto expanded = tripletomo::testing::pair_expansion(partial_trace(rho, pair));
      for (int e = 0; e < 16; ++e) EXPECT_NEAR(slice[e], expanded[e], 1e-12) << seed << e;
    }
  }
}

TEST(reduced_pair, ghz_slices_are_phase_independent) {
  for (double theta : {kPi / 8, kPi / 4, 3 * kPi / 8, 0.3}) {
    const CorrelationTensor ref = tensor_from_density(density_from_pure(ghz_state(theta, 0.0)));
    for (double phi : {0.4, 1.3, kPi, 5.9}) {
      const CorrelationTensor a = tensor_from_density(density_from_pure(ghz_state(theta, phi)));
      for (PairLabel pair : kAllPairs) {
        EXPECT_EQ(reduced_pair(a, pair), reduced_pair(ref, pair)) << theta << " " << phi;
      }
    }
  }
}

TEST(pair_labels, slots) {
  EXPECT_EQ(traced_slot(PairLabel::kAB), 2);
  EXPECT_EQ(traced_slot(PairLabel::kAC), 1);
  EXPECT_EQ(traced_slot(PairLabel::kBC), 0);
  EXPECT_EQ(kept_slots(PairLabel::kAC), (std::array<int, 2>{0, 2}));
  EXPECT_EQ(pair_name(PairLabel::kBC), "BC");
}

TEST(random_pure_state, normalized_and_seed_dependent) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_NEAR(random_pure_state(seed).norm_squared(), 1.0, 1e-12);
  }
  EXPECT_NE(random_pure_state(1).amplitudes(), random_pure_state(2).amplitudes());
  EXPECT_EQ(random_pure_state(7).amplitudes(), random_pure_state(7).amplitudes());
}

TEST(random_pure_state, bloch_component_averages_to_zero) {
  constexpr int kStates = 10000;
  double sum = 0.0;
  for (int s = 0; s < kStates; ++s) {
    sum += tensor_from_density(density_from_pure(random_pure_state(s)))(3, 0, 0);
  }
  EXPECT_LT(std::abs(sum / kStates), 5.0 / std::sqrt(static_cast<double>(kStates)));
}

TEST(ghz_state, quarter_turn_fixtures) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto plus = ghz_state(kPi / 4, 0.0).amplitudes();
  const auto minus = ghz_state(kPi / 4, kPi).amplitudes();
  for (int i = 0; i < 8; ++i) {
    const double p = (i == 0 || i == 7) ? h : 0.0;
    const double m = i == 0 ? h : (i == 7 ? -h : 0.0);
    EXPECT_NEAR(std::abs(plus[i] - Complex(p)), 0.0, 1e-15) << i;
    EXPECT_NEAR(std::abs(minus[i] - Complex(m)), 0.0, 1e-15) << i;
  }
}

TEST(ghz_state, negative_trig_values_keep_amplitudes_exact) {
  const auto amps = ghz_state(2.0, 0.3).amplitudes();
  EXPECT_NEAR(std::abs(amps[0] - Complex(std::cos(2.0))), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(amps[7] - std::polar(1.0, 0.3) * std::sin(2.0)), 0.0, 1e-15);
}

TEST(ghz_state, theta_range_warning) {
  EXPECT_FALSE(ghz_theta_warning(kPi / 4).has_value());
  EXPECT_TRUE(ghz_theta_warning(0.0).has_value());
  EXPECT_TRUE(ghz_theta_warning(kPi / 2).has_value());
  EXPECT_TRUE(ghz_theta_warning(-0.1).has_value());
}

TEST(diosi_state, amplitudes_at_zero_phase) {
  const double r = 1.0 / std::sqrt(3.0);
  const auto amps = diosi_state(0.0).amplitudes();
  for (int i = 0; i < 8; ++i) {
    const double expected = (i == 0 || i == 2 || i == 7) ? r : 0.0;
    EXPECT_NEAR(std::abs(amps[i] - Complex(expected)), 0.0, 1e-15) << i;
  }
}

TEST(diosi_state, phase_only_visible_in_ac_block) {
  const CorrelationTensor ref = tensor_from_density(density_from_pure(diosi_state(0.5)));
  for (double phi : {1.0, 2.0}) {
    const PureState psi = diosi_state(phi);
    EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-15);
    const CorrelationTensor a = tensor_from_density(density_from_pure(psi));
    EXPECT_EQ(reduced_pair(a, PairLabel::kAB), reduced_pair(ref, PairLabel::kAB));
    EXPECT_EQ(reduced_pair(a, PairLabel::kBC), reduced_pair(ref, PairLabel::kBC));
    const auto ac = reduced_pair(a, PairLabel::kAC);
    const auto ac_ref = reduced_pair(ref, PairLabel::kAC);
    double diff = 0.0;
    for (int e = 0; e < 16; ++e) diff = std::max(diff, std::abs(ac[e] - ac_ref[e]));
    EXPECT_GT(diff, 0.1) << phi;
  }
}

TEST(basis_state, rejects_out_of_range) {
  EXPECT_THROW(basis_state(8), std::out_of_range);
  EXPECT_THROW(basis_state(-1), std::out_of_range);
}

TEST(state_io, state_round_trip) {
  // The file holds Cartesian components; reading goes back through polar form.
  const PureState psi = random_pure_state(5);
  std::stringstream buffer;
  write_state(buffer, psi);
  const PureState back = read_state(buffer);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(back.amplitude(i) - psi.amplitude(i)), 0.0, 1e-15);
}

TEST(state_io, tensor_round_trip_is_exact) {
  const CorrelationTensor a = tensor_from_density(depolarized(9, 0.4));
  std::stringstream buffer;
  write_tensor(buffer, a);
  EXPECT_EQ(read_tensor(buffer).values(), a.values());
}

TEST(state_io, rejects_malformed_input) {
  std::stringstream short_state("1 0\n0 0\n");
  EXPECT_THROW(read_state(short_state), std::runtime_error);
  std::stringstream bad_tensor("0 0 1 1\n");
  EXPECT_THROW(read_tensor(bad_tensor), std::runtime_error);
}
