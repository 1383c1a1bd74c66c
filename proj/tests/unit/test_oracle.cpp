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

#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "tripletomo/consistency.hpp"
#include "tripletomo/pipeline.hpp"

using namespace tripletomo;
using tripletomo::testing::kPi;

namespace {

const oracle::EquationSet kImplemented = [](const CorrelationTensor& a) {
  return residuals_by_coefficient(a);
};

}  // namespace

TEST(idempotency_residual, projectors_and_mixed_states) {
  EXPECT_EQ(oracle::idempotency_residual(density_from_pure(basis_state(0))), 0.0);
  EXPECT_GT(oracle::idempotency_residual(DensityMatrix::maximally_mixed()), 0.3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_LT(oracle::idempotency_residual(density_from_pure(random_pure_state(seed))), 1e-12);
  }
}

TEST(dense_tensor, agrees_with_sparse_traces) {
  const DensityMatrix rho = DensityMatrix::mixture(0.6, density_from_pure(random_pure_state(1)),
                                                   density_from_pure(random_pure_state(2)));
  const auto dense = oracle::dense_tensor(rho);
  const auto sparse = tensor_from_density(rho).values();
  for (int t = 0; t < kTensorSize; ++t) EXPECT_NEAR(dense[t], sparse[t], 1e-14) << t;
}

TEST(symbolic_square, reproduces_matrix_square) {
  // The Pauli coefficients of rho^2 computed from the product table equal those of the
  // explicitly squared matrix.
  const DensityMatrix rho = DensityMatrix::mixture(0.3, density_from_pure(random_pure_state(4)),
                                                   DensityMatrix::maximally_mixed());
  const auto a = oracle::dense_tensor(rho);
  const auto square = oracle::symbolic_square(a);
  const Matrix8c rho2 = rho.matrix() * rho.matrix();
  for (int t = 0; t < kTensorSize; ++t) {
    const Complex direct = (rho2 * basis_operator(TripleIndex::from_linear(t))).trace();
    // rho^2 = (1/64) sum_g c_g S_g, so Tr(rho^2 S_t) = c_t / 8.
    EXPECT_NEAR(std::abs(square[t] / 8.0 - direct), 0.0, 1e-13) << t;
  }
}

TEST(symbolic_identity_residuals, vanish_exactly_on_pure_states) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = oracle::dense_tensor(density_from_pure(random_pure_state(seed)));
    for (double r : oracle::symbolic_identity_residuals(a)) EXPECT_LT(std::abs(r), 1e-12);
  }
}

TEST(validate_equation_set, product_and_ghz) {
  EXPECT_LT(oracle::validate_equation_set(density_from_pure(basis_state(0)), kImplemented), 1e-12);
  EXPECT_LT(oracle::validate_equation_set(density_from_pure(ghz_state(kPi / 4, kPi / 3)),
                                          kImplemented),
            1e-12);
  EXPECT_LT(oracle::validate_equation_set(density_from_pure(diosi_state(1.0)), kImplemented),
            1e-12);
}

TEST(validate_equation_set, haar_batch) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    worst = std::max(worst, oracle::validate_equation_set(
                                density_from_pure(random_pure_state(seed)), kImplemented));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(validate_equation_set, detects_a_sign_error) {
  // Flipping the sign of one epsilon-contraction in a single identity must be caught.
  const oracle::EquationSet broken = [](const CorrelationTensor& a) {
    auto r = residuals_by_coefficient(a);
    const int t = TripleIndex(1, 2, 0).linear();
    r[t] += a(3, 0, 0) * a(0, 1, 0);
    return r;
  };
  const double err =
      oracle::validate_equation_set(density_from_pure(random_pure_state(3)), broken);
  EXPECT_GT(err, 1e-3);
}

TEST(validate_equation_set, detects_an_error_invisible_on_pure_states) {
  // A term that vanishes on pure tensors only shows up at the depolarized evaluation point.
  const oracle::EquationSet broken = [](const CorrelationTensor& a) {
    auto r = residuals_by_coefficient(a);
    r[0] += sum_equation_residual(a);
    return r;
  };
  const double err =
      oracle::validate_equation_set(density_from_pure(random_pure_state(3)), broken);
  EXPECT_GT(err, 1e-3);
}

TEST(validate_equation_set, requires_a_pure_state) {
  EXPECT_THROW(oracle::validate_equation_set(DensityMatrix::maximally_mixed(), kImplemented),
               std::invalid_argument);
}

TEST(fidelity_with_pure, fixtures) {
  const PureState psi = random_pure_state(5);
  EXPECT_NEAR(oracle::fidelity_with_pure(psi, density_from_pure(psi)), 1.0, 1e-14);
  EXPECT_EQ(oracle::fidelity_with_pure(basis_state(0), density_from_pure(basis_state(7))), 0.0);
  EXPECT_NEAR(oracle::fidelity_with_pure(basis_state(0), DensityMatrix::maximally_mixed()),
              0.125, 1e-15);
}

TEST(fidelity_with_pure, exact_pipeline_reconstruction) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PureState psi = random_pure_state(seed);
    const PipelineOutcome o = run_pipeline(density_from_pure(psi));
    EXPECT_GT(oracle::fidelity_with_pure(psi, density_from_tensor(o.tensor)), 1.0 - 1e-10);
    EXPECT_LT(oracle::tensor_max_error(o.tensor, density_from_pure(psi)), 1e-9);
  }
}
