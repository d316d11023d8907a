// Copyright 2026 The UQF Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support/oracles.hpp"
#include "uqf/povm.hpp"

using namespace uqf;
using namespace uqf::testing;

namespace {

constexpr double kPi = std::numbers::pi;

void expect_reconstructs(const TwoOutcomePovm& p, const CanonicalPovm& c, double tol) {
  const auto r = c.reconstruct();
  EXPECT_LT(max_abs_diff(r.m0, p.m0), tol);
  EXPECT_LT(max_abs_diff(r.m1, p.m1), tol);
}

}  // namespace

TEST(CheckCompleteness, TrivialPair) { EXPECT_EQ(check_completeness(TwoOutcomePovm{}), 0.0); }

TEST(CheckCompleteness, Filter) {
  for (double a : {0.0, 0.3, 1.0, kPi / 2}) EXPECT_LT(check_completeness(make_filter({a})), 1e-15);
}

TEST(CheckCompleteness, IsometrySplit) {
  Rng rng(20);
  for (int i = 0; i < 1000; ++i) ASSERT_LT(check_completeness(random_povm(rng)), 1e-12);
}

TEST(CheckCompleteness, ReportsViolation) {
  TwoOutcomePovm p{ComplexMatrix::identity(2), ComplexMatrix::identity(2)};
  EXPECT_NEAR(check_completeness(p), 1.0, 1e-15);
}

TEST(MakeFilter, Values) {
  const TwoOutcomePovm f0 = make_filter({0.0});
  EXPECT_LT(max_abs_diff(f0.m0, ComplexMatrix::identity(2)), 1e-16);
  EXPECT_LT(max_abs(f0.m1), 1e-16);
  const TwoOutcomePovm fp = make_filter({kPi / 2});
  EXPECT_LT(max_abs_diff(fp.m0, ComplexMatrix::diag({0.0, 1.0})), 1e-15);
  EXPECT_LT(max_abs_diff(fp.m1, ComplexMatrix::diag({1.0, 0.0})), 1e-15);
}

TEST(MakeFilter, RejectsOutOfRange) {
  for (double a : {-0.1, 2.0, std::nan("")}) {
    try {
      make_filter({a});
      FAIL() << a;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kRange);
    }
  }
}

TEST(CanonicalForm, AlreadyCanonical) {
  const double a = 1.1, b = 0.4;
  const TwoOutcomePovm p{ComplexMatrix::diag({std::cos(a), std::cos(b)}),
                         ComplexMatrix::diag({std::sin(a), std::sin(b)})};
  const CanonicalPovm c = canonical_form(p);
  EXPECT_NEAR(c.alpha, a, 1e-12);
  EXPECT_NEAR(c.beta, b, 1e-12);
  // Already ordered with α ≥ β, so the shared eigenbasis is the computational one.
  EXPECT_LT(max_abs_diff(c.u, ComplexMatrix::identity(2)), 1e-12);
  EXPECT_LT(max_abs_diff(c.v0, ComplexMatrix::identity(2)), 1e-12);
  EXPECT_LT(max_abs_diff(c.v1, ComplexMatrix::identity(2)), 1e-12);
  expect_reconstructs(p, c, 1e-12);
}

TEST(CanonicalForm, SwappedDiagonalPermutesBasis) {
  const double a = 0.2, b = 1.3;
  const TwoOutcomePovm p{ComplexMatrix::diag({std::cos(a), std::cos(b)}),
                         ComplexMatrix::diag({std::sin(a), std::sin(b)})};
  const CanonicalPovm c = canonical_form(p);
  EXPECT_NEAR(c.alpha, b, 1e-12);
  EXPECT_NEAR(c.beta, a, 1e-12);
  expect_reconstructs(p, c, 1e-12);
}

TEST(CanonicalForm, RecoversKnownFactors) {
  Rng rng(21);
  const double a = 1.2, b = 0.35;
  const ComplexMatrix w0 = random_unitary2(rng), w1 = random_unitary2(rng);
  const TwoOutcomePovm p{w0 * ComplexMatrix::diag({std::cos(a), std::cos(b)}),
                         w1 * ComplexMatrix::diag({std::sin(a), std::sin(b)})};
  const CanonicalPovm c = canonical_form(p);
  EXPECT_NEAR(c.alpha, a, 1e-12);
  EXPECT_NEAR(c.beta, b, 1e-12);
  // U is diagonal up to column phases, and V_i carries the matching phases.
  EXPECT_NEAR(std::abs(c.u(0, 0)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.u(1, 1)), 1.0, 1e-12);
  EXPECT_GT(operator_fidelity(c.v0 * c.u, w0), 1 - 1e-12);
  EXPECT_GT(operator_fidelity(c.v1 * c.u, w1), 1 - 1e-12);
  expect_reconstructs(p, c, 1e-12);
}

TEST(CanonicalForm, FilterGivesAlphaAndZero) {
  for (double a : {0.0, 0.1, 0.7, 1.0471975511965976, kPi / 2}) {
    const CanonicalPovm c = canonical_form(make_filter({a}));
    EXPECT_NEAR(c.alpha, a, 1e-10);
    EXPECT_NEAR(c.beta, 0.0, 1e-10);
    expect_reconstructs(make_filter({a}), c, 1e-12);
  }
}

TEST(CanonicalForm, RejectsIncompletePair) {
  try {
    canonical_form({ComplexMatrix::identity(2), ComplexMatrix::identity(2)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidPovm);
  }
}

TEST(CanonicalForm, RandomPovmsReconstructAndAreOrdered) {
  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const TwoOutcomePovm p = random_povm(rng);
    const CanonicalPovm c = canonical_form(p);
    ASSERT_GE(c.alpha, c.beta);
    ASSERT_GE(c.beta, 0.0);
    ASSERT_LE(c.alpha, kPi / 2 + 1e-15);
    ASSERT_LT(unitarity_residual(c.u), 1e-10);
    ASSERT_LT(unitarity_residual(c.v0), 1e-10);
    ASSERT_LT(unitarity_residual(c.v1), 1e-10);
    const auto r = c.reconstruct();
    ASSERT_LT(max_abs_diff(r.m0, p.m0), 1e-9);
    ASSERT_LT(max_abs_diff(r.m1, p.m1), 1e-9);
  }
}

TEST(CanonicalForm, SpectrumMatchesEigenOracle) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const TwoOutcomePovm p = random_povm(rng);
    const CanonicalPovm c = canonical_form(p);
    const auto ev = hermitian_spectrum(to_dense(p.m0.adjoint() * p.m0));
    const double ca = std::cos(c.alpha), cb = std::cos(c.beta);
    EXPECT_NEAR(cb * cb, ev[0], 1e-12);
    EXPECT_NEAR(ca * ca, ev[1], 1e-12);
  }
}

TEST(CanonicalForm, Idempotent) {
  Rng rng(24);
  for (int i = 0; i < 1000; ++i) {
    const CanonicalPovm c = canonical_form(random_povm(rng));
    const CanonicalPovm again = canonical_form(c.reconstruct());
    ASSERT_NEAR(again.alpha, c.alpha, 1e-9);
    ASSERT_NEAR(again.beta, c.beta, 1e-9);
  }
}

TEST(CanonicalForm, DegenerateSpectrum) {
  // M0 = cos a·W, M1 = sin a·W': every basis diagonalizes both.
  Rng rng(25);
  const double a = 0.6;
  const TwoOutcomePovm p{random_unitary2(rng) * std::cos(a), random_unitary2(rng) * std::sin(a)};
  const CanonicalPovm c = canonical_form(p);
  EXPECT_NEAR(c.alpha, a, 1e-12);
  EXPECT_NEAR(c.beta, a, 1e-12);
  expect_reconstructs(p, c, 1e-12);
}

TEST(PovmProperty, EffectOperatorsCommute) {
  Rng rng(26);
  for (int i = 0; i < 1000; ++i) {
    const TwoOutcomePovm p = random_povm(rng);
    ASSERT_LT(max_abs(commutator(p.m0.adjoint() * p.m0, p.m1.adjoint() * p.m1)), 1e-10);
  }
}

TEST(PovmProperty, FilterRoundTrip) {
  for (int i = 0; i <= 1000; ++i) {
    const double a = kPi / 2 * i / 1000.0;
    ASSERT_NEAR(canonical_form(make_filter({a})).alpha, a, 1e-10) << a;
  }
}

TEST(ApplyPovm, TrivialPair) {
  Rng rng(27);
  const StateVector s = random_state({Label::A, Label::B}, rng);
  const auto br = apply_povm(TwoOutcomePovm{}, s, Label::A);
  EXPECT_NEAR(br[0].probability, 1.0, 1e-15);
  EXPECT_EQ(br[1].probability, 0.0);
  EXPECT_FALSE(br[1].state.has_value());
  ASSERT_TRUE(br[0].state.has_value());
  EXPECT_GT(fidelity(*br[0].state, s), 1 - 1e-15);
}

TEST(ApplyPovm, ProjectiveOnPlus) {
  const auto br = apply_povm(make_filter({kPi / 2}), StateVector::qubit(Label::A, gates::kPlus),
                             Label::A);
  EXPECT_NEAR(br[0].probability, 0.5, 1e-15);
  EXPECT_NEAR(br[1].probability, 0.5, 1e-15);
}

TEST(ApplyPovm, OptimalConversionFilter) {
  const double x = kPi / 6, y = kPi / 4;
  const double alpha = std::acos(std::tan(x) / std::tan(y));
  const StateVector s({Label::A, Label::B}, {std::cos(x), 0, 0, std::sin(x)});
  const auto br = apply_povm(make_filter({alpha}), s, Label::A);
  EXPECT_NEAR(br[0].probability, 0.5, 1e-12);
  const auto sv = schmidt_oracle(*br[0].state);
  EXPECT_NEAR(sv[0], std::cos(y), 1e-12);
  EXPECT_NEAR(sv[1], std::sin(y), 1e-12);
}

TEST(ApplyPovm, RejectsIncompleteOrMissingTarget) {
  const StateVector s = StateVector::basis({Label::A, Label::B}, 0);
  EXPECT_THROW(apply_povm({ComplexMatrix::identity(2), ComplexMatrix::identity(2)}, s, Label::A),
               Error);
  EXPECT_THROW(apply_povm(TwoOutcomePovm{}, s, Label::E), Error);
}

TEST(ApplyPovm, ProbabilitiesSumToOneAndMatchDenseOracle) {
  Rng rng(28);
  for (int i = 0; i < 1000; ++i) {
    const TwoOutcomePovm p = random_povm(rng);
    const StateVector s = random_state({Label::E, Label::A, Label::B}, rng);
    const auto br = apply_povm(p, s, Label::B);
    ASSERT_NEAR(br[0].probability + br[1].probability, 1.0, 1e-12);
    const Eigen::VectorXcd out0 = embed_three_qubit(p.m0, {2}) * to_dense(s);
    ASSERT_NEAR(br[0].probability, out0.squaredNorm(), 1e-12);
    ASSERT_TRUE(br[0].state.has_value());
    ASSERT_NEAR(br[0].state->norm(), 1.0, 1e-12);
  }
}
