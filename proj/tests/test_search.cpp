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
#include "uqf/search.hpp"

using namespace uqf;
using namespace uqf::testing;

namespace {

constexpr double kPi = std::numbers::pi;

ComplexMatrix pauli_pair(int k) {
  const ComplexMatrix s = k == 1 ? gates::pauli_x() : k == 2 ? gates::pauli_y() : gates::pauli_z();
  return kron(s, s);
}

// Reference exponential exp(i Σ a_k σ_k⊗σ_k) from Eigen's Hermitian solver.
DenseMatrix ud_oracle(const CanonicalGateParams& p) {
  const DenseMatrix h = p.a1 * to_dense(pauli_pair(1)) + p.a2 * to_dense(pauli_pair(2)) +
                        p.a3 * to_dense(pauli_pair(3));
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const Eigen::VectorXcd ph =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, 1.0)).array().exp().matrix();
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

ScanConfig small_scan() {
  ScanConfig cfg;
  cfg.grid_points = 6;
  cfg.refine_count = 3000;
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST(BuildUd, ZeroIsIdentity) {
  EXPECT_LT(max_abs_diff(build_ud({0, 0, 0}), ComplexMatrix::identity(4)), 1e-15);
}

TEST(BuildUd, MatchesDenseExponential) {
  Rng rng(40);
  std::uniform_real_distribution<double> ang(-1.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    const CanonicalGateParams p{ang(rng), ang(rng), ang(rng)};
    EXPECT_LT((to_dense(build_ud(p)) - ud_oracle(p)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BuildUd, CnotEquivalentEigenphases) {
  const DenseMatrix u = to_dense(build_ud({kPi / 4, 0, 0}));
  Eigen::ComplexEigenSolver<DenseMatrix> es(u);
  std::vector<double> phases;
  for (int i = 0; i < 4; ++i) phases.push_back(std::arg(es.eigenvalues()(i)));
  std::sort(phases.begin(), phases.end());
  EXPECT_NEAR(phases[0], -kPi / 4, 1e-12);
  EXPECT_NEAR(phases[1], -kPi / 4, 1e-12);
  EXPECT_NEAR(phases[2], kPi / 4, 1e-12);
  EXPECT_NEAR(phases[3], kPi / 4, 1e-12);
}

TEST(BuildUd, CnotEquivalentHasCnotLocalInvariant) {
  // G1 = Tr(m)^2 / (16 det U) with m = U_B^T U_B in the magic basis; CNOT has G1 = 0.
  const double r = std::numbers::sqrt2 / 2;
  const cplx i(0.0, 1.0);
  DenseMatrix q(4, 4);
  q << r, 0, 0, i * r, 0, i * r, r, 0, 0, i * r, -r, 0, r, 0, 0, -i * r;
  for (const DenseMatrix& u : {to_dense(build_ud({kPi / 4, 0, 0})), to_dense(gates::cnot())}) {
    const DenseMatrix ub = q.adjoint() * u * q;
    const DenseMatrix m = ub.transpose() * ub;
    const cplx g1 = m.trace() * m.trace() / (16.0 * u.determinant());
    EXPECT_LT(std::abs(g1), 1e-12);
  }
}

TEST(BuildUd, CommutesWithPauliPairs) {
  Rng rng(41);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix u = build_ud({ang(rng), ang(rng), ang(rng)});
    ASSERT_LT(unitarity_residual(u), 1e-12);
    for (int k = 1; k <= 3; ++k) ASSERT_LT(max_abs(commutator(u, pauli_pair(k))), 1e-10);
  }
}

TEST(BuildUd, AdditiveInParameters) {
  Rng rng(42);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const CanonicalGateParams p{ang(rng), ang(rng), ang(rng)}, q{ang(rng), ang(rng), ang(rng)};
    const CanonicalGateParams s{p.a1 + q.a1, p.a2 + q.a2, p.a3 + q.a3};
    ASSERT_LT(max_abs_diff(build_ud(p) * build_ud(q), build_ud(s)), 1e-10);
  }
}

TEST(WeylChamber, Membership) {
  EXPECT_TRUE((CanonicalGateParams{kPi / 4, kPi / 8, kPi / 8}).in_weyl_chamber());
  EXPECT_TRUE((CanonicalGateParams{kPi / 4, 0, 0}).in_weyl_chamber());
  EXPECT_FALSE((CanonicalGateParams{0.1, 0.2, 0}).in_weyl_chamber());
  EXPECT_FALSE((CanonicalGateParams{1.0, 0, 0}).in_weyl_chamber());
  for (const auto& p : weyl_chamber_grid(5)) EXPECT_TRUE(p.in_weyl_chamber());
}

TEST(C1Residual, IdentityAlwaysZero) {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) EXPECT_LT(c1_residual({0, 0, 0}, random_frame(rng)), 1e-15);
}

TEST(C1Residual, RandomFrameIsGenericallyPositive) {
  Rng rng(44);
  int positive = 0;
  for (int i = 0; i < 100; ++i) positive += c1_residual({kPi / 4, 0, 0}, random_frame(rng)) > 1e-6;
  EXPECT_GT(positive, 90);
}

TEST(C1Residual, AgreesWithIsProduct) {
  Rng rng(45);
  for (int i = 0; i < 200; ++i) {
    const CanonicalGateParams p{0.7, 0.3, -0.1};
    const LocalFrame f = random_frame(rng);
    const TheoremReport rep = verify_theorem_conditions(build_ud(p), f.u_e(), f.u_a());
    EXPECT_NEAR(c1_residual(p, f), rep.psi.residual, 1e-14);
  }
}

TEST(A0Of, IdentityGivesOne) {
  Rng rng(46);
  for (int i = 0; i < 200; ++i) EXPECT_NEAR(a0_of({0, 0, 0}, random_frame(rng)), 1.0, 1e-12);
}

TEST(A0Of, RejectsFramesOutsideC1) {
  LocalFrame f;
  f.e_angles = {0.3, 0.2, 0.1};
  f.a_angles = {0.7, 0.4, 0.9};
  ASSERT_GT(c1_residual({kPi / 4, 0, 0}, f), 1e-3);
  try {
    a0_of({kPi / 4, 0, 0}, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConstraintNotSatisfied);
  }
}

TEST(A0Of, CnotFrameFamily) {
  // On CNOT itself with ancilla rotation θ and A in the ± basis, a0 = cos 2θ.
  for (double th : {0.0, 0.1, kPi / 8, 0.5, kPi / 4}) {
    LocalFrame f;
    f.e_angles = {th, 0, 0};
    f.a_angles = {kPi / 4, 0, 0};  // real rotation by π/4: columns |+⟩, |−⟩ up to sign
    const double a0 = a0_of(gates::cnot(), f);
    EXPECT_NEAR(a0, std::abs(std::cos(2 * th)), 1e-12) << th;
  }
}

TEST(A0Of, MatchesTheoremReportOnC1Frames) {
  const CanonicalGateParams p{kPi / 4, 0, 0};
  for (const LocalFrame& f : c1_frames(build_ud(p), 40, 47)) {
    const TheoremReport rep = verify_theorem_conditions(build_ud(p), f.u_e(), f.u_a(), kC1Tol);
    ASSERT_TRUE(rep.psi.is_product);
    EXPECT_NEAR(a0_of(p, f), rep.a0, 1e-10);
    EXPECT_GE(rep.a0, -1e-12);
    EXPECT_LE(rep.a0, 1 + 1e-9);
  }
}

TEST(A0Of, InvariantUnderPhaseOnlyFrameChange) {
  // The third SU(2) angle of U_A only rephases its columns; a0 must not move.
  const CanonicalGateParams p{kPi / 4, 0, 0};
  for (LocalFrame f : c1_frames(build_ud(p), 20, 48)) {
    const double before = a0_of(p, f);
    f.a_angles[2] += 0.77;
    f.e_angles[2] -= 1.3;
    ASSERT_LT(c1_residual(p, f), 1e-8);
    EXPECT_NEAR(a0_of(p, f), before, 1e-10);
  }
}

TEST(CoverageGap, EdgesCount) {
  EXPECT_DOUBLE_EQ(coverage_gap({}), 1.0);
  EXPECT_DOUBLE_EQ(coverage_gap({1.0}), 1.0);
  EXPECT_DOUBLE_EQ(coverage_gap({0.0, 0.5, 1.0}), 0.5);
  EXPECT_NEAR(coverage_gap({0.1, 0.15, 0.9}), 0.75, 1e-15);
}

TEST(ScanA0Range, NoInteraction) {
  const ScanReport rep = scan_a0_range({0, 0, 0}, small_scan());
  ASSERT_FALSE(rep.achieved_a0.empty());
  for (double a : rep.achieved_a0) EXPECT_NEAR(a, 1.0, 1e-9);
  EXPECT_FALSE(rep.is_candidate);
  EXPECT_NEAR(rep.coverage_gap, 1.0, 1e-9);
}

TEST(ScanA0Range, CnotEquivalentIsCandidate) {
  const ScanReport rep = scan_a0_range({kPi / 4, 0, 0}, small_scan());
  EXPECT_TRUE(rep.is_candidate) << "gap " << rep.coverage_gap;
  EXPECT_LT(rep.achieved_a0.front(), 0.01);
  EXPECT_GT(rep.achieved_a0.back(), 0.99);
  for (double a : rep.achieved_a0) {
    EXPECT_GE(a, -1e-9);
    EXPECT_LE(a, 1 + 1e-9);
  }
}

TEST(ScanA0Range, SamplesCarryResidualAndAcceptance) {
  const ScanReport rep = scan_a0_range({kPi / 4, 0, 0}, small_scan());
  std::size_t accepted = 0;
  for (const ScanSample& s : rep.samples) {
    if (s.a0) {
      ++accepted;
      EXPECT_LT(s.c1_residual, kC1Tol);
    } else {
      EXPECT_GE(s.c1_residual, kC1Tol);
    }
  }
  EXPECT_EQ(accepted, rep.achieved_a0.size());
  EXPECT_TRUE(std::is_sorted(rep.achieved_a0.begin(), rep.achieved_a0.end()));
}

TEST(ScanA0Range, DeterministicForSeedAndThreadCount) {
  ScanConfig cfg = small_scan();
  cfg.seed = 9;
  const ScanReport a = scan_a0_range({0.7, 0.2, 0.1}, cfg);
  const ScanReport b = scan_a0_range({0.7, 0.2, 0.1}, cfg);
  cfg.threads = 3;
  const ScanReport c = scan_a0_range({0.7, 0.2, 0.1}, cfg);
  EXPECT_EQ(a.achieved_a0, b.achieved_a0);
  EXPECT_EQ(a.achieved_a0, c.achieved_a0);
}

TEST(ScanA0Range, SeedChangesJitter) {
  ScanConfig cfg = small_scan();
  cfg.refine_count = 20;
  const ScanReport a = scan_a0_range({kPi / 4, 0, 0}, cfg);
  cfg.seed = 1;
  const ScanReport b = scan_a0_range({kPi / 4, 0, 0}, cfg);
  EXPECT_NE(a.samples.front().frame.e_angles, b.samples.front().frame.e_angles);
}

TEST(ScanA0Range, TwoAngleFamilyFixesThirdAngle) {
  ScanConfig cfg = small_scan();
  cfg.two_angle = true;
  const ScanReport rep = scan_a0_range({kPi / 4, 0, 0}, cfg);
  for (const ScanSample& s : rep.samples) {
    EXPECT_EQ(s.frame.e_angles[2], 0.0);
    EXPECT_EQ(s.frame.a_angles[2], 0.0);
  }
  EXPECT_TRUE(rep.is_candidate) << "gap " << rep.coverage_gap;
}

TEST(ScanA0Range, UpperRangeLimitedForMixedInteraction) {
  // With a1 = π/4 the reachable a0 tops out at cos(2 a2) in this family;
  // (π/4, π/8, π/8) does not reach a0 = 1.
  const ScanReport rep = scan_a0_range({kPi / 4, kPi / 8, kPi / 8}, small_scan());
  ASSERT_FALSE(rep.achieved_a0.empty());
  EXPECT_NEAR(rep.achieved_a0.back(), std::numbers::sqrt2 / 2, 1e-3);
  EXPECT_FALSE(rep.is_candidate);
}

TEST(MaxOutputEntanglement, Reference) {
  EntanglementConfig cfg;
  cfg.threads = 1;
  EXPECT_NEAR(max_output_entanglement({0, 0, 0}, cfg), 0.0, 1e-12);
  EXPECT_NEAR(max_output_entanglement({kPi / 4, 0, 0}, cfg), 1.0, 1e-6);
  const double half = max_output_entanglement({kPi / 8, 0, 0}, cfg);
  EXPECT_LT(half, 1.0 - 1e-3);
  // Regression baseline: H2(sin² π/8).
  EXPECT_NEAR(half, binary_entropy(0.14644660940672627), 1e-6);
}

TEST(ConjectureSweep, SinglePoints) {
  ScanConfig sc = small_scan();
  EntanglementConfig ec;
  ec.threads = 1;
  const auto rows = conjecture_sweep({{kPi / 4, 0, 0}, {0, 0, 0}}, sc, ec);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].max_entanglement, 1.0, 1e-6);
  EXPECT_TRUE(rows[0].is_candidate);
  EXPECT_NEAR(rows[1].max_entanglement, 0.0, 1e-12);
  EXPECT_FALSE(rows[1].is_candidate);
}

TEST(WeylChamberGrid, Size) {
  EXPECT_EQ(weyl_chamber_grid(1).size(), 1u);
  const auto g = weyl_chamber_grid(5);
  EXPECT_FALSE(g.empty());
  EXPECT_LE(g.size(), 125u);
}
