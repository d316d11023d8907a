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

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "uqf/error.hpp"
#include "uqf/qmath.hpp"

namespace uqf {

inline constexpr double kCompletenessTol = 1e-9;

struct TwoOutcomePovm {
  ComplexMatrix m0 = ComplexMatrix::identity(2);
  ComplexMatrix m1 = ComplexMatrix(2, 2);

  const ComplexMatrix& operator[](std::size_t i) const { return i == 0 ? m0 : m1; }
};

// {N0, N1} = {V0 D0 U, V1 D1 U} with D0 = diag(cos α, cos β),
// D1 = diag(sin α, sin β) and α ≥ β, both in [0, π/2].
struct CanonicalPovm {
  ComplexMatrix v0 = ComplexMatrix::identity(2);
  ComplexMatrix v1 = ComplexMatrix::identity(2);
  ComplexMatrix u = ComplexMatrix::identity(2);
  double alpha = 0.0;
  double beta = 0.0;

  ComplexMatrix d0() const { return ComplexMatrix::diag({std::cos(alpha), std::cos(beta)}); }
  ComplexMatrix d1() const { return ComplexMatrix::diag({std::sin(alpha), std::sin(beta)}); }

  TwoOutcomePovm reconstruct() const { return {v0 * d0() * u, v1 * d1() * u}; }
};

// Filter F(α) = {diag(cos α, 1), diag(sin α, 0)}.
struct FilterSpec {
  double alpha = 0.0;
};

inline double check_completeness(const TwoOutcomePovm& p) {
  return max_abs(p.m0.adjoint() * p.m0 + p.m1.adjoint() * p.m1 - ComplexMatrix::identity(2));
}

namespace detail {

inline void require_angle_range(double a, const char* what) {
  if (!(a >= -1e-12 && a <= std::numbers::pi / 2 + 1e-12)) {
    throw Error(ErrorCode::kRange,
                std::string(what) + " = " + std::to_string(a) + " outside [0, pi/2]");
  }
}

// Columns of V given its images M w_j and the weights d_j; columns whose
// weight vanishes are completed against the determined one.
inline ComplexMatrix complete_columns(const std::array<Vec2, 2>& images,
                                      const std::array<double, 2>& weights) {
  constexpr double kZero = 1e-12;
  const bool has0 = weights[0] > kZero && norm(images[0]) > 0.0;
  const bool has1 = weights[1] > kZero && norm(images[1]) > 0.0;
  if (!has0 && !has1) return ComplexMatrix::identity(2);
  if (has0 && has1) {
    const Vec2 c0 = normalized(images[0]);
    const Vec2 raw = images[1];
    const cplx ov = inner(c0, raw);
    Vec2 c1{raw[0] - ov * c0[0], raw[1] - ov * c0[1]};
    c1 = norm(c1) > 1e-300 ? normalized(c1) : orthogonal_complement(c0);
    return ComplexMatrix::from_columns(c0, c1);
  }
  if (has0) {
    const Vec2 c0 = normalized(images[0]);
    return ComplexMatrix::from_columns(c0, canonical_phase(orthogonal_complement(c0)));
  }
  const Vec2 c1 = normalized(images[1]);
  // orthogonal_complement is an involution up to sign; rephase afterwards.
  return ComplexMatrix::from_columns(canonical_phase(orthogonal_complement(c1)), c1);
}

}  // namespace detail

// Reduces a complete pair {M0, M1} to V_i D_i U. The shared eigenbasis of
// M0†M0 and M1†M1 comes from the closed-form 2x2 eigensolver; the basis is
// ordered so that cos²α ≤ cos²β (α ≥ β).
inline CanonicalPovm canonical_form(const TwoOutcomePovm& p) {
  const double residual = check_completeness(p);
  if (!(residual < kCompletenessTol)) {
    throw Error(ErrorCode::kInvalidPovm,
                "completeness residual " + std::to_string(residual) + " exceeds 1e-9");
  }
  const ComplexMatrix h0 = p.m0.adjoint() * p.m0;
  const ComplexMatrix h1 = p.m1.adjoint() * p.m1;
  const double det0 =
      std::norm(p.m0(0, 0) * p.m0(1, 1) - p.m0(0, 1) * p.m0(1, 0));
  const Eigen2 eig = eigh2(h0, det0);

  std::array<Vec2, 2> w;
  if (eig.values[0] - eig.values[1] <= 1e-15) {
    w = {gates::kKet0, gates::kKet1};
  } else {
    // Smaller cos² first.
    w = {canonical_phase(eig.vectors.column(1)), canonical_phase(eig.vectors.column(0))};
  }

  auto quad = [](const ComplexMatrix& h, const Vec2& v) { return inner(v, h * v).real(); };
  std::array<double, 2> angle{};
  std::array<double, 2> cosines{}, sines{};
  for (std::size_t j = 0; j < 2; ++j) {
    const double c = std::sqrt(std::max(quad(h0, w[j]), 0.0));
    const double s = std::sqrt(std::max(quad(h1, w[j]), 0.0));
    angle[j] = std::atan2(s, c);
    cosines[j] = std::cos(angle[j]);
    sines[j] = std::sin(angle[j]);
  }
  if (angle[0] < angle[1]) {
    // Rounding can only reorder (near-)degenerate pairs.
    std::swap(w[0], w[1]);
    std::swap(angle[0], angle[1]);
    std::swap(cosines[0], cosines[1]);
    std::swap(sines[0], sines[1]);
  }

  CanonicalPovm out;
  out.alpha = angle[0];
  out.beta = angle[1];
  out.u = ComplexMatrix::from_columns(w[0], w[1]).adjoint();
  out.v0 = detail::complete_columns({p.m0 * w[0], p.m0 * w[1]}, cosines);
  out.v1 = detail::complete_columns({p.m1 * w[0], p.m1 * w[1]}, sines);
  return out;
}

inline TwoOutcomePovm make_filter(FilterSpec spec) {
  detail::require_angle_range(spec.alpha, "filter alpha");
  return {ComplexMatrix::diag({std::cos(spec.alpha), 1.0}),
          ComplexMatrix::diag({std::sin(spec.alpha), 0.0})};
}

struct PovmBranch {
  double probability = 0.0;
  std::optional<StateVector> state;  // normalized; absent for zero probability
};

inline constexpr double kZeroProbability = 1e-24;

// Applies {M0, M1} to subsystem `target` and returns both branches.
inline std::array<PovmBranch, 2> apply_povm(const TwoOutcomePovm& p, const StateVector& state,
                                            Label target) {
  const double residual = check_completeness(p);
  if (!(residual < kCompletenessTol)) {
    throw Error(ErrorCode::kInvalidPovm, "apply_povm: POVM is not complete");
  }
  std::array<PovmBranch, 2> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const StateVector post = apply_to_subsystems(p[i], state, {target});
    const double prob = post.norm_squared();
    out[i].probability = prob;
    if (prob > kZeroProbability) out[i].state = post.normalized();
  }
  return out;
}

}  // namespace uqf
