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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "uqf/circuits/circuit.hpp"
#include "uqf/error.hpp"
#include "uqf/povm.hpp"
#include "uqf/qmath.hpp"

namespace uqf {

// Two-qubit pure state α0|00⟩ + α1|11⟩ in Schmidt form.
struct PureState2x2 {
  double alpha0 = 1.0;
  double alpha1 = 0.0;

  // cos x|00⟩ + sin x|11⟩, x in [0, π/4].
  static PureState2x2 from_angle(double x) { return {std::cos(x), std::sin(x)}; }

  double angle() const { return std::atan2(alpha1, alpha0); }

  void validate() const {
    if (!(alpha0 >= alpha1 - 1e-12 && alpha1 >= 0.0) ||
        std::abs(alpha0 * alpha0 + alpha1 * alpha1 - 1.0) > 1e-12) {
      throw Error(ErrorCode::kRange, "Schmidt pair (" + std::to_string(alpha0) + ", " +
                                         std::to_string(alpha1) +
                                         ") must satisfy a0 >= a1 >= 0, a0^2 + a1^2 = 1");
    }
  }

  StateVector to_state() const {
    return StateVector({Label::A, Label::B}, {alpha0, 0.0, 0.0, alpha1});
  }
};

namespace detail {

inline double clamp_unit(double v) {
  if (v > 1.0 && v < 1.0 + 1e-12) return 1.0;
  if (v < -1.0 && v > -1.0 - 1e-12) return -1.0;
  return v;
}

inline double half_arccos(double v) {
  v = clamp_unit(v);
  if (v > 1.0 || v < -1.0) {
    throw Error(ErrorCode::kInfeasible, "arccos argument " + std::to_string(v) + " out of range");
  }
  return 0.5 * std::acos(v);
}

// Shared CNOT skeleton: ancilla prepared as cos θ|0⟩ + sin θ|1⟩, A rotated
// into the |±⟩ basis before the CNOT and back afterwards.
inline AncillaCircuit cnot_skeleton(double theta) {
  AncillaCircuit c;
  c.theta = theta;
  c.ancilla_prep = gates::rotation(theta);
  c.pre_local_a = gates::hadamard();
  c.post_local_a = gates::hadamard();
  c.interaction = gates::cnot();
  return c;
}

}  // namespace detail

// Filter F(α) via CNOT with θ = α/2 and measurement in
// |e0⟩ = cos θ|0⟩ − sin θ|1⟩, |e1⟩ = sin θ|0⟩ + cos θ|1⟩.
inline AncillaCircuit synthesize_filter(FilterSpec spec) {
  detail::require_angle_range(spec.alpha, "filter alpha");
  const double alpha = std::clamp(spec.alpha, 0.0, std::numbers::pi / 2);
  const double theta = alpha / 2.0;
  AncillaCircuit c = detail::cnot_skeleton(theta);
  c.measure_basis = {Vec2{std::cos(theta), -std::sin(theta)},
                     Vec2{std::sin(theta), std::cos(theta)}};
  return c;
}

struct ConversionPlan {
  AncillaCircuit circuit;
  double filter_alpha = 0.0;           // cos α = tan x / tan y
  double predicted_probability = 1.0;  // sin²x / sin²y
};

// Optimal conversion cos x|00⟩ + sin x|11⟩ → cos y|00⟩ + sin y|11⟩,
// 0 ≤ x ≤ y ≤ π/4. Outcome 0 is success.
inline ConversionPlan synthesize_conversion(double x, double y) {
  constexpr double kTol = 1e-12;
  if (!(x >= -kTol && y <= std::numbers::pi / 4 + kTol && y >= -kTol && x <= std::numbers::pi / 4 + kTol)) {
    throw Error(ErrorCode::kRange, "conversion angles must lie in [0, pi/4]");
  }
  if (x > y + kTol) {
    throw Error(ErrorCode::kNotConvertible,
                "source must majorize target (phi ≻ psi): need x <= y, got x = " +
                    std::to_string(x) + ", y = " + std::to_string(y));
  }
  x = std::clamp(x, 0.0, std::numbers::pi / 4);
  y = std::clamp(y, x, std::numbers::pi / 4);
  ConversionPlan plan;
  if (y == 0.0) {
    plan.circuit = synthesize_filter({0.0});
    return plan;
  }
  const double ratio = std::min(std::tan(x) / std::tan(y), 1.0);
  plan.filter_alpha = 2.0 * detail::half_arccos(ratio);
  plan.circuit = synthesize_filter({plan.filter_alpha});
  const double sx = std::sin(x), sy = std::sin(y);
  plan.predicted_probability = (sx * sx) / (sy * sy);
  return plan;
}

inline ConversionPlan synthesize_conversion(const PureState2x2& source, const PureState2x2& target) {
  source.validate();
  target.validate();
  return synthesize_conversion(source.angle(), target.angle());
}

struct DilutionPlan {
  AncillaCircuit circuit;
  double gamma = 0.0;  // α0² = (1 + cos γ)/2
  double delta = 0.0;  // sin 2δ = 2 β0 β1 / sin γ
  double theta = 0.0;  // cos 2θ = sin 2δ
  // B-side bookkeeping Alice cannot apply: (lead ⊗ bob_frame) maps the
  // source onto (|00⟩ + |1⟩(cos γ|0⟩ + sin γ|1⟩))/√2, and bob_corrections[i]
  // takes outcome i's corrected state to β0|00⟩ + β1|11⟩.
  ComplexMatrix bob_frame = ComplexMatrix::identity(2);
  std::array<ComplexMatrix, 2> bob_corrections{ComplexMatrix::identity(2),
                                               ComplexMatrix::identity(2)};
};

// Deterministic dilution (α0, α1) → (β0, β1) with α0 ≤ β0.
inline DilutionPlan synthesize_dilution(const PureState2x2& source, const PureState2x2& target) {
  source.validate();
  target.validate();
  if (source.alpha1 < 1e-12) {
    throw Error(ErrorCode::kSourceProduct, "dilution source must be entangled (alpha1 > 0)");
  }
  if (source.alpha0 > target.alpha0 + 1e-12) {
    throw Error(ErrorCode::kNotDilutable,
                "dilution needs phi ≺ psi: alpha0 = " + std::to_string(source.alpha0) +
                    " exceeds beta0 = " + std::to_string(target.alpha0));
  }
  const double a0 = source.alpha0, a1 = source.alpha1;
  const double b0 = target.alpha0, b1 = target.alpha1;

  DilutionPlan plan;
  plan.gamma = std::atan2(2.0 * a0 * a1, a0 * a0 - a1 * a1);
  const double sin_gamma = 2.0 * a0 * a1;
  const double arg = std::min(detail::clamp_unit(2.0 * b0 * b1 / sin_gamma), 1.0);
  plan.delta = 0.5 * std::asin(arg);
  plan.theta = detail::half_arccos(arg);

  // Alice's pre-rotation: Schmidt-match the source against the |φ'⟩ form.
  const double r = std::numbers::sqrt2 / 2.0;
  const StateVector phi_prime({Label::A, Label::B},
                              {r, 0.0, r * std::cos(plan.gamma), r * std::sin(plan.gamma)});
  const SchmidtForm sf = schmidt_decompose(phi_prime, Label::A);
  const ComplexMatrix lead = ComplexMatrix::from_columns(sf.left[0], sf.left[1]);
  plan.bob_frame = ComplexMatrix::from_columns(sf.right[0].as_vec2(), sf.right[1].as_vec2());

  AncillaCircuit c = detail::cnot_skeleton(plan.theta);
  c.theta = plan.theta;
  c.input_local_a = lead;
  const double ct = std::cos(plan.theta), st = std::sin(plan.theta);
  const double cd = std::cos(plan.delta), sd = std::sin(plan.delta);
  c.post_local_e = connecting_unitary({ct, st}, {ct, -st}, {cd, sd}, {sd, cd});

  // Schmidt-matching corrections on A, computed on the actual source.
  const auto branches = run_circuit(c, source.to_state());
  for (std::size_t i = 0; i < 2; ++i) {
    if (!branches[i].post_state) continue;
    const SchmidtForm bf = schmidt_decompose(*branches[i].post_state, Label::A);
    c.corrections[i] = ComplexMatrix::from_columns(bf.left[0], bf.left[1]).adjoint();
    plan.bob_corrections[i] =
        ComplexMatrix::from_columns(bf.right[0].as_vec2(), bf.right[1].as_vec2()).adjoint();
  }
  plan.circuit = c;
  return plan;
}

// General two-outcome POVM from its canonical form: θ = (α − β)/2, V_E maps
// cos θ|0⟩ ± sin θ|1⟩ to cos α|0⟩ + sin α|1⟩ and cos β|0⟩ + sin β|1⟩, the
// ancilla is read out in the computational basis and V_i is applied after
// outcome i.
inline AncillaCircuit synthesize_general_povm(const CanonicalPovm& cp) {
  detail::require_angle_range(cp.alpha, "alpha");
  detail::require_angle_range(cp.beta, "beta");
  if (cp.alpha < cp.beta - 1e-12) {
    throw Error(ErrorCode::kInvalidPovm, "canonical POVM needs alpha >= beta");
  }
  for (const ComplexMatrix* m : {&cp.u, &cp.v0, &cp.v1}) {
    if (m->rows() != 2 || m->cols() != 2 || unitarity_residual(*m) > 1e-10) {
      throw Error(ErrorCode::kInvalidPovm, "canonical POVM factors must be 2x2 unitaries");
    }
  }
  const double theta = std::max(cp.alpha - cp.beta, 0.0) / 2.0;
  AncillaCircuit c = detail::cnot_skeleton(theta);
  c.input_local_a = cp.u;
  const double ct = std::cos(theta), st = std::sin(theta);
  c.post_local_e = connecting_unitary({ct, st}, {ct, -st}, gates::real_ket(cp.alpha),
                                      gates::real_ket(cp.beta));
  c.corrections = {cp.v0, cp.v1};
  return c;
}

}  // namespace uqf
