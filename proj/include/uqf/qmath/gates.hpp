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

#include <cmath>
#include <numbers>

#include "uqf/error.hpp"
#include "uqf/qmath/matrix.hpp"

namespace uqf::gates {

inline ComplexMatrix identity2() { return ComplexMatrix::identity(2); }
inline ComplexMatrix pauli_x() { return ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix(2, 2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
inline ComplexMatrix pauli_z() { return ComplexMatrix(2, 2, {1.0, 0.0, 0.0, -1.0}); }

// |0⟩ → |+⟩, |1⟩ → |−⟩.
inline ComplexMatrix hadamard() {
  const double h = std::numbers::sqrt2 / 2.0;
  return ComplexMatrix(2, 2, {h, h, h, -h});
}

// Control is the first (more significant) qubit of the pair it acts on.
inline ComplexMatrix cnot() {
  return ComplexMatrix(4, 4, {1, 0, 0, 0,  //
                              0, 1, 0, 0,  //
                              0, 0, 0, 1,  //
                              0, 0, 1, 0});
}

// Real rotation [[cos t, −sin t], [sin t, cos t]].
inline ComplexMatrix rotation(double t) {
  return ComplexMatrix(2, 2, {std::cos(t), -std::sin(t), std::sin(t), std::cos(t)});
}

inline const Vec2 kKet0{1.0, 0.0};
inline const Vec2 kKet1{0.0, 1.0};
inline const Vec2 kPlus{std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0};
inline const Vec2 kMinus{std::numbers::sqrt2 / 2.0, -std::numbers::sqrt2 / 2.0};

// cos t|0⟩ + sin t|1⟩
inline Vec2 real_ket(double t) { return {std::cos(t), std::sin(t)}; }

}  // namespace uqf::gates

namespace uqf {

// Generic SU(2) element
//   [[e^{−i(φ+λ)/2} cos θ, −e^{−i(φ−λ)/2} sin θ],
//    [e^{ i(φ−λ)/2} sin θ,  e^{ i(φ+λ)/2} cos θ]].
// θ is half the Bloch polar angle of the image of |0⟩, φ its azimuth.
inline ComplexMatrix su2_from_angles(double theta, double phi, double lambda) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx sum = std::polar(1.0, 0.5 * (phi + lambda));
  const cplx diff = std::polar(1.0, 0.5 * (phi - lambda));
  return ComplexMatrix(2, 2, {std::conj(sum) * c, -std::conj(diff) * s, diff * s, sum * c});
}

// Unitary V with V s_i = t_i. The magnitudes |⟨s1|s2⟩| and |⟨t1|t2⟩| must
// agree within 1e-9. If their phases differ, t2 is first re-phased so the
// two inner products coincide, and V maps s2 onto that re-phased t2.
inline ComplexMatrix connecting_unitary(const Vec2& s1, const Vec2& s2, const Vec2& t1,
                                        const Vec2& t2) {
  for (const Vec2* v : {&s1, &s2, &t1, &t2}) {
    if (std::abs(norm(*v) - 1.0) > 1e-9) {
      throw Error(ErrorCode::kInfeasible, "connecting_unitary needs unit vectors");
    }
  }
  const cplx s_ov = inner(s1, s2);
  cplx t_ov = inner(t1, t2);
  if (std::abs(std::abs(s_ov) - std::abs(t_ov)) > 1e-9) {
    throw Error(ErrorCode::kInfeasible,
                "inner-product magnitudes differ: |<s1|s2>| = " + std::to_string(std::abs(s_ov)) +
                    ", |<t1|t2>| = " + std::to_string(std::abs(t_ov)));
  }
  Vec2 t2r = t2;
  if (std::abs(t_ov) > 1e-300 && std::abs(s_ov) > 1e-300) {
    const cplx ph = (s_ov / std::abs(s_ov)) / (t_ov / std::abs(t_ov));
    t2r = {t2[0] * ph, t2[1] * ph};
    t_ov = inner(t1, t2r);
  }

  // Orthonormal completions, then align the second columns so that the
  // component of s2 along s1⊥ maps onto the component of t2 along t1⊥.
  const Vec2 s_perp = orthogonal_complement(s1);
  Vec2 t_perp = orthogonal_complement(t1);
  const cplx bs = inner(s_perp, s2);
  const cplx bt = inner(t_perp, t2r);
  if (std::abs(bs) > 1e-12 && std::abs(bt) > 1e-12) {
    const cplx ph = (bt / std::abs(bt)) / (bs / std::abs(bs));
    t_perp = {t_perp[0] * ph, t_perp[1] * ph};
  }
  const ComplexMatrix s = ComplexMatrix::from_columns(s1, s_perp);
  const ComplexMatrix t = ComplexMatrix::from_columns(t1, t_perp);
  return t * s.adjoint();
}

}  // namespace uqf
