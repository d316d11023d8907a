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

#include <optional>

#include "uqf/error.hpp"
#include "uqf/qmath.hpp"

namespace uqf {

// Pieces of the decomposition
//   Ψ = W (u_e ⊗ u_a)|01⟩ = |e0⟩|η⊥⟩
//   Φ = W (u_e ⊗ u_a)|00⟩ = a0 |e0⟩|η⟩ + a1 |e1⟩|μ⟩,   a0, a1 ≥ 0.
// η (μ) is absent when a0 (a1) vanishes.
struct TheoremDecomposition {
  Vec2 e0;
  Vec2 e1;
  Vec2 eta_perp;
  std::optional<Vec2> eta;
  std::optional<Vec2> mu;
  double a1 = 0.0;
};

struct TheoremReport {
  ProductCheck psi;
  double a0 = 0.0;  // meaningful only when psi.is_product
  std::optional<TheoremDecomposition> decomposition;
  StateVector phi{Subsystems{Label::E, Label::A}};
  StateVector psi_state{Subsystems{Label::E, Label::A}};
};

inline TheoremReport verify_theorem_conditions(const ComplexMatrix& interaction,
                                               const ComplexMatrix& u_e, const ComplexMatrix& u_a,
                                               double product_tol = 1e-8) {
  if (interaction.rows() != 4 || interaction.cols() != 4 || u_e.rows() != 2 || u_e.cols() != 2 ||
      u_a.rows() != 2 || u_a.cols() != 2) {
    throw Error(ErrorCode::kSize, "verify_theorem_conditions: expected 4x4, 2x2, 2x2");
  }
  const ComplexMatrix w = interaction * kron(u_e, u_a);
  TheoremReport rep;
  for (std::size_t i = 0; i < 4; ++i) {
    rep.phi[i] = w(i, 0);
    rep.psi_state[i] = w(i, 1);
  }
  rep.psi = is_product(rep.psi_state, product_tol);
  if (!rep.psi.is_product) return rep;

  const SchmidtForm sf = schmidt_decompose(rep.psi_state.normalized(), Label::E);
  TheoremDecomposition d;
  d.e0 = sf.left[0];
  d.e1 = orthogonal_complement(d.e0);
  d.eta_perp = sf.right[0].as_vec2();

  const Vec2 chi0 = project_out(rep.phi, Label::E, d.e0).as_vec2();
  const Vec2 chi1 = project_out(rep.phi, Label::E, d.e1).as_vec2();
  rep.a0 = norm(chi0);
  d.a1 = norm(chi1);
  if (rep.a0 > 1e-14) d.eta = normalized(chi0);
  if (d.a1 > 1e-14) d.mu = normalized(chi1);
  rep.decomposition = d;
  return rep;
}

}  // namespace uqf
