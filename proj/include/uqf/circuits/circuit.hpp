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
#include <optional>
#include <string>

#include "uqf/error.hpp"
#include "uqf/povm.hpp"
#include "uqf/qmath.hpp"

namespace uqf {

// One-ancilla measurement circuit. Execution order on |0⟩_E ⊗ input:
//   ancilla_prep (E), input_local_a (A), pre_local_a (A),
//   interaction (E, A), post_local_e (E), post_local_a (A),
//   projective measurement of E in measure_basis, corrections[i] on A.
struct AncillaCircuit {
  ComplexMatrix ancilla_prep = ComplexMatrix::identity(2);
  ComplexMatrix input_local_a = ComplexMatrix::identity(2);
  ComplexMatrix pre_local_a = ComplexMatrix::identity(2);
  ComplexMatrix interaction = gates::cnot();
  ComplexMatrix post_local_e = ComplexMatrix::identity(2);
  ComplexMatrix post_local_a = ComplexMatrix::identity(2);
  std::array<Vec2, 2> measure_basis{gates::kKet0, gates::kKet1};
  std::array<ComplexMatrix, 2> corrections{ComplexMatrix::identity(2),
                                           ComplexMatrix::identity(2)};
  double theta = 0.0;
};

inline void validate(const AncillaCircuit& c) {
  auto check = [](const ComplexMatrix& m, std::size_t n, const char* name) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::kInvalidCircuit, std::string(name) + " has the wrong shape");
    }
    if (!m.all_finite() || unitarity_residual(m) > 1e-10) {
      throw Error(ErrorCode::kInvalidCircuit, std::string(name) + " is not unitary");
    }
  };
  check(c.ancilla_prep, 2, "ancilla_prep");
  check(c.input_local_a, 2, "input_local_a");
  check(c.pre_local_a, 2, "pre_local_a");
  check(c.interaction, 4, "interaction");
  check(c.post_local_e, 2, "post_local_e");
  check(c.post_local_a, 2, "post_local_a");
  check(c.corrections[0], 2, "corrections[0]");
  check(c.corrections[1], 2, "corrections[1]");
  const auto& e = c.measure_basis;
  if (std::abs(norm(e[0]) - 1.0) > 1e-12 || std::abs(norm(e[1]) - 1.0) > 1e-12 ||
      std::abs(inner(e[0], e[1])) > 1e-12) {
    throw Error(ErrorCode::kInvalidCircuit, "measure_basis is not orthonormal");
  }
}

struct BranchOutcome {
  int outcome = 0;
  double probability = 0.0;
  std::optional<StateVector> post_state;  // normalized, absent when probability is 0
};

// Simulates the circuit on a normalized input over {A} or {A, B}.
inline std::array<BranchOutcome, 2> run_circuit(const AncillaCircuit& c, const StateVector& input) {
  validate(c);
  if (input.labels() != Subsystems{Label::A} && input.labels() != Subsystems{Label::A, Label::B}) {
    throw Error(ErrorCode::kSize, "circuit input must be over A or A,B; got " + input.labels().str());
  }
  if (!input.is_normalized(1e-10)) {
    throw Error(ErrorCode::kUnnormalized, "circuit input is not normalized");
  }
  StateVector s = tensor(StateVector::qubit(Label::E, gates::kKet0), input);
  s = apply_to_subsystems(c.ancilla_prep, s, {Label::E});
  s = apply_to_subsystems(c.input_local_a, s, {Label::A});
  s = apply_to_subsystems(c.pre_local_a, s, {Label::A});
  s = apply_to_subsystems(c.interaction, s, {Label::E, Label::A});
  s = apply_to_subsystems(c.post_local_e, s, {Label::E});
  s = apply_to_subsystems(c.post_local_a, s, {Label::A});

  std::array<BranchOutcome, 2> out;
  for (int i = 0; i < 2; ++i) {
    StateVector branch = project_out(s, Label::E, c.measure_basis[i]);
    branch = apply_to_subsystems(c.corrections[i], branch, {Label::A});
    out[i].outcome = i;
    out[i].probability = branch.norm_squared();
    if (out[i].probability > kZeroProbability) out[i].post_state = branch.normalized();
  }
  return out;
}

// Circuit unitary on (E, A) before measurement, excluding corrections.
inline ComplexMatrix circuit_unitary(const AncillaCircuit& c) {
  return kron(c.post_local_e, c.post_local_a) * c.interaction *
         kron(c.ancilla_prep, c.pre_local_a * c.input_local_a);
}

// K_i = C_i (⟨e_i| ⊗ I) W (|0⟩ ⊗ I), by direct contraction of the 4x4
// circuit unitary W.
inline std::array<ComplexMatrix, 2> effective_kraus(const AncillaCircuit& c) {
  validate(c);
  const ComplexMatrix w = circuit_unitary(c);
  std::array<ComplexMatrix, 2> k{ComplexMatrix(2, 2), ComplexMatrix(2, 2)};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t a_out = 0; a_out < 2; ++a_out)
      for (std::size_t a_in = 0; a_in < 2; ++a_in)
        for (std::size_t e = 0; e < 2; ++e)
          k[i](a_out, a_in) += std::conj(c.measure_basis[i][e]) * w(2 * e + a_out, a_in);
    k[i] = c.corrections[i] * k[i];
  }
  return k;
}

inline TwoOutcomePovm effective_povm(const AncillaCircuit& c) {
  const auto k = effective_kraus(c);
  return {k[0], k[1]};
}

}  // namespace uqf
