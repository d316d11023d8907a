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

#include "uqf/error.hpp"
#include "uqf/qmath/matrix.hpp"
#include "uqf/qmath/state.hpp"

namespace uqf {

struct Eigen2 {
  std::array<double, 2> values;  // descending
  ComplexMatrix vectors;         // columns are the matching unit eigenvectors
};

// Closed-form eigendecomposition of a 2x2 Hermitian matrix. A degenerate
// spectrum returns the identity eigenbasis. When the caller knows det(H) to
// better relative accuracy than a − d cancellation allows (e.g. as |det M|²
// for H = MM†) it can pass it in to recover the small eigenvalue exactly.
inline Eigen2 eigh2(const ComplexMatrix& h, std::optional<double> det = std::nullopt) {
  if (h.rows() != 2 || h.cols() != 2) throw Error(ErrorCode::kSize, "eigh2 needs a 2x2 matrix");
  const double a = h(0, 0).real();
  const double d = h(1, 1).real();
  const cplx b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
  const double mean = 0.5 * (a + d);
  const double half_diff = 0.5 * (a - d);
  const double r = std::hypot(half_diff, std::abs(b));
  const double scale = std::max({std::abs(a), std::abs(d), std::abs(b), 1e-300});

  Eigen2 out{{mean + r, mean - r}, ComplexMatrix::identity(2)};
  if (det && out.values[0] > 0.0) out.values[1] = *det / out.values[0];
  if (r <= 1e-15 * scale) return out;

  Vec2 v0;
  if (half_diff >= 0.0) {
    v0 = {r + half_diff, std::conj(b)};
  } else {
    v0 = {b, r - half_diff};
  }
  v0 = canonical_phase(normalized(v0));
  out.vectors = ComplexMatrix::from_columns(v0, orthogonal_complement(v0));
  return out;
}

struct SchmidtForm {
  Label left_label;
  std::array<double, 2> coefficients;  // descending, nonnegative
  std::array<Vec2, 2> left;
  std::array<StateVector, 2> right;  // over the remaining labels
};

namespace detail {

// 2 x n amplitude matrix for the cut left | rest, stored as two rows.
struct CutMatrix {
  std::size_t cols = 0;
  std::array<std::array<cplx, 4>, 2> m{};
};

inline CutMatrix reshape_for_cut(const StateVector& state, Label left) {
  const std::size_t b = state.labels().bit_of(left);
  CutMatrix cm;
  cm.cols = state.dim() / 2;
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    const std::size_t row = (idx >> b) & 1u;
    const std::size_t low = idx & ((std::size_t{1} << b) - 1);
    const std::size_t col = ((idx >> (b + 1)) << b) | low;
    cm.m[row][col] = state[idx];
  }
  return cm;
}

}  // namespace detail

inline SchmidtForm schmidt_decompose(const StateVector& state, Label left) {
  if (!state.is_normalized(1e-10)) {
    throw Error(ErrorCode::kUnnormalized, "schmidt_decompose needs a normalized state");
  }
  const Subsystems rest = state.labels().without(Subsystems{left});
  if (rest.empty()) throw Error(ErrorCode::kLabel, "cut leaves the right side empty");
  const detail::CutMatrix cm = detail::reshape_for_cut(state, left);
  const std::size_t n = cm.cols;

  ComplexMatrix gram(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t c = 0; c < n; ++c) gram(i, j) += cm.m[i][c] * std::conj(cm.m[j][c]);
  // Cauchy–Binet: det(MM†) = Σ_{j<k} |2x2 minor|².
  double det = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k)
      det += std::norm(cm.m[0][j] * cm.m[1][k] - cm.m[0][k] * cm.m[1][j]);

  const Eigen2 eig = eigh2(gram, det);
  SchmidtForm sf{left, {}, {}, {StateVector(rest), StateVector(rest)}};
  for (std::size_t i = 0; i < 2; ++i) {
    sf.coefficients[i] = std::sqrt(std::max(eig.values[i], 0.0));
    sf.left[i] = eig.vectors.column(i);
  }

  // right_i = (u_i† M) / s_i, so Σ s_i |u_i⟩|right_i⟩ = M.
  auto project_row = [&](const Vec2& u) {
    StateVector r(rest);
    for (std::size_t c = 0; c < n; ++c)
      r[c] = std::conj(u[0]) * cm.m[0][c] + std::conj(u[1]) * cm.m[1][c];
    return r;
  };
  sf.right[0] = project_row(sf.left[0]).normalized();

  StateVector r1 = project_row(sf.left[1]);
  const cplx overlap = inner(sf.right[0], r1);
  for (std::size_t c = 0; c < n; ++c) r1[c] -= overlap * sf.right[0][c];
  if (r1.norm() > 1e-14) {
    sf.right[1] = r1.normalized();
  } else {
    // Unconstrained direction: first basis vector with the largest residual
    // after removing right[0].
    double best = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      StateVector cand = StateVector::basis(rest, k);
      const cplx ov = inner(sf.right[0], cand);
      for (std::size_t c = 0; c < n; ++c) cand[c] -= ov * sf.right[0][c];
      if (cand.norm() > best + 1e-12) {
        best = cand.norm();
        sf.right[1] = cand.normalized();
      }
    }
  }
  return sf;
}

inline StateVector reconstruct(const SchmidtForm& sf) {
  StateVector out =
      tensor(StateVector::qubit(sf.left_label, sf.left[0]), sf.right[0]);
  out *= sf.coefficients[0];
  StateVector second = tensor(StateVector::qubit(sf.left_label, sf.left[1]), sf.right[1]);
  for (std::size_t i = 0; i < out.dim(); ++i) out[i] += sf.coefficients[1] * second[i];
  return out;
}

// Von Neumann entropy in ebits of the reduced state of `left`.
inline double entanglement_entropy(const StateVector& state, Label left) {
  const SchmidtForm sf = schmidt_decompose(state, left);
  double s = 0.0;
  for (double c : sf.coefficients) {
    const double p = c * c;
    if (p > 0.0) s -= p * std::log2(p);
  }
  return s;
}

struct ProductCheck {
  bool is_product;
  double residual;  // |det| of the 2x2 amplitude reshape, half the concurrence
};

inline ProductCheck is_product(const StateVector& state, double tol) {
  if (state.dim() != 4) throw Error(ErrorCode::kSize, "is_product needs a two-qubit state");
  const double residual = std::abs(state[0] * state[3] - state[1] * state[2]);
  return {residual <= tol, residual};
}

}  // namespace uqf
