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
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "uqf/error.hpp"
#include "uqf/qmath/matrix.hpp"

namespace uqf {

// Subsystem names. The computational basis is always ordered |e a b⟩ with E
// the most significant index, whatever subset of labels a state carries.
enum class Label : std::uint8_t { E = 0, A = 1, B = 2 };

inline char to_char(Label l) { return "EAB"[static_cast<int>(l)]; }

inline Label label_from_char(char c) {
  switch (c) {
    case 'E': return Label::E;
    case 'A': return Label::A;
    case 'B': return Label::B;
    default: throw Error(ErrorCode::kLabel, std::string("unknown subsystem label '") + c + "'");
  }
}

// Set of subsystem labels, always iterated in canonical E, A, B order.
class Subsystems {
 public:
  constexpr Subsystems() = default;
  constexpr Subsystems(std::initializer_list<Label> labels) {
    for (Label l : labels) {
      if (contains(l)) throw Error(ErrorCode::kLabel, "duplicate subsystem label");
      mask_ |= bit(l);
    }
  }

  static constexpr Subsystems from_mask(std::uint8_t mask) {
    Subsystems s;
    s.mask_ = mask & 0b111;
    return s;
  }

  constexpr bool contains(Label l) const { return (mask_ & bit(l)) != 0; }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr std::size_t count() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr std::size_t dim() const { return std::size_t{1} << count(); }
  constexpr std::uint8_t mask() const { return mask_; }

  constexpr bool is_subset_of(Subsystems other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr Subsystems without(Subsystems other) const { return from_mask(mask_ & ~other.mask_); }
  constexpr Subsystems with(Label l) const { return from_mask(mask_ | bit(l)); }

  std::vector<Label> labels() const {
    std::vector<Label> out;
    for (Label l : {Label::E, Label::A, Label::B})
      if (contains(l)) out.push_back(l);
    return out;
  }

  // Bit position of l inside a basis index (0 = least significant).
  std::size_t bit_of(Label l) const {
    if (!contains(l)) {
      throw Error(ErrorCode::kLabel, std::string("label ") + to_char(l) + " not present");
    }
    std::size_t after = 0;
    for (int k = static_cast<int>(l) + 1; k < 3; ++k)
      if (contains(static_cast<Label>(k))) ++after;
    return after;
  }

  std::string str() const {
    std::string s;
    for (Label l : labels()) s.push_back(to_char(l));
    return s;
  }

  friend constexpr bool operator==(Subsystems, Subsystems) = default;

 private:
  static constexpr std::uint8_t bit(Label l) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(l));
  }
  std::uint8_t mask_ = 0;
};

// Pure state over up to three labelled qubits. Normalization is not
// enforced here; operations that need it check it.
class StateVector {
 public:
  StateVector() : StateVector(Subsystems{Label::A}) {}

  explicit StateVector(Subsystems labels) : labels_(labels) {
    if (labels.empty()) throw Error(ErrorCode::kLabel, "state needs at least one subsystem");
  }

  StateVector(Subsystems labels, std::span<const cplx> amplitudes) : StateVector(labels) {
    if (amplitudes.size() != labels.dim()) {
      throw Error(ErrorCode::kSize, "state over " + labels.str() + " needs " +
                                        std::to_string(labels.dim()) + " amplitudes");
    }
    std::copy(amplitudes.begin(), amplitudes.end(), amps_.begin());
  }

  StateVector(Subsystems labels, std::initializer_list<cplx> amplitudes)
      : StateVector(labels, std::span<const cplx>(amplitudes.begin(), amplitudes.size())) {}

  // Computational basis state; `index` uses the |e a b⟩ ordering.
  static StateVector basis(Subsystems labels, std::size_t index) {
    StateVector s(labels);
    if (index >= labels.dim()) throw Error(ErrorCode::kSize, "basis index out of range");
    s.amps_[index] = 1.0;
    return s;
  }

  static StateVector qubit(Label l, const Vec2& v) { return StateVector({l}, {v[0], v[1]}); }

  Subsystems labels() const { return labels_; }
  std::size_t dim() const { return labels_.dim(); }

  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  std::span<const cplx> amplitudes() const { return {amps_.data(), dim()}; }
  std::span<cplx> amplitudes() { return {amps_.data(), dim()}; }

  double norm_squared() const {
    double n = 0.0;
    for (cplx a : amplitudes()) n += std::norm(a);
    return n;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  bool is_normalized(double tol = 1e-12) const { return std::abs(norm_squared() - 1.0) <= tol; }

  StateVector normalized() const {
    StateVector out = *this;
    const double n = norm();
    for (cplx& a : out.amplitudes()) a /= n;
    return out;
  }

  StateVector& operator*=(cplx s) {
    for (cplx& a : amplitudes()) a *= s;
    return *this;
  }

  Vec2 as_vec2() const {
    if (dim() != 2) throw Error(ErrorCode::kSize, "not a single-qubit state");
    return {amps_[0], amps_[1]};
  }

 private:
  Subsystems labels_;
  std::array<cplx, kMaxDim> amps_{};
};

// ⟨a|b⟩ for states over the same labels.
inline cplx inner(const StateVector& a, const StateVector& b) {
  if (a.labels() != b.labels()) throw Error(ErrorCode::kLabel, "inner product label mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner(a, b)) / (a.norm_squared() * b.norm_squared());
}

// Tensor product of states over disjoint label sets; amplitudes are
// re-indexed into canonical order.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
  if ((a.labels().mask() & b.labels().mask()) != 0) {
    throw Error(ErrorCode::kLabel, "tensor of overlapping subsystems");
  }
  const Subsystems joint = Subsystems::from_mask(a.labels().mask() | b.labels().mask());
  StateVector out(joint);
  const auto la = a.labels().labels();
  const auto lb = b.labels().labels();
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      std::size_t idx = 0;
      for (Label l : la)
        if ((i >> a.labels().bit_of(l)) & 1u) idx |= std::size_t{1} << joint.bit_of(l);
      for (Label l : lb)
        if ((j >> b.labels().bit_of(l)) & 1u) idx |= std::size_t{1} << joint.bit_of(l);
      out[idx] = a[i] * b[j];
    }
  return out;
}

namespace detail {

// Index of the target-subsystem bits of `idx`, first target most significant.
inline std::size_t gather_bits(std::size_t idx, std::span<const std::size_t> bits) {
  std::size_t sub = 0;
  for (std::size_t b : bits) sub = (sub << 1) | ((idx >> b) & 1u);
  return sub;
}

inline std::size_t scatter_bits(std::size_t base, std::size_t sub,
                                std::span<const std::size_t> bits) {
  std::size_t idx = base;
  const std::size_t k = bits.size();
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t bit = (sub >> (k - 1 - t)) & 1u;
    idx = (idx & ~(std::size_t{1} << bits[t])) | (bit << bits[t]);
  }
  return idx;
}

}  // namespace detail

// Applies `gate` to the listed subsystems (first label = most significant
// gate index), identity elsewhere.
inline StateVector apply_to_subsystems(const ComplexMatrix& gate, const StateVector& state,
                                       std::span<const Label> targets) {
  if (!gate.is_square()) throw Error(ErrorCode::kNotSquare, "gate must be square");
  if (targets.empty()) throw Error(ErrorCode::kLabel, "no target subsystems");
  if (gate.rows() != (std::size_t{1} << targets.size())) {
    throw Error(ErrorCode::kSize, "gate dimension does not match target count");
  }
  std::array<std::size_t, 3> bits{};
  Subsystems seen;
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (seen.contains(targets[t])) throw Error(ErrorCode::kLabel, "duplicate target label");
    seen = seen.with(targets[t]);
    bits[t] = state.labels().bit_of(targets[t]);
  }
  const std::span<const std::size_t> tb(bits.data(), targets.size());

  StateVector out(state.labels());
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    const std::size_t row = detail::gather_bits(idx, tb);
    cplx acc = 0.0;
    for (std::size_t col = 0; col < gate.cols(); ++col) {
      const cplx g = gate(row, col);
      if (g == cplx{}) continue;
      acc += g * state[detail::scatter_bits(idx, col, tb)];
    }
    out[idx] = acc;
  }
  return out;
}

inline StateVector apply_to_subsystems(const ComplexMatrix& gate, const StateVector& state,
                                       std::initializer_list<Label> targets) {
  return apply_to_subsystems(gate, state, std::span<const Label>(targets.begin(), targets.size()));
}

// Contracts subsystem `label` with ⟨bra| and returns the unnormalized
// remainder. The state must carry at least one other label.
inline StateVector project_out(const StateVector& state, Label label, const Vec2& bra_ket) {
  const Subsystems rest = state.labels().without(Subsystems{label});
  if (rest.empty()) throw Error(ErrorCode::kLabel, "cannot project out the only subsystem");
  const std::size_t b = state.labels().bit_of(label);
  StateVector out(rest);
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    const std::size_t bit = (idx >> b) & 1u;
    // Drop bit b from idx to get the remainder index.
    const std::size_t low = idx & ((std::size_t{1} << b) - 1);
    const std::size_t high = idx >> (b + 1);
    out[(high << b) | low] += std::conj(bra_ket[bit]) * state[idx];
  }
  return out;
}

// Reduced density operator on `keep`; kept labels in canonical order.
inline ComplexMatrix partial_trace(const StateVector& state, Subsystems keep) {
  if (keep.empty() || keep == state.labels() || !keep.is_subset_of(state.labels())) {
    throw Error(ErrorCode::kLabel, "keep set must be a nonempty proper subset of " +
                                       state.labels().str());
  }
  const Subsystems traced = state.labels().without(keep);
  std::array<std::size_t, 3> kb{}, tb{};
  std::size_t nk = 0, nt = 0;
  for (Label l : keep.labels()) kb[nk++] = state.labels().bit_of(l);
  for (Label l : traced.labels()) tb[nt++] = state.labels().bit_of(l);
  const std::span<const std::size_t> keep_bits(kb.data(), nk);
  const std::span<const std::size_t> trace_bits(tb.data(), nt);

  ComplexMatrix rho(keep.dim(), keep.dim());
  for (std::size_t r = 0; r < keep.dim(); ++r)
    for (std::size_t c = 0; c < keep.dim(); ++c) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < traced.dim(); ++t) {
        const std::size_t base = detail::scatter_bits(0, t, trace_bits);
        acc += state[detail::scatter_bits(base, r, keep_bits)] *
               std::conj(state[detail::scatter_bits(base, c, keep_bits)]);
      }
      rho(r, c) = acc;
    }
  return rho;
}

}  // namespace uqf
