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
#include <cstdint>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "uqf/detail/nelder_mead.hpp"
#include "uqf/error.hpp"
#include "uqf/qmath.hpp"

namespace uqf {

// Interaction triple of U_d = exp(i Σ a_k σ_k ⊗ σ_k).
struct CanonicalGateParams {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  // π/4 ≥ a1 ≥ a2 ≥ |a3|
  bool in_weyl_chamber(double tol = 1e-12) const {
    return std::numbers::pi / 4 + tol >= a1 && a1 + tol >= a2 && a2 + tol >= std::abs(a3);
  }
};

// Exact construction in the Bell basis, where σ_k ⊗ σ_k are simultaneously
// diagonal with eigenvalues ±1. Parameters outside the Weyl chamber are
// accepted.
inline ComplexMatrix build_ud(const CanonicalGateParams& p) {
  const double r = std::numbers::sqrt2 / 2.0;
  struct BellVector {
    std::array<double, 4> amps;
    std::array<int, 3> signs;  // eigenvalues of XX, YY, ZZ
  };
  const std::array<BellVector, 4> bell{{
      {{r, 0, 0, r}, {+1, -1, +1}},    // Φ+
      {{r, 0, 0, -r}, {-1, +1, +1}},   // Φ−
      {{0, r, r, 0}, {+1, +1, -1}},    // Ψ+
      {{0, r, -r, 0}, {-1, -1, -1}},   // Ψ−
  }};
  ComplexMatrix u(4, 4);
  for (const BellVector& b : bell) {
    const double phase = p.a1 * b.signs[0] + p.a2 * b.signs[1] + p.a3 * b.signs[2];
    const cplx ph = std::polar(1.0, phase);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) u(i, j) += ph * b.amps[i] * b.amps[j];
  }
  return u;
}

// Local unitaries U_E = su2(e_angles), U_A = su2(a_angles) applied before U_d.
struct LocalFrame {
  std::array<double, 3> e_angles{};
  std::array<double, 3> a_angles{};

  ComplexMatrix u_e() const { return su2_from_angles(e_angles[0], e_angles[1], e_angles[2]); }
  ComplexMatrix u_a() const { return su2_from_angles(a_angles[0], a_angles[1], a_angles[2]); }
};

inline constexpr double kC1Tol = 1e-8;

namespace detail {

// Φ = U_d (U_E ⊗ U_A)|00⟩, Ψ = U_d (U_E ⊗ U_A)|01⟩.
struct FrameStates {
  StateVector phi{Subsystems{Label::E, Label::A}};
  StateVector psi{Subsystems{Label::E, Label::A}};
};

inline std::array<cplx, 4> apply4(const ComplexMatrix& u, const std::array<cplx, 4>& v) {
  std::array<cplx, 4> out{};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out[i] += u(i, j) * v[j];
  return out;
}

inline std::array<cplx, 4> product_ket(const Vec2& e, const Vec2& a) {
  return {e[0] * a[0], e[0] * a[1], e[1] * a[0], e[1] * a[1]};
}

inline FrameStates frame_states(const ComplexMatrix& ud, const LocalFrame& f) {
  const ComplexMatrix ue = f.u_e();
  const ComplexMatrix ua = f.u_a();
  const Vec2 e = ue.column(0);
  const auto phi = apply4(ud, product_ket(e, ua.column(0)));
  const auto psi = apply4(ud, product_ket(e, ua.column(1)));
  FrameStates s;
  for (std::size_t i = 0; i < 4; ++i) {
    s.phi[i] = phi[i];
    s.psi[i] = psi[i];
  }
  return s;
}

inline double det_residual(const ComplexMatrix& ud, const LocalFrame& f) {
  const ComplexMatrix ue = f.u_e();
  const ComplexMatrix ua = f.u_a();
  const auto psi = apply4(ud, product_ket(ue.column(0), ua.column(1)));
  return std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

}  // namespace detail

// |det| of the amplitude reshape of Ψ; zero iff the constraint C1 holds.
inline double c1_residual(const ComplexMatrix& ud, const LocalFrame& f) {
  return detail::det_residual(ud, f);
}
inline double c1_residual(const CanonicalGateParams& p, const LocalFrame& f) {
  return c1_residual(build_ud(p), f);
}

// a0² = ⟨e0| Tr_A |Φ⟩⟨Φ| |e0⟩ with |e0⟩⟨e0| = Tr_A |Ψ⟩⟨Ψ|.
inline double a0_of(const ComplexMatrix& ud, const LocalFrame& f, double c1_tol = kC1Tol) {
  const detail::FrameStates s = detail::frame_states(ud, f);
  const double residual = std::abs(s.psi[0] * s.psi[3] - s.psi[1] * s.psi[2]);
  if (!(residual < c1_tol)) {
    throw Error(ErrorCode::kConstraintNotSatisfied,
                "C1 residual " + std::to_string(residual) + " exceeds tolerance");
  }
  const ComplexMatrix rho_psi = partial_trace(s.psi, Subsystems{Label::E});
  const ComplexMatrix rho_phi = partial_trace(s.phi, Subsystems{Label::E});
  const Vec2 e0 = eigh2(rho_psi, residual * residual).vectors.column(0);
  const double a0_sq = inner(e0, rho_phi * e0).real();
  return std::sqrt(std::clamp(a0_sq, 0.0, 1.0));
}
inline double a0_of(const CanonicalGateParams& p, const LocalFrame& f, double c1_tol = kC1Tol) {
  return a0_of(build_ud(p), f, c1_tol);
}

struct ScanConfig {
  int grid_points = 12;           // per local angle
  bool two_angle = false;         // fix the third SU(2) angle of each frame at 0
  std::size_t refine_count = 3000;  // lowest coarse residuals that get refined
  int refine_evals = 600;         // simplex budget per refined point
  double c1_tol = kC1Tol;
  double gap_threshold = 0.02;
  double endpoint_tol = 0.01;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ScanSample {
  LocalFrame frame;
  double c1_residual = 0.0;
  std::optional<double> a0;  // set when the residual is accepted
};

struct ScanReport {
  CanonicalGateParams params;
  ScanConfig config;
  std::vector<ScanSample> samples;
  std::vector<double> achieved_a0;  // sorted ascending
  double coverage_gap = 1.0;  // largest uncovered stretch of [0, 1], edges included
  bool is_candidate = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) from (seed, index, coordinate).
inline double jitter(std::uint64_t seed, std::uint64_t index, std::uint64_t coord) {
  const std::uint64_t h = splitmix64(splitmix64(seed ^ splitmix64(index)) + coord);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(begin, end, chunk) over [0, n) split into contiguous chunks, one
// per worker.
template <class Body>
void parallel_chunks(std::size_t n, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    body(std::size_t{0}, n, 0u);
    return;
  }
  std::vector<std::thread> workers;
  const std::size_t per = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t b = std::min(n, t * per), e = std::min(n, b + per);
    workers.emplace_back([&body, b, e, t] { body(b, e, t); });
  }
  for (auto& w : workers) w.join();
}

inline constexpr std::array<double, 3> kAngleSpan{std::numbers::pi / 2, 2 * std::numbers::pi,
                                                  2 * std::numbers::pi};

}  // namespace detail

inline double coverage_gap(const std::vector<double>& sorted_a0) {
  if (sorted_a0.empty()) return 1.0;
  double gap = std::max(sorted_a0.front(), 0.0);
  for (std::size_t i = 1; i < sorted_a0.size(); ++i)
    gap = std::max(gap, sorted_a0[i] - sorted_a0[i - 1]);
  return std::max(gap, 1.0 - std::min(sorted_a0.back(), 1.0));
}

// Grid over local frames (cell-jittered with the configured seed), keep the
// lowest coarse C1 residuals, refine each by simplex search on |det|², and
// collect a0 at accepted points.
inline ScanReport scan_a0_range(const CanonicalGateParams& p, const ScanConfig& cfg = {}) {
  const ComplexMatrix ud = build_ud(p);
  const int n = std::max(cfg.grid_points, 1);
  const std::size_t dims = cfg.two_angle ? 4 : 6;
  std::size_t total = 1;
  for (std::size_t d = 0; d < dims; ++d) total *= static_cast<std::size_t>(n);

  // Grid coordinates (θ_E, φ_E, [λ_E], θ_A, φ_A, [λ_A]).
  auto frame_at = [&](std::size_t index) {
    LocalFrame f;
    std::size_t rem = index;
    std::size_t coord = 0;
    for (int side = 0; side < 2; ++side) {
      auto& angles = side == 0 ? f.e_angles : f.a_angles;
      for (std::size_t k = 0; k < 3; ++k) {
        if (cfg.two_angle && k == 2) continue;
        const std::size_t cell = rem % static_cast<std::size_t>(n);
        rem /= static_cast<std::size_t>(n);
        const double u = detail::jitter(cfg.seed, index, coord++);
        angles[k] = (static_cast<double>(cell) + u) / n * detail::kAngleSpan[k];
      }
    }
    return f;
  };

  using Entry = std::pair<double, std::size_t>;
  const std::size_t keep = std::min(cfg.refine_count, total);
  const unsigned threads = detail::resolve_threads(cfg.threads);
  std::vector<std::vector<Entry>> per_chunk(threads);
  detail::parallel_chunks(total, threads, [&](std::size_t b, std::size_t e, unsigned t) {
    auto& heap = per_chunk[t];
    heap.reserve(keep + 1);
    for (std::size_t i = b; i < e; ++i) {
      const Entry entry{detail::det_residual(ud, frame_at(i)), i};
      if (heap.size() < keep) {
        heap.push_back(entry);
        std::push_heap(heap.begin(), heap.end());
      } else if (keep > 0 && entry < heap.front()) {
        std::pop_heap(heap.begin(), heap.end());
        heap.back() = entry;
        std::push_heap(heap.begin(), heap.end());
      }
    }
  });
  std::vector<Entry> chosen;
  for (auto& h : per_chunk) chosen.insert(chosen.end(), h.begin(), h.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.resize(std::min(chosen.size(), keep));
  // Refine in grid order so the report layout is independent of residual ties.
  std::sort(chosen.begin(), chosen.end(),
            [](const Entry& a, const Entry& b) { return a.second < b.second; });

  ScanReport rep;
  rep.params = p;
  rep.config = cfg;
  rep.samples.resize(chosen.size());
  const double step = 0.5 * detail::kAngleSpan[0] / n;
  detail::parallel_chunks(chosen.size(), threads, [&](std::size_t b, std::size_t e, unsigned) {
    for (std::size_t i = b; i < e; ++i) {
      LocalFrame f = frame_at(chosen[i].second);
      auto to_vec = [&](const LocalFrame& fr) {
        std::array<double, 6> v{fr.e_angles[0], fr.e_angles[1], fr.e_angles[2],
                                fr.a_angles[0], fr.a_angles[1], fr.a_angles[2]};
        return v;
      };
      auto from_vec = [&](const std::array<double, 6>& v) {
        LocalFrame fr;
        fr.e_angles = {v[0], v[1], cfg.two_angle ? 0.0 : v[2]};
        fr.a_angles = {v[3], v[4], cfg.two_angle ? 0.0 : v[5]};
        return fr;
      };
      auto objective = [&](const std::array<double, 6>& v) {
        const double r = detail::det_residual(ud, from_vec(v));
        return r * r;
      };
      const double target = 1e-4 * cfg.c1_tol * cfg.c1_tol;
      ScanSample s;
      s.c1_residual = chosen[i].first;
      if (s.c1_residual * s.c1_residual > target) {
        auto res = detail::nelder_mead<6>(objective, to_vec(f), step, cfg.refine_evals / 2, target);
        // One restart from the best point shakes off a collapsed simplex.
        res = detail::nelder_mead<6>(objective, res.x, 0.1 * step, cfg.refine_evals / 2, target);
        f = from_vec(res.x);
        s.c1_residual = detail::det_residual(ud, f);
      }
      s.frame = f;
      if (s.c1_residual < cfg.c1_tol) s.a0 = a0_of(ud, f, cfg.c1_tol);
      rep.samples[i] = s;
    }
  });

  for (const ScanSample& s : rep.samples)
    if (s.a0) rep.achieved_a0.push_back(*s.a0);
  std::sort(rep.achieved_a0.begin(), rep.achieved_a0.end());
  rep.coverage_gap = coverage_gap(rep.achieved_a0);
  rep.is_candidate = !rep.achieved_a0.empty() && rep.coverage_gap < cfg.gap_threshold &&
                     rep.achieved_a0.front() <= cfg.endpoint_tol &&
                     rep.achieved_a0.back() >= 1.0 - cfg.endpoint_tol;
  return rep;
}

struct EntanglementConfig {
  int grid_points = 8;  // per input parameter (six parameters)
  int refine_top = 8;   // best grid points polished by simplex search
  int refine_evals = 800;
  unsigned threads = 0;
};

namespace detail {

// |e⟩_E ⊗ (V_A ⊗ I)(cos χ|00⟩ + sin χ|11⟩) with U_d applied to (E, A);
// x = (θ_e, φ_e, θ_v, φ_v, λ_v, χ).
inline double output_entropy(const ComplexMatrix& ud, const std::array<double, 6>& x) {
  const Vec2 e{std::cos(x[0]), std::polar(std::sin(x[0]), x[1])};
  const ComplexMatrix v = su2_from_angles(x[2], x[3], x[4]);
  const StateVector ab = apply_to_subsystems(
      v, StateVector({Label::A, Label::B}, {std::cos(x[5]), 0.0, 0.0, std::sin(x[5])}),
      {Label::A});
  StateVector s = tensor(StateVector::qubit(Label::E, e), ab);
  s = apply_to_subsystems(ud, s, {Label::E, Label::A});
  return entanglement_entropy(s, Label::E);
}

}  // namespace detail

// Largest E|(A,B) entropy found over product inputs |e⟩_E ⊗ |φ⟩_AB; a lower
// bound on the entangling capacity of U_d.
inline double max_output_entanglement(const CanonicalGateParams& p,
                                      const EntanglementConfig& cfg = {}) {
  const ComplexMatrix ud = build_ud(p);
  const int n = std::max(cfg.grid_points, 2);
  const std::array<std::pair<double, bool>, 6> span{{
      {std::numbers::pi / 2, true},    // θ_e, endpoints included
      {2 * std::numbers::pi, false},   // φ_e
      {std::numbers::pi / 2, true},    // θ_v
      {2 * std::numbers::pi, false},   // φ_v
      {2 * std::numbers::pi, false},   // λ_v
      {std::numbers::pi / 4, true},    // χ
  }};
  std::size_t total = 1;
  for (int d = 0; d < 6; ++d) total *= static_cast<std::size_t>(n);
  auto point_at = [&](std::size_t index) {
    std::array<double, 6> x{};
    for (std::size_t d = 0; d < 6; ++d) {
      const std::size_t cell = index % static_cast<std::size_t>(n);
      index /= static_cast<std::size_t>(n);
      x[d] = span[d].second ? span[d].first * static_cast<double>(cell) / (n - 1)
                            : span[d].first * static_cast<double>(cell) / n;
    }
    return x;
  };

  using Entry = std::pair<double, std::size_t>;  // (−entropy, index)
  const unsigned threads = detail::resolve_threads(cfg.threads);
  const std::size_t keep = static_cast<std::size_t>(std::max(cfg.refine_top, 1));
  std::vector<std::vector<Entry>> per_chunk(threads);
  detail::parallel_chunks(total, threads, [&](std::size_t b, std::size_t e, unsigned t) {
    auto& best = per_chunk[t];
    for (std::size_t i = b; i < e; ++i) {
      const Entry entry{-detail::output_entropy(ud, point_at(i)), i};
      if (best.size() < keep) {
        best.push_back(entry);
        std::push_heap(best.begin(), best.end());
      } else if (entry < best.front()) {
        std::pop_heap(best.begin(), best.end());
        best.back() = entry;
        std::push_heap(best.begin(), best.end());
      }
    }
  });
  std::vector<Entry> chosen;
  for (auto& h : per_chunk) chosen.insert(chosen.end(), h.begin(), h.end());
  std::sort(chosen.begin(), chosen.end());
  chosen.resize(std::min(chosen.size(), keep));

  double best = 0.0;
  for (const Entry& c : chosen) {
    best = std::max(best, -c.first);
    if (best >= 1.0) break;
    auto objective = [&](const std::array<double, 6>& x) { return -detail::output_entropy(ud, x); };
    const auto res =
        detail::nelder_mead<6>(objective, point_at(c.second), 0.1, cfg.refine_evals, -1.0);
    best = std::max(best, -res.value);
  }
  return std::min(best, 1.0);
}

struct SweepRow {
  CanonicalGateParams params;
  double max_entanglement = 0.0;
  bool is_candidate = false;
  double coverage_gap = 1.0;
};

// Grid of points inside the Weyl chamber, `n` samples per axis over
// a1, a2 ∈ [0, π/4] and a3 ∈ [−π/4, π/4].
inline std::vector<CanonicalGateParams> weyl_chamber_grid(int n) {
  std::vector<CanonicalGateParams> out;
  if (n <= 1) return {CanonicalGateParams{}};
  const double q = std::numbers::pi / 4;
  auto lin = [n](double lo, double hi, int i) {
    return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1);
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const CanonicalGateParams p{lin(0, q, i), lin(0, q, j), lin(-q, q, k)};
        if (p.in_weyl_chamber()) out.push_back(p);
      }
  return out;
}

// Joint table of entangling capacity and scan eligibility. Data only.
inline std::vector<SweepRow> conjecture_sweep(const std::vector<CanonicalGateParams>& grid,
                                              const ScanConfig& scan_cfg = {},
                                              const EntanglementConfig& ent_cfg = {}) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const CanonicalGateParams& p : grid) {
    const ScanReport rep = scan_a0_range(p, scan_cfg);
    rows.push_back({p, max_output_entanglement(p, ent_cfg), rep.is_candidate, rep.coverage_gap});
  }
  return rows;
}

}  // namespace uqf
