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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include "uqf/error.hpp"

namespace uqf {

using cplx = std::complex<double>;

// A qubit ket without subsystem bookkeeping.
using Vec2 = std::array<cplx, 2>;

inline constexpr std::size_t kMaxDim = 8;

inline bool is_supported_dim(std::size_t n) {
  return n == 1 || n == 2 || n == 4 || n == 8;
}

// Dense complex matrix with inline storage, dimensions in {1, 2, 4, 8}.
// Row-major. Value type: copies are cheap enough at this size and never
// allocate.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1, 1) {}

  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (!is_supported_dim(rows) || !is_supported_dim(cols)) {
      throw Error(ErrorCode::kSize, "matrix dimension " + std::to_string(rows) + "x" +
                                        std::to_string(cols) + " not in {1,2,4,8}");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
      : ComplexMatrix(rows, cols) {
    if (entries.size() != rows * cols) {
      throw Error(ErrorCode::kSize, "matrix initializer has wrong entry count");
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diag(std::initializer_list<cplx> d) {
    ComplexMatrix m(d.size(), d.size());
    std::size_t i = 0;
    for (cplx v : d) {
      m(i, i) = v;
      ++i;
    }
    return m;
  }

  // Matrix whose columns are the given qubit kets.
  static ComplexMatrix from_columns(const Vec2& c0, const Vec2& c1) {
    return ComplexMatrix(2, 2, {c0[0], c1[0], c0[1], c1[1]});
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const cplx> entries() const { return {data_.data(), rows_ * cols_}; }
  std::span<cplx> entries() { return {data_.data(), rows_ * cols_}; }

  Vec2 column(std::size_t c) const { return {(*this)(0, c), (*this)(1, c)}; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool all_finite() const {
    return std::all_of(entries().begin(), entries().end(), [](cplx v) {
      return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (std::size_t i = 0; i < rows_ * cols_; ++i) data_[i] *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw Error(ErrorCode::kSize, "matrix product dimension mismatch");
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx v = a(r, k);
        if (v == cplx{}) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) out(r, c) += v * b(k, c);
      }
    return out;
  }

  friend Vec2 operator*(const ComplexMatrix& m, const Vec2& v) {
    if (m.rows_ != 2 || m.cols_ != 2) {
      throw Error(ErrorCode::kSize, "matrix-ket product needs a 2x2 matrix");
    }
    return {m(0, 0) * v[0] + m(0, 1) * v[1], m(1, 0) * v[0] + m(1, 1) * v[1]};
  }

 private:
  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw Error(ErrorCode::kSize, "matrix shape mismatch");
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::array<cplx, kMaxDim * kMaxDim> data_{};
};

inline double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (cplx v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_abs(a - b);
}

// ‖U†U − I‖_max
inline double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) return INFINITY;
  return max_abs(u.adjoint() * u - ComplexMatrix::identity(u.rows()));
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxDim || cols > kMaxDim) {
    throw Error(ErrorCode::kSize, "kron result exceeds 8x8");
  }
  ComplexMatrix out(rows, cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

// |v⟩⟨w|
inline ComplexMatrix outer(const Vec2& v, const Vec2& w) {
  return ComplexMatrix(2, 2, {v[0] * std::conj(w[0]), v[0] * std::conj(w[1]),
                              v[1] * std::conj(w[0]), v[1] * std::conj(w[1])});
}

inline cplx inner(const Vec2& a, const Vec2& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
}

inline double norm(const Vec2& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }

inline Vec2 normalized(const Vec2& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n};
}

// The unit vector orthogonal to v with the determinant-one orientation
// (v, v⊥) forming a special unitary.
inline Vec2 orthogonal_complement(const Vec2& v) {
  return {-std::conj(v[1]), std::conj(v[0])};
}

// |⟨a|b⟩|², the phase-insensitive fidelity of two unit kets.
inline double fidelity(const Vec2& a, const Vec2& b) { return std::norm(inner(a, b)); }

// Rotates the phase so the first entry with magnitude above tol is real
// positive.
inline Vec2 canonical_phase(const Vec2& v, double tol = 1e-14) {
  for (cplx x : v) {
    if (std::abs(x) > tol) {
      const cplx ph = std::conj(x) / std::abs(x);
      return {v[0] * ph, v[1] * ph};
    }
  }
  return v;
}

// Phase-maximized fidelity between operators of equal shape:
// max_φ Re Tr(A† e^{iφ} B) / max(‖A‖²_F, ‖B‖²_F) = |Tr(A†B)| / max(‖A‖², ‖B‖²).
// Equals 1 iff A = e^{iφ}B; a scale mismatch lowers it. Two zero operators
// compare as identical.
inline double operator_fidelity(const ComplexMatrix& a, const ComplexMatrix& b) {
  double na = 0.0, nb = 0.0;
  for (cplx v : a.entries()) na += std::norm(v);
  for (cplx v : b.entries()) nb += std::norm(v);
  if (na < 1e-300 && nb < 1e-300) return 1.0;
  return std::abs((a.adjoint() * b).trace()) / std::max(na, nb);
}

// Distance after removing the best global phase: min_φ ‖A − e^{iφ}B‖_max
// evaluated at the Frobenius-optimal phase.
inline double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx ph = std::abs(overlap) > 1e-300 ? overlap / std::abs(overlap) : cplx{1.0};
  return max_abs(a - ph * b);
}

}  // namespace uqf
