// Copyright 2026 The nhentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "nhe/errors.hpp"

namespace nhe {

/// Dense square matrix of complex entries, stored row-major.
///
/// The library works in double precision; the long double instantiation is
/// used internally where a computation has to keep digits that the double
/// result would otherwise lose (exact propagation, closed forms).
template <class Real>
class BasicMatrix {
 public:
  using real_type = Real;
  using value_type = std::complex<Real>;

  BasicMatrix() = default;

  explicit BasicMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw Error(ErrorCode::invalid_argument, "matrix dimension must be positive");
  }

  /// Row-major entries; the count must be a perfect square.
  BasicMatrix(std::initializer_list<value_type> entries) {
    const auto n = static_cast<std::size_t>(std::lround(std::sqrt(double(entries.size()))));
    if (n == 0 || n * n != entries.size()) {
      throw Error(ErrorCode::invalid_argument, "initializer is not a square matrix");
    }
    dim_ = n;
    data_.assign(entries.begin(), entries.end());
  }

  static BasicMatrix zero(std::size_t dim) { return BasicMatrix(dim); }

  static BasicMatrix identity(std::size_t dim) {
    BasicMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = Real(1);
    return m;
  }

  static BasicMatrix diagonal(std::span<const Real> values) {
    BasicMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  value_type& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  const value_type& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  std::span<const value_type> entries() const noexcept { return data_; }

  BasicMatrix adjoint() const {
    BasicMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
  }

  value_type trace() const {
    value_type t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest entry modulus.
  Real max_abs() const {
    Real m = 0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Induced 1-norm (maximum absolute column sum).
  Real norm1() const {
    Real best = 0;
    for (std::size_t j = 0; j < dim_; ++j) {
      Real s = 0;
      for (std::size_t i = 0; i < dim_; ++i) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  template <class To>
  BasicMatrix<To> cast() const {
    BasicMatrix<To> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        out(i, j) = std::complex<To>(static_cast<To>((*this)(i, j).real()),
                                     static_cast<To>((*this)(i, j).imag()));
    return out;
  }

  BasicMatrix& operator+=(const BasicMatrix& rhs) {
    require_same_dim(rhs, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
  }

  BasicMatrix& operator-=(const BasicMatrix& rhs) {
    require_same_dim(rhs, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
  }

  BasicMatrix& operator*=(value_type s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend BasicMatrix operator+(BasicMatrix a, const BasicMatrix& b) { return a += b; }
  friend BasicMatrix operator-(BasicMatrix a, const BasicMatrix& b) { return a -= b; }
  friend BasicMatrix operator-(BasicMatrix a) { return a *= value_type(-1); }
  friend BasicMatrix operator*(BasicMatrix a, value_type s) { return a *= s; }
  friend BasicMatrix operator*(value_type s, BasicMatrix a) { return a *= s; }

  friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
    a.require_same_dim(b, "*");
    const std::size_t n = a.dim_;
    BasicMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const value_type aik = a(i, k);
        for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const BasicMatrix&, const BasicMatrix&) = default;

 private:
  void require_same_dim(const BasicMatrix& other, const char* op) const {
    if (other.dim_ != dim_) {
      throw Error(ErrorCode::dimension_mismatch,
                  "dimension mismatch in operator" + std::string(op) + ": " +
                      std::to_string(dim_) + " vs " + std::to_string(other.dim_));
    }
  }

  std::size_t dim_ = 0;
  std::vector<value_type> data_;
};

using ComplexMatrix = BasicMatrix<double>;
using ComplexMatrixL = BasicMatrix<long double>;
using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

template <class Real>
Real max_abs_diff(const BasicMatrix<Real>& a, const BasicMatrix<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "max_abs_diff: dimension mismatch");
  Real m = 0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

/// max |m - m^dagger|.
template <class Real>
Real hermitian_defect(const BasicMatrix<Real>& m) {
  Real d = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

/// Hermitian within atol * max(1, max|m_ij|).
template <class Real>
bool is_hermitian(const BasicMatrix<Real>& m, Real atol) {
  return hermitian_defect(m) <= atol * std::max(Real(1), m.max_abs());
}

/// (m + m^dagger) / 2
template <class Real>
BasicMatrix<Real> hermitize(const BasicMatrix<Real>& m) {
  BasicMatrix<Real> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = (m(i, j) + std::conj(m(j, i))) * Real(0.5);
  return out;
}

template <class Real>
bool all_finite(const BasicMatrix<Real>& m) {
  return std::all_of(m.entries().begin(), m.entries().end(), [](const auto& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

/// Entrywise comparison with an absolute tolerance (default 1e-12).
inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double atol = 1e-12) {
  return a.dim() == b.dim() && max_abs_diff(a, b) <= atol;
}

std::string to_string(const ComplexMatrix& m);

}  // namespace nhe
