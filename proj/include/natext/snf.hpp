#pragma once

// Smith normal form over the integers, with the unimodular transforms kept
// so that lattice membership can be decided exactly.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <utility>
#include <vector>

#include "natext/error.hpp"

namespace natext {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  T const& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  // row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, T const& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  // col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, T const& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  bool operator==(Matrix const&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> operator*(Matrix<T> const& a, Matrix<T> const& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matrix shape mismatch");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

/// Result of `smith_normal_form`: left * input * right == diagonal.
template <typename T>
struct SmithForm {
  Matrix<T> diagonal;
  Matrix<T> left;
  Matrix<T> right;
  std::vector<T> invariants;  // non-zero diagonal entries, each divides the next
};

namespace detail {
// floor division, remainder in [0, |b|)
template <typename T>
std::pair<T, T> floor_divmod(T const& a, T const& b) {
  T q = a / b;
  T r = a - q * b;
  if (r < 0) {
    if (b > 0) {
      r += b;
      q -= 1;
    } else {
      r -= b;
      q += 1;
    }
  }
  return {q, r};
}
}  // namespace detail

/// Smith normal form by elimination with minimal-absolute-value pivots.
template <typename T>
SmithForm<T> smith_normal_form(Matrix<T> a) {
  std::size_t const m = a.rows();
  std::size_t const n = a.cols();
  Matrix<T> left = Matrix<T>::identity(m);
  Matrix<T> right = Matrix<T>::identity(n);

  auto abs_of = [](T const& x) { return x < 0 ? T(-x) : x; };

  std::size_t t = 0;
  while (t < m && t < n) {
    // pick the non-zero entry of least absolute value in the trailing block
    bool found = false;
    std::size_t pr = t, pc = t;
    T best;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a(i, j) != 0 && (!found || abs_of(a(i, j)) < best)) {
          found = true;
          best = abs_of(a(i, j));
          pr = i;
          pc = j;
        }
    if (!found) break;
    a.swap_rows(t, pr);
    left.swap_rows(t, pr);
    a.swap_cols(t, pc);
    right.swap_cols(t, pc);

    bool dirty = false;
    for (std::size_t i = t + 1; i < m; ++i) {
      if (a(i, t) == 0) continue;
      T q = detail::floor_divmod(a(i, t), a(t, t)).first;
      a.add_row(i, t, -q);
      left.add_row(i, t, -q);
      if (a(i, t) != 0) dirty = true;
    }
    for (std::size_t j = t + 1; j < n; ++j) {
      if (a(t, j) == 0) continue;
      T q = detail::floor_divmod(a(t, j), a(t, t)).first;
      a.add_col(j, t, -q);
      right.add_col(j, t, -q);
      if (a(t, j) != 0) dirty = true;
    }
    if (dirty) continue;  // a smaller remainder exists; re-pivot

    // the pivot must divide the whole trailing block
    bool divides = true;
    for (std::size_t i = t + 1; i < m && divides; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        if (a(i, j) % a(t, t) != 0) {
          a.add_row(t, i, T(1));
          left.add_row(t, i, T(1));
          divides = false;
          break;
        }
    if (!divides) continue;

    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
    ++t;
  }

  SmithForm<T> out{std::move(a), std::move(left), std::move(right), {}};
  for (std::size_t i = 0; i < std::min(m, n); ++i)
    if (out.diagonal(i, i) != 0) out.invariants.push_back(out.diagonal(i, i));
  return out;
}

/// True iff `v` is an integer combination of the rows of `rows`.
template <typename T>
bool in_row_lattice(Matrix<T> const& rows, std::vector<T> const& v) {
  if (v.size() != rows.cols()) throw InvalidArgument("vector length mismatch");
  bool zero = true;
  for (auto const& x : v) zero = zero && x == 0;
  if (zero) return true;
  if (rows.rows() == 0) return false;
  auto snf = smith_normal_form(rows);
  // v = y * rows  <=>  v * right = z * diagonal for an integer z
  std::size_t const n = rows.cols();
  std::size_t const r = snf.invariants.size();
  for (std::size_t j = 0; j < n; ++j) {
    T w(0);
    for (std::size_t k = 0; k < n; ++k) w += v[k] * snf.right(k, j);
    if (j < r) {
      if (w % snf.diagonal(j, j) != 0) return false;
    } else if (w != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace natext
