#pragma once

// Exact integer linear algebra on 64-bit lattice coordinates.
//
// Every operation is checked: a result that does not fit in std::int64_t
// raises OverflowError instead of wrapping.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fanobott/error.hpp"

namespace fanobott {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

namespace checked {

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

inline Int neg(Int a) { return sub(0, a); }

inline Int narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("integer overflow: value exceeds 64 bits");
  return static_cast<Int>(v);
}

}  // namespace checked

/// Row-major rectangular integer matrix.
class IntMat {
 public:
  IntMat() = default;
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  IntMat(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw ValidationError("IntMat: rows of unequal length");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static IntMat from_rows(std::span<const IntVec> rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    IntMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ValidationError("IntMat: rows of unequal length");
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
  }

  /// Builds the matrix whose j-th column is columns[j].
  static IntMat from_columns(std::span<const IntVec> columns) {
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    IntMat m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw ValidationError("IntMat: columns of unequal length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntMat without_column(std::size_t skip) const {
    IntMat m(rows_, cols_ - 1);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0, c = 0; j < cols_; ++j)
        if (j != skip) m(i, c++) = (*this)(i, j);
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + static_cast<std::ptrdiff_t>(a * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((a + 1) * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>(b * cols_));
  }

  bool operator==(const IntMat&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// min{0, x_1, ..., x_n}.
inline Int mu(std::span<const Int> x) {
  if (x.empty()) throw ValidationError("mu: empty vector");
  return std::min<Int>(0, *std::min_element(x.begin(), x.end()));
}

/// (x_1 + ... + x_n) - (n + 1) * mu(x). Never negative.
inline Int nu(std::span<const Int> x) {
  const Int m = mu(x);
  Int sum = 0;
  for (Int v : x) sum = checked::add(sum, v);
  const Int scale = checked::add(static_cast<Int>(x.size()), 1);
  return checked::sub(sum, checked::mul(scale, m));
}

inline Int gcd_of(std::span<const Int> x) {
  Int g = 0;
  for (Int v : x) {
    if (v == INT64_MIN) throw OverflowError("gcd: |INT64_MIN| not representable");
    g = std::gcd(g, v);
  }
  return g;
}

/// A ray generator must have coprime entries.
inline bool is_primitive(std::span<const Int> x) { return gcd_of(x) == 1; }

inline IntVec add(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw ValidationError("vector add: length mismatch");
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked::add(a[i], b[i]);
  return r;
}

/// acc += scale * x
inline void axpy(IntVec& acc, Int scale, std::span<const Int> x) {
  if (acc.size() != x.size()) throw ValidationError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) acc[i] = checked::add(acc[i], checked::mul(scale, x[i]));
}

inline IntVec mat_vec(const IntMat& m, std::span<const Int> v) {
  if (m.cols() != v.size()) throw ValidationError("mat_vec: dimension mismatch");
  IntVec r(m.rows(), 0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] = checked::add(r[i], checked::mul(m(i, j), v[j]));
  return r;
}

namespace detail {

// Bareiss elimination on the leading `pivot_cols` columns of `a`; the
// remaining columns are carried along (augmented right-hand sides).
// Returns the row-swap sign, or 0 when a pivot column is entirely zero.
inline int bareiss_eliminate(IntMat& a, std::size_t pivot_cols) {
  const std::size_t n = a.rows();
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k < n && k < pivot_cols; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && a(swap_with, k) == 0) ++swap_with;
      if (swap_with == n) return 0;
      a.swap_rows(k, swap_with);
      sign = -sign;
    }
    const Int pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < a.cols(); ++j) {
        const __int128 num = static_cast<__int128>(a(i, j)) * pivot - static_cast<__int128>(a(i, k)) * a(k, j);
        a(i, j) = checked::narrow(num / prev);
      }
      a(i, k) = 0;
    }
    prev = pivot;
  }
  return sign;
}

}  // namespace detail

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int det(const IntMat& m) {
  if (!m.square()) throw ValidationError("det: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat a = m;
  const int sign = detail::bareiss_eliminate(a, n);
  if (sign == 0) return 0;
  return sign > 0 ? a(n - 1, n - 1) : checked::neg(a(n - 1, n - 1));
}

/// Solves a·x = b for a nonsingular square `a`. Returns nullopt when the
/// unique solution is not integral; throws when `a` is singular.
inline std::optional<IntVec> solve_integral(const IntMat& a, std::span<const Int> b) {
  if (!a.square()) throw ValidationError("solve_integral: matrix not square");
  if (b.size() != a.rows()) throw ValidationError("solve_integral: right-hand side length mismatch");
  const std::size_t n = a.rows();
  IntMat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  if (detail::bareiss_eliminate(aug, n) == 0) throw ValidationError("solve_integral: singular matrix");
  IntVec x(n, 0);
  for (std::size_t i = n; i-- > 0;) {
    __int128 rhs = aug(i, n);
    for (std::size_t j = i + 1; j < n; ++j) rhs -= static_cast<__int128>(aug(i, j)) * x[j];
    const Int d = aug(i, i);
    if (d == 0) throw ValidationError("solve_integral: singular matrix");
    if (rhs % d != 0) return std::nullopt;
    x[i] = checked::narrow(rhs / d);
  }
  return x;
}

/// The primitive integer generator of the kernel of an n x (n+1) matrix of
/// rank n, normalized so that its first nonzero entry is positive.
inline IntVec kernel_primitive(const IntMat& m) {
  if (m.cols() != m.rows() + 1)
    throw ValidationError("kernel_primitive: expected n x (n+1) matrix, got " + std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  // Signed maximal minors: row r of m dotted with v expands a determinant
  // with a repeated row, hence vanishes.
  IntVec v(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const Int minor = det(m.without_column(j));
    v[j] = (j % 2 == 0) ? minor : checked::neg(minor);
  }
  const Int g = gcd_of(v);
  if (g == 0) throw ValidationError("kernel_primitive: rank is less than the row count");
  const auto first = std::find_if(v.begin(), v.end(), [](Int x) { return x != 0; });
  const Int scale = *first > 0 ? g : -g;
  for (Int& x : v) x /= scale;
  return v;
}

}  // namespace fanobott
