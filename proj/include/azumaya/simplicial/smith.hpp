#pragma once

#include "azumaya/config.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace azumaya::simplicial {

using BigInt = boost::multiprecision::cpp_int;

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<BigInt> multiply(const std::vector<BigInt>& x) const {
    std::vector<BigInt> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const BigInt& a = (*this)(i, j);
        if (!a.is_zero() && !x[j].is_zero()) y[i] += a * x[j];
      }
    return y;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t p = 0; p < a.cols_; ++p) {
        const BigInt& x = a(i, p);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(p, j).is_zero()) c(i, j) += x * b(p, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row_dst += f·row_src
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f.is_zero()) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!(*this)(src, j).is_zero()) (*this)(dst, j) += f * (*this)(src, j);
  }
  /// col_dst += f·col_src
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    if (f.is_zero()) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!(*this)(i, src).is_zero()) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> data_;
};

/// L·A·R = D with L, R unimodular and D diagonal, d_1 | d_2 | ... | d_r > 0.
struct SmithForm {
  std::vector<BigInt> diagonal; ///< the r nonzero invariant factors
  std::size_t rank = 0;
  IntMatrix left, left_inverse;   ///< L and L⁻¹ (rows × rows)
  IntMatrix right, right_inverse; ///< R and R⁻¹ (cols × cols)
};

namespace detail {

/// Every elementary operation is mirrored on L, L⁻¹, R, R⁻¹.
struct SmithWorkspace {
  IntMatrix a;
  IntMatrix l, li, r, ri;

  // row_i += f·row_t  (L ← E·L, L⁻¹ ← L⁻¹·E⁻¹)
  void row_add(std::size_t i, std::size_t t, const BigInt& f) {
    a.add_row(i, t, f);
    l.add_row(i, t, f);
    li.add_col(t, i, -f);
  }
  void col_add(std::size_t j, std::size_t t, const BigInt& f) {
    a.add_col(j, t, f);
    r.add_col(j, t, f);
    ri.add_row(t, j, -f);
  }
  void row_swap(std::size_t i, std::size_t t) {
    a.swap_rows(i, t);
    l.swap_rows(i, t);
    li.swap_cols(i, t);
  }
  void col_swap(std::size_t j, std::size_t t) {
    a.swap_cols(j, t);
    r.swap_cols(j, t);
    ri.swap_rows(j, t);
  }
  void row_negate(std::size_t i) {
    a.negate_row(i);
    l.negate_row(i);
    li.negate_col(i);
  }
};

inline bool is_unit(const BigInt& x) { return x == 1 || x == -1; }

} // namespace detail

/// Smith normal form over ℤ with exact arithmetic and both transforms
/// tracked together with their inverses.
inline SmithForm smith_normal_form(IntMatrix input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  detail::SmithWorkspace w{std::move(input), IntMatrix::identity(m), IntMatrix::identity(m),
                           IntMatrix::identity(n), IntMatrix::identity(n)};
  IntMatrix& a = w.a;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    // Pivot: nonzero entry of least magnitude in the trailing block.
    std::size_t pi = m, pj = n;
    BigInt best;
    for (std::size_t i = t; i < m && !(pi < m && detail::is_unit(best)); ++i)
      for (std::size_t j = t; j < n; ++j) {
        const BigInt& x = a(i, j);
        if (x.is_zero()) continue;
        if (pi == m || abs(x) < best) {
          best = abs(x);
          pi = i;
          pj = j;
          if (best == 1) break;
        }
      }
    if (pi == m) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t).is_zero()) continue;
        BigInt q = a(i, t) / a(t, t);
        w.row_add(i, t, -q);
        if (!a(i, t).is_zero()) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j).is_zero()) continue;
        BigInt q = a(t, j) / a(t, t);
        w.col_add(j, t, -q);
        if (!a(t, j).is_zero()) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row/column t onto the pivot.
        std::size_t bi = t, bj = t;
        BigInt b = abs(a(t, t));
        for (std::size_t i = t + 1; i < m; ++i)
          if (!a(i, t).is_zero() && abs(a(i, t)) < b) {
            b = abs(a(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(t, j).is_zero() && abs(a(t, j)) < b) {
            b = abs(a(t, j));
            bi = t;
            bj = j;
          }
        w.row_swap(t, bi);
        w.col_swap(t, bj);
        continue;
      }
      if (detail::is_unit(a(t, t))) break;
      // Enforce d_t | every entry of the trailing block.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!a(i, j).is_zero() && BigInt(a(i, j) % a(t, t)) != 0) {
            bad = i;
            break;
          }
      if (bad == m) break;
      w.row_add(t, bad, BigInt(1));
    }
    if (a(t, t) < 0) w.row_negate(t);
  }

  SmithForm out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.diagonal.push_back(a(i, i));
  out.left = std::move(w.l);
  out.left_inverse = std::move(w.li);
  out.right = std::move(w.r);
  out.right_inverse = std::move(w.ri);
  return out;
}

/// Least nonnegative residue.
inline BigInt mod_floor(const BigInt& x, const BigInt& m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return r;
}

inline std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw NumericalError("integer value " + x.str() + " does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

} // namespace azumaya::simplicial
