#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nielsen/error.hpp"

namespace nielsen {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const Integer &x) { return x.str(); }

/// Rationals print as "a/b", integers as "a".
inline std::string to_string(const Rational &x) {
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline int sign(const Integer &x) { return x.sign(); }
inline int sign(const Rational &x) { return x.sign(); }

inline bool is_integer(const Rational &x) {
  return boost::multiprecision::denominator(x) == 1;
}

/// Dense row-major matrix over an exact ring.
template <typename T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw Error(Errc::DimensionMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>> &rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c)
        throw Error(Errc::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T &operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::vector<T> row(std::size_t i) const {
    return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_};
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
  }
  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out;
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.cols_ != b.rows_)
      throw Error(Errc::DimensionMismatch, "matrix product shape");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T &aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix &a) {
    Matrix b = a;
    for (auto &x : b.data_) x = -x;
    return b;
  }

  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T> &v) const {
    if (v.size() != cols_)
      throw Error(Errc::DimensionMismatch, "matrix-vector shape");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline RatMatrix to_rational(const IntMatrix &m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

inline RatVector to_rational(const IntVector &v) {
  return RatVector(v.begin(), v.end());
}

/// Throws NotIntegral if any entry has a nontrivial denominator.
inline IntMatrix to_integer(const RatMatrix &m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_integer(m(i, j)))
        throw Error(Errc::NotIntegral,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") = " + to_string(m(i, j)));
      r(i, j) = boost::multiprecision::numerator(m(i, j));
    }
  return r;
}

/// u^T A v.
template <typename T>
T bilinear(const Matrix<T> &a, const std::vector<T> &u,
           const std::vector<T> &v) {
  T acc(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (u[i] == 0) continue;
    T row(0);
    for (std::size_t j = 0; j < a.cols(); ++j) row += a(i, j) * v[j];
    acc += u[i] * row;
  }
  return acc;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix a) {
  if (!a.square()) throw Error(Errc::DimensionMismatch, "determinant of non-square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Integer prev = 1;
  int s = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return s * a(n - 1, n - 1);
}

/// Rank over Q by Gaussian elimination.
inline std::size_t rank(RatMatrix a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(p, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

inline std::size_t rank(const IntMatrix &a) { return rank(to_rational(a)); }

/// Inverse over Q; throws DegenerateForm when singular.
inline RatMatrix inverse(RatMatrix a) {
  const std::size_t n = a.rows();
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Error(Errc::DegenerateForm, "singular matrix");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
inline std::tuple<Integer, Integer, Integer> xgcd(const Integer &a,
                                                  const Integer &b) {
  Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Integer q = old_r / r;
    old_r = old_r - q * r;
    std::swap(old_r, r);
    old_s = old_s - q * s;
    std::swap(old_s, s);
    old_t = old_t - q * t;
    std::swap(old_t, t);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

/// Row-style Hermite normal form: nonzero rows only, positive pivots,
/// entries above each pivot reduced into [0, pivot).
inline std::vector<IntVector> hermite_rows(std::vector<IntVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      if (rows[r][c] == 0) {
        std::swap(rows[r], rows[i]);
        continue;
      }
      auto [g, s, t] = xgcd(rows[r][c], rows[i][c]);
      const Integer a = rows[r][c] / g, b = rows[i][c] / g;
      for (std::size_t j = 0; j < n; ++j) {
        const Integer x = rows[r][j], y = rows[i][j];
        rows[r][j] = s * x + t * y;
        rows[i][j] = -b * x + a * y;
      }
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto &x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = rows[i][c] / rows[r][c];
      if (rows[i][c] - q * rows[r][c] < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

/// Basis of the saturated integer kernel {x in Z^n : m x = 0}, returned in
/// Hermite normal form.
inline std::vector<IntVector> integer_kernel(const IntMatrix &m) {
  const std::size_t rows = m.rows(), n = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(n);
  auto col_op = [&](std::size_t p, std::size_t q, const Integer &s,
                    const Integer &t, const Integer &x, const Integer &y) {
    // (col_p, col_q) <- (s col_p + t col_q, x col_p + y col_q)
    for (std::size_t i = 0; i < rows; ++i) {
      const Integer cp = a(i, p), cq = a(i, q);
      a(i, p) = s * cp + t * cq;
      a(i, q) = x * cp + y * cq;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Integer cp = u(i, p), cq = u(i, q);
      u(i, p) = s * cp + t * cq;
      u(i, q) = x * cp + y * cq;
    }
  };
  std::size_t pc = 0;
  for (std::size_t i = 0; i < rows && pc < n; ++i) {
    for (std::size_t j = pc + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      auto [g, s, t] = xgcd(a(i, pc), a(i, j));
      const Integer p = a(i, pc) / g, q = a(i, j) / g;
      col_op(pc, j, s, t, -q, p);
    }
    if (a(i, pc) != 0) ++pc;
  }
  std::vector<IntVector> kernel;
  for (std::size_t j = pc; j < n; ++j) kernel.push_back(u.col(j));
  return hermite_rows(std::move(kernel));
}

inline Integer abs(const Integer &x) { return x < 0 ? Integer(-x) : x; }

/// Smallest positive multiple of v with integer entries.
inline IntVector clear_denominators(const RatVector &v) {
  Integer l = 1;
  for (const auto &x : v) {
    const Integer d = boost::multiprecision::denominator(x);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = boost::multiprecision::numerator(Rational(v[i] * l));
  return out;
}

inline std::string to_string(const IntVector &v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

} // namespace nielsen
