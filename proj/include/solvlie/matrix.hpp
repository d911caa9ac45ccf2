#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvlie/error.hpp"
#include "solvlie/rational.hpp"

namespace solvlie {

/// Dense row-major matrix. Small sizes only (the algebras here have dim < 50).
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<T>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw InputError("ragged matrix literal");
      std::size_t j = 0;
      for (const auto& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InputError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw InputError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  T& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw InputError("matrix index out of range");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw InputError("matrix index out of range");
    return (*this)(i, j);
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_column(std::size_t j, const std::vector<T>& v) {
    if (v.size() != rows_) throw InputError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == T(0); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= T(-1); }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InputError("matrix product dimension mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (bkj == T(0)) continue;
          c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.cols_ != v.size()) throw InputError("matrix-vector dimension mismatch");
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        if (a(i, j) == T(0) || v[j] == T(0)) continue;
        out[i] += a(i, j) * v[j];
      }
    return out;
  }

 private:
  void check_same(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rational>;
using RatVector = std::vector<Rational>;

// ---------------------------------------------------------------------------
// Vector helpers

inline RatVector zero_vector(std::size_t n) { return RatVector(n, Rational(0)); }

inline RatVector unit_vector(std::size_t n, std::size_t i) {
  RatVector v(n, Rational(0));
  v.at(i) = Rational(1);
  return v;
}

inline bool is_zero(const RatVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

inline RatVector operator+(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline RatVector operator-(RatVector a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline RatVector operator*(const Rational& s, RatVector v) {
  for (auto& x : v) x *= s;
  return v;
}

inline RatVector operator-(RatVector v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Euclidean pairing of coordinate vectors.
inline Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("vector length mismatch");
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

/// Bilinear pairing a^T G b.
inline Rational pair(const RatVector& a, const RatMatrix& g, const RatVector& b) {
  return dot(a, g * b);
}

inline Rational trace(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("trace of non-square matrix");
  Rational t;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

inline std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Exact elimination

struct RowEchelon {
  RatMatrix reduced;                ///< reduced row-echelon form
  std::vector<std::size_t> pivots;  ///< pivot column of each nonzero row
};

/// Gauss-Jordan elimination, leftmost pivot first. The result is the unique
/// reduced row-echelon form, so bases derived from it are canonical.
inline RowEchelon rref(RatMatrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).pivots.size(); }

/// Canonical null-space basis: one vector per free column, with a 1 in that
/// column. Empty iff the map is injective.
inline std::vector<RatVector> kernel(const RatMatrix& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v = zero_vector(m.cols());
    v[f] = Rational(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

enum class SolveStatus { unique, non_unique, no_solution };

struct SolveResult {
  SolveStatus status = SolveStatus::no_solution;
  RatVector x;  ///< the solution when unique; a particular solution when non-unique
};

inline SolveResult linear_solve(const RatMatrix& m, const RatVector& b) {
  if (b.size() != m.rows()) throw InputError("linear_solve: rhs length does not match rows");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(aug);
  SolveResult res;
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return res;
  res.x = zero_vector(m.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) res.x[e.pivots[r]] = e.reduced(r, m.cols());
  res.status = e.pivots.size() == m.cols() ? SolveStatus::unique : SolveStatus::non_unique;
  return res;
}

/// Solves m x = b, throwing unless the solution is unique.
inline RatVector solve_unique(const RatMatrix& m, const RatVector& b) {
  auto r = linear_solve(m, b);
  if (r.status != SolveStatus::unique)
    throw InputError(r.status == SolveStatus::no_solution ? "system has no solution"
                                                          : "system has no unique solution");
  return r.x;
}

inline Rational determinant(RatMatrix m) {
  if (!m.is_square()) throw InputError("determinant of non-square matrix");
  Rational det(1);
  std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c).is_zero()) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

inline std::optional<RatMatrix> try_inverse(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("inverse of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return RatMatrix();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rational(1);
  }
  auto e = rref(aug);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

inline RatMatrix inverse(const RatMatrix& m) {
  auto inv = try_inverse(m);
  if (!inv) throw InputError("matrix is singular");
  return *inv;
}

inline bool is_symmetric(const RatMatrix& m) { return m.is_square() && m == m.transpose(); }

/// Sylvester's criterion on leading principal minors.
inline bool is_positive_definite(const RatMatrix& m) {
  if (!is_symmetric(m)) return false;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor(i, j) = m(i, j);
    if (determinant(minor).sign() <= 0) return false;
  }
  return true;
}

struct Inertia {
  std::size_t positive = 0, negative = 0, zero = 0;
};

/// Signature of a symmetric matrix by congruence diagonalization.
inline Inertia inertia(RatMatrix m) {
  if (!is_symmetric(m)) throw InputError("inertia of a non-symmetric matrix");
  const std::size_t n = m.rows();
  Inertia out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // prefer a nonzero diagonal pivot
    std::size_t p = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && !m(i, i).is_zero()) {
        p = i;
        break;
      }
    if (p == n) {
      // all remaining diagonal entries vanish; mix in an off-diagonal pair
      std::size_t a = n, b = n;
      for (std::size_t i = 0; i < n && a == n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!done[i] && !done[j] && !m(i, j).is_zero()) {
            a = i;
            b = j;
            break;
          }
      if (a == n) break;
      // e_a -> e_a + e_b makes the (a,a) entry 2 m(a,b)
      for (std::size_t k = 0; k < n; ++k) m(a, k) += m(b, k);
      for (std::size_t k = 0; k < n; ++k) m(k, a) += m(k, b);
      p = a;
    }
    Rational d = m(p, p);
    (d.sign() > 0 ? out.positive : out.negative)++;
    done[p] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || m(i, p).is_zero()) continue;
      Rational f = m(i, p) / d;
      for (std::size_t k = 0; k < n; ++k) m(i, k) -= f * m(p, k);
      for (std::size_t k = 0; k < n; ++k) m(k, i) -= f * m(k, p);
    }
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

}  // namespace solvlie
