#pragma once

// Dense matrices over an exact or floating scalar, plus the symmetry toolkit
// used throughout: reversed matrices (rotate the entry grid by a half turn),
// reverse pairs, centrosymmetric tests, exchange matrices, and exact/float
// determinants, adjugates and solves.
//
// Conventions: the reverse of an m x n matrix X is x^R[i][j] = x[m-1-i][n-1-j];
// X and Y form a reverse pair when Y == reverse(X).  A matrix is
// centrosymmetric when it equals its own reverse.  The 0 x 0 matrix is legal
// everywhere it makes sense; its determinant is 1 (empty product).

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace bops {

template <class S>
class Matrix {
 public:
  Matrix() = default;  // 0 x 0

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), d_(rows * cols, ScalarTraits<S>::zero()) {}

  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    d_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw SpecError("Matrix: ragged initializer");
      for (const auto& v : r) d_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarTraits<S>::one();
    return m;
  }

  static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_empty() const noexcept { return d_.empty(); }

  S& operator()(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw SpecError("Matrix: element index out of range");
    return d_[i * cols_ + j];
  }
  const S& operator()(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw SpecError("Matrix: element index out of range");
    return d_[i * cols_ + j];
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o, "operator+");
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = d_[k] + o.d_[k];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o, "operator-");
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = d_[k] - o.d_[k];
    return r;
  }

  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = -d_[k];
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw SpecError("Matrix product: inner dimensions differ");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const S& a = (*this)(i, k);
        if (ScalarTraits<S>::is_exact && ScalarTraits<S>::is_zero(a)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }

  Matrix scaled(const S& c) const {
    Matrix r(rows_, cols_);
    for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = d_[k] * c;
    return r;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw SpecError(std::string("Matrix ") + what + ": shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> d_;
};

// ---------------------------------------------------------------------------
// Reversal / symmetry predicates
// ---------------------------------------------------------------------------

template <class S>
Matrix<S> reverse(const Matrix<S>& x) {
  Matrix<S> r(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      r(i, j) = x(x.rows() - 1 - i, x.cols() - 1 - j);
  return r;
}

// Anti-diagonal permutation J_n; J*J = I and reverse(X) == J_m * X * J_n.
template <class S>
Matrix<S> exchange_matrix(std::size_t n) {
  Matrix<S> j(n, n);
  for (std::size_t i = 0; i < n; ++i) j(i, n - 1 - i) = ScalarTraits<S>::one();
  return j;
}

// Largest |x[i][j] - y[m-1-i][n-1-j]|; 0 for empty matrices.  Shapes must match.
template <class S>
S reverse_violation(const Matrix<S>& x, const Matrix<S>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw SpecError("reverse_violation: shape mismatch");
  S worst = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      S d = ScalarTraits<S>::abs(x(i, j) - y(x.rows() - 1 - i, x.cols() - 1 - j));
      if (ScalarTraits<S>::abs_less(worst, d)) worst = d;
    }
  return worst;
}

template <class S>
bool is_reverse_pair(const Matrix<S>& x, const Matrix<S>& y, const Tolerance& tol = {}) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  return ScalarTraits<S>::is_zero(reverse_violation(x, y), tol);
}

template <class S>
S centrosymmetry_violation(const Matrix<S>& x) {
  return reverse_violation(x, x);
}

template <class S>
bool is_centrosymmetric(const Matrix<S>& x, const Tolerance& tol = {}) {
  return ScalarTraits<S>::is_zero(centrosymmetry_violation(x), tol);
}

enum class SymmetryClass { Symmetric, Skew, Neither };

inline const char* to_string(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::Symmetric: return "symmetric";
    case SymmetryClass::Skew: return "skew";
    default: return "neither";
  }
}

// Classifies v against its own reversal.  The zero vector has no class; a
// vector passing both tests (possible only near zero under a float tolerance)
// reports Symmetric.
template <class S>
SymmetryClass vector_symmetry_class(const std::vector<S>& v, const Tolerance& tol = {}) {
  bool all_zero = true;
  for (const S& a : v)
    if (!ScalarTraits<S>::is_zero(a, tol)) {
      all_zero = false;
      break;
    }
  if (v.empty() || all_zero) throw SpecError("vector_symmetry_class: zero vector has no class");
  bool sym = true, skew = true;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!ScalarTraits<S>::equal(v[i], v[n - 1 - i], tol)) sym = false;
    if (!ScalarTraits<S>::equal(v[i], -v[n - 1 - i], tol)) skew = false;
  }
  if (sym) return SymmetryClass::Symmetric;
  if (skew) return SymmetryClass::Skew;
  return SymmetryClass::Neither;
}

// [[T1, 0], [0, T2]]; centrosymmetric exactly when (T1, T2) is a reverse pair.
template <class S>
Matrix<S> block_diag_pair(const Matrix<S>& t1, const Matrix<S>& t2) {
  if (t1.rows() != t2.rows() || t1.cols() != t2.cols())
    throw SpecError("block_diag_pair: blocks must have the same shape");
  Matrix<S> b(t1.rows() + t2.rows(), t1.cols() + t2.cols());
  for (std::size_t i = 0; i < t1.rows(); ++i)
    for (std::size_t j = 0; j < t1.cols(); ++j) b(i, j) = t1(i, j);
  for (std::size_t i = 0; i < t2.rows(); ++i)
    for (std::size_t j = 0; j < t2.cols(); ++j) b(t1.rows() + i, t1.cols() + j) = t2(i, j);
  return b;
}

// ---------------------------------------------------------------------------
// Elimination kernels
// ---------------------------------------------------------------------------

template <class S>
Matrix<S> minor_matrix(const Matrix<S>& x, std::size_t row, std::size_t col) {
  if (row >= x.rows() || col >= x.cols()) throw SpecError("minor_matrix: index out of range");
  Matrix<S> m(x.rows() - 1, x.cols() - 1);
  for (std::size_t i = 0, mi = 0; i < x.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, mj = 0; j < x.cols(); ++j) {
      if (j == col) continue;
      m(mi, mj) = x(i, j);
      ++mj;
    }
    ++mi;
  }
  return m;
}

namespace detail {

// Fraction-free Bareiss elimination; every division is exact over a field or
// an integral domain, which keeps intermediate entries small for rationals.
template <class S>
S determinant_bareiss(Matrix<S> a) {
  const std::size_t n = a.rows();
  if (n == 0) return ScalarTraits<S>::one();
  int sign = 1;
  S prev = ScalarTraits<S>::one();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && ScalarTraits<S>::is_zero(a(piv, k), Tolerance{0.0, 0.0})) ++piv;
    if (piv == n) return ScalarTraits<S>::zero();
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  S det = a(n - 1, n - 1);
  return sign < 0 ? S(-det) : det;
}

template <class S>
S determinant_lu(Matrix<S> a) {
  const std::size_t n = a.rows();
  if (n == 0) return ScalarTraits<S>::one();
  int sign = 1;
  S det = ScalarTraits<S>::one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (ScalarTraits<S>::abs_less(a(piv, k), a(i, k))) piv = i;
    if (ScalarTraits<S>::is_zero(a(piv, k), Tolerance{0.0, 0.0})) return ScalarTraits<S>::zero();
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      sign = -sign;
    }
    det = det * a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      S f = a(i, k) / a(k, k);
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = a(i, j) - f * a(k, j);
    }
  }
  return sign < 0 ? S(-det) : det;
}

}  // namespace detail

template <class S>
S determinant(const Matrix<S>& x) {
  if (!x.is_square()) throw SpecError("determinant: matrix is not square");
  if constexpr (ScalarTraits<S>::is_exact)
    return detail::determinant_bareiss(x);
  else
    return detail::determinant_lu(x);
}

// Gauss-Jordan solve of A * X = B.  Exact backend picks the first nonzero
// pivot, float picks the largest magnitude; exact zero pivot columns raise
// SingularMatrixError.
template <class S>
Matrix<S> solve(const Matrix<S>& a, const Matrix<S>& b) {
  if (!a.is_square()) throw SpecError("solve: coefficient matrix is not square");
  if (a.rows() != b.rows()) throw SpecError("solve: right-hand side has wrong row count");
  const std::size_t n = a.rows(), m = b.cols();
  Matrix<S> w(n, n + m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) w(i, n + j) = b(i, j);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    if constexpr (ScalarTraits<S>::is_exact) {
      while (piv < n && ScalarTraits<S>::is_zero(w(piv, col), Tolerance{0.0, 0.0})) ++piv;
      if (piv == n) throw SingularMatrixError("solve: singular matrix");
    } else {
      for (std::size_t i = col + 1; i < n; ++i)
        if (ScalarTraits<S>::abs_less(w(piv, col), w(i, col))) piv = i;
      if (ScalarTraits<S>::is_zero(w(piv, col), Tolerance{0.0, 0.0}))
        throw SingularMatrixError("solve: singular matrix");
    }
    if (piv != col)
      for (std::size_t j = 0; j < n + m; ++j) std::swap(w(col, j), w(piv, j));
    S inv = w(col, col);
    for (std::size_t j = col; j < n + m; ++j) w(col, j) = w(col, j) / inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      S f = w(i, col);
      if (ScalarTraits<S>::is_zero(f, Tolerance{0.0, 0.0})) continue;
      for (std::size_t j = col; j < n + m; ++j) w(i, j) = w(i, j) - f * w(col, j);
    }
  }
  Matrix<S> x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = w(i, n + j);
  return x;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& a) {
  if (!a.is_square()) throw SpecError("inverse: matrix is not square");
  return solve(a, Matrix<S>::identity(a.rows()));
}

// Transposed cofactor matrix; X * adjugate(X) == det(X) * I for square X of
// any rank, which is what the reversal/centrosymmetry propagation rules need.
template <class S>
Matrix<S> adjugate(const Matrix<S>& x) {
  if (!x.is_square()) throw SpecError("adjugate: matrix is not square");
  const std::size_t n = x.rows();
  if (n == 0) return x;
  Matrix<S> adj(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      S c = determinant(minor_matrix(x, i, j));
      adj(j, i) = ((i + j) % 2 == 0) ? c : S(-c);
    }
  return adj;
}

template <class S>
std::size_t rank(const Matrix<S>& x, const Tolerance& tol = {}) {
  Matrix<S> a = x;
  const std::size_t nr = a.rows(), nc = a.cols();
  S scale = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j)
      if (ScalarTraits<S>::abs_less(scale, a(i, j))) scale = ScalarTraits<S>::abs(a(i, j));
  std::size_t r = 0;
  for (std::size_t col = 0; col < nc && r < nr; ++col) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < nr; ++i)
      if (ScalarTraits<S>::abs_less(a(piv, col), a(i, col))) piv = i;
    bool usable;
    if constexpr (ScalarTraits<S>::is_exact)
      usable = !ScalarTraits<S>::is_zero(a(piv, col));
    else
      usable = ScalarTraits<S>::abs(a(piv, col)) >
               tol.atol + tol.rtol * ScalarTraits<S>::to_double(scale);
    if (!usable) continue;
    if (piv != r)
      for (std::size_t j = 0; j < nc; ++j) std::swap(a(r, j), a(piv, j));
    for (std::size_t i = r + 1; i < nr; ++i) {
      S f = a(i, col) / a(r, col);
      for (std::size_t j = col; j < nc; ++j) a(i, j) = a(i, j) - f * a(r, j);
    }
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Comparisons / conversion
// ---------------------------------------------------------------------------

template <class S>
S max_abs(const Matrix<S>& x) {
  S worst = ScalarTraits<S>::zero();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (ScalarTraits<S>::abs_less(worst, x(i, j))) worst = ScalarTraits<S>::abs(x(i, j));
  return worst;
}

template <class S>
S max_abs_diff(const Matrix<S>& x, const Matrix<S>& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw SpecError("max_abs_diff: shape mismatch");
  return max_abs(x - y);
}

template <class S>
bool approx_equal(const Matrix<S>& x, const Matrix<S>& y, const Tolerance& tol = {}) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!ScalarTraits<S>::equal(x(i, j), y(i, j), tol)) return false;
  return true;
}

inline Matrix<double> to_float(const Matrix<Rational>& x) {
  Matrix<double> r(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      r(i, j) = ScalarTraits<Rational>::to_double(x(i, j));
  return r;
}

}  // namespace bops
