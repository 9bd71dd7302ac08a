#pragma once

// Symmetric eigendecomposition by cyclic Jacobi rotations, plus the matrix
// square root for symmetric positive definite input.  Float backend only —
// exact scalars have no square roots in general.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "scalar.hpp"

namespace bops {

struct EigenDecomposition {
  std::vector<double> values;  // descending
  Matrix<double> vectors;      // column k pairs with values[k]
};

namespace detail {

inline double frobenius(const Matrix<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) s += x(i, j) * x(i, j);
  return std::sqrt(s);
}

inline double off_diagonal_frobenius(const Matrix<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (i != j) s += x(i, j) * x(i, j);
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic sweeps over all (p, q) pairs; converged when the off-diagonal
// Frobenius norm falls below 1e-12 * ||X||_F.  More than 100 sweeps raises
// ConvergenceError (Jacobi converges in a handful of sweeps on anything sane).
inline EigenDecomposition symmetric_eigen(const Matrix<double>& x, const Tolerance& tol = {}) {
  if (!x.is_square()) throw SpecError("symmetric_eigen: matrix is not square");
  const std::size_t n = x.rows();
  {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        worst = std::fmax(worst, std::fabs(x(i, j) - x(j, i)));
    double scale = ScalarTraits<double>::to_double(max_abs(x));
    if (worst > tol.atol + tol.rtol * scale)
      throw SpecError("symmetric_eigen: input is not symmetric within tolerance");
  }

  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (x(i, j) + x(j, i));
  Matrix<double> v = Matrix<double>::identity(n);

  const double target = 1e-12 * detail::frobenius(a);
  int sweeps = 0;
  while (detail::off_diagonal_frobenius(a) > target) {
    if (++sweeps > 100)
      throw ConvergenceError("symmetric_eigen: no convergence after 100 sweeps");
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t l, std::size_t r) { return diag[l] > diag[r]; });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix<double>(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = diag[src];
    // Deterministic sign: the largest-magnitude component points up.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::fabs(v(i, src)) > std::fabs(v(arg, src))) arg = i;
    const double flip = (n > 0 && v(arg, src) < 0) ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = flip * v(i, src);
  }
  return out;
}

struct SpdRoots {
  Matrix<double> sqrt;      // S with S * S == X
  Matrix<double> inv_sqrt;  // S^{-1}
};

namespace detail {

inline SpdRoots spd_roots_from(const EigenDecomposition& eig, const Tolerance& tol) {
  const std::size_t n = eig.values.size();
  const double lead = n ? eig.values.front() : 0.0;
  for (double lam : eig.values)
    if (!(lam > tol.atol + tol.rtol * std::fmax(lead, 0.0)))
      throw SpecError("spd_sqrt: matrix is not positive definite (eigenvalue " +
                      ScalarTraits<double>::str(lam) + ")");
  Matrix<double> s(n, n), si(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0, acci = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const double r = std::sqrt(eig.values[k]);
        acc += eig.vectors(i, k) * r * eig.vectors(j, k);
        acci += eig.vectors(i, k) / r * eig.vectors(j, k);
      }
      s(i, j) = acc;
      si(i, j) = acci;
    }
  return {std::move(s), std::move(si)};
}

}  // namespace detail

// Both H^{1/2} and H^{-1/2} from one eigendecomposition.
inline SpdRoots spd_roots(const Matrix<double>& x, const Tolerance& tol = {}) {
  return detail::spd_roots_from(symmetric_eigen(x, tol), tol);
}

// Principal square root of a symmetric positive definite matrix.  If the input
// is also centrosymmetric, the result is centrosymmetric (within roundoff).
inline Matrix<double> spd_sqrt(const Matrix<double>& x, const Tolerance& tol = {}) {
  return spd_roots(x, tol).sqrt;
}

}  // namespace bops
