#pragma once

// Independent reference computations for the tests.  Everything here is
// deliberately written against a different algorithm than the library path
// it checks: cofactor determinants vs elimination, quadrature vs closed-form
// moment ratios, one-dimensional factorization vs the tensor rule.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <bops/bops.hpp>

namespace oracles {

using bops::Matrix;
using bops::Rational;
using bops::ScalarTraits;

// ---------------------------------------------------------------------------
// Determinants by cofactor expansion (O(n!); keep n <= 5)
// ---------------------------------------------------------------------------

template <class S>
S laplace_det(const Matrix<S>& a) {
  if (a.rows() != a.cols()) throw bops::SpecError("laplace_det: square matrices only");
  if (a.rows() == 0) return ScalarTraits<S>::one();
  if (a.rows() == 1) return a(0, 0);
  S acc = ScalarTraits<S>::zero();
  for (std::size_t j = 0; j < a.cols(); ++j) {
    S term = a(0, j) * laplace_det(bops::minor_matrix(a, 0, j));
    acc = j % 2 == 0 ? S(acc + term) : S(acc - term);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Deterministic random inputs
// ---------------------------------------------------------------------------

inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 9);
  return Rational(num(rng)) / den(rng);
}

inline Matrix<Rational> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix<Rational> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng);
  return m;
}

inline Matrix<Rational> random_centrosymmetric(std::mt19937_64& rng, std::size_t rows,
                                               std::size_t cols) {
  Matrix<Rational> m = random_matrix(rng, rows, cols);
  Matrix<Rational> c(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      c(i, j) = (m(i, j) + m(rows - 1 - i, cols - 1 - j)) / 2;
  return c;
}

inline Matrix<Rational> random_centrosymmetric(std::mt19937_64& rng, std::size_t n) {
  return random_centrosymmetric(rng, n, n);
}

inline Matrix<Rational> random_invertible(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix<Rational> m = random_matrix(rng, n, n);
    if (!ScalarTraits<Rational>::is_zero(bops::determinant(m))) return m;
  }
}

inline Matrix<Rational> random_invertible_centrosymmetric(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    Matrix<Rational> m = random_centrosymmetric(rng, n);
    if (!ScalarTraits<Rational>::is_zero(bops::determinant(m))) return m;
  }
}

// Random SPD centrosymmetric float matrix: symmetrize, average with the
// double reversal (symmetry survives), then shift the diagonal past the
// worst possible eigenvalue excursion.
inline Matrix<double> random_spd_centrosymmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix<double> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = dist(rng);
  Matrix<double> b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) b(i, j) = (a(i, j) + a(j, i)) / 2.0;
  Matrix<double> c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c(i, j) = (b(i, j) + b(n - 1 - i, n - 1 - j)) / 2.0;
  const double shift = static_cast<double>(n) + 1.0;  // entries are in [-1, 1]
  for (std::size_t i = 0; i < n; ++i) c(i, i) = c(i, i) + shift;
  return c;
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the triangle weight (xy)^alpha (1-x-y)^gamma
// ---------------------------------------------------------------------------

// After x = u, y = v(1-u) the triangle moment splits into two line
// integrals; the substitutions u = 1-s^2 and v = 1-t^2 turn half-integer
// powers of (1-u), (1-v) into polynomials, so Gauss-Legendre is exact once
// the rule covers the degree.  Requires alpha integer and gamma = odd/2,
// which covers the (1, 1/2) instance the tests pin.
inline double simplex_moment_quadrature(int m, int n, int alpha, double gamma) {
  const auto [xs, ws] = bops::gauss_legendre_on(48, 0.0, 1.0);
  bops::detail::KahanSum su, sv;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double s = xs[i];
    const double u = 1.0 - s * s;
    // u^{m+alpha} (1-u)^{n+alpha+gamma+1} du -> 2 s (1-s^2)^{m+alpha} s^{2(n+alpha+gamma+1)}
    su.add(ws[i] * 2.0 * s * std::pow(u, m + alpha) *
           std::pow(s, 2.0 * (n + alpha + gamma + 1.0)));
    const double t = xs[i];
    const double v = 1.0 - t * t;
    // v^{n+alpha} (1-v)^{gamma} dv -> 2 t (1-t^2)^{n+alpha} t^{2 gamma}
    sv.add(ws[i] * 2.0 * t * std::pow(v, n + alpha) * std::pow(t, 2.0 * gamma));
  }
  return su.value() * sv.value();
}

// ---------------------------------------------------------------------------
// One-dimensional factorization oracle for the quartic exponential weight
// ---------------------------------------------------------------------------

// With b = 0 the plane weight factors as w(x) w(y), w(x) = exp(-a x^4 - c
// x^2); moments are then products of line integrals computed here with a
// deliberately different rule size than the library's tensor grids.
inline double freud_line_moment(int k, double a, double c, double r, int points = 301) {
  const auto [xs, ws] = bops::gauss_legendre_on(points, -r, r);
  bops::detail::KahanSum acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    acc.add(ws[i] * std::pow(x, k) * std::exp(-(a * x * x * x * x + c * x * x)));
  }
  return acc.value();
}

}  // namespace oracles
