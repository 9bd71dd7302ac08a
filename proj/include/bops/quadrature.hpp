#pragma once

// Gauss-Legendre rules used by the float-backend moment integrals.

#include <cmath>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace bops {

// Nodes and weights on [-1, 1]; Newton iteration on the Legendre recurrence.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw SpecError("gauss_legendre: rule size must be positive");
  std::vector<double> x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {std::move(x), std::move(w)};
}

// The same rule mapped onto [lo, hi].
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre_on(int n, double lo,
                                                                             double hi) {
  auto [x, w] = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  for (int i = 0; i < n; ++i) {
    x[i] = mid + half * x[i];
    w[i] *= half;
  }
  return {std::move(x), std::move(w)};
}

namespace detail {

struct KahanSum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    const double y = v - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const noexcept { return s; }
};

}  // namespace detail

}  // namespace bops
