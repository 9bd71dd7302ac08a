// Builds the monic orthogonal systems for two swap-symmetric weights — the
// legendre product on the square and the triangle weight (xy)^1 (1-x-y)^2 —
// and walks through the structure the library certifies: exact three-term
// matrices, their agreement with closed forms, reversal pairing across the
// two axes, and centrosymmetric gram matrices.

#include <iostream>
#include <string>

#include <bops/bops.hpp>

#include "render.hpp"

using bops::Axis;
using bops::Matrix;
using bops::MomentModel;
using bops::MopsCache;
using bops::Rational;

int main() {
  std::cout << "== legendre product weight on the square ==\n\n";
  const MomentModel<Rational> leg =
      bops::product_weight(bops::univariate_weight<Rational>("legendre"));
  const MopsCache<Rational> lc = bops::build_mops(leg, 3);
  for (int n = 0; n <= 2; ++n) demo::print_vector(lc.q(n), "Q_" + std::to_string(n));
  std::cout << "\n";
  demo::print_matrix(lc.h(2), "gram H_2");
  std::cout << "  centrosymmetric: " << (bops::is_centrosymmetric(lc.h(2)) ? "yes" : "no")
            << "\n\n";
  demo::print_matrix(lc.d(2, Axis::X), "D_2 (x axis)");
  demo::print_matrix(lc.d(2, Axis::Y), "D_2 (y axis)");
  std::cout << "  reverse pair: "
            << (bops::is_reverse_pair(lc.d(2, Axis::X), lc.d(2, Axis::Y)) ? "yes" : "no")
            << "\n\n";
  const bops::ProductMatrices<Rational> closed = bops::closed_form_product_matrices(
      bops::monic_recurrence(bops::univariate_weight<Rational>("legendre"), 4), 2, Axis::X);
  std::cout << "closed-form Upsilon_2 equals the built D_2: "
            << (closed.upsilon_mat == lc.d(2, Axis::X) ? "yes" : "no") << "\n\n";

  std::cout << "== triangle weight (xy)^1 (1-x-y)^2 ==\n\n";
  const MomentModel<Rational> tri = bops::simplex_jacobi<Rational>(Rational(1), Rational(2));
  const MopsCache<Rational> tc = bops::build_mops(tri, 4);
  for (int n = 0; n <= 2; ++n) demo::print_vector(tc.q(n), "Q_" + std::to_string(n));
  std::cout << "\n";
  for (int n = 1; n <= 3; ++n) {
    const Matrix<Rational> built = tc.c(n, Axis::X);
    const Matrix<Rational> cf =
        bops::closed_form_simplex_C<Rational>(n, Rational(1), Rational(2), Axis::X);
    std::cout << "C_" << n << " (x axis) equals its closed form: "
              << (built == cf ? "yes" : "no") << "\n";
  }
  std::cout << "\n";
  demo::print_matrix(tc.c(2, Axis::X), "C_2 (x axis), lower bidiagonal");
  std::cout << "\nthree-term residual at degree 3, x axis (exact): "
            << bops::ScalarTraits<Rational>::str(bops::m3tr_residual(tc, 3, Axis::X)) << "\n";

  std::cout << "\n== orthonormal layer (float backend) ==\n\n";
  const MomentModel<double> trif = bops::simplex_jacobi<double>(1.0, 2.0);
  const bops::OrthonormalSystem ortho =
      bops::build_orthonormal(bops::build_mops(trif, 3));
  demo::print_matrix(ortho.a(1, Axis::X), "A_1 (x axis)");
  demo::print_matrix(ortho.a(1, Axis::Y), "A_1 (y axis)");
  std::cout << "  reverse pair within 1e-9: "
            << (bops::is_reverse_pair(ortho.a(1, Axis::X), ortho.a(1, Axis::Y),
                                      bops::Tolerance{1e-9, 1e-9})
                    ? "yes"
                    : "no")
            << "\n";
  return 0;
}
