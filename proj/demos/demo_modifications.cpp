// Modifies the triangle weight (xy)^1 (1-x-y)^{1/2} two ways — point masses
// at the corners and multiplication by a swap-symmetric quadratic — and shows
// what survives: exact low-degree coefficients, reflexive first vectors, the
// two-step connection back to the base system, and the failure mode when a
// degenerate multiplier destroys quasi-definiteness.

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
  const Rational half = bops::parse_rational("1/2");
  const MomentModel<Rational> base = bops::simplex_jacobi<Rational>(Rational(1), half);

  std::cout << "== point masses of 1/2 at (1,0), (0,0), (0,1) ==\n\n";
  Matrix<Rational> lambda(3, 3);
  for (std::size_t k = 0; k < 3; ++k) lambda(k, k) = half;
  const MomentModel<Rational> dotted = bops::uvarov_modify(bops::UvarovSpec<Rational>{
      base,
      {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}, {Rational(0), Rational(1)}},
      lambda});
  std::cout << "base mass " << bops::ScalarTraits<Rational>::str(base.moment(0, 0))
            << " grows to " << bops::ScalarTraits<Rational>::str(dotted.moment(0, 0)) << "\n";
  std::cout << "modified functional swap-symmetric through degree 8: "
            << (dotted.is_reflexive(8) ? "yes" : "no") << "\n\n";
  const MopsCache<Rational> dc = bops::build_mops(dotted, 2);
  demo::print_vector(dc.q(1), "Q_1");
  demo::print_vector(dc.q(2), "Q_2");

  std::cout << "\n== multiplication by x^2 + y^2 + xy + x + y + 1 ==\n\n";
  const MomentModel<Rational> tri = bops::simplex_jacobi<Rational>(Rational(1), Rational(2));
  const bops::ChristoffelSpec<Rational> spec{tri, Rational(1), Rational(1), Rational(1),
                                             Rational(1)};
  const MomentModel<Rational> lifted = bops::christoffel_modify(spec);
  std::cout << "multiplier: " << demo::poly_text(bops::christoffel_multiplier(spec)) << "\n";
  std::cout << "modified functional swap-symmetric through degree 8: "
            << (lifted.is_reflexive(8) ? "yes" : "no") << "\n\n";
  const MopsCache<Rational> bc = bops::build_mops(tri, 3);
  const MopsCache<Rational> mc = bops::build_mops(lifted, 3);
  const bops::ChristoffelConnection<Rational> conn = bops::christoffel_connection(bc, mc, 2);
  demo::print_matrix(conn.r, "one-step connection R_2");
  demo::print_matrix(conn.s, "two-step connection S_2");
  std::cout << "R_2 and S_2 centrosymmetric: "
            << ((bops::is_centrosymmetric(conn.r) && bops::is_centrosymmetric(conn.s)) ? "yes"
                                                                                       : "no")
            << "\n";
  std::cout << "connection residual at degree 2 (exact): "
            << bops::ScalarTraits<Rational>::str(bops::christoffel_residual(bc, mc, conn, 2))
            << "\n";

  std::cout << "\n== a degenerate multiplier ==\n\n";
  const MomentModel<Rational> square =
      bops::product_weight(bops::univariate_weight<Rational>("legendre"));
  const bops::ChristoffelSpec<Rational> bad{square, Rational(0), Rational(1), Rational(0),
                                            Rational(0)};
  std::cout << "multiplying the legendre product weight by xy kills the total mass:\n";
  try {
    bops::build_mops(bops::christoffel_modify(bad), 1);
    std::cout << "  (unexpectedly succeeded)\n";
    return 1;
  } catch (const bops::QuasiDefiniteError& e) {
    std::cout << "  QuasiDefiniteError at degree " << e.degree() << ": " << e.what() << "\n";
  }
  return 0;
}
