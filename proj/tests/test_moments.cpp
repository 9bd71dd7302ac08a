// Tests for moment models: the five built-in weight families, pairings,
// reflexivity detection, moment matrices, and the two modifications.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "bops/moments.hpp"
#include "oracles.hpp"

using bops::BivarPoly;
using bops::Matrix;
using bops::MomentModel;
using bops::Rational;

namespace {

using P = BivarPoly<Rational>;

// Dense univariate polynomials as coefficient vectors, for an independent
// orthogonality check of each family's moments against its recurrence.
using Uni = std::vector<Rational>;

Uni uni_mul_x(const Uni& p) {
  Uni r(p.size() + 1, Rational(0));
  for (std::size_t k = 0; k < p.size(); ++k) r[k + 1] = p[k];
  return r;
}

Uni uni_axpy(const Uni& p, const Rational& c, const Uni& q) {
  Uni r = p;
  if (q.size() > r.size()) r.resize(q.size(), Rational(0));
  for (std::size_t k = 0; k < q.size(); ++k) r[k] += c * q[k];
  return r;
}

Uni uni_mul(const Uni& p, const Uni& q) {
  Uni r(p.size() + q.size() - 1, Rational(0));
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  return r;
}

Rational integrate(const bops::UnivariateWeight<Rational>& w, const Uni& p) {
  Rational acc(0);
  for (std::size_t k = 0; k < p.size(); ++k)
    acc += p[k] * w.moment(static_cast<int>(k));
  return acc;
}

}  // namespace

TEST_CASE("monomial basis enumeration") {
  REQUIRE(bops::monomial_space_dim(0) == 1);
  REQUIRE(bops::monomial_space_dim(2) == 6);
  REQUIRE(bops::monomial_space_dim(4) == 15);

  const auto basis = bops::monomial_basis(2);
  REQUIRE(basis.size() == 6);
  std::vector<std::pair<int, int>> seen;
  for (const auto& m : basis) seen.emplace_back(m.i, m.j);
  const std::vector<std::pair<int, int>> expected{
      {0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(seen == expected);
}

TEST_CASE("univariate moment tables") {
  const auto leg = bops::univariate_weight<Rational>("legendre");
  REQUIRE(leg.moment(0) == Rational(2));
  REQUIRE(leg.moment(1) == Rational(0));
  REQUIRE(leg.moment(2) == Rational(2, 3));
  REQUIRE(leg.moment(6) == Rational(2, 7));
  REQUIRE_FALSE(leg.normalized);

  const auto her = bops::univariate_weight<Rational>("hermite");
  REQUIRE(her.moment(0) == Rational(1));
  REQUIRE(her.moment(3) == Rational(0));
  REQUIRE(her.moment(2) == Rational(1, 2));
  REQUIRE(her.moment(4) == Rational(3, 4));
  REQUIRE(her.normalized);

  const auto t1 = bops::univariate_weight<Rational>("chebyshev1");
  REQUIRE(t1.moment(0) == Rational(1));
  REQUIRE(t1.moment(2) == Rational(1, 2));
  REQUIRE(t1.moment(4) == Rational(3, 8));

  const auto t2 = bops::univariate_weight<Rational>("chebyshev2");
  REQUIRE(t2.moment(0) == Rational(1));
  REQUIRE(t2.moment(2) == Rational(1, 4));
  REQUIRE(t2.moment(4) == Rational(1, 8));

  const auto lag = bops::univariate_weight<Rational>("laguerre");
  REQUIRE(lag.moment(0) == Rational(1));
  REQUIRE(lag.moment(4) == Rational(24));
  REQUIRE(lag.gamma_coef(2) == Rational(5));
  REQUIRE(lag.upsilon_coef(3) == Rational(9));

  REQUIRE_THROWS_AS(bops::univariate_weight<Rational>("nope"), bops::SpecError);
}

TEST_CASE("each family's recurrence is orthogonal against its own moments") {
  for (const char* name :
       {"legendre", "hermite", "chebyshev1", "chebyshev2", "laguerre"}) {
    CAPTURE(name);
    const auto w = bops::univariate_weight<Rational>(name);

    // Build monic p_0..p_5 from the recurrence coefficients.
    std::vector<Uni> p;
    p.push_back({Rational(1)});
    p.push_back(uni_axpy(uni_mul_x(p[0]), Rational(-w.gamma_coef(0)), p[0]));
    for (int k = 1; k <= 4; ++k) {
      Uni next = uni_axpy(uni_mul_x(p[static_cast<std::size_t>(k)]),
                          Rational(-w.gamma_coef(k)), p[static_cast<std::size_t>(k)]);
      next = uni_axpy(next, Rational(-w.upsilon_coef(k)), p[static_cast<std::size_t>(k - 1)]);
      p.push_back(next);
    }

    for (std::size_t i = 0; i < p.size(); ++i)
      for (std::size_t j = 0; j < p.size(); ++j) {
        const Rational v = integrate(w, uni_mul(p[i], p[j]));
        if (i == j)
          REQUIRE(v != Rational(0));
        else
          REQUIRE(v == Rational(0));
      }
  }
}

TEST_CASE("monic recurrence container") {
  const auto leg = bops::univariate_weight<Rational>("legendre");
  const auto rec = bops::monic_recurrence(leg, 5);
  REQUIRE(rec.max_index() == 5);
  for (int k = 0; k <= 5; ++k) {
    REQUIRE(rec.lambda[static_cast<std::size_t>(k)] == Rational(1));
    REQUIRE(rec.gamma[static_cast<std::size_t>(k)] == Rational(0));
  }
  REQUIRE(rec.upsilon[1] == Rational(1, 3));
  REQUIRE(rec.upsilon[2] == Rational(4, 15));
  REQUIRE(rec.upsilon[3] == Rational(9, 35));
}

TEST_CASE("product weights multiply one-dimensional moments") {
  const auto leg = bops::univariate_weight<Rational>("legendre");
  const auto u = bops::product_weight(leg);
  REQUIRE(u.kind() == MomentModel<Rational>::Kind::MomentTable);
  REQUIRE(u.description().family == "product");
  REQUIRE(u.moment(0, 0) == Rational(4));
  REQUIRE(u.moment(2, 0) == Rational(4, 3));
  REQUIRE(u.moment(1, 0) == Rational(0));
  REQUIRE(u.moment(2, 2) == Rational(4, 9));
  REQUIRE(u.is_reflexive(8));

  const auto her = bops::univariate_weight<Rational>("hermite");
  const auto uh = bops::product_weight(her);
  REQUIRE(uh.moment(3, 2) == Rational(0));
  REQUIRE(uh.moment(2, 2) == Rational(1, 4));
  REQUIRE(uh.is_reflexive(8));

  // Two different factors give a non-reflexive product.
  const auto t1 = bops::univariate_weight<Rational>("chebyshev1");
  const auto mixed = bops::product_weight(leg, t1);
  REQUIRE(mixed.moment(2, 0) == Rational(2, 3));
  REQUIRE(mixed.moment(0, 2) == Rational(1));
  REQUIRE_FALSE(mixed.is_reflexive(2));
  REQUIRE(mixed.is_reflexive(1));
  REQUIRE(mixed.reflexivity_violation(2) == Rational(1, 3));

  REQUIRE_THROWS_AS(u.moment(-1, 0), bops::SpecError);
}

TEST_CASE("simplex moments: exact values, symmetry, and normalization") {
  const auto u = bops::simplex_jacobi<Rational>(Rational(1), Rational(1, 2));
  REQUIRE_FALSE(u.normalized());
  REQUIRE(u.moment(0, 0) == Rational(16, 945));
  // mu_{1,0}/mu_{0,0} = (alpha+1)/(2*alpha+gamma+3)
  REQUIRE(u.moment(1, 0) / u.moment(0, 0) == Rational(4, 11));
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= m; ++n) REQUIRE(u.moment(m, n) == u.moment(n, m));
  REQUIRE(u.is_reflexive(8));

  const auto u12 = bops::simplex_jacobi<Rational>(Rational(1), Rational(2));
  REQUIRE(u12.moment(1, 0) / u12.moment(0, 0) == Rational(2, 7));

  // Non-integer alpha: stored relative to mu_00.
  const auto uh = bops::simplex_jacobi<Rational>(Rational(1, 2), Rational(1, 2));
  REQUIRE(uh.normalized());
  REQUIRE(uh.moment(0, 0) == Rational(1));
  REQUIRE(uh.is_reflexive(6));

  REQUIRE_THROWS_AS(bops::simplex_jacobi<Rational>(Rational(-1), Rational(0)),
                    bops::SpecError);
  REQUIRE_THROWS_AS(bops::simplex_jacobi<Rational>(Rational(0), Rational(-2)),
                    bops::SpecError);
}

TEST_CASE("simplex moments agree with a quadrature oracle") {
  // Exact backend against the independent fixed-rule integrator.
  const auto u = bops::simplex_jacobi<Rational>(Rational(1), Rational(1, 2));
  for (const auto& [m, n] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}, {3, 2}}) {
    const double exact = bops::ScalarTraits<Rational>::to_double(u.moment(m, n));
    const double quad = oracles::simplex_moment_quadrature(m, n, 1.0, 0.5);
    REQUIRE_THAT(quad, Catch::Matchers::WithinRel(exact, 1e-9));
  }

  // Float backend matches the exact backend where both exist.
  const auto uf = bops::simplex_jacobi<double>(1.0, 0.5);
  REQUIRE_FALSE(uf.normalized());
  for (const auto& [m, n] : {std::pair{0, 0}, {2, 0}, {2, 2}}) {
    const double exact = bops::ScalarTraits<Rational>::to_double(u.moment(m, n));
    REQUIRE_THAT(uf.moment(m, n), Catch::Matchers::WithinRel(exact, 1e-12));
  }
}

TEST_CASE("quartic exponential weight moments") {
  REQUIRE_THROWS_AS(bops::freud_weight(0.0, 0.0, 0.0), bops::SpecError);
  REQUIRE_THROWS_AS(bops::freud_weight(1.0, -2.0, 0.0), bops::SpecError);
  REQUIRE_THROWS_AS(bops::freud_weight(std::nan(""), 0.0, 0.0), bops::SpecError);

  const auto u = bops::freud_weight(1.0, 0.0, 0.0);
  REQUIRE(u.kind() == MomentModel<double>::Kind::MomentTable);
  REQUIRE(u.moment(1, 0) == 0.0);
  REQUIRE(u.moment(3, 5) == 0.0);

  // b = 0 factorizes into one-dimensional integrals.
  const double h0 = oracles::freud_line_moment(0, 1.0, 0.0, 4.0);
  const double h2 = oracles::freud_line_moment(2, 1.0, 0.0, 4.0);
  const double h4 = oracles::freud_line_moment(4, 1.0, 0.0, 4.0);
  REQUIRE_THAT(u.moment(0, 0), Catch::Matchers::WithinRel(h0 * h0, 1e-8));
  REQUIRE_THAT(u.moment(2, 2), Catch::Matchers::WithinRel(h2 * h2, 1e-8));
  REQUIRE_THAT(u.moment(4, 0), Catch::Matchers::WithinRel(h4 * h0, 1e-8));

  // Coupled case stays symmetric and reflexive.
  const auto v = bops::freud_weight(1.0, 1.0, 1.0);
  REQUIRE_THAT(v.moment(4, 2), Catch::Matchers::WithinRel(v.moment(2, 4), 1e-12));
  REQUIRE(v.is_reflexive(8));
  REQUIRE(v.moment(0, 0) > 0.0);
}

TEST_CASE("pairing is bilinear and symmetric") {
  const auto u = bops::simplex_jacobi<Rational>(Rational(1), Rational(2));
  REQUIRE(u.pairing(P::constant(Rational(1)), P::constant(Rational(1))) ==
          u.moment(0, 0));
  REQUIRE(u.pairing(P::monomial(1, 0), P::monomial(0, 1)) == u.moment(1, 1));

  std::mt19937_64 rng(311);
  auto rand_poly = [&rng]() {
    P p;
    for (int t = 0; t < 4; ++t) {
      const int d = static_cast<int>(rng() % 3);
      const int j = static_cast<int>(rng() % (d + 1));
      p.add_term(d - j, j, oracles::random_rational(rng));
    }
    return p;
  };
  for (int iter = 0; iter < 10; ++iter) {
    const P f = rand_poly(), g = rand_poly(), h = rand_poly();
    const Rational alpha = oracles::random_rational(rng);
    REQUIRE(u.pairing(f, g) == u.pairing(g, f));
    REQUIRE(u.pairing(f.scaled(alpha) + g, h) ==
            Rational(alpha * u.pairing(f, h) + u.pairing(g, h)));
  }
}

TEST_CASE("moment matrices") {
  const auto leg = bops::product_weight(bops::univariate_weight<Rational>("legendre"));
  const Matrix<Rational> m0 = bops::moment_matrix(leg, 0);
  REQUIRE(m0 == Matrix<Rational>{{Rational(4)}});

  const Matrix<Rational> m1 = bops::moment_matrix(leg, 1);
  REQUIRE(m1 == Matrix<Rational>{{Rational(4), Rational(0), Rational(0)},
                                 {Rational(0), Rational(4, 3), Rational(0)},
                                 {Rational(0), Rational(0), Rational(4, 3)}});

  // Symmetric, and every leading principal minor is positive (size 6 at n=2).
  const Matrix<Rational> m2 = bops::moment_matrix(leg, 2);
  REQUIRE(m2 == m2.transpose());
  for (std::size_t k = 1; k <= m2.rows(); ++k) {
    Matrix<Rational> lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = m2(i, j);
    REQUIRE(bops::determinant(lead) > Rational(0));
  }

  // Exact nonsingularity for the simplex family.
  const auto sim = bops::simplex_jacobi<Rational>(Rational(1), Rational(1, 2));
  for (int n = 0; n <= 4; ++n)
    REQUIRE(bops::determinant(bops::moment_matrix(sim, n)) != Rational(0));
}

TEST_CASE("point-mass modification keeps or leaves the moment-table kind") {
  const auto base = bops::simplex_jacobi<Rational>(Rational(1), Rational(1, 2));

  // Zero masses change nothing.
  bops::UvarovSpec<Rational> zero{base,
                                  {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}},
                                  Matrix<Rational>::zero(2, 2)};
  const auto uz = bops::uvarov_modify(zero);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n) REQUIRE(uz.moment(m, n) == base.moment(m, n));

  // Diagonal masses at three nodes: v_00 = mu_00 + 3/2, still a table.
  bops::UvarovSpec<Rational> spec{
      base,
      {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}, {Rational(0), Rational(1)}},
      Matrix<Rational>::identity(3).scaled(Rational(1, 2))};
  const auto u = bops::uvarov_modify(spec);
  REQUIRE(u.kind() == MomentModel<Rational>::Kind::MomentTable);
  REQUIRE(u.description().family == "uvarov");
  REQUIRE(u.moment(0, 0) == Rational(16, 945) + Rational(3, 2));
  REQUIRE(u.moment(1, 0) == base.moment(1, 0) + Rational(1, 2));
  REQUIRE(u.moment(1, 1) == base.moment(1, 1));
  REQUIRE(u.is_reflexive(8));
  REQUIRE(u.base_model().has_value());
  REQUIRE(u.base_model()->id() == base.id());

  // Non-diagonal masses force the general bilinear kind.
  Matrix<Rational> coupled{{Rational(1), Rational(0), Rational(1, 2)},
                           {Rational(0), Rational(1), Rational(0)},
                           {Rational(1, 2), Rational(0), Rational(1)}};
  bops::UvarovSpec<Rational> cspec{base, spec.nodes, coupled};
  const auto uc = bops::uvarov_modify(cspec);
  REQUIRE(uc.kind() == MomentModel<Rational>::Kind::BilinearForm);
  REQUIRE_THROWS_AS(uc.moment(0, 0), bops::SpecError);
  const P one = P::constant(Rational(1));
  REQUIRE(uc.pairing(one, one) == Rational(16, 945) + Rational(3) + Rational(1));
  const P x = P::monomial(1, 0), y = P::monomial(0, 1);
  REQUIRE(uc.pairing(x, y) == uc.pairing(y, x));
  REQUIRE(uc.is_reflexive(6));

  // A one-sided node breaks reflexivity and the detector sees it.
  bops::UvarovSpec<Rational> lop{base,
                                 {{Rational(1), Rational(0)}},
                                 Matrix<Rational>{{Rational(1)}}};
  REQUIRE_FALSE(bops::uvarov_modify(lop).is_reflexive(1));

  // Validation of the mass matrix.
  bops::UvarovSpec<Rational> badshape{base, spec.nodes, Matrix<Rational>::identity(2)};
  REQUIRE_THROWS_AS(bops::uvarov_modify(badshape), bops::SpecError);
  Matrix<Rational> asym = Matrix<Rational>::zero(3, 3);
  asym(0, 1) = Rational(1);
  bops::UvarovSpec<Rational> badsym{base, spec.nodes, asym};
  REQUIRE_THROWS_AS(bops::uvarov_modify(badsym), bops::SpecError);
}

TEST_CASE("polynomial-multiplier modification of the moment table") {
  const auto leg = bops::product_weight(bops::univariate_weight<Rational>("legendre"));

  bops::ChristoffelSpec<Rational> b_only{leg, Rational(0), Rational(1), Rational(0),
                                         Rational(0)};
  const auto v = bops::christoffel_modify(b_only);
  REQUIRE(v.description().family == "christoffel");
  REQUIRE(v.moment(0, 0) == Rational(0));
  REQUIRE(v.moment(1, 1) == leg.moment(2, 2));

  const auto sim = bops::simplex_jacobi<Rational>(Rational(1), Rational(2));
  bops::ChristoffelSpec<Rational> a_only{sim, Rational(1), Rational(0), Rational(0),
                                         Rational(0)};
  const auto w = bops::christoffel_modify(a_only);
  REQUIRE(w.moment(0, 0) == sim.moment(2, 0) + sim.moment(0, 2));
  REQUIRE(w.is_reflexive(8));

  // The new moments are exactly the base pairing against the multiplier.
  bops::ChristoffelSpec<Rational> full{sim, Rational(1), Rational(1), Rational(1),
                                       Rational(1)};
  const auto z = bops::christoffel_modify(full);
  const P lam = bops::christoffel_multiplier(full);
  REQUIRE(lam.degree() == 2);
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      REQUIRE(z.moment(m, n) == sim.pairing(lam * P::monomial(m, n), P::constant(Rational(1))));
  REQUIRE(z.base_model().has_value());
  REQUIRE(z.base_model()->id() == sim.id());

  // Degenerate multiplier (a = b = 0) is rejected.
  bops::ChristoffelSpec<Rational> flat{sim, Rational(0), Rational(0), Rational(1),
                                       Rational(1)};
  REQUIRE_THROWS_AS(bops::christoffel_modify(flat), bops::SpecError);

  // A bilinear-form base cannot be modified this way.
  Matrix<Rational> coupled{{Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(1)}};
  bops::UvarovSpec<Rational> uspec{
      sim, {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}}, coupled};
  bops::ChristoffelSpec<Rational> onbil{bops::uvarov_modify(uspec), Rational(1),
                                        Rational(0), Rational(0), Rational(0)};
  REQUIRE_THROWS_AS(bops::christoffel_modify(onbil), bops::SpecError);
}

TEST_CASE("gram matrices cover both model kinds") {
  const auto sim = bops::simplex_jacobi<Rational>(Rational(1), Rational(1, 2));
  REQUIRE(sim.gram_matrix(2) == bops::moment_matrix(sim, 2));

  Matrix<Rational> coupled{{Rational(1), Rational(0), Rational(1, 2)},
                           {Rational(0), Rational(1), Rational(0)},
                           {Rational(1, 2), Rational(0), Rational(1)}};
  bops::UvarovSpec<Rational> spec{
      sim,
      {{Rational(1), Rational(0)}, {Rational(0), Rational(0)}, {Rational(0), Rational(1)}},
      coupled};
  const auto u = bops::uvarov_modify(spec);
  const Matrix<Rational> g = u.gram_matrix(1);
  REQUIRE(g == g.transpose());
  REQUIRE(g.rows() == 3);
  const P one = P::constant(Rational(1)), x = P::monomial(1, 0);
  REQUIRE(g(0, 1) == u.pairing(one, x));
  REQUIRE_THROWS_AS(bops::moment_matrix(u, 1), bops::SpecError);
}
