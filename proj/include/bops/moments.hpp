#pragma once

// Moment models: the bilinear pairings that orthogonal systems are built
// against.  A model is either a moment table (the pairing of f and g is the
// moment of f*g) or a genuine bilinear form (needed once point masses couple
// distinct nodes).  Models are immutable and cheap to copy; moments are
// memoized behind a mutex, so sharing one model across threads is safe.
//
// Families: tensor products of classical line weights, Jacobi weight on the
// triangle, quartic exponential weights on the plane, and the point-mass and
// polynomial-multiplier modifications of a base model.

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "quadrature.hpp"
#include "scalar.hpp"

namespace bops {

// dim of the space of bivariate polynomials of total degree <= n.
inline std::size_t monomial_space_dim(int n) {
  return n < 0 ? 0 : static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 2) / 2;
}

// Canonical monomial basis of degree <= n in graded order.
inline std::vector<Monomial> monomial_basis(int n) {
  std::vector<Monomial> b;
  b.reserve(monomial_space_dim(n));
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j) b.push_back(Monomial{d - j, j});
  return b;
}

// Serializable description of how a model was constructed.
struct WeightDesc {
  std::string family;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<std::pair<std::string, std::string>> nodes;  // uvarov only
  std::vector<std::vector<std::string>> lambda;            // uvarov only
  std::shared_ptr<const WeightDesc> base;
};

template <class S>
class MomentModel {
 public:
  enum class Kind { MomentTable, BilinearForm };
  struct Impl_;

  Kind kind() const noexcept { return impl_->kind; }
  const std::string& family() const noexcept { return impl_->desc.family; }
  const WeightDesc& description() const noexcept { return impl_->desc; }
  // True when moments are stored relative to the total mass (mu_00 == 1
  // by construction because the absolute value is irrational).
  bool normalized() const noexcept { return impl_->normalized; }
  std::uint64_t id() const noexcept { return reinterpret_cast<std::uint64_t>(impl_.get()); }

  std::optional<MomentModel> base_model() const {
    if (!impl_->base) return std::nullopt;
    return MomentModel(impl_->base);
  }

  // mu_{m,n}; memoized.  Bilinear-form models have no moment table.
  S moment(int m, int n) const {
    if (impl_->kind == Kind::BilinearForm)
      throw SpecError("moment: model is a bilinear form, not a moment table");
    if (m < 0 || n < 0) throw SpecError("moment: negative index");
    const std::pair<int, int> key{m, n};
    std::lock_guard<std::mutex> lock(impl_->cache_mutex);
    auto it = impl_->cache.find(key);
    if (it != impl_->cache.end()) return it->second;
    S v = impl_->mu(m, n);
    impl_->cache.emplace(key, v);
    return v;
  }

  S pairing(const BivarPoly<S>& f, const BivarPoly<S>& g) const {
    if (impl_->kind == Kind::BilinearForm) return impl_->form(f, g);
    BivarPoly<S> prod = f * g;
    S acc = ScalarTraits<S>::zero();
    for (const auto& [mono, c] : prod.terms()) acc = acc + c * moment(mono.i, mono.j);
    return acc;
  }

  // Worst |<p, q> - <p~, q~>| over canonical monomials with deg p + deg q
  // <= bound, where ~ swaps x and y.  For a moment table this is the worst
  // |mu_{m,n} - mu_{n,m}| with m + n <= bound.
  S reflexivity_violation(int bound) const {
    S worst = ScalarTraits<S>::zero();
    if (impl_->kind == Kind::MomentTable) {
      for (int m = 0; m <= bound; ++m)
        for (int n = m + 1; n + m <= bound; ++n) {
          S d = ScalarTraits<S>::abs(moment(m, n) - moment(n, m));
          if (ScalarTraits<S>::abs_less(worst, d)) worst = d;
        }
      return worst;
    }
    const std::vector<Monomial> basis = monomial_basis(bound);
    for (std::size_t a = 0; a < basis.size(); ++a)
      for (std::size_t b = a; b < basis.size(); ++b) {
        if (basis[a].i + basis[a].j + basis[b].i + basis[b].j > bound) continue;
        S lhs = pairing(BivarPoly<S>::monomial(basis[a].i, basis[a].j),
                        BivarPoly<S>::monomial(basis[b].i, basis[b].j));
        S rhs = pairing(BivarPoly<S>::monomial(basis[a].j, basis[a].i),
                        BivarPoly<S>::monomial(basis[b].j, basis[b].i));
        S d = ScalarTraits<S>::abs(lhs - rhs);
        if (ScalarTraits<S>::abs_less(worst, d)) worst = d;
      }
    return worst;
  }

  bool is_reflexive(int max_total_degree, const Tolerance& tol = {}) const {
    return ScalarTraits<S>::is_zero(reflexivity_violation(max_total_degree), tol);
  }

  // Gram matrix of the canonical monomials of degree <= n (any kind).
  Matrix<S> gram_matrix(int n) const {
    if (n < 0) throw SpecError("gram_matrix: negative degree");
    const std::vector<Monomial> basis = monomial_basis(n);
    const std::size_t dim = basis.size();
    Matrix<S> g(dim, dim);
    if (impl_->kind == Kind::MomentTable) {
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = r; c < dim; ++c) {
          S v = moment(basis[r].i + basis[c].i, basis[r].j + basis[c].j);
          g(r, c) = v;
          g(c, r) = v;
        }
    } else {
      for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = r; c < dim; ++c) {
          S v = pairing(BivarPoly<S>::monomial(basis[r].i, basis[r].j),
                        BivarPoly<S>::monomial(basis[c].i, basis[c].j));
          g(r, c) = v;
          g(c, r) = v;
        }
    }
    return g;
  }

  // Moment matrix M_n with blocks <u, X_m X_k^T>; moment-table models only.
  Matrix<S> moment_matrix(int n) const {
    if (impl_->kind == Kind::BilinearForm)
      throw SpecError("moment_matrix: model is a bilinear form, not a moment table");
    return gram_matrix(n);
  }

  static MomentModel make_table(WeightDesc desc, bool normalized,
                                std::function<S(int, int)> mu,
                                std::shared_ptr<const Impl_> base = nullptr) {
    auto impl = std::make_shared<Impl_>();
    impl->kind = Kind::MomentTable;
    impl->desc = std::move(desc);
    impl->normalized = normalized;
    impl->mu = std::move(mu);
    impl->base = std::move(base);
    return MomentModel(std::move(impl));
  }

  static MomentModel make_bilinear(
      WeightDesc desc, bool normalized,
      std::function<S(const BivarPoly<S>&, const BivarPoly<S>&)> form,
      std::shared_ptr<const Impl_> base = nullptr) {
    auto impl = std::make_shared<Impl_>();
    impl->kind = Kind::BilinearForm;
    impl->desc = std::move(desc);
    impl->normalized = normalized;
    impl->form = std::move(form);
    impl->base = std::move(base);
    return MomentModel(std::move(impl));
  }

  struct Impl_ {
    Kind kind = Kind::MomentTable;
    WeightDesc desc;
    bool normalized = false;
    std::function<S(int, int)> mu;
    std::function<S(const BivarPoly<S>&, const BivarPoly<S>&)> form;
    std::shared_ptr<const Impl_> base;
    mutable std::mutex cache_mutex;
    mutable std::map<std::pair<int, int>, S> cache;
  };

  std::shared_ptr<const Impl_> impl_handle() const { return impl_; }

 private:
  explicit MomentModel(std::shared_ptr<const Impl_> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl_> impl_;
};

template <class S>
S moment(const MomentModel<S>& u, int m, int n) {
  return u.moment(m, n);
}

template <class S>
S pairing(const MomentModel<S>& u, const BivarPoly<S>& f, const BivarPoly<S>& g) {
  return u.pairing(f, g);
}

template <class S>
bool is_reflexive(const MomentModel<S>& u, int max_total_degree, const Tolerance& tol = {}) {
  return u.is_reflexive(max_total_degree, tol);
}

template <class S>
Matrix<S> moment_matrix(const MomentModel<S>& u, int n) {
  return u.moment_matrix(n);
}

// ---------------------------------------------------------------------------
// Classical weights on the line
// ---------------------------------------------------------------------------

// Even moments h_k plus the monic three-term recurrence
// p_{k+1} = (x - gamma_k) p_k - upsilon_k p_{k-1}.  Weights whose total mass
// is irrational (hermite, chebyshev) store moments relative to h_0.
template <class S>
struct UnivariateWeight {
  std::string name;
  bool normalized = false;
  std::function<S(int)> moment;        // h_k (k >= 0)
  std::function<S(int)> gamma_coef;    // gamma_k (k >= 0)
  std::function<S(int)> upsilon_coef;  // upsilon_k (k >= 1)
};

namespace detail {

template <class S>
S ratio_ll(long long num, long long den) {
  return ScalarTraits<S>::from_int(num) / ScalarTraits<S>::from_int(den);
}

}  // namespace detail

template <class S>
UnivariateWeight<S> univariate_weight(const std::string& name) {
  using T = ScalarTraits<S>;
  UnivariateWeight<S> w;
  w.name = name;
  if (name == "legendre") {
    w.normalized = false;
    w.moment = [](int k) {
      return k % 2 ? ScalarTraits<S>::zero() : detail::ratio_ll<S>(2, k + 1);
    };
    w.gamma_coef = [](int) { return ScalarTraits<S>::zero(); };
    w.upsilon_coef = [](int k) {
      return detail::ratio_ll<S>(static_cast<long long>(k) * k,
                                 4ll * k * k - 1);
    };
  } else if (name == "hermite") {
    w.normalized = true;  // h_0 = sqrt(pi)
    w.moment = [](int k) {
      if (k % 2) return ScalarTraits<S>::zero();
      S h = ScalarTraits<S>::one();
      for (int t = 1; t <= k / 2; ++t) h = h * detail::ratio_ll<S>(2 * t - 1, 2);
      return h;
    };
    w.gamma_coef = [](int) { return ScalarTraits<S>::zero(); };
    w.upsilon_coef = [](int k) { return detail::ratio_ll<S>(k, 2); };
  } else if (name == "chebyshev1") {
    w.normalized = true;  // h_0 = pi
    w.moment = [](int k) {
      if (k % 2) return ScalarTraits<S>::zero();
      S h = ScalarTraits<S>::one();
      for (int t = 1; t <= k / 2; ++t) h = h * detail::ratio_ll<S>(2 * t - 1, 2 * t);
      return h;
    };
    w.gamma_coef = [](int) { return ScalarTraits<S>::zero(); };
    w.upsilon_coef = [](int k) {
      return k == 1 ? detail::ratio_ll<S>(1, 2) : detail::ratio_ll<S>(1, 4);
    };
  } else if (name == "chebyshev2") {
    w.normalized = true;  // h_0 = pi/2
    w.moment = [](int k) {
      if (k % 2) return ScalarTraits<S>::zero();
      S h = ScalarTraits<S>::one();
      for (int t = 1; t <= k / 2; ++t) h = h * detail::ratio_ll<S>(2 * t - 1, 2 * t + 2);
      return h;
    };
    w.gamma_coef = [](int) { return ScalarTraits<S>::zero(); };
    w.upsilon_coef = [](int) { return detail::ratio_ll<S>(1, 4); };
  } else if (name == "laguerre") {
    w.normalized = false;
    w.moment = [](int k) {
      S h = ScalarTraits<S>::one();
      for (int t = 2; t <= k; ++t) h = h * T::from_int(t);
      return h;
    };
    w.gamma_coef = [](int k) { return T::from_int(2 * k + 1); };
    w.upsilon_coef = [](int k) { return T::from_int(static_cast<long long>(k) * k); };
  } else {
    throw SpecError("unknown line weight '" + name +
                    "' (expected legendre|hermite|chebyshev1|chebyshev2|laguerre)");
  }
  return w;
}

// Realized recurrence coefficients lambda_k, gamma_k, upsilon_k for k = 0..N;
// lambda is the leading normalization (1 for monic systems), upsilon_0 unused.
template <class S>
struct UnivariateRecurrence {
  std::vector<S> lambda, gamma, upsilon;
  int max_index() const noexcept { return static_cast<int>(lambda.size()) - 1; }
};

template <class S>
UnivariateRecurrence<S> monic_recurrence(const UnivariateWeight<S>& w, int max_index) {
  if (max_index < 0) throw SpecError("monic_recurrence: negative index bound");
  UnivariateRecurrence<S> r;
  for (int k = 0; k <= max_index; ++k) {
    r.lambda.push_back(ScalarTraits<S>::one());
    r.gamma.push_back(w.gamma_coef(k));
    r.upsilon.push_back(k == 0 ? ScalarTraits<S>::zero() : w.upsilon_coef(k));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Product weights on the plane
// ---------------------------------------------------------------------------

template <class S>
MomentModel<S> product_weight(const UnivariateWeight<S>& w1, const UnivariateWeight<S>& w2) {
  WeightDesc desc;
  desc.family = "product";
  desc.params = {{"w1", w1.name}, {"w2", w2.name}};
  auto h1 = w1.moment, h2 = w2.moment;
  return MomentModel<S>::make_table(std::move(desc), w1.normalized || w2.normalized,
                                    [h1, h2](int m, int n) { return h1(m) * h2(n); });
}

template <class S>
MomentModel<S> product_weight(const UnivariateWeight<S>& w) {
  return product_weight(w, w);
}

// ---------------------------------------------------------------------------
// Jacobi weight on the triangle: (xy)^alpha (1 - x - y)^gamma
// ---------------------------------------------------------------------------

namespace detail {

template <class S>
S pochhammer(const S& a, int k) {
  S r = ScalarTraits<S>::one();
  for (int t = 0; t < k; ++t) r = r * (a + ScalarTraits<S>::from_int(t));
  return r;
}

inline bool is_nonnegative_integer(const Rational& a) {
  return a >= 0 && denominator(a) == 1;
}

}  // namespace detail

// Moments mu_{m,n} = Gamma(m+a+1) Gamma(n+a+1) Gamma(g+1) / Gamma(m+n+2a+g+3).
// Exact backend: absolute values when alpha is a nonnegative integer (they are
// rational); otherwise moments are stored relative to mu_00 and the model is
// flagged normalized.  Float backend: absolute values through log-Gamma.
template <class S>
MomentModel<S> simplex_jacobi(const S& alpha, const S& gamma) {
  const S minus_one = S(-ScalarTraits<S>::one());
  if (!(alpha > minus_one) || !(gamma > minus_one))
    throw SpecError("simplex_jacobi: parameters must exceed -1");

  WeightDesc desc;
  desc.family = "simplex";
  desc.params = {{"alpha", ScalarTraits<S>::str(alpha)}, {"gamma", ScalarTraits<S>::str(gamma)}};

  if constexpr (ScalarTraits<S>::is_exact) {
    const bool absolute = detail::is_nonnegative_integer(alpha);
    S mu00 = ScalarTraits<S>::one();
    if (absolute) {
      const long long a = static_cast<long long>(numerator(alpha).template convert_to<long long>());
      S fact = ScalarTraits<S>::one();
      for (long long t = 2; t <= a; ++t) fact = fact * ScalarTraits<S>::from_int(t);
      mu00 = fact * fact / detail::pochhammer(S(gamma + ScalarTraits<S>::one()),
                                              static_cast<int>(2 * a + 2));
    }
    return MomentModel<S>::make_table(
        std::move(desc), !absolute, [alpha, gamma, mu00](int m, int n) {
          const S a1 = S(alpha + ScalarTraits<S>::one());
          return S(mu00 * detail::pochhammer(a1, m) * detail::pochhammer(a1, n) /
                   detail::pochhammer(S(2 * alpha + gamma + ScalarTraits<S>::from_int(3)), m + n));
        });
  } else {
    return MomentModel<S>::make_table(std::move(desc), false, [alpha, gamma](int m, int n) {
      const double terms[4] = {std::lgamma(m + alpha + 1.0), std::lgamma(n + alpha + 1.0),
                               std::lgamma(gamma + 1.0),
                               -std::lgamma(m + n + 2.0 * alpha + gamma + 3.0)};
      detail::KahanSum acc;
      for (double t : terms) acc.add(t);
      return std::exp(acc.value());
    });
  }
}

// ---------------------------------------------------------------------------
// Quartic exponential weight: exp(-[a(x^4+y^4) + b x^2 y^2 + c(x^2+y^2)])
// ---------------------------------------------------------------------------

namespace detail {

struct FreudRule {
  std::vector<double> x;  // nodes on [-R, R]
  Matrix<double> k;       // k(i, j) = w_i w_j W(x_i, x_j)

  FreudRule(int n, double r, double a, double b, double c) {
    auto [nodes, weights] = gauss_legendre_on(n, -r, r);
    x = std::move(nodes);
    k = Matrix<double>(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xi2 = x[i] * x[i];
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double xj2 = x[j] * x[j];
        k(i, j) = weights[i] * weights[j] *
                  std::exp(-(a * (xi2 * xi2 + xj2 * xj2) + b * xi2 * xj2 + c * (xi2 + xj2)));
      }
    }
  }

  double integrate(int m, int n) const {
    std::vector<double> px(x.size()), py(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      px[i] = std::pow(x[i], m);
      py[i] = std::pow(x[i], n);
    }
    KahanSum acc;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x.size(); ++j) acc.add(px[i] * k(i, j) * py[j]);
    return acc.value();
  }
};

}  // namespace detail

// Centrally symmetric, so odd moments vanish identically.  Even moments use a
// 200-point tensor rule on [-R, R]^2 validated against the 400-point rule;
// disagreement beyond 1e-10 relative raises ConvergenceError.  The guard
// a > 0, b > -2a keeps the exponent coercive.
inline MomentModel<double> freud_weight(double a, double b, double c) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
    throw SpecError("freud_weight: parameters must be finite");
  if (!(a > 0.0) || !(b > -2.0 * a))
    throw SpecError("freud_weight: need a > 0 and b > -2a for integrability");

  const double r = std::fmax(4.0, std::pow(40.0 / std::fmin(a, 1.0), 0.25));
  auto coarse = std::make_shared<detail::FreudRule>(200, r, a, b, c);
  auto fine = std::make_shared<detail::FreudRule>(400, r, a, b, c);

  WeightDesc desc;
  desc.family = "freud";
  desc.params = {{"a", ScalarTraits<double>::str(a)},
                 {"b", ScalarTraits<double>::str(b)},
                 {"c", ScalarTraits<double>::str(c)}};

  return MomentModel<double>::make_table(
      std::move(desc), false, [coarse, fine](int m, int n) -> double {
        if (m % 2 || n % 2) return 0.0;
        const double i1 = coarse->integrate(m, n);
        const double i2 = fine->integrate(m, n);
        const double rel = std::fabs(i2 - i1) / std::fmax(std::fabs(i2), 1e-300);
        if (!(rel < 1e-10))
          throw ConvergenceError(
              "freud moment (" + std::to_string(m) + "," + std::to_string(n) +
              "): quadrature refinement still moving (relative change " +
              ScalarTraits<double>::str(rel) + ", estimate " + ScalarTraits<double>::str(i2) + ")");
        return i2;
      });
}

// ---------------------------------------------------------------------------
// Point-mass (Uvarov) modification
// ---------------------------------------------------------------------------

template <class S>
struct UvarovSpec {
  MomentModel<S> base;
  std::vector<std::pair<S, S>> nodes;
  Matrix<S> lambda;  // symmetric, nodes.size() square
};

template <class S>
MomentModel<S> uvarov_modify(const UvarovSpec<S>& spec) {
  const std::size_t n = spec.nodes.size();
  if (spec.lambda.rows() != n || spec.lambda.cols() != n)
    throw SpecError("uvarov_modify: lambda must be square with one row per node");
  if (!approx_equal(spec.lambda, spec.lambda.transpose()))
    throw SpecError("uvarov_modify: lambda must be symmetric");

  WeightDesc desc;
  desc.family = "uvarov";
  for (const auto& [x, y] : spec.nodes)
    desc.nodes.emplace_back(ScalarTraits<S>::str(x), ScalarTraits<S>::str(y));
  desc.lambda.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      desc.lambda[i].push_back(ScalarTraits<S>::str(spec.lambda(i, j)));
  desc.base = std::make_shared<WeightDesc>(spec.base.description());

  bool diagonal = true;
  for (std::size_t i = 0; i < n && diagonal; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && !ScalarTraits<S>::is_zero(spec.lambda(i, j), Tolerance{0.0, 0.0})) {
        diagonal = false;
        break;
      }

  const MomentModel<S> base = spec.base;
  const std::vector<std::pair<S, S>> nodes = spec.nodes;
  const Matrix<S> lam = spec.lambda;

  if (diagonal && base.kind() == MomentModel<S>::Kind::MomentTable) {
    // Diagonal masses keep the modification a plain moment table:
    // v_{m,n} = mu_{m,n} + sum_k lambda_kk x_k^m y_k^n  (0^0 = 1).
    return MomentModel<S>::make_table(
        std::move(desc), base.normalized(),
        [base, nodes, lam](int m, int n) {
          S v = base.moment(m, n);
          for (std::size_t k = 0; k < nodes.size(); ++k)
            v = v + lam(k, k) * scalar_pow(nodes[k].first, m) * scalar_pow(nodes[k].second, n);
          return v;
        },
        base.impl_handle());
  }

  return MomentModel<S>::make_bilinear(
      std::move(desc), base.normalized(),
      [base, nodes, lam](const BivarPoly<S>& f, const BivarPoly<S>& g) {
        S v = base.pairing(f, g);
        std::vector<S> fv, gv;
        fv.reserve(nodes.size());
        gv.reserve(nodes.size());
        for (const auto& [x, y] : nodes) {
          fv.push_back(f.evaluate(x, y));
          gv.push_back(g.evaluate(x, y));
        }
        for (std::size_t i = 0; i < nodes.size(); ++i)
          for (std::size_t j = 0; j < nodes.size(); ++j) v = v + fv[i] * lam(i, j) * gv[j];
        return v;
      },
      base.impl_handle());
}

// ---------------------------------------------------------------------------
// Polynomial-multiplier (Christoffel) modification
// ---------------------------------------------------------------------------

// Multiplier lambda(x, y) = a(x^2 + y^2) + b xy + c(x + y) + d; at least one
// of a, b must be nonzero so the multiplier has degree exactly two.
template <class S>
struct ChristoffelSpec {
  MomentModel<S> base;
  S a, b, c, d;
};

template <class S>
BivarPoly<S> christoffel_multiplier(const ChristoffelSpec<S>& spec) {
  BivarPoly<S> p;
  p.add_term(2, 0, spec.a);
  p.add_term(0, 2, spec.a);
  p.add_term(1, 1, spec.b);
  p.add_term(1, 0, spec.c);
  p.add_term(0, 1, spec.c);
  p.add_term(0, 0, spec.d);
  return p;
}

template <class S>
MomentModel<S> christoffel_modify(const ChristoffelSpec<S>& spec) {
  if (ScalarTraits<S>::is_zero(spec.a, Tolerance{0.0, 0.0}) &&
      ScalarTraits<S>::is_zero(spec.b, Tolerance{0.0, 0.0}))
    throw SpecError("christoffel_modify: need |a| + |b| > 0");
  if (spec.base.kind() != MomentModel<S>::Kind::MomentTable)
    throw SpecError("christoffel_modify: base model must be a moment table");

  WeightDesc desc;
  desc.family = "christoffel";
  desc.params = {{"a", ScalarTraits<S>::str(spec.a)},
                 {"b", ScalarTraits<S>::str(spec.b)},
                 {"c", ScalarTraits<S>::str(spec.c)},
                 {"d", ScalarTraits<S>::str(spec.d)}};
  desc.base = std::make_shared<WeightDesc>(spec.base.description());

  const MomentModel<S> base = spec.base;
  const S a = spec.a, b = spec.b, c = spec.c, d = spec.d;
  return MomentModel<S>::make_table(
      std::move(desc), base.normalized(),
      [base, a, b, c, d](int m, int n) {
        return a * (base.moment(m + 2, n) + base.moment(m, n + 2)) +
               b * base.moment(m + 1, n + 1) +
               c * (base.moment(m + 1, n) + base.moment(m, n + 1)) + d * base.moment(m, n);
      },
      base.impl_handle());
}

}  // namespace bops
