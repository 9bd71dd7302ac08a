#pragma once

// Monic orthogonal polynomial systems in two variables.
//
// The degree-n layer is the column vector Q_n = (Q_{n,0}, ..., Q_{n,n})^T
// whose k-th entry is the monic polynomial with leading monomial
// x^{n-k} y^k, orthogonal to every polynomial of lower total degree.
// Production path: solve the Gram system of the modeled pairing.  A slower
// bordered-determinant construction of the same vector is kept alongside as
// an independent cross-check.
//
// Three-term relations, axis i in {x, y}:
//   monic        x_i Q_n = L_{n,i} Q_{n+1} + C_{n,i} Q_n + D_{n,i} Q_{n-1}
//   orthonormal  x_i P_n = A_{n,i} P_{n+1} + B_{n,i} P_n + A_{n-1,i}^T P_{n-1}
// with L_{n,1} = [I|0] and L_{n,2} = [0|I].

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "eigen.hpp"
#include "matrix.hpp"
#include "moments.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace bops {

namespace detail {

inline std::size_t axis_index(Axis axis) { return axis == Axis::X ? 0 : 1; }

// Eigenvalue spread gate for float Gram blocks: smaller min|lambda|/max|lambda|
// means the block is numerically singular and the system is treated as losing
// quasi-definiteness at that degree.
inline constexpr double kConditionFloor = 1e-10;

template <class S>
std::vector<BivarPoly<S>> add_entrywise(std::vector<BivarPoly<S>> a,
                                        const std::vector<BivarPoly<S>>& b) {
  if (a.size() != b.size()) throw SpecError("add_entrywise: length mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = a[k] + b[k];
  return a;
}

template <class S>
S max_abs_coeff_diff(const std::vector<BivarPoly<S>>& a, const std::vector<BivarPoly<S>>& b) {
  if (a.size() != b.size()) throw SpecError("max_abs_coeff_diff: length mismatch");
  S worst = ScalarTraits<S>::zero();
  for (std::size_t k = 0; k < a.size(); ++k) {
    S d = bops::max_abs_coeff_diff(a[k], b[k]);
    if (ScalarTraits<S>::abs_less(worst, d)) worst = d;
  }
  return worst;
}

template <class S>
Matrix<S> drop_column(const Matrix<S>& x, std::size_t col) {
  if (col >= x.cols()) throw SpecError("drop_column: index out of range");
  Matrix<S> out(x.rows(), x.cols() - 1);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0, t = 0; j < x.cols(); ++j)
      if (j != col) out(i, t++) = x(i, j);
  return out;
}

}  // namespace detail

// <u, a b^T>: entry (r, c) is the pairing of a[r] with b[c].
template <class S>
Matrix<S> pairing_matrix(const MomentModel<S>& u, const std::vector<BivarPoly<S>>& a,
                         const std::vector<BivarPoly<S>>& b) {
  Matrix<S> m(a.size(), b.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) m(r, c) = u.pairing(a[r], b[c]);
  return m;
}

template <class S>
Matrix<S> pairing_matrix(const MomentModel<S>& u, const PolyVector<S>& a,
                         const PolyVector<S>& b) {
  return pairing_matrix(u, a.entries(), b.entries());
}

// Everything degree-indexed that the recurrence layer needs: Q_n, the Gram
// blocks H_n = <u, Q_n Q_n^T> with inverses, and the recurrence matrices
// C_{n,i}, D_{n,i} for both axes, all for n <= max_degree().
template <class S>
class MopsCache {
 public:
  MopsCache(MomentModel<S> model, Tolerance tol, std::vector<PolyVector<S>> q,
            std::vector<Matrix<S>> h, std::vector<Matrix<S>> h_inv,
            std::array<std::vector<Matrix<S>>, 2> c, std::array<std::vector<Matrix<S>>, 2> d)
      : model_(std::move(model)),
        tol_(tol),
        q_(std::move(q)),
        h_(std::move(h)),
        h_inv_(std::move(h_inv)),
        c_(std::move(c)),
        d_(std::move(d)) {}

  const MomentModel<S>& model() const noexcept { return model_; }
  const Tolerance& tolerance() const noexcept { return tol_; }
  int max_degree() const noexcept { return static_cast<int>(q_.size()) - 1; }

  const PolyVector<S>& q(int n) const { return q_[checked(n)]; }
  const Matrix<S>& h(int n) const { return h_[checked(n)]; }
  const Matrix<S>& h_inv(int n) const { return h_inv_[checked(n)]; }
  const Matrix<S>& c(int n, Axis axis) const { return c_[detail::axis_index(axis)][checked(n)]; }
  // (n+1) x n; empty for n = 0.
  const Matrix<S>& d(int n, Axis axis) const { return d_[detail::axis_index(axis)][checked(n)]; }

 private:
  std::size_t checked(int n) const {
    if (n < 0 || n > max_degree())
      throw SpecError("MopsCache: degree " + std::to_string(n) + " outside built range 0.." +
                      std::to_string(max_degree()));
    return static_cast<std::size_t>(n);
  }

  MomentModel<S> model_;
  Tolerance tol_;
  std::vector<PolyVector<S>> q_;
  std::vector<Matrix<S>> h_, h_inv_;
  std::array<std::vector<Matrix<S>>, 2> c_, d_;
};

// Build the monic system through max_degree.  Raises QuasiDefiniteError at
// the first degree whose Gram block is singular (exact backend) or whose
// eigenvalue spread crosses the conditioning floor (float backend).
template <class S>
MopsCache<S> build_mops(const MomentModel<S>& u, int max_degree, const Tolerance& tol = {}) {
  if (max_degree < 0) throw SpecError("build_mops: negative degree bound");
  const bool table = u.kind() == MomentModel<S>::Kind::MomentTable;

  std::vector<PolyVector<S>> q;
  std::vector<Matrix<S>> h, h_inv;
  std::array<std::vector<Matrix<S>>, 2> c, d;

  for (int n = 0; n <= max_degree; ++n) {
    // Monic layer: leading monomial plus a correction solved from
    // orthogonality against every monomial of lower degree.
    if (n == 0) {
      q.emplace_back(0, std::vector<BivarPoly<S>>{BivarPoly<S>::constant(ScalarTraits<S>::one())});
    } else {
      const std::vector<Monomial> lower = monomial_basis(n - 1);
      const std::size_t dim = lower.size();
      const Matrix<S> gram = u.gram_matrix(n - 1);
      Matrix<S> rhs(dim, static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k)
        for (std::size_t r = 0; r < dim; ++r)
          rhs(r, static_cast<std::size_t>(k)) =
              table ? u.moment(lower[r].i + n - k, lower[r].j + k)
                    : u.pairing(BivarPoly<S>::monomial(lower[r].i, lower[r].j),
                                BivarPoly<S>::monomial(n - k, k));
      Matrix<S> coef;
      try {
        coef = solve(gram, rhs);
      } catch (const SingularMatrixError&) {
        throw QuasiDefiniteError("moment matrix of degree " + std::to_string(n - 1) +
                                     " is singular for weight '" + u.family() + "'",
                                 n - 1);
      }
      std::vector<BivarPoly<S>> entries;
      entries.reserve(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) {
        BivarPoly<S> p = BivarPoly<S>::monomial(n - k, k);
        for (std::size_t r = 0; r < dim; ++r)
          p.add_term(lower[r].i, lower[r].j, S(-coef(r, static_cast<std::size_t>(k))));
        entries.push_back(std::move(p));
      }
      q.emplace_back(n, std::move(entries));
    }

    // Gram block H_n, filled symmetrically, then the quasi-definiteness gate.
    const std::size_t sz = static_cast<std::size_t>(n) + 1;
    Matrix<S> hn(sz, sz);
    for (std::size_t r = 0; r < sz; ++r)
      for (std::size_t col = r; col < sz; ++col) {
        S v = u.pairing(q.back()[r], q.back()[col]);
        hn(r, col) = v;
        hn(col, r) = v;
      }
    if constexpr (!ScalarTraits<S>::is_exact) {
      const EigenDecomposition ed = symmetric_eigen(hn, tol);
      double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
      for (double lam : ed.values) {
        hi = std::fmax(hi, std::fabs(lam));
        lo = std::fmin(lo, std::fabs(lam));
      }
      if (!(lo > detail::kConditionFloor * hi))
        throw QuasiDefiniteError(
            "Gram block of degree " + std::to_string(n) + " for weight '" + u.family() +
                "' is numerically singular (|lambda| spread " + ScalarTraits<double>::str(lo) +
                " vs " + ScalarTraits<double>::str(hi) + ")",
            n);
    }
    Matrix<S> hn_inv;
    try {
      hn_inv = inverse(hn);
    } catch (const SingularMatrixError&) {
      throw QuasiDefiniteError("Gram block of degree " + std::to_string(n) +
                                   " is singular for weight '" + u.family() + "'",
                               n);
    }
    h.push_back(std::move(hn));
    h_inv.push_back(std::move(hn_inv));

    for (Axis axis : {Axis::X, Axis::Y}) {
      const std::size_t ai = detail::axis_index(axis);
      const std::vector<BivarPoly<S>> xq = multiply_by_axis(q.back(), axis);
      c[ai].push_back(pairing_matrix(u, xq, q.back().entries()) * h_inv.back());
      if (n == 0)
        d[ai].push_back(Matrix<S>(1, 0));
      else
        d[ai].push_back(pairing_matrix(u, xq, q[static_cast<std::size_t>(n) - 1].entries()) *
                        h_inv[static_cast<std::size_t>(n) - 1]);
    }
  }
  return MopsCache<S>(u, tol, std::move(q), std::move(h), std::move(h_inv), std::move(c),
                      std::move(d));
}

// The monic relation's coefficient triple for one axis and degree.
template <class S>
struct ThreeTerm {
  Matrix<S> l;  // (n+1) x (n+2), constant shift
  Matrix<S> c;  // (n+1) x (n+1)
  Matrix<S> d;  // (n+1) x n
};

template <class S>
ThreeTerm<S> three_term_monic(const MopsCache<S>& cache, int n, Axis axis) {
  return ThreeTerm<S>{shift_matrix<S>(n, axis), cache.c(n, axis), cache.d(n, axis)};
}

// Largest coefficient of x_i Q_n - (L Q_{n+1} + C Q_n + D Q_{n-1});
// needs the cache built through n + 1.
template <class S>
S m3tr_residual(const MopsCache<S>& cache, int n, Axis axis) {
  if (n < 0 || n + 1 > cache.max_degree())
    throw SpecError("m3tr_residual: needs degrees n and n+1 in the cache");
  const std::vector<BivarPoly<S>> lhs = multiply_by_axis(cache.q(n), axis);
  std::vector<BivarPoly<S>> rhs =
      matrix_apply(shift_matrix<S>(n, axis), cache.q(n + 1).entries());
  rhs = detail::add_entrywise(std::move(rhs),
                              matrix_apply(cache.c(n, axis), cache.q(n).entries()));
  if (n >= 1)
    rhs = detail::add_entrywise(std::move(rhs),
                                matrix_apply(cache.d(n, axis), cache.q(n - 1).entries()));
  return detail::max_abs_coeff_diff(lhs, rhs);
}

// Independent construction of Q_n: entry k is the bordered Gram determinant
// with last row (m_0, ..., m_{dim-1}, x^{n-k} y^k) over the lower-degree
// monomials m_j, expanded along that row and divided by det of the
// lower-degree Gram matrix.  Quadratic cost in the determinant calls; meant
// for cross-checks at small degree, not production.
template <class S>
PolyVector<S> mops_determinant_oracle(const MomentModel<S>& u, int n) {
  if (n < 0) throw SpecError("mops_determinant_oracle: negative degree");
  const std::vector<Monomial> lower = monomial_basis(n - 1);
  const std::size_t dim = lower.size();
  const Matrix<S> gram = n == 0 ? Matrix<S>(0, 0) : u.gram_matrix(n - 1);
  const S det_lower = determinant(gram);
  if (ScalarTraits<S>::is_zero(det_lower, Tolerance{0.0, 0.0}))
    throw QuasiDefiniteError("moment matrix of degree " + std::to_string(n - 1) +
                                 " is singular for weight '" + u.family() + "'",
                             n - 1);

  std::vector<BivarPoly<S>> entries;
  entries.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Matrix<S> bordered(dim, dim + 1);
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t j = 0; j < dim; ++j) bordered(r, j) = gram(r, j);
      bordered(r, dim) = u.pairing(BivarPoly<S>::monomial(lower[r].i, lower[r].j),
                                   BivarPoly<S>::monomial(n - k, k));
    }
    BivarPoly<S> p = BivarPoly<S>::monomial(n - k, k);
    for (std::size_t j = 0; j < dim; ++j) {
      S cof = determinant(detail::drop_column(bordered, j)) / det_lower;
      if ((dim + j) % 2 == 1) cof = -cof;
      p.add_term(lower[j].i, lower[j].j, cof);
    }
    entries.push_back(std::move(p));
  }
  return PolyVector<S>(n, std::move(entries));
}

// ---------------------------------------------------------------------------
// Closed forms for specific weights
// ---------------------------------------------------------------------------

// C_{n,i} for the triangle weight (xy)^alpha (1-x-y)^gamma: lower bidiagonal
// along axis x, with the axis-y matrix its double reversal.
template <class S>
Matrix<S> closed_form_simplex_C(int n, const S& alpha, const S& gamma, Axis axis) {
  if (n < 0) throw SpecError("closed_form_simplex_C: negative degree");
  const auto num = [](long long v) { return ScalarTraits<S>::from_int(v); };
  const S s1 = S(2 * alpha + gamma + num(2 * n + 1));
  const S s3 = S(2 * alpha + gamma + num(2 * n + 3));
  Matrix<S> c(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const S up = S(num(n - i + 1) * (alpha + num(n - i + 1)) / s3);
    const S down = S(num(n - i) * (alpha + num(n - i)) / s1);
    c(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = up - down;
  }
  for (int i = 0; i + 1 <= n; ++i)
    c(static_cast<std::size_t>(i) + 1, static_cast<std::size_t>(i)) =
        S(num(-2) * num(i + 1) * (alpha + num(i + 1)) / (s1 * s3));
  return axis == Axis::X ? c : reverse(c);
}

// The recurrence matrices of a tensor-product weight in closed form: the
// line recurrence coefficients placed along the diagonal that the axis
// selects.  Pass the x-factor's recurrence for axis x and the y-factor's for
// axis y.
template <class S>
struct ProductMatrices {
  Matrix<S> lambda_mat;  // (n+1) x (n+2)
  Matrix<S> gamma_mat;   // (n+1) x (n+1)
  Matrix<S> upsilon_mat;  // (n+1) x n
};

template <class S>
ProductMatrices<S> closed_form_product_matrices(const UnivariateRecurrence<S>& rec, int n,
                                                Axis axis) {
  if (n < 0) throw SpecError("closed_form_product_matrices: negative degree");
  if (rec.max_index() < n)
    throw SpecError("closed_form_product_matrices: recurrence table too short");
  const std::size_t sz = static_cast<std::size_t>(n) + 1;
  ProductMatrices<S> out{Matrix<S>(sz, sz + 1), Matrix<S>(sz, sz),
                         Matrix<S>(sz, static_cast<std::size_t>(n))};
  if (axis == Axis::X) {
    for (int k = 0; k <= n; ++k) {
      const std::size_t kk = static_cast<std::size_t>(k);
      out.lambda_mat(kk, kk) = rec.lambda[static_cast<std::size_t>(n - k)];
      out.gamma_mat(kk, kk) = rec.gamma[static_cast<std::size_t>(n - k)];
      if (k <= n - 1) out.upsilon_mat(kk, kk) = rec.upsilon[static_cast<std::size_t>(n - k)];
    }
  } else {
    for (int k = 0; k <= n; ++k) {
      const std::size_t kk = static_cast<std::size_t>(k);
      out.lambda_mat(kk, kk + 1) = rec.lambda[kk];
      out.gamma_mat(kk, kk) = rec.gamma[kk];
      if (k >= 1) out.upsilon_mat(kk, kk - 1) = rec.upsilon[kk];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Orthonormal layer (float backend; needs positive-definite Gram blocks)
// ---------------------------------------------------------------------------

class OrthonormalSystem {
 public:
  OrthonormalSystem(std::vector<PolyVector<double>> p,
                    std::array<std::vector<Matrix<double>>, 2> a,
                    std::array<std::vector<Matrix<double>>, 2> b)
      : p_(std::move(p)), a_(std::move(a)), b_(std::move(b)) {}

  int max_degree() const noexcept { return static_cast<int>(p_.size()) - 1; }

  const PolyVector<double>& p(int n) const {
    if (n < 0 || n > max_degree()) throw SpecError("OrthonormalSystem: degree out of range");
    return p_[static_cast<std::size_t>(n)];
  }
  // A_{n,i} and B_{n,i} exist for n <= max_degree() - 1.
  const Matrix<double>& a(int n, Axis axis) const { return coeff(a_, n, axis); }
  const Matrix<double>& b(int n, Axis axis) const { return coeff(b_, n, axis); }

 private:
  const Matrix<double>& coeff(const std::array<std::vector<Matrix<double>>, 2>& m, int n,
                              Axis axis) const {
    const auto& v = m[detail::axis_index(axis)];
    if (n < 0 || n >= static_cast<int>(v.size()))
      throw SpecError("OrthonormalSystem: coefficient degree out of range");
    return v[static_cast<std::size_t>(n)];
  }

  std::vector<PolyVector<double>> p_;
  std::array<std::vector<Matrix<double>>, 2> a_, b_;
};

// P_n = H_n^{-1/2} Q_n, A_{n,i} = H_n^{-1/2} L_{n,i} H_{n+1}^{1/2},
// B_{n,i} = H_n^{-1/2} C_{n,i} H_n^{1/2}.  Raises SpecError (via the matrix
// square root) when some H_n is not positive definite.
inline OrthonormalSystem build_orthonormal(const MopsCache<double>& cache) {
  const int top = cache.max_degree();
  std::vector<SpdRoots> roots;
  roots.reserve(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) roots.push_back(spd_roots(cache.h(n), cache.tolerance()));

  std::vector<PolyVector<double>> p;
  p.reserve(static_cast<std::size_t>(top) + 1);
  for (int n = 0; n <= top; ++n)
    p.push_back(apply_change_of_basis(roots[static_cast<std::size_t>(n)].inv_sqrt, cache.q(n)));

  std::array<std::vector<Matrix<double>>, 2> a, b;
  for (Axis axis : {Axis::X, Axis::Y}) {
    const std::size_t ai = detail::axis_index(axis);
    for (int n = 0; n + 1 <= top; ++n) {
      const auto& rn = roots[static_cast<std::size_t>(n)];
      a[ai].push_back(rn.inv_sqrt * shift_matrix<double>(n, axis) *
                      roots[static_cast<std::size_t>(n) + 1].sqrt);
      b[ai].push_back(rn.inv_sqrt * cache.c(n, axis) * rn.sqrt);
    }
  }
  return OrthonormalSystem(std::move(p), std::move(a), std::move(b));
}

// Largest coefficient of x_i P_n - (A_{n,i} P_{n+1} + B_{n,i} P_n +
// A_{n-1,i}^T P_{n-1}); needs n <= max_degree() - 1.
inline double o3tr_residual(const OrthonormalSystem& sys, int n, Axis axis) {
  if (n < 0 || n + 1 > sys.max_degree())
    throw SpecError("o3tr_residual: needs degrees n and n+1 in the system");
  const std::vector<BivarPoly<double>> lhs = multiply_by_axis(sys.p(n), axis);
  std::vector<BivarPoly<double>> rhs = matrix_apply(sys.a(n, axis), sys.p(n + 1).entries());
  rhs = detail::add_entrywise(std::move(rhs), matrix_apply(sys.b(n, axis), sys.p(n).entries()));
  if (n >= 1)
    rhs = detail::add_entrywise(
        std::move(rhs), matrix_apply(sys.a(n - 1, axis).transpose(), sys.p(n - 1).entries()));
  return detail::max_abs_coeff_diff(lhs, rhs);
}

// ---------------------------------------------------------------------------
// Connection between a base system and its quadratic-multiplier modification
// ---------------------------------------------------------------------------

// Q_n = Qm_n + R_n Qm_{n-1} + S_n Qm_{n-2} exactly, where Q is the base
// system and Qm the modified one; higher connection terms vanish because the
// multiplier has degree two.
template <class Scalar>
struct ChristoffelConnection {
  Matrix<Scalar> r;  // (n+1) x n
  Matrix<Scalar> s;  // (n+1) x (n-1), empty below n = 2
};

template <class S>
ChristoffelConnection<S> christoffel_connection(const MopsCache<S>& base,
                                                const MopsCache<S>& modified, int n) {
  if (modified.model().family() != "christoffel")
    throw SpecError("christoffel_connection: modified system is not a quadratic-multiplier "
                    "modification");
  const auto base_of_modified = modified.model().base_model();
  if (!base_of_modified || base_of_modified->id() != base.model().id())
    throw SpecError("christoffel_connection: base cache was not built from the modified "
                    "model's base weight");
  if (n < 0 || n > base.max_degree() || n > modified.max_degree())
    throw SpecError("christoffel_connection: degree outside both caches");

  const MomentModel<S>& v = modified.model();
  ChristoffelConnection<S> conn{Matrix<S>(static_cast<std::size_t>(n) + 1, 0),
                                Matrix<S>(static_cast<std::size_t>(n) + 1, 0)};
  if (n >= 1)
    conn.r = pairing_matrix(v, base.q(n).entries(), modified.q(n - 1).entries()) *
             modified.h_inv(n - 1);
  if (n >= 2)
    conn.s = pairing_matrix(v, base.q(n).entries(), modified.q(n - 2).entries()) *
             modified.h_inv(n - 2);
  return conn;
}

template <class S>
S christoffel_residual(const MopsCache<S>& base, const MopsCache<S>& modified,
                       const ChristoffelConnection<S>& conn, int n) {
  if (n < 0 || n > base.max_degree() || n > modified.max_degree())
    throw SpecError("christoffel_residual: degree outside both caches");
  std::vector<BivarPoly<S>> rhs = modified.q(n).entries();
  if (n >= 1)
    rhs = detail::add_entrywise(std::move(rhs),
                                matrix_apply(conn.r, modified.q(n - 1).entries()));
  if (n >= 2)
    rhs = detail::add_entrywise(std::move(rhs),
                                matrix_apply(conn.s, modified.q(n - 2).entries()));
  return detail::max_abs_coeff_diff(base.q(n).entries(), rhs);
}

}  // namespace bops
