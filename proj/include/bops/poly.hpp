#pragma once

// Sparse bivariate polynomials and degree-graded polynomial vectors.
//
// Terms are kept in graded lexicographic order with x before y: sort by total
// degree, then by y-exponent, so degree d lists as x^d, x^{d-1}y, ..., y^d.
// The canonical column vector of degree n stacks exactly those monomials; a
// vector is "reflexive" when swapping x and y in every entry and reversing the
// entry order reproduces the vector.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "scalar.hpp"

namespace bops {

enum class Axis { X = 1, Y = 2 };

inline const char* to_string(Axis a) { return a == Axis::X ? "x" : "y"; }

struct Monomial {
  int i = 0;  // x-exponent
  int j = 0;  // y-exponent
};

struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    const int da = a.i + a.j, db = b.i + b.j;
    if (da != db) return da < db;
    return a.j < b.j;
  }
};

template <class S>
class BivarPoly {
 public:
  using TermMap = std::map<Monomial, S, GradedLex>;

  BivarPoly() = default;  // zero polynomial

  static BivarPoly constant(const S& c) { return monomial(0, 0, c); }

  static BivarPoly monomial(int i, int j, const S& c = ScalarTraits<S>::one()) {
    BivarPoly p;
    p.add_term(i, j, c);
    return p;
  }

  bool is_zero() const noexcept { return t_.empty(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const noexcept {
    if (t_.empty()) return -1;
    const Monomial& m = t_.rbegin()->first;
    return m.i + m.j;
  }

  S coeff(int i, int j) const {
    auto it = t_.find(Monomial{i, j});
    return it == t_.end() ? ScalarTraits<S>::zero() : it->second;
  }

  void add_term(int i, int j, const S& c) {
    if (i < 0 || j < 0) throw SpecError("BivarPoly: negative exponent");
    if (ScalarTraits<S>::is_zero(c, Tolerance{0.0, 0.0})) return;
    auto [it, inserted] = t_.emplace(Monomial{i, j}, c);
    if (!inserted) {
      it->second = it->second + c;
      if (ScalarTraits<S>::is_zero(it->second, Tolerance{0.0, 0.0})) t_.erase(it);
    }
  }

  const TermMap& terms() const noexcept { return t_; }

  BivarPoly operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m.i, m.j, c);
    return r;
  }

  BivarPoly operator-(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [m, c] : o.t_) r.add_term(m.i, m.j, S(-c));
    return r;
  }

  BivarPoly operator-() const {
    BivarPoly r;
    for (const auto& [m, c] : t_) r.t_.emplace(m, S(-c));
    return r;
  }

  BivarPoly operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (const auto& [ma, ca] : t_)
      for (const auto& [mb, cb] : o.t_) r.add_term(ma.i + mb.i, ma.j + mb.j, ca * cb);
    return r;
  }

  BivarPoly scaled(const S& c) const {
    BivarPoly r;
    if (ScalarTraits<S>::is_zero(c, Tolerance{0.0, 0.0})) return r;
    for (const auto& [m, v] : t_) {
      S cv = v * c;
      if (!ScalarTraits<S>::is_zero(cv, Tolerance{0.0, 0.0})) r.t_.emplace(m, cv);
    }
    return r;
  }

  bool operator==(const BivarPoly& o) const {
    if (t_.size() != o.t_.size()) return false;
    auto a = t_.begin();
    auto b = o.t_.begin();
    for (; a != t_.end(); ++a, ++b) {
      if (a->first.i != b->first.i || a->first.j != b->first.j) return false;
      if (!(a->second == b->second)) return false;
    }
    return true;
  }
  bool operator!=(const BivarPoly& o) const { return !(*this == o); }

  // Horner by x-degree: p = sum_i x^i q_i(y), each q_i evaluated by Horner.
  S evaluate(const S& x, const S& y) const {
    std::map<int, std::map<int, S>> by_x;
    for (const auto& [m, c] : t_) by_x[m.i][m.j] = c;
    S result = ScalarTraits<S>::zero();
    int prev_i = -1;
    for (auto it = by_x.rbegin(); it != by_x.rend(); ++it) {
      if (prev_i >= 0)
        for (int k = 0; k < prev_i - it->first; ++k) result = result * x;
      S inner = ScalarTraits<S>::zero();
      int prev_j = -1;
      for (auto jt = it->second.rbegin(); jt != it->second.rend(); ++jt) {
        if (prev_j >= 0)
          for (int k = 0; k < prev_j - jt->first; ++k) inner = inner * y;
        inner = inner + jt->second;
        prev_j = jt->first;
      }
      for (int k = 0; k < prev_j; ++k) inner = inner * y;
      result = result + inner;
      prev_i = it->first;
    }
    for (int k = 0; k < prev_i; ++k) result = result * x;
    return result;
  }

 private:
  TermMap t_;
};

template <class S>
BivarPoly<S> swap_xy(const BivarPoly<S>& p) {
  BivarPoly<S> r;
  for (const auto& [m, c] : p.terms()) r.add_term(m.j, m.i, c);
  return r;
}

template <class S>
BivarPoly<S> multiply_by_axis(const BivarPoly<S>& p, Axis axis) {
  BivarPoly<S> r;
  for (const auto& [m, c] : p.terms())
    r.add_term(m.i + (axis == Axis::X ? 1 : 0), m.j + (axis == Axis::Y ? 1 : 0), c);
  return r;
}

template <class S>
S max_abs_coeff_diff(const BivarPoly<S>& p, const BivarPoly<S>& q) {
  S worst = ScalarTraits<S>::zero();
  BivarPoly<S> d = p - q;
  for (const auto& [m, c] : d.terms())
    if (ScalarTraits<S>::abs_less(worst, c)) worst = ScalarTraits<S>::abs(c);
  return worst;
}

template <class S>
bool approx_equal(const BivarPoly<S>& p, const BivarPoly<S>& q, const Tolerance& tol = {}) {
  return ScalarTraits<S>::is_zero(max_abs_coeff_diff(p, q), tol);
}

inline BivarPoly<double> to_float(const BivarPoly<Rational>& p) {
  BivarPoly<double> r;
  for (const auto& [m, c] : p.terms())
    r.add_term(m.i, m.j, ScalarTraits<Rational>::to_double(c));
  return r;
}

// ---------------------------------------------------------------------------
// PolyVector: the column vector of n+1 polynomials attached to degree n
// ---------------------------------------------------------------------------

template <class S>
class PolyVector {
 public:
  PolyVector(int degree, std::vector<BivarPoly<S>> entries)
      : degree_(degree), e_(std::move(entries)) {
    if (degree_ < 0) throw SpecError("PolyVector: negative degree");
    if (e_.size() != static_cast<std::size_t>(degree_) + 1)
      throw SpecError("PolyVector: degree n requires exactly n+1 entries");
    for (const auto& p : e_)
      if (p.degree() > degree_)
        throw SpecError("PolyVector: entry exceeds vector degree");
  }

  // (x^n, x^{n-1} y, ..., y^n)^T
  static PolyVector canonical(int degree) {
    if (degree < 0) throw SpecError("PolyVector: negative degree");
    std::vector<BivarPoly<S>> e;
    e.reserve(degree + 1);
    for (int k = 0; k <= degree; ++k)
      e.push_back(BivarPoly<S>::monomial(degree - k, k));
    return PolyVector(degree, std::move(e));
  }

  int degree() const noexcept { return degree_; }
  std::size_t size() const noexcept { return e_.size(); }
  const BivarPoly<S>& operator[](std::size_t k) const {
    if (k >= e_.size()) throw SpecError("PolyVector: entry index out of range");
    return e_[k];
  }
  const std::vector<BivarPoly<S>>& entries() const noexcept { return e_; }

  bool operator==(const PolyVector& o) const { return degree_ == o.degree_ && e_ == o.e_; }
  bool operator!=(const PolyVector& o) const { return !(*this == o); }

 private:
  int degree_;
  std::vector<BivarPoly<S>> e_;
};

// Largest coefficient mismatch between entry k and entry n-k with x and y
// swapped; zero exactly when the vector is reflexive.
template <class S>
S reflexivity_violation(const PolyVector<S>& v) {
  S worst = ScalarTraits<S>::zero();
  const int n = v.degree();
  for (int k = 0; k <= n; ++k) {
    S d = max_abs_coeff_diff(v[static_cast<std::size_t>(k)],
                             swap_xy(v[static_cast<std::size_t>(n - k)]));
    if (ScalarTraits<S>::abs_less(worst, d)) worst = d;
  }
  return worst;
}

template <class S>
bool is_reflexive_vector(const PolyVector<S>& v, const Tolerance& tol = {}) {
  return ScalarTraits<S>::is_zero(reflexivity_violation(v), tol);
}

// T * f for rectangular T; T.cols() must equal f.size().
template <class S>
std::vector<BivarPoly<S>> matrix_apply(const Matrix<S>& t, const std::vector<BivarPoly<S>>& f) {
  if (t.cols() != f.size()) throw SpecError("matrix_apply: shape mismatch");
  std::vector<BivarPoly<S>> out(t.rows());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) {
      const S& c = t(i, j);
      if (ScalarTraits<S>::is_zero(c, Tolerance{0.0, 0.0})) continue;
      out[i] = out[i] + f[j].scaled(c);
    }
  return out;
}

// Square change of basis at fixed degree; preserves degree when T is regular.
template <class S>
PolyVector<S> apply_change_of_basis(const Matrix<S>& t, const PolyVector<S>& v) {
  const std::size_t n1 = static_cast<std::size_t>(v.degree()) + 1;
  if (t.rows() != n1 || t.cols() != n1)
    throw SpecError("apply_change_of_basis: matrix must be (n+1) x (n+1)");
  return PolyVector<S>(v.degree(), matrix_apply(t, v.entries()));
}

// Entrywise multiplication by a coordinate; results have degree n+1 but are
// returned as a plain array because they are only n+1 of the n+2 entries a
// degree-(n+1) vector would need.
template <class S>
std::vector<BivarPoly<S>> multiply_by_axis(const PolyVector<S>& v, Axis axis) {
  std::vector<BivarPoly<S>> out;
  out.reserve(v.size());
  for (const auto& p : v.entries()) out.push_back(multiply_by_axis(p, axis));
  return out;
}

// L_{n,1} = [I | 0], L_{n,2} = [0 | I], the (n+1) x (n+2) maps with
// x * X_n = L_{n,1} X_{n+1} and y * X_n = L_{n,2} X_{n+1}.
template <class S>
Matrix<S> shift_matrix(int n, Axis axis) {
  if (n < 0) throw SpecError("shift_matrix: negative degree");
  Matrix<S> l(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(n) + 2);
  for (int k = 0; k <= n; ++k)
    l(static_cast<std::size_t>(k), static_cast<std::size_t>(k + (axis == Axis::Y ? 1 : 0))) =
        ScalarTraits<S>::one();
  return l;
}

// Coefficient matrices [G_n, G_{n-1}, ..., G_0] with v = sum_k G_k X_k;
// G_k is (n+1) x (k+1), result[t] holds G_{n-t}.
template <class S>
std::vector<Matrix<S>> expansion_in_canonical(const PolyVector<S>& v) {
  const int n = v.degree();
  std::vector<Matrix<S>> gs;
  gs.reserve(n + 1);
  for (int k = n; k >= 0; --k)
    gs.emplace_back(static_cast<std::size_t>(n) + 1, static_cast<std::size_t>(k) + 1);
  for (std::size_t r = 0; r < v.size(); ++r)
    for (const auto& [m, c] : v[r].terms()) {
      const int k = m.i + m.j;
      gs[static_cast<std::size_t>(n - k)](r, static_cast<std::size_t>(m.j)) = c;
    }
  return gs;
}

template <class S>
PolyVector<S> reconstruct_from_expansion(int n, const std::vector<Matrix<S>>& gs) {
  if (gs.size() != static_cast<std::size_t>(n) + 1)
    throw SpecError("reconstruct_from_expansion: need n+1 coefficient matrices");
  std::vector<BivarPoly<S>> e(static_cast<std::size_t>(n) + 1);
  for (int t = 0; t <= n; ++t) {
    const int k = n - t;
    const Matrix<S>& g = gs[static_cast<std::size_t>(t)];
    if (g.rows() != static_cast<std::size_t>(n) + 1 ||
        g.cols() != static_cast<std::size_t>(k) + 1)
      throw SpecError("reconstruct_from_expansion: coefficient matrix has wrong shape");
    for (std::size_t r = 0; r < g.rows(); ++r)
      for (std::size_t c = 0; c < g.cols(); ++c)
        e[r].add_term(k - static_cast<int>(c), static_cast<int>(c), g(r, c));
  }
  return PolyVector<S>(n, std::move(e));
}

// Opt-in linear independence: the leading coefficient matrix G_n has full rank.
template <class S>
bool has_independent_entries(const PolyVector<S>& v, const Tolerance& tol = {}) {
  return rank(expansion_in_canonical(v).front(), tol) == v.size();
}

inline PolyVector<double> to_float(const PolyVector<Rational>& v) {
  std::vector<BivarPoly<double>> e;
  e.reserve(v.size());
  for (const auto& p : v.entries()) e.push_back(to_float(p));
  return PolyVector<double>(v.degree(), std::move(e));
}

}  // namespace bops
