#pragma once

// Structural check suite.  For a reflexive pairing the built system must
// satisfy, at every degree n:
//   - Q_n is a reflexive vector (swap x<->y and reverse entry order fixes it)
//   - H_n is centrosymmetric
//   - (C_{n,1}, C_{n,2}) and (D_{n,1}, D_{n,2}) are reverse pairs
//   - diag(C_{n,1}, C_{n,2}) is centrosymmetric (equivalent packaging)
// and on the float backend additionally (A_{n,1}, A_{n,2}), (B_{n,1},
// B_{n,2}) reverse pairs and P_n reflexive.  For a non-reflexive pairing the
// suite records which structural properties break, falsifying the idea that
// they hold unconditionally.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "moments.hpp"
#include "mops.hpp"
#include "poly.hpp"
#include "scalar.hpp"

namespace bops {

struct DegreeChecks {
  int n = 0;
  bool reflexive_q = false;
  bool h_centrosymmetric = false;
  bool c_reverse_pair = false;
  bool d_reverse_pair = false;
  bool blockdiag_centrosymmetric = false;
  std::optional<bool> a_reverse_pair;  // float backend only
  std::optional<bool> b_reverse_pair;  // float backend only
  std::optional<bool> p_reflexive;     // float backend only
  std::optional<double> max_violation;  // float backend: worst magnitude seen

  bool pass() const {
    const auto ok = [](const std::optional<bool>& o) { return !o.has_value() || *o; };
    return reflexive_q && h_centrosymmetric && c_reverse_pair && d_reverse_pair &&
           blockdiag_centrosymmetric && ok(a_reverse_pair) && ok(b_reverse_pair) &&
           ok(p_reflexive);
  }
};

struct CheckReport {
  WeightDesc weight;
  std::string backend;
  int max_degree = 0;
  bool model_reflexive = false;
  // Set when the model is not reflexive: true iff some structural check
  // failed, i.e. the structure provably does not come for free.
  std::optional<bool> converse_falsified;
  std::vector<DegreeChecks> degrees;
  // Warning channel (does not affect all_pass): rank advisories and an
  // orthonormal layer that could not be built.
  std::vector<std::string> warnings;

  bool all_pass() const {
    if (!model_reflexive) return false;
    for (const DegreeChecks& d : degrees)
      if (!d.pass()) return false;
    return true;
  }
};

// Runs the full suite for degrees 0..max_degree.  Builds the monic system
// one degree deeper so the three-term matrices at max_degree are themselves
// exercised.  Raises QuasiDefiniteError if the build does.
template <class S>
CheckReport theorem_check_suite(const MomentModel<S>& u, int max_degree,
                                const Tolerance& tol = {}) {
  if (max_degree < 0) throw SpecError("theorem_check_suite: negative degree bound");
  const MopsCache<S> cache = build_mops(u, max_degree + 1, tol);

  CheckReport rep;
  rep.weight = u.description();
  rep.backend = ScalarTraits<S>::backend_name();
  rep.max_degree = max_degree;
  rep.model_reflexive = u.is_reflexive(2 * max_degree + 2, tol);

  std::optional<OrthonormalSystem> ortho;
  if constexpr (!ScalarTraits<S>::is_exact) {
    try {
      ortho.emplace(build_orthonormal(cache));
    } catch (const Error& e) {
      rep.warnings.push_back(std::string("orthonormal layer unavailable: ") + e.what());
    }
  }

  for (int n = 0; n <= max_degree; ++n) {
    DegreeChecks dc;
    dc.n = n;
    const auto& cx = cache.c(n, Axis::X);
    const auto& cy = cache.c(n, Axis::Y);
    const auto& dx = cache.d(n, Axis::X);
    const auto& dy = cache.d(n, Axis::Y);
    dc.reflexive_q = is_reflexive_vector(cache.q(n), tol);
    dc.h_centrosymmetric = is_centrosymmetric(cache.h(n), tol);
    dc.c_reverse_pair = is_reverse_pair(cx, cy, tol);
    dc.d_reverse_pair = is_reverse_pair(dx, dy, tol);
    dc.blockdiag_centrosymmetric = is_centrosymmetric(block_diag_pair(cx, cy), tol);
    if (ortho) {
      dc.a_reverse_pair = is_reverse_pair(ortho->a(n, Axis::X), ortho->a(n, Axis::Y), tol);
      dc.b_reverse_pair = is_reverse_pair(ortho->b(n, Axis::X), ortho->b(n, Axis::Y), tol);
      dc.p_reflexive = is_reflexive_vector(ortho->p(n), tol);
    }
    if constexpr (!ScalarTraits<S>::is_exact) {
      double worst = 0.0;
      const auto upd = [&worst](double v) { worst = std::fmax(worst, v); };
      upd(reflexivity_violation(cache.q(n)));
      upd(centrosymmetry_violation(cache.h(n)));
      upd(reverse_violation(cx, cy));
      upd(reverse_violation(dx, dy));
      if (ortho) {
        upd(reverse_violation(ortho->a(n, Axis::X), ortho->a(n, Axis::Y)));
        upd(reverse_violation(ortho->b(n, Axis::X), ortho->b(n, Axis::Y)));
        upd(reflexivity_violation(ortho->p(n)));
      }
      dc.max_violation = worst;
    }
    if (n >= 1) {
      for (Axis axis : {Axis::X, Axis::Y}) {
        const auto& d = cache.d(n, axis);
        if (rank(d, tol) != static_cast<std::size_t>(n))
          rep.warnings.push_back("D at degree " + std::to_string(n) + ", axis " +
                                 to_string(axis) + ", is not full rank");
      }
    }
    rep.degrees.push_back(dc);
  }

  if (!rep.model_reflexive) {
    bool some_failure = false;
    for (const DegreeChecks& d : rep.degrees)
      if (!d.pass()) some_failure = true;
    rep.converse_falsified = some_failure;
  }
  return rep;
}

}  // namespace bops
