#pragma once

// JSON encodings.
//
//   Matrix      {"rows": m, "cols": n, "data": [[...]]}
//   Polynomial  {"terms": [{"i": int, "j": int, "c": scalar}]}, (i+j, j) asc
//   PolyVector  {"degree": n, "entries": [poly...]}
//   WeightSpec  {"family": ..., "params": {...}, "base": <spec>, "backend": ...}
//   CheckReport {"weight": spec, "backend": ..., "max_degree": ...,
//                "model_reflexive": ..., "converse_falsified": bool|null,
//                "all_pass": ..., "warnings": [...],
//                "degrees": [{"n": k, "checks": {...}}]}
//
// Exact scalars serialize as lowest-term strings ("p/q", or "p" when the
// denominator is one); float scalars serialize as JSON numbers.  Readers
// accept strings or numbers for either backend, so every emitted document
// parses back.  nlohmann::json keeps object keys sorted, which makes the
// emitted bytes deterministic.

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "matrix.hpp"
#include "moments.hpp"
#include "poly.hpp"
#include "report.hpp"
#include "scalar.hpp"

namespace bops {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

template <class S>
json scalar_to_json(const S& v) {
  if constexpr (ScalarTraits<S>::is_exact)
    return ScalarTraits<S>::str(v);
  else
    return v;
}

template <class S>
S scalar_from_json(const json& j) {
  if (j.is_string()) return parse_scalar<S>(j.get<std::string>());
  if constexpr (ScalarTraits<S>::is_exact) {
    if (j.is_number_integer()) return ScalarTraits<S>::from_int(j.get<std::int64_t>());
    if (j.is_number_float()) return rational_from_double(j.get<double>());
  } else {
    if (j.is_number()) return j.get<double>();
  }
  throw SpecError("scalar: expected a number or a \"p/q\" string, got " + j.dump());
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

template <class S>
Matrix<S> matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw SpecError("matrix: expected {\"rows\", \"cols\", \"data\"}");
  const std::size_t rows = j.at("rows").get<std::size_t>();
  const std::size_t cols = j.at("cols").get<std::size_t>();
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows)
    throw SpecError("matrix: data must hold exactly \"rows\" rows");
  Matrix<S> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = data.at(i);
    if (!row.is_array() || row.size() != cols)
      throw SpecError("matrix: every row must hold exactly \"cols\" entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = scalar_from_json<S>(row.at(c));
  }
  return m;
}

// ---------------------------------------------------------------------------
// Polynomials
// ---------------------------------------------------------------------------

template <class S>
json poly_to_json(const BivarPoly<S>& p) {
  json terms = json::array();
  for (const auto& [mono, c] : p.terms())
    terms.push_back(json{{"i", mono.i}, {"j", mono.j}, {"c", scalar_to_json(c)}});
  return json{{"terms", std::move(terms)}};
}

template <class S>
BivarPoly<S> poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array())
    throw SpecError("polynomial: expected {\"terms\": [...]}");
  BivarPoly<S> p;
  for (const json& t : j.at("terms"))
    p.add_term(t.at("i").get<int>(), t.at("j").get<int>(), scalar_from_json<S>(t.at("c")));
  return p;
}

template <class S>
json poly_vector_to_json(const PolyVector<S>& v) {
  json entries = json::array();
  for (const auto& p : v.entries()) entries.push_back(poly_to_json(p));
  return json{{"degree", v.degree()}, {"entries", std::move(entries)}};
}

template <class S>
PolyVector<S> poly_vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("entries"))
    throw SpecError("polynomial vector: expected {\"degree\", \"entries\"}");
  std::vector<BivarPoly<S>> entries;
  for (const json& e : j.at("entries")) entries.push_back(poly_from_json<S>(e));
  return PolyVector<S>(j.at("degree").get<int>(), std::move(entries));
}

// ---------------------------------------------------------------------------
// Weight specs
// ---------------------------------------------------------------------------

inline json weight_desc_to_json(const WeightDesc& d) {
  json params = json::object();
  for (const auto& [k, v] : d.params) params[k] = v;
  if (!d.nodes.empty()) {
    json data = json::array();
    for (const auto& [x, y] : d.nodes) data.push_back(json::array({x, y}));
    params["nodes"] = json{{"rows", d.nodes.size()}, {"cols", 2}, {"data", std::move(data)}};
  }
  if (!d.lambda.empty()) {
    json data = json::array();
    for (const auto& row : d.lambda) data.push_back(row);
    params["lambda"] =
        json{{"rows", d.lambda.size()}, {"cols", d.lambda.size()}, {"data", std::move(data)}};
  }
  json out{{"family", d.family}, {"params", std::move(params)}};
  if (d.base) out["base"] = weight_desc_to_json(*d.base);
  return out;
}

namespace detail {

inline bool family_tree_contains(const json& spec, const std::string& family) {
  if (!spec.is_object()) return false;
  if (spec.value("family", "") == family) return true;
  return spec.contains("base") && family_tree_contains(spec.at("base"), family);
}

inline const json& spec_params(const json& spec) {
  static const json empty = json::object();
  if (!spec.contains("params")) return empty;
  const json& p = spec.at("params");
  if (!p.is_object()) throw SpecError("weight spec: \"params\" must be an object");
  return p;
}

template <class S>
S param_scalar(const json& params, const std::string& key) {
  if (!params.contains(key)) throw SpecError("weight spec: missing parameter \"" + key + "\"");
  return scalar_from_json<S>(params.at(key));
}

}  // namespace detail

// Backend a spec runs under: its explicit "backend" field, else float when a
// quartic-exponential weight appears anywhere in the family tree, else
// rational.  An explicit rational backend over such a weight is an error.
inline std::string spec_backend(const json& spec) {
  const bool needs_float = detail::family_tree_contains(spec, "freud");
  std::string backend = spec.value("backend", needs_float ? "float" : "rational");
  if (backend != "rational" && backend != "float")
    throw SpecError("weight spec: backend must be \"rational\" or \"float\"");
  if (backend == "rational" && needs_float)
    throw SpecError("weight spec: quartic exponential weights have no exact moments; "
                    "use the float backend");
  return backend;
}

template <class S>
MomentModel<S> model_from_spec(const json& spec) {
  if (!spec.is_object() || !spec.contains("family"))
    throw SpecError("weight spec: expected an object with a \"family\" field");
  const std::string family = spec.at("family").get<std::string>();
  const json& params = detail::spec_params(spec);

  if (family == "product") {
    const std::string w1 = params.value("w1", "");
    if (w1.empty()) throw SpecError("weight spec: product needs \"w1\"");
    const std::string w2 = params.value("w2", w1);
    return product_weight(univariate_weight<S>(w1), univariate_weight<S>(w2));
  }
  if (family == "simplex") {
    return simplex_jacobi<S>(detail::param_scalar<S>(params, "alpha"),
                             detail::param_scalar<S>(params, "gamma"));
  }
  if (family == "freud") {
    if constexpr (ScalarTraits<S>::is_exact) {
      throw SpecError("weight spec: quartic exponential weights have no exact moments; "
                      "use the float backend");
    } else {
      return freud_weight(detail::param_scalar<double>(params, "a"),
                          detail::param_scalar<double>(params, "b"),
                          detail::param_scalar<double>(params, "c"));
    }
  }
  if (family == "uvarov") {
    if (!spec.contains("base")) throw SpecError("weight spec: uvarov needs a \"base\" spec");
    if (!params.contains("nodes") || !params.contains("lambda"))
      throw SpecError("weight spec: uvarov needs \"nodes\" and \"lambda\" matrices");
    const Matrix<S> nodes = matrix_from_json<S>(params.at("nodes"));
    if (nodes.cols() != 2) throw SpecError("weight spec: nodes must be a k x 2 matrix");
    UvarovSpec<S> u{model_from_spec<S>(spec.at("base")), {}, matrix_from_json<S>(params.at("lambda"))};
    for (std::size_t k = 0; k < nodes.rows(); ++k) u.nodes.emplace_back(nodes(k, 0), nodes(k, 1));
    return uvarov_modify(u);
  }
  if (family == "christoffel") {
    if (!spec.contains("base")) throw SpecError("weight spec: christoffel needs a \"base\" spec");
    ChristoffelSpec<S> c{model_from_spec<S>(spec.at("base")),
                         detail::param_scalar<S>(params, "a"),
                         detail::param_scalar<S>(params, "b"),
                         detail::param_scalar<S>(params, "c"),
                         detail::param_scalar<S>(params, "d")};
    return christoffel_modify(c);
  }
  throw SpecError("weight spec: unknown family \"" + family + "\"");
}

// ---------------------------------------------------------------------------
// Check reports
// ---------------------------------------------------------------------------

inline json check_report_to_json(const CheckReport& rep) {
  const auto opt_bool = [](const std::optional<bool>& o) {
    return o.has_value() ? json(*o) : json(nullptr);
  };
  json degrees = json::array();
  for (const DegreeChecks& d : rep.degrees) {
    json checks{{"reflexive_Q", d.reflexive_q},
                {"H_centrosymmetric", d.h_centrosymmetric},
                {"C_reverse_pair", d.c_reverse_pair},
                {"D_reverse_pair", d.d_reverse_pair},
                {"blockdiag_centrosymmetric", d.blockdiag_centrosymmetric},
                {"A_reverse_pair", opt_bool(d.a_reverse_pair)},
                {"B_reverse_pair", opt_bool(d.b_reverse_pair)},
                {"P_reflexive", opt_bool(d.p_reflexive)},
                {"max_violation",
                 d.max_violation.has_value() ? json(*d.max_violation) : json(nullptr)}};
    degrees.push_back(json{{"n", d.n}, {"checks", std::move(checks)}});
  }
  json w = weight_desc_to_json(rep.weight);
  w["backend"] = rep.backend;
  return json{{"weight", std::move(w)},
              {"backend", rep.backend},
              {"max_degree", rep.max_degree},
              {"model_reflexive", rep.model_reflexive},
              {"converse_falsified", opt_bool(rep.converse_falsified)},
              {"all_pass", rep.all_pass()},
              {"warnings", rep.warnings},
              {"degrees", std::move(degrees)}};
}

}  // namespace bops
