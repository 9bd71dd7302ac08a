// Command-line front end: parse a weight spec, build the orthogonal system,
// run the structural check suite, and render tables or JSON.
//
// Exit codes: 0 success / all checks pass; 1 a check or comparison failed;
// 2 invalid usage or spec; 3 quasi-definiteness lost at some degree.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <bops/bops.hpp>

namespace {

using bops::Axis;
using bops::CheckReport;
using bops::Matrix;
using bops::MomentModel;
using bops::PolyVector;
using bops::Rational;
using bops::ScalarTraits;
using bops::Tolerance;
using nlohmann::json;

struct CliConfig {
  std::string family, w1, w2, alpha, gamma, a, b, c, d;
  std::string spec_path, backend, out, format, object;
  int max_degree = 4;
  double atol = Tolerance{}.atol;
  double rtol = Tolerance{}.rtol;
};

bool verbose_logging() {
  const char* v = std::getenv("BOPS_LOG");
  return v != nullptr && *v != '\0';
}

void log_line(const std::string& msg) {
  if (verbose_logging()) std::cerr << "[bops] " << msg << "\n";
}

json spec_from_config(const CliConfig& cli) {
  json spec;
  if (!cli.spec_path.empty()) {
    std::ifstream in(cli.spec_path);
    if (!in) throw bops::SpecError("cannot open spec file: " + cli.spec_path);
    try {
      in >> spec;
    } catch (const json::exception& e) {
      throw bops::SpecError("spec file is not valid JSON: " + std::string(e.what()));
    }
  } else {
    if (cli.family.empty())
      throw bops::SpecError("no weight given: pass --family plus its parameters, or --spec");
    if (cli.family == "uvarov" || cli.family == "christoffel")
      throw bops::SpecError("family '" + cli.family +
                            "' wraps a base weight; describe it in a --spec JSON file");
    spec["family"] = cli.family;
    json params = json::object();
    const auto put = [&params](const char* key, const std::string& v) {
      if (!v.empty()) params[key] = v;
    };
    put("w1", cli.w1);
    put("w2", cli.w2);
    put("alpha", cli.alpha);
    put("gamma", cli.gamma);
    put("a", cli.a);
    put("b", cli.b);
    put("c", cli.c);
    put("d", cli.d);
    spec["params"] = std::move(params);
  }
  if (!cli.backend.empty()) spec["backend"] = cli.backend;
  return spec;
}

std::string resolve_format(const CliConfig& cli, const std::string& fallback) {
  const std::string fmt = cli.format.empty() ? fallback : cli.format;
  if (fmt != "json" && fmt != "text")
    throw bops::SpecError("format must be \"json\" or \"text\", got \"" + fmt + "\"");
  return fmt;
}

void check_degree_cap(int max_degree, const std::string& backend) {
  if (max_degree < 0) throw bops::SpecError("max degree must be nonnegative");
  const int cap = backend == "rational" ? 6 : 8;
  if (max_degree > cap)
    throw bops::SpecError("max degree " + std::to_string(max_degree) + " exceeds the " + backend +
                          "-backend cap of " + std::to_string(cap));
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw bops::SpecError("cannot open output path: " + out_path);
  f << payload;
}

// ---------------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------------

constexpr std::size_t kCellCap = 40;

std::string capped(std::string cell) {
  if (cell.size() > kCellCap) cell = cell.substr(0, kCellCap - 3) + "...";
  return cell;
}

std::string render_grid(const std::vector<std::string>& header,
                        const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size(), 0);
  const auto widen = [&width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      width[i] = std::max(width[i], capped(cells[i]).size());
  };
  widen(header);
  for (const auto& r : rows) widen(r);

  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string c = capped(cells[i]);
      out << (i == 0 ? "  " : " | ") << c << std::string(width[i] - c.size(), ' ');
    }
    out << "\n";
  };
  line(header);
  out << "  ";
  for (std::size_t i = 0; i < width.size(); ++i)
    out << (i == 0 ? "" : "-+-") << std::string(width[i], '-');
  out << "\n";
  for (const auto& r : rows) line(r);
  return out.str();
}

std::string monomial_name(int i, int j) {
  if (i == 0 && j == 0) return "1";
  std::string s;
  if (i > 0) s += i == 1 ? "x" : "x^" + std::to_string(i);
  if (j > 0) {
    if (!s.empty()) s += " ";
    s += j == 1 ? "y" : "y^" + std::to_string(j);
  }
  return s;
}

// Monomials of total degree <= n, highest degree first, j ascending within
// a degree; the order of Q-table columns.
std::vector<bops::Monomial> graded_descending(int n) {
  std::vector<bops::Monomial> cols;
  for (int deg = n; deg >= 0; --deg)
    for (int j = 0; j <= deg; ++j) cols.push_back(bops::Monomial{deg - j, j});
  return cols;
}

template <class S>
std::string render_poly_vector(const PolyVector<S>& v, const std::string& name) {
  const int n = v.degree();
  const auto cols = graded_descending(n);
  std::vector<std::string> header{"k"};
  for (const auto& mono : cols) header.push_back(monomial_name(mono.i, mono.j));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < v.size(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (const auto& mono : cols)
      row.push_back(ScalarTraits<S>::str(v[k].coeff(mono.i, mono.j)));
    rows.push_back(std::move(row));
  }
  return name + "\n" + render_grid(header, rows);
}

template <class S>
std::string render_matrix(const Matrix<S>& m, const std::string& name) {
  std::vector<std::string> header{"i\\j"};
  for (std::size_t j = 0; j < m.cols(); ++j) header.push_back(std::to_string(j));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ScalarTraits<S>::str(m(i, j)));
    rows.push_back(std::move(row));
  }
  std::string body = m.cols() == 0 ? std::string("  (empty)\n") : render_grid(header, rows);
  return name + "\n" + body;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string render_check_text(const CheckReport& rep) {
  std::ostringstream out;
  out << "weight family: " << rep.weight.family << "  backend: " << rep.backend
      << "  max degree: " << rep.max_degree << "\n";
  out << "model reflexive: " << yes_no(rep.model_reflexive) << "\n";
  std::vector<std::string> header{"n",      "reflexive_Q", "H_centro", "C_pair",       "D_pair",
                                  "blockdiag", "A_pair",      "B_pair",   "P_reflexive", "max_violation"};
  std::vector<std::vector<std::string>> rows;
  const auto opt = [](const std::optional<bool>& o) {
    return o.has_value() ? std::string(*o ? "pass" : "FAIL") : std::string("-");
  };
  for (const auto& d : rep.degrees) {
    rows.push_back({std::to_string(d.n), d.reflexive_q ? "pass" : "FAIL",
                    d.h_centrosymmetric ? "pass" : "FAIL", d.c_reverse_pair ? "pass" : "FAIL",
                    d.d_reverse_pair ? "pass" : "FAIL",
                    d.blockdiag_centrosymmetric ? "pass" : "FAIL", opt(d.a_reverse_pair),
                    opt(d.b_reverse_pair), opt(d.p_reflexive),
                    d.max_violation.has_value() ? ScalarTraits<double>::str(*d.max_violation)
                                                : std::string("-")});
  }
  out << render_grid(header, rows);
  for (const auto& w : rep.warnings) out << "warning: " << w << "\n";
  if (rep.converse_falsified.has_value())
    out << "structural properties falsified for this non-reflexive weight: "
        << yes_no(*rep.converse_falsified) << "\n";
  out << "all checks: " << (rep.all_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Subcommand drivers
// ---------------------------------------------------------------------------

template <class S>
int run_check(const json& spec, const CliConfig& cli, const Tolerance& tol) {
  const MomentModel<S> model = bops::model_from_spec<S>(spec);
  log_line("running check suite for family '" + model.family() + "' to degree " +
           std::to_string(cli.max_degree));
  const CheckReport rep = bops::theorem_check_suite(model, cli.max_degree, tol);
  const std::string fmt = resolve_format(cli, "json");
  emit(fmt == "json" ? bops::check_report_to_json(rep).dump(2) + "\n" : render_check_text(rep),
       cli.out);
  return rep.all_pass() ? 0 : 1;
}

template <class S>
int run_table(const json& spec, const CliConfig& cli, const Tolerance& tol) {
  static const std::vector<std::string> known{"Q", "H", "C", "D", "A", "B", "moments"};
  if (std::find(known.begin(), known.end(), cli.object) == known.end())
    throw bops::SpecError("unknown table object \"" + cli.object +
                          "\" (expected Q|H|C|D|A|B|moments)");
  const MomentModel<S> model = bops::model_from_spec<S>(spec);
  const std::string fmt = resolve_format(cli, "text");
  const int n_max = cli.max_degree;
  json jpayload{{"weight", bops::weight_desc_to_json(model.description())},
                {"backend", ScalarTraits<S>::backend_name()},
                {"object", cli.object},
                {"max_degree", n_max}};
  std::ostringstream text;
  text << "object " << cli.object << " for weight family '" << model.family() << "' (backend "
       << ScalarTraits<S>::backend_name() << "), degrees 0.." << n_max << "\n\n";

  if (cli.object == "moments") {
    if (model.kind() != MomentModel<S>::Kind::MomentTable)
      throw bops::SpecError("moments table unavailable: the weight is a bilinear form, "
                            "not a moment table");
    json cells = json::array();
    std::vector<std::string> header{"m\\n"};
    for (int n = 0; n <= n_max; ++n) header.push_back(std::to_string(n));
    std::vector<std::vector<std::string>> rows;
    for (int m = 0; m <= n_max; ++m) {
      std::vector<std::string> row{std::to_string(m)};
      for (int n = 0; n <= n_max; ++n) {
        if (m + n > n_max) {
          row.push_back("");
          continue;
        }
        const S mu = model.moment(m, n);
        row.push_back(ScalarTraits<S>::str(mu));
        cells.push_back(json{{"m", m}, {"n", n}, {"value", bops::scalar_to_json(mu)}});
      }
      rows.push_back(std::move(row));
    }
    text << render_grid(header, rows);
    jpayload["moments"] = std::move(cells);
    emit(fmt == "json" ? jpayload.dump(2) + "\n" : text.str(), cli.out);
    return 0;
  }

  const bool orthonormal_object = cli.object == "A" || cli.object == "B";
  if (orthonormal_object && ScalarTraits<S>::is_exact)
    throw bops::SpecError("objects A and B live on the orthonormal layer; use --backend float");

  log_line("building monic system to degree " +
           std::to_string(orthonormal_object ? n_max + 1 : n_max));
  const bops::MopsCache<S> cache = bops::build_mops(model, orthonormal_object ? n_max + 1 : n_max, tol);
  json degrees = json::array();

  if constexpr (!ScalarTraits<S>::is_exact) {
    if (orthonormal_object) {
      const bops::OrthonormalSystem ortho = bops::build_orthonormal(cache);
      for (int n = 0; n <= n_max; ++n) {
        const auto& mx = cli.object == "A" ? ortho.a(n, Axis::X) : ortho.b(n, Axis::X);
        const auto& my = cli.object == "A" ? ortho.a(n, Axis::Y) : ortho.b(n, Axis::Y);
        degrees.push_back(json{{"n", n},
                               {"x", bops::matrix_to_json(mx)},
                               {"y", bops::matrix_to_json(my)}});
        text << render_matrix(mx, cli.object + "_" + std::to_string(n) + " axis=x");
        text << render_matrix(my, cli.object + "_" + std::to_string(n) + " axis=y") << "\n";
      }
      jpayload["degrees"] = std::move(degrees);
      emit(fmt == "json" ? jpayload.dump(2) + "\n" : text.str(), cli.out);
      return 0;
    }
  }

  for (int n = 0; n <= n_max; ++n) {
    if (cli.object == "Q") {
      degrees.push_back(json{{"n", n}, {"value", bops::poly_vector_to_json(cache.q(n))}});
      text << render_poly_vector(cache.q(n), "Q_" + std::to_string(n)) << "\n";
    } else if (cli.object == "H") {
      degrees.push_back(json{{"n", n}, {"value", bops::matrix_to_json(cache.h(n))}});
      text << render_matrix(cache.h(n), "H_" + std::to_string(n)) << "\n";
    } else {
      const auto& mx = cli.object == "C" ? cache.c(n, Axis::X) : cache.d(n, Axis::X);
      const auto& my = cli.object == "C" ? cache.c(n, Axis::Y) : cache.d(n, Axis::Y);
      degrees.push_back(
          json{{"n", n}, {"x", bops::matrix_to_json(mx)}, {"y", bops::matrix_to_json(my)}});
      text << render_matrix(mx, cli.object + "_" + std::to_string(n) + " axis=x");
      text << render_matrix(my, cli.object + "_" + std::to_string(n) + " axis=y") << "\n";
    }
  }
  jpayload["degrees"] = std::move(degrees);
  emit(fmt == "json" ? jpayload.dump(2) + "\n" : text.str(), cli.out);
  return 0;
}

int run_oracle_diff(const json& spec, const CliConfig& cli, const Tolerance& tol) {
  if (cli.max_degree > 3)
    throw bops::SpecError("oracle-diff is capped at max degree 3 (determinant growth)");
  const MomentModel<Rational> model = bops::model_from_spec<Rational>(spec);
  const bops::MopsCache<Rational> cache = bops::build_mops(model, cli.max_degree, tol);
  const std::string fmt = resolve_format(cli, "text");

  bool all_identical = true;
  json degrees = json::array();
  std::ostringstream text;
  text << "oracle-diff for weight family '" << model.family() << "', degrees 0.."
       << cli.max_degree << "\n";
  for (int n = 0; n <= cli.max_degree; ++n) {
    log_line("determinant construction at degree " + std::to_string(n));
    const PolyVector<Rational> oracle = bops::mops_determinant_oracle(model, n);
    const Rational diff =
        bops::detail::max_abs_coeff_diff(oracle.entries(), cache.q(n).entries());
    const bool same = oracle == cache.q(n);
    all_identical = all_identical && same;
    degrees.push_back(json{{"n", n},
                           {"identical", same},
                           {"max_abs_diff", ScalarTraits<Rational>::str(diff)}});
    text << "n=" << n << ": " << (same ? "identical" : "DIFFERS, max |diff| = " +
                                                           ScalarTraits<Rational>::str(diff))
         << "\n";
  }
  text << "result: " << (all_identical ? "identical" : "DIFFERS") << "\n";
  json jpayload{{"weight", bops::weight_desc_to_json(model.description())},
                {"backend", "rational"},
                {"max_degree", cli.max_degree},
                {"identical", all_identical},
                {"degrees", std::move(degrees)}};
  emit(fmt == "json" ? jpayload.dump(2) + "\n" : text.str(), cli.out);
  return all_identical ? 0 : 1;
}

void add_common_options(CLI::App* cmd, CliConfig& cli) {
  cmd->add_option("--family", cli.family, "Weight family: product|simplex|freud");
  cmd->add_option("--w1", cli.w1,
                  "Product weight, x factor: legendre|hermite|chebyshev1|chebyshev2|laguerre");
  cmd->add_option("--w2", cli.w2, "Product weight, y factor (defaults to --w1)");
  cmd->add_option("--alpha", cli.alpha, "Simplex exponent alpha (rational literal, e.g. 1 or 1/2)");
  cmd->add_option("--gamma", cli.gamma, "Simplex exponent gamma (rational literal)");
  cmd->add_option("--a", cli.a, "Quartic/multiplier coefficient a");
  cmd->add_option("--b", cli.b, "Quartic/multiplier coefficient b");
  cmd->add_option("--c", cli.c, "Quartic/multiplier coefficient c");
  cmd->add_option("--d", cli.d, "Multiplier coefficient d");
  cmd->add_option("--spec", cli.spec_path, "Weight spec JSON file (required for uvarov/christoffel)");
  cmd->add_option("--max-degree", cli.max_degree, "Largest degree to build (default 4)");
  cmd->add_option("--backend", cli.backend, "Scalar backend: rational|float");
  cmd->add_option("--out", cli.out, "Write output to this path instead of stdout");
  cmd->add_option("--format", cli.format, "Output format: json|text");
  cmd->add_option("--atol", cli.atol, "Absolute comparison tolerance (default 1e-10)");
  cmd->add_option("--rtol", cli.rtol, "Relative comparison tolerance (default 1e-9)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bivariate orthogonal polynomial systems: builds, checks, tables"};
  app.require_subcommand(1);
  CliConfig cli;

  CLI::App* cmd_check = app.add_subcommand("check", "Run the structural check suite");
  CLI::App* cmd_table = app.add_subcommand("table", "Render Q/H/C/D/A/B/moments tables");
  CLI::App* cmd_oracle =
      app.add_subcommand("oracle-diff", "Compare the determinant construction to the Gram solve");
  CLI::App* cmd_moments = app.add_subcommand("moments", "Render the moment table");
  add_common_options(cmd_check, cli);
  add_common_options(cmd_table, cli);
  add_common_options(cmd_oracle, cli);
  add_common_options(cmd_moments, cli);
  cmd_table->add_option("--object", cli.object, "What to tabulate: Q|H|C|D|A|B|moments")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const json spec = spec_from_config(cli);
    const std::string backend = bops::spec_backend(spec);
    const Tolerance tol{cli.atol, cli.rtol};
    log_line("weight family '" + spec.value("family", "?") + "', backend " + backend);

    if (cmd_oracle->parsed()) {
      if (backend != "rational")
        throw bops::SpecError("oracle-diff runs on the rational backend only");
      check_degree_cap(cli.max_degree, backend);
      return run_oracle_diff(spec, cli, tol);
    }
    check_degree_cap(cli.max_degree, backend);
    if (cmd_check->parsed())
      return backend == "rational" ? run_check<Rational>(spec, cli, tol)
                                   : run_check<double>(spec, cli, tol);
    if (cmd_moments->parsed()) cli.object = "moments";
    return backend == "rational" ? run_table<Rational>(spec, cli, tol)
                                 : run_table<double>(spec, cli, tol);
  } catch (const bops::QuasiDefiniteError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const bops::SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bops::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
