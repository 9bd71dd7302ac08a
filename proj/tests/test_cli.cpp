// End-to-end tests of the command-line front end: subcommands, formats,
// output files, frozen exact values, determinism, and exit codes.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("bops_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = std::string("\"") + BOPS_CLI_PATH + "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int rc = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_spec(const std::string& name, const json& spec) {
  const fs::path p = scratch_dir() / name;
  std::ofstream(p) << spec.dump(2);
  return p;
}

json simplex_spec(const std::string& alpha, const std::string& gamma) {
  return json{{"family", "simplex"}, {"params", json{{"alpha", alpha}, {"gamma", gamma}}}};
}

json uvarov_three_node_spec(const std::string& mass) {
  json lambda_rows = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(i == j ? mass : "0");
    lambda_rows.push_back(std::move(row));
  }
  return json{
      {"family", "uvarov"},
      {"base", simplex_spec("1", "1/2")},
      {"params",
       json{{"nodes", json{{"rows", 3},
                           {"cols", 2},
                           {"data", json::array({json::array({"1", "0"}),
                                                 json::array({"0", "0"}),
                                                 json::array({"0", "1"})})}}},
            {"lambda",
             json{{"rows", 3}, {"cols", 3}, {"data", std::move(lambda_rows)}}}}}};
}

}  // namespace

TEST_CASE("cli help and usage errors") {
  REQUIRE(run_cli("--help").exit_code == 0);
  const CliResult sub = run_cli("table --help");
  REQUIRE(sub.exit_code == 0);
  REQUIRE(sub.out.find("--object") != std::string::npos);

  REQUIRE(run_cli("").exit_code == 2);              // subcommand required
  REQUIRE(run_cli("frobnicate").exit_code == 2);    // unknown subcommand
  REQUIRE(run_cli("table --family simplex --alpha 1 --gamma 1").exit_code == 2);
}

TEST_CASE("cli check: reflexive weight passes with exit 0") {
  const CliResult r =
      run_cli("check --family simplex --alpha 1 --gamma 1/2 --max-degree 3");
  REQUIRE(r.exit_code == 0);
  const json rep = json::parse(r.out);
  REQUIRE(rep.at("all_pass") == true);
  REQUIRE(rep.at("backend") == "rational");
  REQUIRE(rep.at("degrees").size() == 4);

  // Identical invocation twice produces byte-identical output.
  const CliResult again =
      run_cli("check --family simplex --alpha 1 --gamma 1/2 --max-degree 3");
  REQUIRE(again.out == r.out);
}

TEST_CASE("cli check: structural failures exit 1 and name the broken checks") {
  const CliResult r = run_cli(
      "check --family product --w1 legendre --w2 chebyshev1 --max-degree 2 --format json");
  REQUIRE(r.exit_code == 1);
  const json rep = json::parse(r.out);
  REQUIRE(rep.at("all_pass") == false);
  REQUIRE(rep.at("model_reflexive") == false);
  REQUIRE(rep.at("converse_falsified") == true);
  bool h_failed_somewhere = false;
  for (const auto& d : rep.at("degrees"))
    if (d.at("checks").at("H_centrosymmetric") == false) h_failed_somewhere = true;
  REQUIRE(h_failed_somewhere);

  const CliResult t = run_cli(
      "check --family product --w1 legendre --w2 chebyshev1 --max-degree 2 --format text");
  REQUIRE(t.exit_code == 1);
  REQUIRE(t.out.find("FAIL") != std::string::npos);
  REQUIRE(t.out.find("all checks: FAIL") != std::string::npos);
}

TEST_CASE("cli check: float backend text report") {
  const CliResult r =
      run_cli("check --family product --w1 hermite --backend float --max-degree 3 "
              "--format text");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("all checks: PASS") != std::string::npos);

  const CliResult f = run_cli("check --family freud --a 1 --b 1 --c 1 --max-degree 2 "
                              "--atol 1e-8 --rtol 1e-8");
  REQUIRE(f.exit_code == 0);
  const json rep = json::parse(f.out);
  REQUIRE(rep.at("backend") == "float");
  REQUIRE(rep.at("all_pass") == true);
}

TEST_CASE("cli table: frozen point-mass fractions under each mass normalization") {
  const fs::path half = write_spec("uvarov_half.json", uvarov_three_node_spec("1/2"));
  const CliResult r1 =
      run_cli("table --object Q --spec " + half.string() + " --max-degree 2");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r1.out.find("-10523/31537") != std::string::npos);
  REQUIRE(r1.out.find("-69058048/92498126565") != std::string::npos);
  REQUIRE(r1.out.find("-5355008/7115240505") != std::string::npos);
  REQUIRE(r1.out.find("51957376/30832708855") != std::string::npos);

  const fs::path unit = write_spec("uvarov_unit.json", uvarov_three_node_spec("1"));
  const CliResult r2 =
      run_cli("table --object Q --spec " + unit.string() + " --max-degree 1");
  REQUIRE(r2.exit_code == 0);
  REQUIRE(r2.out.find("-10459/31361") != std::string::npos);
}

TEST_CASE("cli table: coefficient matrices and json format") {
  const CliResult r = run_cli(
      "table --object C --family simplex --alpha 1 --gamma 2 --max-degree 2 --format json");
  REQUIRE(r.exit_code == 0);
  const json tab = json::parse(r.out);
  REQUIRE(tab.contains("degrees"));

  const CliResult h =
      run_cli("table --object H --family product --w1 legendre --max-degree 1");
  REQUIRE(h.exit_code == 0);
  REQUIRE(h.out.find("4/3") != std::string::npos);

  // Orthonormal objects need the float backend.
  REQUIRE(run_cli("table --object A --family simplex --alpha 1 --gamma 2").exit_code == 2);
  const CliResult a = run_cli(
      "table --object A --family simplex --alpha 1 --gamma 2 --backend float "
      "--max-degree 2");
  REQUIRE(a.exit_code == 0);

  REQUIRE(run_cli("table --object Z --family simplex --alpha 1 --gamma 2").exit_code == 2);
}

TEST_CASE("cli moments: triangle table and freud zeros") {
  const CliResult r =
      run_cli("moments --family simplex --alpha 1 --gamma 1/2 --max-degree 2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("16/945") != std::string::npos);

  const CliResult f = run_cli("moments --family freud --a 1 --b 0 --c 0 --max-degree 2");
  REQUIRE(f.exit_code == 0);

  // The quartic exponential family cannot run exactly.
  REQUIRE(run_cli("moments --family freud --a 1 --b 0 --c 0 --backend rational")
              .exit_code == 2);
}

TEST_CASE("cli oracle-diff: dual constructions agree exactly") {
  const CliResult r =
      run_cli("oracle-diff --family simplex --alpha 1 --gamma 2 --max-degree 2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("identical") != std::string::npos);

  // Degree cap and backend restriction are usage errors.
  REQUIRE(run_cli("oracle-diff --family simplex --alpha 1 --gamma 2 --max-degree 4")
              .exit_code == 2);
  REQUIRE(run_cli("oracle-diff --family simplex --alpha 1 --gamma 2 --backend float")
              .exit_code == 2);
}

TEST_CASE("cli exit codes for bad input and degenerate weights") {
  REQUIRE(run_cli("check --family nope").exit_code == 2);
  REQUIRE(run_cli("check --family simplex --alpha 1/0 --gamma 1").exit_code == 2);
  REQUIRE(run_cli("check --family simplex --alpha 1 --gamma 1 --max-degree 7")
              .exit_code == 2);
  REQUIRE(run_cli("check --family simplex --alpha 1 --gamma 1 --backend float "
                  "--max-degree 9")
              .exit_code == 2);
  REQUIRE(run_cli("check --family simplex --alpha -2 --gamma 1").exit_code == 2);

  // Quadratic multiplier that kills mu_00: quasi-definiteness exit code.
  const json chris{{"family", "christoffel"},
                   {"base", json{{"family", "product"}, {"params", json{{"w1", "legendre"}}}}},
                   {"params", json{{"a", "0"}, {"b", "1"}, {"c", "0"}, {"d", "0"}}}};
  const fs::path p = write_spec("christoffel_degenerate.json", chris);
  const CliResult r = run_cli("check --spec " + p.string());
  REQUIRE(r.exit_code == 3);
  REQUIRE(r.err.find("degree 0") != std::string::npos);

  // Missing spec file.
  REQUIRE(run_cli("check --spec /nonexistent/path.json").exit_code == 2);
}

TEST_CASE("cli --out writes the report to a file") {
  const fs::path target = scratch_dir() / "report.json";
  const CliResult r = run_cli("check --family simplex --alpha 1 --gamma 2 "
                              "--max-degree 2 --out " +
                              target.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.empty());
  const json rep = json::parse(slurp(target));
  REQUIRE(rep.at("all_pass") == true);
}
