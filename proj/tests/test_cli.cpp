// test_cli.cpp -- command-line surface: presets, configs, exit codes, and the
// determinism/round-trip guarantees of the emitted tables.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dualrail/cli.hpp"

namespace fs = std::filesystem;
using dualrail::cli::run_cli;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << text;
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / ("dualrail_cli_" + name);
}

// run_cli writing to a scratch file, returning (exit code, file content)
std::pair<int, std::string> run_to_file(std::vector<std::string> args, const std::string& name) {
  const fs::path path = tmp_file(name);
  std::error_code ec;
  fs::remove(path, ec);
  args.push_back("--out");
  args.push_back(path.string());
  const int code = run_cli(std::move(args));
  return {code, fs::exists(path) ? slurp(path) : std::string()};
}

struct EnvGuard {
  std::string key;
  EnvGuard(const std::string& k, const std::string& value) : key(k) {
    setenv(key.c_str(), value.c_str(), 1);
  }
  ~EnvGuard() { unsetenv(key.c_str()); }
};

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

}  // namespace

TEST_CASE("budget tables have the documented shape", "[cli]") {
  auto [code, csv] = run_to_file({"budget", "--preset", "table1", "--t-us", "1"}, "t1.csv");
  REQUIRE(code == 0);
  CHECK(count_lines(csv) == 8);  // header + seven processes
  CHECK(csv.find("cavity photon loss,kbar*t,1.333333e-03") != std::string::npos);
  CHECK(csv.rfind("row,process,scaling,probability,rounded", 0) == 0);

  auto [code2, csv2] = run_to_file({"budget", "--preset", "table2"}, "t2.csv");
  REQUIRE(code2 == 0);
  CHECK(count_lines(csv2) == 11);  // header + ten processes

  auto [code3, csv3] = run_to_file({"budget", "--preset", "fig5"}, "f5.csv");
  REQUIRE(code3 == 0);
  CHECK(csv3.find("erasure") != std::string::npos);
  CHECK(csv3.find("conversion_efficiency") != std::string::npos);
}

TEST_CASE("identical invocations emit identical bytes", "[cli]") {
  const std::vector<std::string> args = {"readout", "--preset", "fig2", "--strategy", "2R"};
  auto [c1, out1] = run_to_file(args, "det1.csv");
  auto [c2, out2] = run_to_file(args, "det2.csv");
  REQUIRE(c1 == 0);
  REQUIRE(c2 == 0);
  CHECK(out1 == out2);

  auto [c3, json1] = run_to_file({"nojump", "--format", "json"}, "det1.json");
  auto [c4, json2] = run_to_file({"nojump", "--format", "json"}, "det2.json");
  REQUIRE(c3 == 0);
  REQUIRE(c4 == 0);
  CHECK(json1 == json2);
}

TEST_CASE("emitted files round-trip through their schema", "[cli]") {
  auto [cc, csv] = run_to_file({"budget", "--preset", "table1"}, "rt.csv");
  auto [cj, json] = run_to_file({"budget", "--preset", "table1", "--format", "json"}, "rt.json");
  REQUIRE(cc == 0);
  REQUIRE(cj == 0);

  const auto from_json = dualrail::report::from_json(json);
  CHECK(dualrail::report::to_json(from_json) == json);

  auto from_csv = dualrail::report::from_csv(csv, from_json.experiment);
  CHECK(dualrail::report::to_csv(from_csv) == csv);

  // the two formats carry exactly the same cells
  CHECK(from_csv.columns == from_json.columns);
  CHECK(from_csv.rows == from_json.rows);
}

TEST_CASE("config errors exit 2 and name the offender", "[cli]") {
  CHECK(run_cli({"budget"}) == 2);                                    // no parameters at all
  CHECK(run_cli({"budget", "--preset", "table9"}) == 2);              // unknown preset
  CHECK(run_cli({"readout", "--preset", "fig2"}) == 2);               // missing strategy
  CHECK(run_cli({"readout", "--preset", "fig2", "--strategy", "4R"}) == 2);
  CHECK(run_cli({"gate", "--preset", "table2"}) == 2);                // missing gate name
  CHECK(run_cli({"gate", "--preset", "table2", "--gate", "iswap"}) == 2);
  CHECK(run_cli({"budget", "--preset", "table1", "--format", "xml"}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);

  const fs::path cfg = tmp_file("bad_key.json");
  spit(cfg, R"({"preset": "table1", "kapa_a": 1e-3})");
  CHECK(run_cli({"budget", "--config", cfg.string()}) == 2);

  const fs::path neg = tmp_file("neg_rate.json");
  spit(neg, R"({"preset": "table1", "kappa_a": -1.0})");
  CHECK(run_cli({"budget", "--config", neg.string()}) == 2);
}

TEST_CASE("numerical tolerance failures exit 3", "[cli]") {
  CHECK(run_cli({"nojump", "--tol", "1e-18", "--out", tmp_file("nj_fail.csv").string()}) == 3);
  auto [code, out] = run_to_file({"nojump", "--samples", "3"}, "nj_ok.csv");
  CHECK(code == 0);
  CHECK(count_lines(out) == 16);  // header + five quantities per sample
}

TEST_CASE("config files override presets field by field", "[cli]") {
  const fs::path cfg = tmp_file("override.json");
  spit(cfg, R"({"preset": "table1", "kappa_a": 2.0e-3})");  // symmetric rates now
  auto [code, csv] = run_to_file({"budget", "--config", cfg.string(), "--t-us", "1"}, "ov.csv");
  REQUIRE(code == 0);
  // with kappa_a == kappa_b the no-jump row collapses to zero
  CHECK(csv.find("no-jump backaction,(dkappa*t)^2,0.000000e+00") != std::string::npos);
}

TEST_CASE("preset search path can shadow and extend the builtins", "[cli]") {
  const fs::path dir = fs::temp_directory_path() / "dualrail_cli_presets";
  fs::create_directories(dir);
  spit(dir / "mylab.json", R"({"preset": "table1", "kappa_b": 6.666666666666666e-4})");
  EnvGuard guard("DUALRAIL_PRESET_DIR", dir.string());

  auto [code, csv] = run_to_file({"budget", "--preset", "mylab", "--t-us", "1"}, "lab.csv");
  REQUIRE(code == 0);
  // kbar halves relative to table1, and the rates are symmetric
  CHECK(csv.find("cavity photon loss,kbar*t,6.666667e-04") != std::string::npos);
  CHECK(csv.find("no-jump backaction,(dkappa*t)^2,0.000000e+00") != std::string::npos);

  spit(dir / "selfloop.json", R"({"preset": "selfloop"})");
  CHECK(run_cli({"budget", "--preset", "selfloop"}) == 2);  // inheritance cycle

  // builtins still resolve when the directory has no matching file
  auto [code2, csv2] = run_to_file({"budget", "--preset", "table1", "--t-us", "1"}, "bt.csv");
  CHECK(code2 == 0);
  CHECK(csv2.find("1.333333e-03") != std::string::npos);
}

TEST_CASE("readout outputs: normalization and the ideal limit", "[cli]") {
  auto [code, csv] = run_to_file({"readout", "--preset", "fig2", "--strategy", "1R"}, "ro.csv");
  REQUIRE(code == 0);
  const auto table = dualrail::report::from_csv(csv, "readout");
  REQUIRE(table.rows.size() == 4);  // three inputs + aggregate
  for (int i = 0; i < 3; ++i) {
    const double total = std::stod(table.rows[i][4]) + std::stod(table.rows[i][5]) +
                         std::stod(table.rows[i][6]);
    // cells carry seven significant digits, so the parsed sum is good to the
    // same quantization; the exact tree normalization is pinned elsewhere
    CHECK(std::abs(total - 1.0) < 1e-6);
  }
  const double mis = std::stod(table.rows[3][7]);
  CHECK(mis > 0.0);
  CHECK(mis < 1e-3);

  auto [code2, csv2] =
      run_to_file({"readout", "--preset", "fig2", "--strategy", "1R", "--ideal"}, "roi.csv");
  REQUIRE(code2 == 0);
  const auto ideal = dualrail::report::from_csv(csv2, "readout");
  CHECK(std::stod(ideal.rows[3][7]) < 1e-12);  // misassignment
  CHECK(std::stod(ideal.rows[3][8]) < 1e-12);  // added erasure
}

TEST_CASE("gate outputs match the advertised ideal limits", "[cli]") {
  auto [code, csv] = run_to_file(
      {"gate", "--gate", "zz", "--theta", "1.5708", "--mode", "ideal", "--preset", "table2"},
      "zz.csv");
  REQUIRE(code == 0);
  const auto t = dualrail::report::from_csv(csv, "gate");
  double fidelity = -1.0, flag = -1.0;
  for (const auto& row : t.rows) {
    if (row[5] == "fidelity") fidelity = std::stod(row[7]);
    if (row[5] == "flag_rate") flag = std::stod(row[7]);
  }
  CHECK(fidelity >= 1.0 - 1e-8);
  CHECK(flag < 1e-9);

  auto [code2, csv2] = run_to_file(
      {"gate", "--gate", "erasure_check", "--input", "00", "--preset", "table2"}, "ec.csv");
  REQUIRE(code2 == 0);
  const auto t2 = dualrail::report::from_csv(csv2, "gate");
  for (const auto& row : t2.rows)
    if (row[5] == "branch" && row[6] == "f") CHECK(std::stod(row[7]) == Catch::Approx(1.0));

  auto [code3, csv3] = run_to_file({"gate", "--gate", "cz", "--preset", "table2"}, "cz.csv");
  REQUIRE(code3 == 0);
  const auto t3 = dualrail::report::from_csv(csv3, "gate");
  for (const auto& row : t3.rows)
    if (row[5] == "fidelity") CHECK(std::stod(row[7]) >= 1.0 - 1e-10);

  CHECK(run_cli({"gate", "--gate", "zz", "--theta", "nan", "--preset", "table2", "--out",
                 tmp_file("nan.csv").string()}) == 2);
}
