#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qlocal/experiments.hpp"
#include "qlocal/io.hpp"

using namespace qlocal;
using namespace qlocal::experiments;

namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qlocal_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig tiny_qaoa_config(const fs::path& out) {
  ExperimentConfig config;
  config.kind = "qaoa-conc";
  config.values = {{"n", "6"}, {"q", "2"},     {"p", "1"},
                   {"seeds", "2"}, {"seed", "41"}};
  config.out_dir = out;
  return config;
}

}  // namespace

TEST_CASE("parse_config: empty and malformed inputs are usage errors") {
  CHECK_THROWS_AS(parse_config(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("n = 4\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("experiment bound-ledger\n"),
                  std::invalid_argument);
}

TEST_CASE("parse_config: flat key-value round-trip with comments") {
  const std::string text =
      "# ledger sweep\nexperiment = bound-ledger\nn = 256\np = 1\n"
      "ell = 4\nc_tilde = 2.449\nout = /tmp/ignored\n";
  const ExperimentConfig config = parse_config(text);
  CHECK(config.kind == "bound-ledger");
  CHECK(config.get_int("n") == 256);
  CHECK(config.get_real("c_tilde") == doctest::Approx(2.449));
  const ExperimentConfig again = parse_config(config_text(config));
  CHECK(again.values == config.values);
}

TEST_CASE("config seeds must be explicit") {
  ExperimentConfig config;
  config.kind = "qaoa-conc";
  config.values = {{"n", "4"}, {"q", "2"}, {"p", "1"}};
  config.out_dir = fresh_dir("no_seed");
  CHECK_THROWS_WITH_AS(run(config),
                       doctest::Contains("seed"), std::invalid_argument);
}

TEST_CASE("bound-ledger run writes the ledger and a clean report") {
  const fs::path dir = fresh_dir("ledger");
  ExperimentConfig config;
  config.kind = "bound-ledger";
  config.values = {{"n", "256"}, {"p", "3"}, {"ell", "4"},
                   {"c_tilde", "2.449489742783178"}};
  config.out_dir = dir;
  const RunResult result = run(config);
  CHECK(result.check_failures == 0);
  CHECK(fs::exists(dir / "manifest.txt"));
  const std::string ledger = io::read_file(dir / "ledger.txt");
  CHECK(ledger.find("simplified.c1 391.918") != std::string::npos);

  const Summary summary = report(dir);
  CHECK(summary.failures == 0);
  CHECK(summary.vacuous >= 1);  // the probability tails exceed 1 here
  bool saw_vacuous_row = false;
  for (const auto& row : summary.rows)
    saw_vacuous_row = saw_vacuous_row || row.status == "vacuous";
  CHECK(saw_vacuous_row);
}

TEST_CASE("identical configs reproduce byte-identical data files") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  const RunResult ra = run(tiny_qaoa_config(a));
  const RunResult rb = run(tiny_qaoa_config(b));
  CHECK(ra.check_failures == 0);
  REQUIRE(ra.files.size() == rb.files.size());
  for (std::size_t i = 0; i < ra.files.size(); ++i) {
    CHECK(ra.files[i].filename() == rb.files[i].filename());
    CHECK(io::content_hash(io::read_file(ra.files[i])) ==
          io::content_hash(io::read_file(rb.files[i])));
  }
}

TEST_CASE("report rejects tampered data files") {
  const fs::path dir = fresh_dir("tamper");
  run(tiny_qaoa_config(dir));
  {
    std::ofstream f(dir / "qaoa_symmetry.csv", std::ios::app);
    f << "tampered\n";
  }
  CHECK_THROWS_WITH_AS(report(dir), doctest::Contains("checksum"),
                       std::runtime_error);
}

TEST_CASE("report requires a manifest") {
  const fs::path dir = fresh_dir("nomanifest");
  CHECK_THROWS_AS(report(dir), std::invalid_argument);
}

TEST_CASE("subset-norms experiment: tiny clean sweep") {
  const fs::path dir = fresh_dir("subsets");
  ExperimentConfig config;
  config.kind = "subset-norms";
  config.values = {{"n", "6"}, {"q", "2"}, {"instances", "5"},
                   {"seed", "71"}};
  config.out_dir = dir;
  const RunResult result = run(config);
  CHECK(result.check_failures == 0);
  CHECK(fs::exists(dir / "subset_norms.csv"));
  CHECK(fs::exists(dir / "instance_0.spin"));
  const Summary summary = report(dir);
  CHECK(summary.failures == 0);
}

TEST_CASE("markov-conc experiment produces passing tails") {
  const fs::path dir = fresh_dir("markov");
  ExperimentConfig config;
  config.kind = "markov-conc";
  config.values = {{"n", "6"}, {"chains", "2"}, {"seed", "13"}};
  config.out_dir = dir;
  const RunResult result = run(config);
  CHECK(result.check_failures == 0);
}

TEST_CASE("ogp-symmetric experiment flags the line counterexample") {
  const fs::path dir = fresh_dir("ogp");
  ExperimentConfig config;
  config.kind = "ogp-symmetric";
  config.values = {{"n", "8"}, {"seed", "5"}, {"state", "ghz"}};
  config.out_dir = dir;
  const RunResult result = run(config);
  CHECK(result.check_failures == 0);
  const Summary summary = report(dir);
  bool saw_line_row = false;
  for (const auto& row : summary.rows)
    if (row.formula_id == "ogp.line_counterexample_invalid") {
      saw_line_row = true;
      CHECK(row.status == "pass");
    }
  CHECK(saw_line_row);
}

TEST_CASE("unknown experiment kinds are refused") {
  ExperimentConfig config;
  config.kind = "nonsense";
  config.out_dir = fresh_dir("nonsense");
  CHECK_THROWS_AS(run(config), std::invalid_argument);
}

TEST_CASE("cap violations are refused with the cap named") {
  ExperimentConfig config;
  config.kind = "subset-norms";
  config.values = {{"n", "12"}, {"q", "2"}, {"instances", "1"},
                   {"seed", "1"}, {"mode", "exhaustive"}};
  config.out_dir = fresh_dir("cap");
  CHECK_THROWS_WITH_AS(run(config), doctest::Contains("capped"),
                       std::invalid_argument);
}
