#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "podles/element_io.hpp"
#include "podles/suites.hpp"

using namespace podles;

TEST_CASE("run_suite: known names, unknown rejected") {
  CHECK(suite_names().size() == 8);
  RunConfig cfg;
  CHECK_THROWS_AS(run_suite("nonsense", cfg), std::invalid_argument);

  RunConfig bad = cfg;
  bad.format = "xml";
  CHECK_THROWS_AS(run_suite("algebra", bad), std::invalid_argument);
  bad = cfg;
  bad.hbar = -2.0;
  CHECK_THROWS_AS(run_suite("algebra", bad), std::invalid_argument);
}

TEST_CASE("reports: determinism byte for byte") {
  RunConfig cfg;
  cfg.seed = 42;
  for (const std::string suite : {"algebra", "kms", "bs-leaves"}) {
    const SuiteReport a = run_suite(suite, cfg);
    const SuiteReport b = run_suite(suite, cfg);
    CHECK(render_report(a) == render_report(b));
    RunConfig csv_cfg = cfg;
    csv_cfg.format = "csv";
    SuiteReport ac = a, bc = b;
    ac.config = csv_cfg;
    bc.config = csv_cfg;
    CHECK(render_report(ac) == render_report(bc));
  }
  // a different seed changes the random-instance residuals but not the schema
  RunConfig other = cfg;
  other.seed = 43;
  const std::string r1 = render_report(run_suite("kms", cfg));
  const std::string r2 = render_report(run_suite("kms", other));
  CHECK(r1.substr(0, 15) == r2.substr(0, 15));
}

TEST_CASE("reports: JSON schema and CSV header") {
  RunConfig cfg;
  const SuiteReport report = run_suite("bs-leaves", cfg);
  const std::string json = render_report(report);

  // top-level keys in sorted order
  const auto pos_checks = json.find("\"checks\"");
  const auto pos_config = json.find("\"config\"");
  const auto pos_summary = json.find("\"summary\"");
  CHECK(pos_checks != std::string::npos);
  CHECK(pos_config != std::string::npos);
  CHECK(pos_summary != std::string::npos);
  CHECK(pos_checks < pos_config);
  CHECK(pos_config < pos_summary);
  CHECK(json.find("wall") == std::string::npos);  // timing never serialized

  RunConfig csv_cfg = cfg;
  csv_cfg.format = "csv";
  SuiteReport csv_report = report;
  csv_report.config = csv_cfg;
  const std::string csv = render_report(csv_report);
  CHECK(csv.rfind("name,status,residual,tolerance,anchor\n", 0) == 0);
  // one row per check plus the header line
  const std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == report.checks.size() + 1);
}

TEST_CASE("reports: checks sorted by name for order-independent assembly") {
  SuiteReport report;
  report.suite = "synthetic";
  report.config = RunConfig{};
  report.checks.push_back(CheckResult{"zeta", 0.0, 1.0, "last"});
  report.checks.push_back(CheckResult{"alpha", 0.0, 1.0, "first"});
  const std::string json = render_report(report);
  CHECK(json.find("alpha") < json.find("zeta"));

  SuiteReport shuffled = report;
  std::swap(shuffled.checks[0], shuffled.checks[1]);
  CHECK(render_report(shuffled) == json);
}

TEST_CASE("reports: exit-code contract mirrors all_pass") {
  SuiteReport report;
  report.suite = "synthetic";
  report.config = RunConfig{};
  report.checks.push_back(CheckResult{"ok", 0.0, 1e-10, ""});
  CHECK(report.all_pass());
  report.checks.push_back(CheckResult{"broken", 2.0, 1e-10, ""});
  CHECK_FALSE(report.all_pass());
  CHECK(report.failed_count() == 1);
  const std::string json = render_report(report);
  CHECK(json.find("\"failed\": 1") != std::string::npos);
  CHECK(json.find("\"status\": \"fail\"") != std::string::npos);
}

TEST_CASE("quadrature non-convergence is a failing check, not a crash") {
  RunConfig cfg;
  cfg.quad.rel_tol = 1e-18;  // unreachable under node doubling
  const SuiteReport report = run_suite("asymptotics", cfg);
  CHECK_FALSE(report.all_pass());
  bool found = false;
  for (const auto& c : report.checks)
    if (c.name == "quadrature_convergence") {
      found = true;
      CHECK_FALSE(c.pass());
    }
  CHECK(found);
}

TEST_CASE("reports: file emission") {
  RunConfig cfg;
  cfg.out = "report_test_tmp.json";
  SuiteReport report = run_suite("bs-leaves", cfg);
  write_report(report);
  std::ifstream in(cfg.out, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == render_report(report));
  std::remove(cfg.out.c_str());

  SuiteReport bad = report;
  bad.config.out = "/nonexistent-dir-xyz/report.json";
  CHECK_THROWS_AS(write_report(bad), std::runtime_error);
}

TEST_CASE("data tables: bs-leaves and asymptotics") {
  RunConfig cfg;
  cfg.window = 10;
  DataTable table;
  const SuiteReport report = run_suite("bs-leaves", cfg, &table);
  CHECK(report.all_pass());
  REQUIRE(table.header.size() == 3);
  CHECK(table.rows.size() == 12);  // n = 0..10 plus INF
  const std::string csv = render_table_csv(table);
  CHECK(csv.rfind("n,tau,f_level\n", 0) == 0);
  CHECK(csv.find("inf") != std::string::npos);

  DataTable asym;
  const SuiteReport asym_report = run_suite("asymptotics", cfg, &asym);
  CHECK(asym_report.all_pass());
  CHECK(asym.header.size() == 5);
  CHECK(asym.rows.size() == 42);  // n = 20..40 for both weight pairs
}

TEST_CASE("format_double: %.17g round-trips doubles") {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 6.02e23, -1.23456789012345678e-7}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(-0.0) == "0");
}
