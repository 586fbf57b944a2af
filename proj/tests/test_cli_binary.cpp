#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the installed command-line tool: exit codes,
// byte-identical reports for identical config + seed, environment
// overrides, and fixture emission.

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run(const std::string& command) { return std::system(command.c_str()); }

const std::string cli = PODLES_CLI_PATH;

}  // namespace

TEST_CASE("cli: report determinism across two processes") {
  const std::string base = cli + " kms --seed 7 --out ";
  CHECK(run(base + "cli_a.json > /dev/null") == 0);
  CHECK(run(base + "cli_b.json > /dev/null") == 0);
  const std::string a = slurp("cli_a.json");
  CHECK(a == slurp("cli_b.json"));
  CHECK(a.find("\"seed\": 7") != std::string::npos);
  std::remove("cli_a.json");
  std::remove("cli_b.json");
}

TEST_CASE("cli: csv format and data table") {
  CHECK(run(cli + " bs-leaves --window 5 --format csv --out cli_c.csv --table cli_t.csv"
                  " > /dev/null") == 0);
  const std::string report = slurp("cli_c.csv");
  CHECK(report.rfind("name,status,residual,tolerance,anchor\n", 0) == 0);
  const std::string table = slurp("cli_t.csv");
  CHECK(table.rfind("n,tau,f_level\n", 0) == 0);
  CHECK(table.find("inf") != std::string::npos);
  std::remove("cli_c.csv");
  std::remove("cli_t.csv");
}

TEST_CASE("cli: environment variable overrides with PODLES_ prefix") {
  CHECK(run("PODLES_HBAR=0.4 " + cli + " bs-leaves --window 3 --out cli_env.json > /dev/null") ==
        0);
  const std::string report = slurp("cli_env.json");
  CHECK(report.find("\"hbar\": 0.40000000000000002") != std::string::npos);
  std::remove("cli_env.json");
}

TEST_CASE("cli: unknown suite fails, bad config fails") {
  CHECK(run(cli + " nonsense > /dev/null 2>&1") != 0);
  CHECK(run(cli + " algebra --format xml > /dev/null 2>&1") != 0);
}

TEST_CASE("cli: fixtures subcommand emits canonical elements") {
  CHECK(run(cli + " fixtures --dir . --cutoff 5 > /dev/null") == 0);
  const std::string tau = slurp("tau.json");
  CHECK(tau.find("\"groupoid\": \"GS\"") != std::string::npos);
  CHECK(tau.find("\"m\": 0, \"n\": 0, \"re\": 1") != std::string::npos);
  const std::string shift = slurp("shift.json");
  CHECK(shift.find("\"m\": \"inf\", \"n\": -1") != std::string::npos);
  std::remove("tau.json");
  std::remove("alpha.json");
  std::remove("shift.json");
}
