#ifndef PODLES_REPORT_HPP
#define PODLES_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "podles/special_functions.hpp"

namespace podles {

struct RunConfig {
  double hbar = 0.5;
  int truncation = 64;       // matrix dimension N
  int cutoff = 30;           // generator series cutoff M
  std::int64_t window = 30;  // discrete-groupoid window n_max
  QuadratureSpec quad;
  std::uint64_t seed = 1;
  std::string format = "json";  // json | csv
  std::string out;              // report path; empty = none

  void validate() const;
};

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string anchor;  // the identity being verified

  bool pass() const { return residual <= tolerance; }
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  RunConfig config;
  double wall_ms = 0.0;  // console information; never serialized

  bool all_pass() const;
  std::size_t failed_count() const;
};

// Byte-stable rendering: checks sorted by name, object keys sorted, floats
// as %.17g. Identical config + seed give identical bytes; wall time is
// deliberately left out.
std::string render_report(const SuiteReport& report);
void write_report(const SuiteReport& report);  // to config.out when set
void print_console(const SuiteReport& report);

}  // namespace podles

#endif  // PODLES_REPORT_HPP
