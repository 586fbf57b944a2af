#ifndef PODLES_SUITES_HPP
#define PODLES_SUITES_HPP

#include <string>
#include <vector>

#include "podles/polarization.hpp"
#include "podles/report.hpp"

namespace podles {

// Optional data table a suite can emit next to its check report
// (bs-leaves, norms, asymptotics, geometry samples).
struct DataTable {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render_table_csv(const DataTable& table);

const std::vector<std::string>& suite_names();

// Runs the named invariant battery. Deterministic given config + seed;
// quadrature non-convergence surfaces as failing checks, not exceptions.
SuiteReport run_suite(const std::string& name, const RunConfig& config,
                      DataTable* table = nullptr);

// Weight pairs exercised by the norm batteries: the defaults and a second
// pair Lambda(t) = (2+t)/(1+t) (limit 1), rho(t) = (1+3t)/(1+t) (limit 3).
WeightPair unit_weights();
WeightPair custom_weights();

}  // namespace podles

#endif  // PODLES_SUITES_HPP
