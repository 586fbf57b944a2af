#include "podles/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "podles/element_io.hpp"

namespace podles {

void RunConfig::validate() const {
  if (!(hbar > 0.0)) throw std::invalid_argument("RunConfig: hbar must be > 0");
  if (truncation < 2) throw std::invalid_argument("RunConfig: truncation must be >= 2");
  if (cutoff < 1) throw std::invalid_argument("RunConfig: cutoff must be >= 1");
  if (window < 0) throw std::invalid_argument("RunConfig: window must be >= 0");
  if (format != "json" && format != "csv")
    throw std::invalid_argument("RunConfig: format must be json or csv");
  quad.validate();
}

bool SuiteReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass(); });
}

std::size_t SuiteReport::failed_count() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass(); }));
}

namespace {

std::vector<CheckResult> sorted_checks(const SuiteReport& report) {
  std::vector<CheckResult> checks = report.checks;
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return checks;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string render_json(const SuiteReport& report) {
  const auto checks = sorted_checks(report);
  std::ostringstream out;
  out << "{\n  \"checks\": [";
  bool first = true;
  for (const auto& c : checks) {
    out << (first ? "" : ",") << "\n    {\"anchor\": \"" << escape(c.anchor)
        << "\", \"name\": \"" << escape(c.name) << "\", \"residual\": "
        << format_double(c.residual) << ", \"status\": \"" << (c.pass() ? "pass" : "fail")
        << "\", \"tolerance\": " << format_double(c.tolerance) << "}";
    first = false;
  }
  out << "\n  ],\n";
  const RunConfig& cfg = report.config;
  // the output path is deliberately not echoed: reports must be
  // byte-identical wherever they are written
  out << "  \"config\": {\"cutoff\": " << cfg.cutoff << ", \"format\": \"" << cfg.format
      << "\", \"hbar\": " << format_double(cfg.hbar) << ", \"max_panels\": "
      << cfg.quad.max_panels << ", \"quad_nodes\": " << cfg.quad.nodes_per_panel
      << ", \"rel_tol\": " << format_double(cfg.quad.rel_tol) << ", \"seed\": " << cfg.seed
      << ", \"split_point\": " << format_double(cfg.quad.split_point)
      << ", \"truncation\": " << cfg.truncation << ", \"window\": " << cfg.window << "},\n";
  out << "  \"summary\": {\"failed\": " << report.failed_count() << ", \"passed\": "
      << (checks.size() - report.failed_count()) << ", \"suite\": \"" << escape(report.suite)
      << "\", \"total\": " << checks.size() << "}\n}\n";
  return out.str();
}

std::string render_csv(const SuiteReport& report) {
  std::ostringstream out;
  out << "name,status,residual,tolerance,anchor\n";
  for (const auto& c : sorted_checks(report)) {
    std::string anchor = c.anchor;
    std::replace(anchor.begin(), anchor.end(), ',', ';');
    out << c.name << "," << (c.pass() ? "pass" : "fail") << "," << format_double(c.residual)
        << "," << format_double(c.tolerance) << "," << anchor << "\n";
  }
  return out.str();
}

}  // namespace

std::string render_report(const SuiteReport& report) {
  return report.config.format == "csv" ? render_csv(report) : render_json(report);
}

void write_report(const SuiteReport& report) {
  if (report.config.out.empty()) return;
  std::ofstream out(report.config.out, std::ios::binary);
  if (!out) throw std::runtime_error("write_report: cannot open " + report.config.out);
  out << render_report(report);
  if (!out) throw std::runtime_error("write_report: failed writing " + report.config.out);
}

void print_console(const SuiteReport& report) {
  std::printf("suite %s\n", report.suite.c_str());
  for (const auto& c : sorted_checks(report))
    std::printf("  %-44s %s  residual %.3e  tol %.3e\n", c.name.c_str(),
                c.pass() ? "pass" : "FAIL", c.residual, c.tolerance);
  std::printf("summary: %zu/%zu passed in %.1f ms\n", report.checks.size() - report.failed_count(),
              report.checks.size(), report.wall_ms);
}

}  // namespace podles
