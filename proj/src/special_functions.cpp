#include "podles/special_functions.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace podles {

namespace {
constexpr double kPiSqOver6 = std::numbers::pi * std::numbers::pi / 6.0;
}

namespace detail {

double dilog_series(double t) {
  // sum_{k>=1} t^k / k^2, geometric convergence for |t| < 1
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 400; ++k) {
    term *= t;
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum) + 5e-324) break;
  }
  return sum;
}

double dilog_landen(double t) {
  // Li2(t) = -Li2(t/(t-1)) - log^2(1-t)/2, argument t/(t-1) in (0, 1/2] for t in [-1, 0)
  const double u = t / (t - 1.0);
  const double lg = std::log1p(-t);
  return -dilog_series(u) - 0.5 * lg * lg;
}

double dilog_inversion(double t) {
  // Li2(t) = -Li2(1/t) - pi^2/6 - log^2(-t)/2, 1/t in [-1, 0)
  const double inv = 1.0 / t;
  const double lg = std::log(-t);
  const double inner = (inv >= -0.6) ? dilog_series(inv) : dilog_landen(inv);
  return -inner - kPiSqOver6 - 0.5 * lg * lg;
}

}  // namespace detail

double dilog(double t) {
  if (t > 0.0) throw std::domain_error("dilog: argument must be <= 0");
  if (t == 0.0) return 0.0;
  if (t >= -0.6) return detail::dilog_series(t);
  if (t > -1.0) return detail::dilog_landen(t);
  return detail::dilog_inversion(t);
}

double dilog_relation_residual(double t) {
  if (t <= 0.0) throw std::domain_error("dilog_relation_residual: t must be > 0");
  const double lg = std::log(t);
  return dilog(-t) + dilog(-1.0 / t) + kPiSqOver6 + 0.5 * lg * lg;
}

void QuadratureSpec::validate() const {
  if (!(split_point > 0.0)) throw std::invalid_argument("QuadratureSpec: split_point must be > 0");
  if (nodes_per_panel < 2) throw std::invalid_argument("QuadratureSpec: nodes_per_panel must be >= 2");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
  if (max_panels < 1) throw std::invalid_argument("QuadratureSpec: max_panels must be >= 1");
}

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> x(n), w(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root of P_n
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return cache.emplace(n, std::make_pair(std::move(x), std::move(w))).first->second;
}

namespace {

// Integrand value at t for the two input forms.
struct WeightedIntegrand {
  const std::function<double(double)>* plain = nullptr;
  const std::function<double(double)>* log_form = nullptr;
  double hbar = 0.0;

  double at(double t) const {
    const double lw = dilog(-t) / hbar;
    if (plain) return (*plain)(t)*std::exp(lw);
    const double lf = (*log_form)(t);
    if (!std::isfinite(lf)) return 0.0;  // log f = -inf at a zero of f
    return std::exp(lf + lw);
  }

  // value at t = e^s including the Jacobian e^s
  double at_log(double s) const {
    const double t = std::exp(s);
    const double lw = dilog(-t) / hbar;
    if (plain) return (*plain)(t)*std::exp(lw + s);
    const double lf = (*log_form)(t);
    if (!std::isfinite(lf)) return 0.0;
    return std::exp(lf + lw + s);
  }
};

double panel_sum(const WeightedIntegrand& g, double a, double b, int nodes, bool log_coords) {
  const auto& [x, w] = gauss_legendre(nodes);
  const double mid = 0.5 * (a + b), rad = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double u = mid + rad * x[i];
    sum += w[i] * (log_coords ? g.at_log(u) : g.at(u));
  }
  return rad * sum;
}

constexpr int kHeadPanels = 8;

double integrate_once(const WeightedIntegrand& g, const QuadratureSpec& spec, int nodes) {
  double total = 0.0;
  const double h = spec.split_point / kHeadPanels;
  for (int i = 0; i < kHeadPanels; ++i) total += panel_sum(g, i * h, (i + 1) * h, nodes, false);

  const double s0 = std::log(spec.split_point);
  double last_panel = 0.0;
  double scale = std::abs(total);
  int quiet = 0;
  for (int k = 0; k < spec.max_panels; ++k) {
    last_panel = panel_sum(g, s0 + k, s0 + k + 1, nodes, true);
    total += last_panel;
    if (!std::isfinite(total))
      throw QuadratureError("weighted_integral: accumulation overflowed", total, last_panel);
    // the stop scale never shrinks, so a sign-crossing total cannot fake
    // convergence while large panels are still arriving
    scale = std::max({scale, std::abs(total), std::abs(last_panel)});
    if (std::abs(last_panel) < spec.rel_tol * scale) {
      if (++quiet >= 2) return total;
    } else {
      quiet = 0;
    }
  }
  throw QuadratureError("weighted_integral: max_panels reached before the tail converged", total,
                        last_panel);
}

double integrate_gated(const WeightedIntegrand& g, const QuadratureSpec& spec) {
  spec.validate();
  const double coarse = integrate_once(g, spec, spec.nodes_per_panel);
  const double fine = integrate_once(g, spec, 2 * spec.nodes_per_panel);
  const double scale = std::max(std::abs(fine), std::numeric_limits<double>::min());
  if (std::abs(fine - coarse) > spec.rel_tol * scale)
    throw QuadratureError("weighted_integral: node doubling changed the result beyond rel_tol",
                          coarse, fine - coarse);
  return fine;
}

}  // namespace

double weighted_integral(const std::function<double(double)>& f, double hbar,
                         const QuadratureSpec& spec) {
  if (!(hbar > 0.0)) throw std::invalid_argument("weighted_integral: hbar must be > 0");
  WeightedIntegrand g;
  g.plain = &f;
  g.hbar = hbar;
  return integrate_gated(g, spec);
}

double weighted_integral_log(const std::function<double(double)>& log_f, double hbar,
                             const QuadratureSpec& spec) {
  if (!(hbar > 0.0)) throw std::invalid_argument("weighted_integral_log: hbar must be > 0");
  WeightedIntegrand g;
  g.log_form = &log_f;
  g.hbar = hbar;
  return integrate_gated(g, spec);
}

double asymptotic_ratio(int n, double hbar, double lambda_inf, double rho_inf) {
  if (n < 1) throw std::invalid_argument("asymptotic_ratio: n must be >= 1");
  if (!(hbar > 0.0) || !(lambda_inf > 0.0) || !(rho_inf > 0.0))
    throw std::invalid_argument("asymptotic_ratio: hbar and the density limits must be > 0");
  return std::exp(-hbar * (n + 0.5)) * std::sqrt(rho_inf / lambda_inf);
}

}  // namespace podles
