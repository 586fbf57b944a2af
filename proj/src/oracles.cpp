#include "podles/oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "podles/special_functions.hpp"

namespace podles::oracle {

namespace {

struct LogGrid {
  std::vector<double> u;       // nodes
  std::vector<double> weight;  // trapezoid weights including the e^u Jacobian
  std::vector<double> t;       // e^u
  std::vector<double> dilog_w; // Li2(-t)/hbar
};

LogGrid make_log_grid(double u_lo, double u_hi, double step, double hbar) {
  const int n = std::max(2, static_cast<int>(std::ceil((u_hi - u_lo) / step)) + 1);
  const double h = (u_hi - u_lo) / (n - 1);
  LogGrid g;
  g.u.resize(n);
  g.weight.resize(n);
  g.t.resize(n);
  g.dilog_w.resize(n);
  for (int i = 0; i < n; ++i) {
    g.u[i] = u_lo + i * h;
    g.t[i] = std::exp(g.u[i]);
    g.weight[i] = ((i == 0 || i == n - 1) ? 0.5 : 1.0) * h * g.t[i];
    g.dilog_w[i] = dilog(-g.t[i]) / hbar;
  }
  return g;
}

}  // namespace

std::pair<double, double> trapezoid_window(int max_power, double hbar) {
  // t^m exp(Li2(-t)/hbar) peaks near u = m hbar with Gaussian width sqrt(hbar)
  const double peak = hbar * (max_power + 1);
  return {-46.0, peak + 10.0 + 30.0 * std::sqrt(hbar)};
}

double weighted_integral_trapezoid(const std::function<double(double)>& log_f, double hbar,
                                   double u_lo, double u_hi, int points) {
  const double h = (u_hi - u_lo) / (points - 1);
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double u = u_lo + i * h;
    const double t = std::exp(u);
    const double lf = log_f(t);
    if (!std::isfinite(lf)) continue;
    const double v = std::exp(lf + dilog(-t) / hbar + u);
    sum += ((i == 0 || i == points - 1) ? 0.5 : 1.0) * v;
  }
  return h * sum;
}

std::complex<double> section_value(const SectionIndex& idx, double hbar, Cplx x, Cplx y) {
  const double weight =
      std::exp((dilog(-std::norm(x)) + dilog(-std::norm(y))) / (2.0 * hbar));
  return std::pow(std::conj(x), static_cast<double>(idx.m)) *
         std::pow(y, static_cast<double>(idx.n)) * weight;
}

double groupoid_norm_2d(const SectionIndex& idx, double hbar, const WeightPair& weights,
                        double step) {
  const auto [lo, hi] = trapezoid_window(static_cast<int>(std::max(idx.m, idx.n)), hbar);
  const LogGrid g = make_log_grid(lo, hi, step, hbar);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < g.u.size(); ++i) {
    for (std::size_t j = 0; j < g.u.size(); ++j) {
      const double s = g.t[i], t = g.t[j];
      const double kernel = std::exp(idx.m * g.u[i] + idx.n * g.u[j] + g.dilog_w[i] +
                                     g.dilog_w[j]) *
                            std::sqrt(weights.lambda(s) * weights.rho(t)) / (1.0 + t);
      sum += g.weight[i] * g.weight[j] * kernel * two_pi * two_pi;
    }
  }
  return sum;
}

double symplectic_norm_2d(const SectionIndex& idx, double hbar, double step) {
  const auto [lo, hi] = trapezoid_window(static_cast<int>(std::max(idx.m, idx.n)), hbar);
  const LogGrid g = make_log_grid(lo, hi, step, hbar);
  const double two_pi = 2.0 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < g.u.size(); ++i) {
    for (std::size_t j = 0; j < g.u.size(); ++j) {
      const double s = g.t[i], t = g.t[j];
      const double kernel = std::exp(idx.m * g.u[i] + idx.n * g.u[j] + g.dilog_w[i] +
                                     g.dilog_w[j]) /
                            std::sqrt((1.0 + s) * (1.0 + t));
      sum += g.weight[i] * g.weight[j] * kernel * two_pi * two_pi;
    }
  }
  return sum;
}

namespace {

// polar tensor sum over one complex variable of
//   r^{k1+k2} e^{i (k2-k1) theta} F(|v|^2) exp(Li2(-|v|^2)/hbar)
// with d^2 v = ds dtheta, s = r^2
std::complex<double> polar_factor(int k1, int k2, double hbar,
                                  const std::function<double(double)>& radial_extra,
                                  int angular_points, double radial_step) {
  const auto [lo, hi] = trapezoid_window(std::max(k1, k2), hbar);
  const LogGrid g = make_log_grid(lo, hi, radial_step, hbar);
  double radial = 0.0;
  for (std::size_t i = 0; i < g.u.size(); ++i) {
    const double s = g.t[i];
    radial += g.weight[i] * std::exp(0.5 * (k1 + k2) * g.u[i] + g.dilog_w[i]) * radial_extra(s);
  }
  std::complex<double> angular(0.0);
  const double h = 2.0 * std::numbers::pi / angular_points;
  for (int a = 0; a < angular_points; ++a) {
    const double theta = a * h;
    angular += std::polar(1.0, (k2 - k1) * theta);
  }
  angular *= h;
  return radial * angular;
}

}  // namespace

std::complex<double> scalar_product_polar(const SectionIndex& i1, const SectionIndex& i2,
                                          double hbar, const WeightPair* weights,
                                          int angular_points, double radial_step) {
  // conj(sigma_1) sigma_2 = x^{m1} xbar^{m2} ybar^{n1} y^{n2} exp(...)
  std::function<double(double)> x_extra, y_extra;
  if (weights == nullptr) {
    x_extra = [](double s) { return 1.0 / std::sqrt(1.0 + s); };
    y_extra = [](double t) { return 1.0 / std::sqrt(1.0 + t); };
  } else {
    x_extra = [weights](double s) { return std::sqrt(weights->lambda(s)); };
    y_extra = [weights](double t) { return std::sqrt(weights->rho(t)) / (1.0 + t); };
  }
  // x-part carries conj(xbar^{m1}) xbar^{m2} = x^{m1} xbar^{m2}
  const auto fx = polar_factor(static_cast<int>(i2.m), static_cast<int>(i1.m), hbar, x_extra,
                               angular_points, radial_step);
  const auto fy = polar_factor(static_cast<int>(i1.n), static_cast<int>(i2.n), hbar, y_extra,
                               angular_points, radial_step);
  return fx * fy;
}

std::complex<double> convolve_sections_2d(const SectionIndex& i1, const SectionIndex& i2,
                                          double hbar, const WeightPair& weights, Cplx x, Cplx y,
                                          int angular_points, double radial_step) {
  // integrate sigma_1(x, z) sigma_2(z, y) sqrt(Lambda(|z|^2)) over the z plane
  const int k1 = static_cast<int>(i1.n), k2 = static_cast<int>(i2.m);
  const auto z_extra = [&weights](double s) { return std::sqrt(weights.lambda(s)); };
  const auto middle = polar_factor(k2, k1, hbar, z_extra, angular_points, radial_step);
  // note: z^{k1} zbar^{k2} matches polar_factor's (k2, k1) exponent layout
  const double outer_weight =
      std::exp((dilog(-std::norm(x)) + dilog(-std::norm(y))) / (2.0 * hbar));
  return middle * std::pow(std::conj(x), static_cast<double>(i1.m)) *
         std::pow(y, static_cast<double>(i2.n)) * outer_weight;
}

Cplx rotation_flow_rk4(Cplx z0, double time, int steps) {
  const Cplx i(0.0, 1.0);
  const double h = time / steps;
  Cplx z = z0;
  for (int k = 0; k < steps; ++k) {
    const Cplx k1 = i * z;
    const Cplx k2 = i * (z + 0.5 * h * k1);
    const Cplx k3 = i * (z + 0.5 * h * k2);
    const Cplx k4 = i * (z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

}  // namespace podles::oracle
