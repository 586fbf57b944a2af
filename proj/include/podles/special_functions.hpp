#ifndef PODLES_SPECIAL_FUNCTIONS_HPP
#define PODLES_SPECIAL_FUNCTIONS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace podles {

// Dilogarithm Li2(t) on the closed negative axis t <= 0.
//
// Three evaluation routes, each accurate to ~1e-15 relative:
//   |t| <= 0.6      power series  sum_k t^k / k^2
//   -1 < t < -0.6   Landen transform onto a positive argument < 1/2
//   t <= -1         inversion  Li2(t) = -Li2(1/t) - pi^2/6 - log^2(-t)/2
//
// Positive arguments are outside the supported branch and are rejected.
double dilog(double t);

namespace detail {
double dilog_series(double t);     // |t| < 1
double dilog_landen(double t);     // -1 <= t < 0
double dilog_inversion(double t);  // t <= -1
}  // namespace detail

// Residual of the inversion identity at t > 0:
//   Li2(-t) + Li2(-1/t) + pi^2/6 + log^2(t)/2
// Vanishes identically; used as a cross-check of the implementation.
double dilog_relation_residual(double t);

// Panel policy for the semi-infinite weighted integrals.
// The domain splits at t = split_point. Below the split the integrand is
// integrated on a fixed set of Gauss-Legendre panels; above it the
// substitution s = log t turns the weight exp(Li2(-t)/hbar) into a
// Gaussian-type factor exp(-(s^2/2 + pi^2/6)/hbar) and panels of unit
// s-width are accumulated until a panel contributes less than
// rel_tol * |total| twice in a row.
struct QuadratureSpec {
  double split_point = 1.0;
  int nodes_per_panel = 24;
  double rel_tol = 1e-10;
  int max_panels = 200;

  void validate() const;  // throws std::invalid_argument
};

// Failure carrying the partial sum and the last panel estimate.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double partial_sum, double last_panel)
      : std::runtime_error(what), partial_sum_(partial_sum), last_panel_(last_panel) {}

  double partial_sum() const { return partial_sum_; }
  double last_panel() const { return last_panel_; }

 private:
  double partial_sum_;
  double last_panel_;
};

// integral_0^inf f(t) exp(Li2(-t)/hbar) dt to spec.rel_tol.
//
// Every accepted value is recomputed with doubled node count; disagreement
// beyond rel_tol raises QuadratureError. The log variant takes log f and
// assembles the integrand as exp(log_f + Li2(-t)/hbar), for integrands such
// as t^m whose direct evaluation overflows at the saddle t ~ exp(m hbar).
double weighted_integral(const std::function<double(double)>& f, double hbar,
                         const QuadratureSpec& spec);
double weighted_integral_log(const std::function<double(double)>& log_f, double hbar,
                             const QuadratureSpec& spec);

// Leading saddle-point term of the norm-integral ratio r_n / l_n:
//   exp(-hbar (n + 1/2)) sqrt(rho_inf / lambda_inf),  n >= 1.
double asymptotic_ratio(int n, double hbar, double lambda_inf, double rho_inf);

// Gauss-Legendre nodes and weights on [-1, 1]; cached per node count.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre(int n);

}  // namespace podles

#endif  // PODLES_SPECIAL_FUNCTIONS_HPP
