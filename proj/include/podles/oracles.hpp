#ifndef PODLES_ORACLES_HPP
#define PODLES_ORACLES_HPP

#include <complex>
#include <functional>

#include "podles/polarization.hpp"
#include "podles/symplectic_groupoid.hpp"

// Reference routes used only to cross-check the library: uniform trapezoid
// grids in log coordinates instead of Gauss panels, explicit angular sums
// instead of the analytic orthogonality reduction, and ODE stepping instead
// of closed-form flows. Linked by the verification suites and tests, never
// by the core modules.
namespace podles::oracle {

// trapezoid value of integral f(t) exp(Li2(-t)/hbar) dt over t = e^u,
// u in [u_lo, u_hi], f = exp(log_f)
double weighted_integral_trapezoid(const std::function<double(double)>& log_f, double hbar,
                                   double u_lo, double u_hi, int points);

// log-coordinate window adapted to the monomial weight t^m
std::pair<double, double> trapezoid_window(int max_power, double hbar);

// sigma_{m,n}(x, y) = xbar^m y^n exp((Li2(-|x|^2) + Li2(-|y|^2)) / (2 hbar))
std::complex<double> section_value(const SectionIndex& idx, double hbar, Cplx x, Cplx y);

// ||sigma_{m,n}||^2 under the groupoid scalar product by a 2-D radial
// tensor-grid sum of the unfactorized kernel
double groupoid_norm_2d(const SectionIndex& idx, double hbar, const WeightPair& weights,
                        double step = 0.25);

// same for the symplectic scalar product (expected A_m A_n)
double symplectic_norm_2d(const SectionIndex& idx, double hbar, double step = 0.25);

// <sigma_{i1}, sigma_{i2}> with the angular integrals done numerically
// (polar tensor grids per variable); weights == nullptr gives the
// symplectic product. Off-diagonal pairs must come out at roundoff level.
std::complex<double> scalar_product_polar(const SectionIndex& i1, const SectionIndex& i2,
                                          double hbar, const WeightPair* weights,
                                          int angular_points = 64, double radial_step = 0.25);

// (sigma_{i1} *_Lambda sigma_{i2})(x, y) by direct quadrature over the
// middle z plane
std::complex<double> convolve_sections_2d(const SectionIndex& i1, const SectionIndex& i2,
                                          double hbar, const WeightPair& weights, Cplx x, Cplx y,
                                          int angular_points = 64, double radial_step = 0.25);

// RK4 integration of zdot = i z from z0 over [0, time]
Cplx rotation_flow_rk4(Cplx z0, double time, int steps);

}  // namespace podles::oracle

#endif  // PODLES_ORACLES_HPP
