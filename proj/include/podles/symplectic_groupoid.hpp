#ifndef PODLES_SYMPLECTIC_GROUPOID_HPP
#define PODLES_SYMPLECTIC_GROUPOID_HPP

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace podles {

using Cplx = std::complex<double>;

// The groupoid carried by T*S^2 over the sphere, in two trivializations:
//   symplectic chart  (z, p_N)  over S^2 minus the north pole
//   singular chart    (w, p_S)  over S^2 minus the south pole
// On the overlap (base != 0 in both) w = 1/z and p_N = -w^2 p_S.
enum class Chart { Symplectic, Singular };

struct ChartPoint {
  Chart chart = Chart::Symplectic;
  Cplx base;   // z or w
  Cplx fiber;  // p_N or p_S
};

ChartPoint symplectic_point(Cplx z, Cplx p_n);
ChartPoint singular_point(Cplx w, Cplx p_s);
ChartPoint unit_at(Cplx base, Chart chart = Chart::Symplectic);

// Chart transition; the target chart needs base != 0 in the source chart.
ChartPoint to_chart(const ChartPoint& p, Chart chart);

// Endpoint coordinates (x, y) of the pair-groupoid image
//   phi(z, p_N) = (z, z + (1+|z|^2) conj(p_N)).
struct PairCoords {
  Cplx x;
  Cplx y;
};

PairCoords to_pair(const ChartPoint& p);          // needs the symplectic chart domain
ChartPoint from_pair(const PairCoords& c);        // inverse, lands in the symplectic chart

class PoleError : public std::runtime_error {
 public:
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

class CompositionError : public std::runtime_error {
 public:
  CompositionError(const std::string& what, double mismatch)
      : std::runtime_error(what), mismatch_(mismatch) {}
  double mismatch() const { return mismatch_; }

 private:
  double mismatch_;
};

// Source and target base coordinates, expressed in the chart of the input:
//   symplectic: l = z,  r = z + (1+|z|^2) conj(p_N)
//   singular:   l = w,  r = w / (1 + sigma_S conj(w)),  sigma_S = -(1+|w|^2) conj(p_S)
// The singular-chart target has a pole where 1 + sigma_S conj(w) = 0.
Cplx source(const ChartPoint& p);
Cplx target(const ChartPoint& p);

// Groupoid composition. Sources/targets must match within tol; the second
// factor is renormalized onto the exact target of the first before the
// fiber addition (z, p)(z', p') = (z, p + ((1+|z'|^2)/(1+|z|^2)) p').
// Elements over the north pole (singular chart, w = 0) compose by fiber
// addition on T*_N S^2.
ChartPoint multiply(const ChartPoint& g1, const ChartPoint& g2, double tol = 1e-9);

// Inversion through the pair-coordinate flip (x, y) -> (y, x).
ChartPoint inverse(const ChartPoint& g);

// Tangent vector in chart coordinates.
struct Tangent {
  Cplx d_base;
  Cplx d_fiber;
};

// Symplectic form  Omega = omega(x) - omega(y)  with
// omega_c(a, b) = 2 Im(a conj(b)) / (1 + |c|^2), evaluated by pushing the
// chart tangents through phi. Accepts either chart.
double symplectic_form(const ChartPoint& p, const Tangent& u, const Tangent& v);

// Finite-difference exterior derivative of Omega on constant frames,
// step 1e-4; vanishes for the closed form.
double closedness_residual(const ChartPoint& p, const Tangent& u, const Tangent& v,
                           const Tangent& t3);

// A composable pair in coordinates (z, p, p'): the second source is glued
// to the first target. Tangents of the pair manifold are free (dz, dp, dp').
struct ComposablePair {
  Cplx z;
  Cplx p;
  Cplx p2;
};

struct PairTangent {
  Cplx dz;
  Cplx dp;
  Cplx dp2;
};

// Simplicial coboundary of Omega on a composable pair:
//   (d0* - d1* + d2*) Omega = Omega(pr2) - Omega(m) + Omega(pr1)
// with exact pushforwards; zero for a multiplicative form.
double multiplicativity_residual(const ComposablePair& pair, const PairTangent& u,
                                 const PairTangent& v);

// Modular vector field  i (z d_z - conj(z) d_zbar): base velocity i z, the
// rotation field of the leaf.
Cplx modular_vector_field(Cplx z);

// Modular function  log((1+|y|^2)/(1+|x|^2)), closed form in both charts;
// an exact groupoid cocycle.
double modular_function(const ChartPoint& g);

// Base path on the symplectic leaf; velocity optional (central differences
// otherwise).
struct BasePath {
  std::function<Cplx(double)> position;
  std::function<Cplx(double)> velocity;  // may be empty
};

// Integral of the modular vector field along the cotangent lift of the
// path, trapezoid rule with the given number of steps. The lift solves
// pi#(eta) = gamma' on the leaf where pi is invertible; the sharp-map sign
// is fixed so a radial outward path integrates to a positive value,
// matching modular_function of the element with x = gamma(0), y = gamma(1).
double integrate_cocycle(const BasePath& path, int steps);

// Radial density on the base: value(t) with t = |.|^2 and a declared limit
// at infinity (the Haar normalization requires limit 1).
struct HaarDensity {
  std::function<double(double)> radial;
  double limit_at_infinity = 1.0;
};

HaarDensity unit_density();

// The measure-ratio cocycle  2 c(g) - (log L(target) - log L(source)).
double haar_volume_ratio(const ChartPoint& g, const HaarDensity& density);

}  // namespace podles

#endif  // PODLES_SYMPLECTIC_GROUPOID_HPP
