#include "podles/symplectic_groupoid.hpp"

#include <cmath>

namespace podles {

namespace {

double sq_abs(Cplx v) { return std::norm(v); }

bool over_north_pole(const ChartPoint& p) {
  return p.chart == Chart::Singular && p.base == Cplx(0.0);
}

}  // namespace

ChartPoint symplectic_point(Cplx z, Cplx p_n) { return ChartPoint{Chart::Symplectic, z, p_n}; }
ChartPoint singular_point(Cplx w, Cplx p_s) { return ChartPoint{Chart::Singular, w, p_s}; }
ChartPoint unit_at(Cplx base, Chart chart) { return ChartPoint{chart, base, Cplx(0.0)}; }

ChartPoint to_chart(const ChartPoint& p, Chart chart) {
  if (p.chart == chart) return p;
  if (p.base == Cplx(0.0))
    throw PoleError("to_chart: the pole of the source chart is not covered by the other chart");
  // w = 1/z with p_S = -z^2 p_N, symmetric in both directions
  return ChartPoint{chart, 1.0 / p.base, -p.base * p.base * p.fiber};
}

PairCoords to_pair(const ChartPoint& p) {
  if (over_north_pole(p))
    throw PoleError("to_pair: pair coordinates are undefined over the north pole");
  const ChartPoint s = to_chart(p, Chart::Symplectic);
  const Cplx sigma_n = (1.0 + sq_abs(s.base)) * std::conj(s.fiber);
  return PairCoords{s.base, s.base + sigma_n};
}

ChartPoint from_pair(const PairCoords& c) {
  return symplectic_point(c.x, std::conj(c.y - c.x) / (1.0 + sq_abs(c.x)));
}

Cplx source(const ChartPoint& p) { return p.base; }

Cplx target(const ChartPoint& p) {
  if (p.chart == Chart::Symplectic) {
    return p.base + (1.0 + sq_abs(p.base)) * std::conj(p.fiber);
  }
  const Cplx sigma_s = -(1.0 + sq_abs(p.base)) * std::conj(p.fiber);
  const Cplx denom = 1.0 + sigma_s * std::conj(p.base);
  if (std::abs(denom) < 1e-13)
    throw PoleError("target: the singular-chart target leaves the chart (pole)");
  return p.base / denom;
}

ChartPoint multiply(const ChartPoint& g1, const ChartPoint& g2, double tol) {
  const bool n1 = over_north_pole(g1), n2 = over_north_pole(g2);
  if (n1 || n2) {
    if (n1 && n2) return singular_point(Cplx(0.0), g1.fiber + g2.fiber);
    // distance measured in the singular chart, where the north pole is w = 0
    const ChartPoint other = to_chart(n1 ? g2 : g1, Chart::Singular);
    const double mismatch = std::abs(n1 ? source(other) : target(other));
    throw CompositionError("multiply: one factor lives over the north pole, the other does not",
                           mismatch);
  }
  const ChartPoint a = to_chart(g1, Chart::Symplectic);
  const ChartPoint b = to_chart(g2, Chart::Symplectic);
  const Cplx t1 = target(a);
  const double mismatch = std::abs(t1 - source(b));
  if (mismatch > tol)
    throw CompositionError("multiply: target(g1) != source(g2)", mismatch);
  // renormalize the second source onto the exact target of the first
  const double ratio = (1.0 + sq_abs(t1)) / (1.0 + sq_abs(a.base));
  return symplectic_point(a.base, a.fiber + ratio * b.fiber);
}

ChartPoint inverse(const ChartPoint& g) {
  if (over_north_pole(g)) return singular_point(Cplx(0.0), -g.fiber);
  const PairCoords c = to_pair(g);
  return from_pair(PairCoords{c.y, c.x});
}

namespace {

// omega_c(a, b) = 2 Im(a conj(b)) / (1 + |c|^2)
double fubini_form(Cplx c, Cplx a, Cplx b) {
  return 2.0 * std::imag(a * std::conj(b)) / (1.0 + sq_abs(c));
}

struct PairPush {
  Cplx dx;
  Cplx dy;
};

// differential of phi(z, p) = (z, z + (1+|z|^2) conj(p))
PairPush push_pair(const ChartPoint& s, const Tangent& t) {
  const Cplx dy = t.d_base + 2.0 * std::real(std::conj(s.base) * t.d_base) * std::conj(s.fiber) +
                  (1.0 + sq_abs(s.base)) * std::conj(t.d_fiber);
  return PairPush{t.d_base, dy};
}

Tangent push_to_symplectic(const ChartPoint& p, const Tangent& t) {
  if (p.chart == Chart::Symplectic) return t;
  if (p.base == Cplx(0.0))
    throw PoleError("tangent transition undefined at the chart pole");
  const Cplx w = p.base;
  const Cplx dz = -t.d_base / (w * w);
  const Cplx dp = -2.0 * w * p.fiber * t.d_base - w * w * t.d_fiber;
  return Tangent{dz, dp};
}

double form_in_symplectic_chart(const ChartPoint& s, const Tangent& u, const Tangent& v) {
  const PairCoords c = to_pair(s);
  const PairPush pu = push_pair(s, u), pv = push_pair(s, v);
  return fubini_form(c.x, pu.dx, pv.dx) - fubini_form(c.y, pu.dy, pv.dy);
}

}  // namespace

double symplectic_form(const ChartPoint& p, const Tangent& u, const Tangent& v) {
  const ChartPoint s = to_chart(p, Chart::Symplectic);
  return form_in_symplectic_chart(s, push_to_symplectic(p, u), push_to_symplectic(p, v));
}

double closedness_residual(const ChartPoint& p, const Tangent& u, const Tangent& v,
                           const Tangent& t3) {
  constexpr double h = 1e-4;
  const auto shift = [&](const Tangent& dir, double eps) {
    return ChartPoint{p.chart, p.base + eps * dir.d_base, p.fiber + eps * dir.d_fiber};
  };
  const auto deriv = [&](const Tangent& dir, const Tangent& a, const Tangent& b) {
    return (symplectic_form(shift(dir, h), a, b) - symplectic_form(shift(dir, -h), a, b)) /
           (2.0 * h);
  };
  // d omega(X,Y,Z) for constant frames: X w(Y,Z) - Y w(X,Z) + Z w(X,Y)
  return deriv(u, v, t3) - deriv(v, u, t3) + deriv(t3, u, v);
}

double multiplicativity_residual(const ComposablePair& pair, const PairTangent& u,
                                 const PairTangent& v) {
  const Cplx z = pair.z, p = pair.p, p2 = pair.p2;
  const double nz = 1.0 + sq_abs(z);
  const Cplx y1 = z + nz * std::conj(p);
  const double ny1 = 1.0 + sq_abs(y1);
  const double kappa = ny1 / nz;

  const ChartPoint g1 = symplectic_point(z, p);
  const ChartPoint g2 = symplectic_point(y1, p2);
  const ChartPoint gm = symplectic_point(z, p + kappa * p2);

  const auto push = [&](const PairTangent& t) {
    const Cplx dy1 = t.dz + 2.0 * std::real(std::conj(z) * t.dz) * std::conj(p) +
                     nz * std::conj(t.dp);
    const double dnz = 2.0 * std::real(std::conj(z) * t.dz);
    const double dny1 = 2.0 * std::real(std::conj(y1) * dy1);
    const double dkappa = (dny1 * nz - ny1 * dnz) / (nz * nz);
    struct Faces {
      Tangent t1, t2, tm;
    };
    return Faces{Tangent{t.dz, t.dp}, Tangent{dy1, t.dp2},
                 Tangent{t.dz, t.dp + kappa * t.dp2 + dkappa * p2}};
  };

  const auto fu = push(u), fv = push(v);
  return form_in_symplectic_chart(g2, fu.t2, fv.t2) - form_in_symplectic_chart(gm, fu.tm, fv.tm) +
         form_in_symplectic_chart(g1, fu.t1, fv.t1);
}

Cplx modular_vector_field(Cplx z) { return Cplx(0.0, 1.0) * z; }

double modular_function(const ChartPoint& g) {
  if (g.chart == Chart::Symplectic) {
    const Cplx y = target(g);
    return std::log1p(sq_abs(y)) - std::log1p(sq_abs(g.base));
  }
  const Cplx w = g.base;
  const double nw = sq_abs(w);
  const Cplx inner = 1.0 - (1.0 + nw) * std::conj(w) * std::conj(g.fiber);
  return std::log((nw + sq_abs(inner)) / (1.0 + nw));
}

double integrate_cocycle(const BasePath& path, int steps) {
  if (steps < 1) throw std::invalid_argument("integrate_cocycle: steps must be >= 1");
  const auto velocity = [&](double t) -> Cplx {
    if (path.velocity) return path.velocity(t);
    const double h = 1e-6;
    if (t < h)
      return (-3.0 * path.position(t) + 4.0 * path.position(t + h) - path.position(t + 2 * h)) /
             (2.0 * h);
    if (t > 1.0 - h)
      return (3.0 * path.position(t) - 4.0 * path.position(t - h) + path.position(t - 2 * h)) /
             (2.0 * h);
    return (path.position(t + h) - path.position(t - h)) / (2.0 * h);
  };
  // <chi, eta> with pi#(eta) = gamma': 2 Re(gamma conj(gamma')) / (1 + |gamma|^2)
  const auto integrand = [&](double t) {
    const Cplx zt = path.position(t);
    if (!std::isfinite(zt.real()) || !std::isfinite(zt.imag()))
      throw std::domain_error("integrate_cocycle: path leaves the leaf chart");
    return 2.0 * std::real(zt * std::conj(velocity(t))) / (1.0 + sq_abs(zt));
  };
  const double h = 1.0 / steps;
  double sum = 0.5 * (integrand(0.0) + integrand(1.0));
  for (int i = 1; i < steps; ++i) sum += integrand(i * h);
  return h * sum;
}

HaarDensity unit_density() {
  return HaarDensity{[](double) { return 1.0; }, 1.0};
}

double haar_volume_ratio(const ChartPoint& g, const HaarDensity& density) {
  const double twice_modular = 2.0 * modular_function(g);
  if (over_north_pole(g)) return twice_modular;  // both endpoints sit at the declared limit
  const PairCoords c = to_pair(g);
  const double lx = density.radial(sq_abs(c.x));
  const double ly = density.radial(sq_abs(c.y));
  if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("haar_volume_ratio: density must be positive");
  return twice_modular - (std::log(ly) - std::log(lx));
}

}  // namespace podles
