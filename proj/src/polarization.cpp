#include "podles/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace podles {

double BSLeaf::f_value(double hbar) const {
  if (at_infinity) return std::numeric_limits<double>::infinity();
  return std::expm1(hbar * level);
}

double BSLeaf::tau_value(double hbar) const {
  return at_infinity ? 0.0 : std::exp(-hbar * level);
}

std::vector<BSLeaf> bs_leaves(double hbar, std::int64_t n_max) {
  if (!(hbar > 0.0)) throw std::invalid_argument("bs_leaves: hbar must be > 0");
  if (n_max < 0) throw std::invalid_argument("bs_leaves: n_max must be >= 0");
  std::vector<BSLeaf> leaves;
  for (std::int64_t n = 0; n <= n_max; ++n) leaves.push_back(BSLeaf{false, n});
  leaves.push_back(BSLeaf{true, 0});
  return leaves;
}

LeafGroupoid::LeafGroupoid(double hbar, std::int64_t n_max) : hbar_(hbar), n_max_(n_max) {
  if (!(hbar > 0.0)) throw std::invalid_argument("LeafGroupoid: hbar must be > 0");
  if (n_max < 0) throw std::invalid_argument("LeafGroupoid: n_max must be >= 0");
  for (std::int64_t m = 0; m <= n_max; ++m)
    for (std::int64_t n = -m; m + n <= n_max; ++n)
      arrows_.push_back(LeafArrow{false, hbar * m, hbar * n});
  arrows_.push_back(LeafArrow{true, 0.0, 0.0});
}

std::optional<LeafArrow> LeafGroupoid::compose(const LeafArrow& g1, const LeafArrow& g2,
                                               double hbar) {
  if (g1.at_infinity || g2.at_infinity) {
    if (g1.at_infinity && g2.at_infinity) return LeafArrow{true, 0.0, 0.0};
    return std::nullopt;
  }
  // levels compose when the target level a + b meets the source level of g2
  if (std::abs((g1.a + g1.b) - g2.a) > 1e-9 * hbar) return std::nullopt;
  return LeafArrow{false, g1.a, g1.b + g2.b};
}

Arrow LeafGroupoid::to_discrete(const LeafArrow& g) const {
  if (g.at_infinity) return arrow_inf(0);
  const double m_real = g.a / hbar_;
  const double n_real = g.b / hbar_;
  const std::int64_t m = std::llround(m_real);
  const std::int64_t n = std::llround(n_real);
  if (std::abs(m_real - m) > 1e-9 || std::abs(n_real - n) > 1e-9)
    throw std::invalid_argument("LeafGroupoid::to_discrete: levels are not integer multiples");
  return arrow(m, n);
}

LeafGroupoid leaf_groupoid(double hbar, std::int64_t n_max) { return LeafGroupoid(hbar, n_max); }

NormTable::NormTable(double hbar, WeightPair weights, QuadratureSpec spec)
    : hbar_(hbar), weights_(std::move(weights)), spec_(spec) {
  if (!(hbar > 0.0)) throw std::invalid_argument("NormTable: hbar must be > 0");
  spec_.validate();
}

NormValues NormTable::at(std::int64_t m) const {
  if (m < 0) throw std::invalid_argument("NormTable::at: index must be >= 0");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(m);
    if (it != cache_.end()) return it->second;
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const auto& wp = weights_;
  const double md = static_cast<double>(m);
  NormValues v;
  v.a = two_pi * weighted_integral_log(
                     [md](double t) { return md * std::log(t) - 0.5 * std::log1p(t); },
                     hbar_, spec_);
  v.l = two_pi * weighted_integral_log(
                     [md, &wp](double t) { return md * std::log(t) + 0.5 * std::log(wp.lambda(t)); },
                     hbar_, spec_);
  v.r = two_pi * weighted_integral_log(
                     [md, &wp](double t) {
                       return md * std::log(t) - std::log1p(t) + 0.5 * std::log(wp.rho(t));
                     },
                     hbar_, spec_);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(m, v).first->second;
}

NormValues section_norms(const SectionIndex& idx, const NormTable& table) {
  if (idx.m < 0 || idx.n < 0)
    throw std::invalid_argument("section_norms: indices must be >= 0");
  return table.at(idx.m);
}

std::int64_t norm_power_limit(double hbar) {
  return static_cast<std::int64_t>(std::floor(std::sqrt(1360.0 / hbar))) - 1;
}

double quantized_f(const SectionIndex& idx, double hbar) { return hbar * (idx.m + 0.5); }

double quantized_tau(const SectionIndex& idx, double hbar) {
  return std::exp(-hbar * (idx.m + 0.5));
}

double quantized_D(const SectionIndex& idx, double hbar) {
  return std::exp(-hbar * static_cast<double>(idx.m - idx.n));
}

double quantization_rule_residual(const SectionIndex& idx, double hbar, Cplx sample_xbar,
                                  Cplx sample_y) {
  // psi(xbar, y) = xbar^m y^n as a holomorphic function of xbar
  const auto psi = [&](Cplx xb) {
    return std::pow(xb, static_cast<double>(idx.m)) * std::pow(sample_y, static_cast<double>(idx.n));
  };
  const double h = 1e-6 * std::max(1.0, std::abs(sample_xbar));
  const Cplx dpsi = (psi(sample_xbar + h) - psi(sample_xbar - h)) / (2.0 * h);
  const Cplx applied = hbar * sample_xbar * dpsi + 0.5 * hbar * psi(sample_xbar);
  const Cplx expected = quantized_f(idx, hbar) * psi(sample_xbar);
  const double scale = std::max(1.0, std::abs(expected));
  return std::abs(applied - expected) / scale;
}

std::complex<double> scalar_product_symplectic(const SectionIndex& i1, const SectionIndex& i2,
                                               const NormTable& table) {
  if (i1.m != i2.m || i1.n != i2.n) return 0.0;  // angular orthogonality
  return table.at(i1.m).a * table.at(i1.n).a;
}

std::complex<double> scalar_product_groupoid(const SectionIndex& i1, const SectionIndex& i2,
                                             const NormTable& table) {
  if (i1.m != i2.m || i1.n != i2.n) return 0.0;
  return table.at(i1.m).l * table.at(i1.n).r;
}

SectionProduct convolve_sections(const SectionIndex& i1, const SectionIndex& i2,
                                 const NormTable& table) {
  if (i1.n != i2.m) return SectionProduct{};  // angular selection in the middle variable
  return SectionProduct{false, table.at(i1.n).l, SectionIndex{i1.m, i2.n}};
}

AlgebraElement hilbert_bridge(const SectionIndex& idx, const NormTable& table) {
  const double lm = table.at(idx.m).l;
  const double ln = table.at(idx.n).l;
  return AlgebraElement::basis(GroupoidTag::O1, arrow(idx.m, idx.n - idx.m),
                               Coeff(std::sqrt(lm * ln)));
}

UnitMeasure bridge_measure(const NormTable& table) {
  // copy of the cache handle; the table must outlive the measure
  const NormTable* t = &table;
  return UnitMeasure::custom(
      [t](const Unit& u) {
        if (u.is_inf()) return 0.0;
        const NormValues v = t->at(u.value());
        return v.r / v.l;
      },
      "bridge(rho,Lambda)");
}

PhiReport modular_cocycle_phi(std::int64_t m_max, const NormTable& table, std::int64_t window) {
  if (m_max < 5) throw std::invalid_argument("modular_cocycle_phi: m_max must be >= 5");
  const double hbar = table.hbar();
  PhiReport report;
  report.phi.reserve(m_max + 1);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const NormValues v = table.at(m);
    report.phi.push_back(std::log(v.r / v.l) / hbar + static_cast<double>(m));
  }
  report.phi_inf =
      -0.5 + std::log(table.weights().rho_inf / table.weights().lambda_inf) / (2.0 * hbar);
  report.deviation_at_max = std::abs(report.phi.back() - report.phi_inf);

  // tail monotonicity of |phi(m) - phi(inf)| from the midpoint on, within
  // quadrature error: phi carries quadrature noise of order rel_tol / hbar
  report.tail_monotone = true;
  const double noise_floor = 100.0 * table.spec().rel_tol / hbar;
  for (std::int64_t m = m_max / 2; m < m_max; ++m) {
    const double d0 = std::abs(report.phi[m] - report.phi_inf);
    const double d1 = std::abs(report.phi[m + 1] - report.phi_inf);
    if (d1 > d0 && std::max(d0, d1) > noise_floor) report.tail_monotone = false;
  }

  // c_{(rho,Lambda)} = c_1 + (phi o l - phi o r) on the window arrows
  double residual = 0.0;
  const std::int64_t bound = std::min(window, m_max);
  for (std::int64_t m = 0; m <= bound; ++m) {
    for (std::int64_t n = -m; m + n <= bound; ++n) {
      const NormValues vm = table.at(m);
      const NormValues vt = table.at(m + n);
      const double c_weighted = (std::log(vm.r / vm.l) - std::log(vt.r / vt.l)) / hbar;
      const double reconstructed =
          static_cast<double>(n) + (report.phi[m] - report.phi[m + n]);
      residual = std::max(residual, std::abs(c_weighted - reconstructed));
    }
  }
  report.exactness_residual = residual;
  return report;
}

}  // namespace podles
