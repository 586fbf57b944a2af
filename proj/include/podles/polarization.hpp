#ifndef PODLES_POLARIZATION_HPP
#define PODLES_POLARIZATION_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "podles/groupoid_algebra.hpp"
#include "podles/special_functions.hpp"

namespace podles {

using Cplx = std::complex<double>;

// A Bohr-Sommerfeld leaf of the base: level F = e^{hbar n} - 1 on the
// sphere coordinate |x|^2, i.e. tau = e^{-hbar n}; the INF leaf is the
// fiber over the north pole with tau = 0.
struct BSLeaf {
  bool at_infinity = false;
  std::int64_t level = 0;

  double f_value(double hbar) const;    // e^{hbar n} - 1
  double tau_value(double hbar) const;  // e^{-hbar n}, 0 on the INF leaf
};

// Base leaves with level 0..n_max followed by the INF leaf.
std::vector<BSLeaf> bs_leaves(double hbar, std::int64_t n_max);

// Arrow of the leaf groupoid: the pair of levels (hbar m, hbar n) with
// m >= 0, m + n >= 0, plus the lone unit over the INF leaf.
struct LeafArrow {
  bool at_infinity = false;
  double a = 0.0;  // hbar m
  double b = 0.0;  // hbar n
};

// The groupoid of Bohr-Sommerfeld leaves on the window m, m+n <= n_max,
// with its arrow map onto the discrete groupoid window.
class LeafGroupoid {
 public:
  LeafGroupoid(double hbar, std::int64_t n_max);

  double hbar() const { return hbar_; }
  std::int64_t window() const { return n_max_; }
  const std::vector<LeafArrow>& arrows() const { return arrows_; }

  static std::optional<LeafArrow> compose(const LeafArrow& g1, const LeafArrow& g2,
                                          double hbar);
  // (hbar m, hbar n) -> (m, n); exact up to 1e-9 rounding of the levels
  Arrow to_discrete(const LeafArrow& g) const;

 private:
  double hbar_;
  std::int64_t n_max_;
  std::vector<LeafArrow> arrows_;
};

LeafGroupoid leaf_groupoid(double hbar, std::int64_t n_max);

// Radial weights of the scalar product: Lambda from the Haar system and
// rho from the base volume form, both functions of t = |.|^2 with declared
// limits at infinity.
struct WeightPair {
  std::function<double(double)> lambda = [](double) { return 1.0; };
  std::function<double(double)> rho = [](double) { return 1.0; };
  double lambda_inf = 1.0;
  double rho_inf = 1.0;
};

// Radial norm integrals of the monomial sections:
//   A_m = 2 pi I[ t^m (1+t)^{-1/2} ]
//   l_m = 2 pi I[ t^m sqrt(Lambda) ]
//   r_m = 2 pi I[ t^m (1+t)^{-1} sqrt(rho) ]
// with I[f] = integral_0^inf f(t) exp(Li2(-t)/hbar) dt.
struct NormValues {
  double a = 0.0;
  double l = 0.0;
  double r = 0.0;
};

// Write-once cache of the norm integrals per (hbar, weights, quadrature).
// Indices may be computed from any number of threads; values are immutable
// once stored.
class NormTable {
 public:
  NormTable(double hbar, WeightPair weights, QuadratureSpec spec);

  double hbar() const { return hbar_; }
  const WeightPair& weights() const { return weights_; }
  const QuadratureSpec& spec() const { return spec_; }

  NormValues at(std::int64_t m) const;

 private:
  double hbar_;
  WeightPair weights_;
  QuadratureSpec spec_;
  mutable std::map<std::int64_t, NormValues> cache_;
  mutable std::mutex mutex_;
};

// The monomial section label sigma_{m,n}.
struct SectionIndex {
  std::int64_t m = 0;
  std::int64_t n = 0;
};

NormValues section_norms(const SectionIndex& idx, const NormTable& table);

// Largest power m whose norm integrals stay inside the double range:
// l_m grows like exp(hbar (m+1)^2 / 2), so m+1 < sqrt(1360 / hbar).
std::int64_t norm_power_limit(double hbar);

// Eigenvalues of the quantized observables on sigma_{m,n}:
//   f-hat: hbar (m + 1/2),  tau-hat: e^{-hbar(m+1/2)},  D-hat: e^{-hbar(m-n)}.
double quantized_f(const SectionIndex& idx, double hbar);
double quantized_tau(const SectionIndex& idx, double hbar);
double quantized_D(const SectionIndex& idx, double hbar);

// Residual of the differential rule hbar xbar d_xbar psi + (hbar/2) psi
// against the closed-form eigenvalue, applied to the monomial at a sample
// point (central differences in the holomorphic variable).
double quantization_rule_residual(const SectionIndex& idx, double hbar, Cplx sample_xbar,
                                  Cplx sample_y);

// Scalar products of monomial sections; angular orthogonality gives zero
// off the diagonal and the radial factorizations A_m A_n and l_m r_n on it.
std::complex<double> scalar_product_symplectic(const SectionIndex& i1, const SectionIndex& i2,
                                               const NormTable& table);
std::complex<double> scalar_product_groupoid(const SectionIndex& i1, const SectionIndex& i2,
                                             const NormTable& table);

// sigma_{m,k} *_Lambda sigma_{k',n}: zero unless k = k', else the scalar
// l_k on the index (m, n).
struct SectionProduct {
  bool vanishes = true;
  double scalar = 0.0;
  SectionIndex index;
};

SectionProduct convolve_sections(const SectionIndex& i1, const SectionIndex& i2,
                                 const NormTable& table);

// The Hilbert-algebra bridge  sigma_{m,n} -> sqrt(l_m l_n) e_{m,n-m}.
AlgebraElement hilbert_bridge(const SectionIndex& idx, const NormTable& table);

// The quasi-invariant measure mu(m) = r_m / l_m carried over the bridge.
UnitMeasure bridge_measure(const NormTable& table);

// The coboundary potential phi(m) = log(r_m/l_m)/hbar + m with limit
// phi(inf) = -1/2 + log(rho_inf/lambda_inf)/(2 hbar), and the exactness of
// c_{(rho,Lambda)} = c_1 + phi o l - phi o r on the window.
struct PhiReport {
  std::vector<double> phi;       // phi(0) .. phi(m_max)
  double phi_inf = 0.0;
  double deviation_at_max = 0.0; // |phi(m_max) - phi(inf)|
  bool tail_monotone = false;    // |phi(m) - phi(inf)| decreasing on the tail
  double exactness_residual = 0.0;
};

PhiReport modular_cocycle_phi(std::int64_t m_max, const NormTable& table,
                              std::int64_t window);

}  // namespace podles

#endif  // PODLES_POLARIZATION_HPP
