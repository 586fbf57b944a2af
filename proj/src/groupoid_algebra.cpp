#include "podles/groupoid_algebra.hpp"

#include <cmath>

namespace podles {

std::string to_string(GroupoidTag tag) { return tag == GroupoidTag::O1 ? "O1" : "GS"; }

bool Arrow::admissible(GroupoidTag tag) const {
  if (m.is_inf()) return tag == GroupoidTag::O1 || n == 0;
  return m.value() + n >= 0;
}

Arrow arrow(std::int64_t m, std::int64_t n) { return Arrow{Unit::at(m), n}; }
Arrow arrow_inf(std::int64_t n) { return Arrow{Unit::inf(), n}; }

std::optional<Arrow> compose(const Arrow& a, const Arrow& b) {
  if (a.target() != b.m) return std::nullopt;
  return Arrow{a.m, a.n + b.n};
}

AlgebraElement AlgebraElement::basis(GroupoidTag tag, const Arrow& a, Coeff c) {
  AlgebraElement e(tag);
  e.add_term(a, c);
  return e;
}

Coeff AlgebraElement::coeff(const Arrow& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Coeff(0.0) : it->second;
}

AlgebraElement& AlgebraElement::add_term(const Arrow& a, Coeff c) {
  if (!a.admissible(tag_))
    throw std::invalid_argument("AlgebraElement: arrow not admissible in " + to_string(tag_));
  auto [it, inserted] = terms_.emplace(a, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kCoeffZero) terms_.erase(it);
  return *this;
}

double AlgebraElement::max_abs_coeff() const {
  double m = 0.0;
  for (const auto& [a, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

double AlgebraElement::max_abs_coeff_below(std::int64_t m_limit) const {
  double m = 0.0;
  for (const auto& [a, c] : terms_)
    if (!a.m.is_inf() && a.m.value() < m_limit) m = std::max(m, std::abs(c));
  return m;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  if (tag_ != rhs.tag_) throw std::invalid_argument("AlgebraElement: mixed groupoid tags");
  for (const auto& [a, c] : rhs.terms_) add_term(a, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  if (tag_ != rhs.tag_) throw std::invalid_argument("AlgebraElement: mixed groupoid tags");
  for (const auto& [a, c] : rhs.terms_) add_term(a, -c);
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Coeff s) {
  if (std::abs(s) <= kCoeffZero) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= s;
  return *this;
}

double AlgebraElement::max_coeff_distance(const AlgebraElement& a, const AlgebraElement& b) {
  double d = 0.0;
  for (const auto& [arr, c] : a.terms_) d = std::max(d, std::abs(c - b.coeff(arr)));
  for (const auto& [arr, c] : b.terms_) d = std::max(d, std::abs(c - a.coeff(arr)));
  return d;
}

bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol) {
  return a.tag() == b.tag() && AlgebraElement::max_coeff_distance(a, b) <= tol;
}

AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g, const TwoCocycle* zeta) {
  if (f.tag() != g.tag()) throw std::invalid_argument("convolve: mixed groupoid tags");
  AlgebraElement out(f.tag());
  for (const auto& [a, ca] : f.terms()) {
    for (const auto& [b, cb] : g.terms()) {
      if (auto ab = compose(a, b)) {
        Coeff c = ca * cb;
        if (zeta) c *= (*zeta)(a, b);
        out.add_term(*ab, c);
      }
    }
  }
  return out;
}

AlgebraElement involute(const AlgebraElement& f) {
  AlgebraElement out(f.tag());
  for (const auto& [a, c] : f.terms()) out.add_term(a.inverse(), std::conj(c));
  return out;
}

AlgebraElement automorphism_c1(Coeff t, const AlgebraElement& f) {
  AlgebraElement out(f.tag());
  const Coeff i(0.0, 1.0);
  for (const auto& [a, c] : f.terms())
    out.add_term(a, c * std::exp(i * t * static_cast<double>(a.n)));
  return out;
}

Cocycle1 cocycle_c1() {
  return Cocycle1{[](const Arrow& a) { return static_cast<double>(a.n); }};
}

UnitMeasure UnitMeasure::geometric(double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("UnitMeasure::geometric: hbar must be > 0");
  const double norm = 1.0 - std::exp(-hbar);
  return UnitMeasure(
      MeasureFamily::Geometric, hbar,
      [hbar, norm](const Unit& u) { return u.is_inf() ? 0.0 : norm * std::exp(-hbar * u.value()); },
      "geometric");
}

UnitMeasure UnitMeasure::dirac_zero() {
  return UnitMeasure(
      MeasureFamily::Dirac0, 0.0,
      [](const Unit& u) { return (!u.is_inf() && u.value() == 0) ? 1.0 : 0.0; }, "dirac0");
}

UnitMeasure UnitMeasure::dirac_inf() {
  return UnitMeasure(
      MeasureFamily::DiracInf, 0.0, [](const Unit& u) { return u.is_inf() ? 1.0 : 0.0; },
      "diracinf");
}

UnitMeasure UnitMeasure::custom(std::function<double(const Unit&)> w, std::string label) {
  return UnitMeasure(MeasureFamily::Custom, 0.0, std::move(w), std::move(label));
}

double UnitMeasure::weight(const Unit& u) const {
  const double w = weight_fn_(u);
  if (w < 0.0) throw std::logic_error("UnitMeasure: negative weight");
  return w;
}

UnitMeasure kms_measure(MeasureFamily family, double hbar) {
  switch (family) {
    case MeasureFamily::Geometric:
      return UnitMeasure::geometric(hbar);
    case MeasureFamily::Dirac0:
      return UnitMeasure::dirac_zero();
    case MeasureFamily::DiracInf:
      return UnitMeasure::dirac_inf();
    default:
      throw std::invalid_argument("kms_measure: custom measures have no closed-form family");
  }
}

Coeff state(const AlgebraElement& f, const UnitMeasure& mu) {
  Coeff s(0.0);
  for (const auto& [a, c] : f.terms())
    if (a.n == 0) s += c * mu.weight(a.m);
  return s;
}

Coeff gns_inner(const AlgebraElement& f, const AlgebraElement& g, const UnitMeasure& mu) {
  if (f.tag() != g.tag()) throw std::invalid_argument("gns_inner: mixed groupoid tags");
  // phi_mu(f^* * g) collapses to a weighted l^2 pairing over arrows
  Coeff s(0.0);
  for (const auto& [a, c] : f.terms()) {
    const Coeff cg = g.coeff(a);
    if (cg != Coeff(0.0)) s += std::conj(c) * cg * mu.weight(a.target());
  }
  return s;
}

AlgebraElement modular_operator(const AlgebraElement& f, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("modular_operator: hbar must be > 0");
  AlgebraElement out(f.tag());
  for (const auto& [a, c] : f.terms()) out.add_term(a, c * std::exp(hbar * a.n));
  return out;
}

AlgebraElement modular_conjugation(const AlgebraElement& f, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("modular_conjugation: hbar must be > 0");
  // (J f)(gamma) = D^{1/2}(gamma) f^*(gamma); on arrows
  // J e_{m,n} = e^{-hbar n / 2} e_{m+n,-n}, so that S = J D^{1/2} is the involution.
  AlgebraElement out(f.tag());
  for (const auto& [a, c] : f.terms())
    out.add_term(a.inverse(), std::conj(c) * std::exp(-0.5 * hbar * a.n));
  return out;
}

Eigen::MatrixXcd shift_realization(const AlgebraElement& f, int truncation) {
  if (truncation < 1) throw std::invalid_argument("shift_realization: truncation must be >= 1");
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(truncation, truncation);
  for (const auto& [a, c] : f.terms()) {
    if (a.m.is_inf())
      throw TruncationError("shift_realization: arrow with INF source has no finite matrix image");
    const std::int64_t row = a.m.value();
    const std::int64_t col = row + a.n;
    if (row >= truncation || col >= truncation)
      throw TruncationError("shift_realization: support outside the guard band (need m, m+n < N)");
    mat(row, col) += c;
  }
  return mat;
}

std::map<std::int64_t, Coeff> evaluation_map(const AlgebraElement& f) {
  std::map<std::int64_t, Coeff> coeffs;
  for (const auto& [a, c] : f.terms())
    if (a.m.is_inf()) coeffs[a.n] += c;
  return coeffs;
}

AlgebraElement shift_element(int truncation, bool include_inf_atom) {
  AlgebraElement s(GroupoidTag::O1);
  for (int m = 0; m < truncation; ++m) s.add_term(arrow(1 + m, -1), Coeff(1.0));
  if (include_inf_atom) s.add_term(arrow_inf(-1), Coeff(1.0));
  return s;
}

}  // namespace podles
