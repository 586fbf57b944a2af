#ifndef PODLES_GROUPOID_ALGEBRA_HPP
#define PODLES_GROUPOID_ALGEBRA_HPP

#include <complex>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace podles {

using Coeff = std::complex<double>;

// A point of the compactified naturals: 0, 1, 2, ... , INF.
// INF is maximal in the ordering and absorbing under shifts.
class Unit {
 public:
  static Unit inf() { return Unit(true, 0); }
  static Unit at(std::int64_t n) {
    if (n < 0) throw std::invalid_argument("Unit::at: negative index");
    return Unit(false, n);
  }

  bool is_inf() const { return inf_; }
  std::int64_t value() const {
    if (inf_) throw std::logic_error("Unit::value: unit is INF");
    return n_;
  }

  // INF + k = INF; finite units must stay inside the naturals.
  Unit shifted(std::int64_t k) const {
    if (inf_) return *this;
    if (n_ + k < 0) throw std::invalid_argument("Unit::shifted: leaves the naturals");
    return Unit(false, n_ + k);
  }

  friend std::strong_ordering operator<=>(const Unit& a, const Unit& b) {
    if (a.inf_ != b.inf_) return a.inf_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.n_ <=> b.n_;
  }
  friend bool operator==(const Unit& a, const Unit& b) = default;

 private:
  Unit(bool inf, std::int64_t n) : inf_(inf), n_(n) {}
  bool inf_;
  std::int64_t n_;
};

enum class GroupoidTag { O1, GS };

std::string to_string(GroupoidTag tag);

// An arrow (m, n) of the translation action groupoid restricted to the
// compactified naturals: source m, shift n, target m + n.
struct Arrow {
  Unit m;
  std::int64_t n = 0;

  Unit target() const { return m.shifted(n); }
  Arrow inverse() const { return Arrow{target(), -n}; }

  // O1 admits (m, n) whenever the target stays in the naturals (INF takes
  // any n); GS additionally forces n = 0 over INF.
  bool admissible(GroupoidTag tag) const;

  friend std::strong_ordering operator<=>(const Arrow& a, const Arrow& b) {
    if (auto c = a.m <=> b.m; c != 0) return c;
    return a.n <=> b.n;
  }
  friend bool operator==(const Arrow& a, const Arrow& b) = default;
};

Arrow arrow(std::int64_t m, std::int64_t n);  // finite-source shorthand
Arrow arrow_inf(std::int64_t n);

// (m, n) . (m + n, q) = (m, n + q); empty when the middle units differ.
std::optional<Arrow> compose(const Arrow& a, const Arrow& b);

// Finite linear combination of arrows in canonical form: coefficients of
// magnitude <= kCoeffZero are dropped; GS-tagged elements reject arrows
// outside the subgroupoid.
class AlgebraElement {
 public:
  static constexpr double kCoeffZero = 1e-14;

  explicit AlgebraElement(GroupoidTag tag = GroupoidTag::O1) : tag_(tag) {}
  static AlgebraElement basis(GroupoidTag tag, const Arrow& a, Coeff c = Coeff(1.0));

  GroupoidTag tag() const { return tag_; }
  const std::map<Arrow, Coeff>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(const Arrow& a) const;
  AlgebraElement& add_term(const Arrow& a, Coeff c);

  double max_abs_coeff() const;
  // Largest coefficient magnitude over arrows with finite source m < m_limit.
  double max_abs_coeff_below(std::int64_t m_limit) const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);
  AlgebraElement& operator*=(Coeff s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(Coeff s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, Coeff s) { return a *= s; }

  // Coefficient-wise comparison of canonical forms.
  friend bool approx_equal(const AlgebraElement& a, const AlgebraElement& b, double tol);
  static double max_coeff_distance(const AlgebraElement& a, const AlgebraElement& b);

 private:
  GroupoidTag tag_;
  std::map<Arrow, Coeff> terms_;
};

using TwoCocycle = std::function<Coeff(const Arrow&, const Arrow&)>;

// Convolution: bilinear extension of arrow composition, twisted by an
// optional normalized 2-cocycle (defaults to the trivial one).
AlgebraElement convolve(const AlgebraElement& f, const AlgebraElement& g,
                        const TwoCocycle* zeta = nullptr);
inline AlgebraElement operator*(const AlgebraElement& f, const AlgebraElement& g) {
  return convolve(f, g);
}

// Antilinear involution  e_{m,n} -> e_{m+n,-n}.
AlgebraElement involute(const AlgebraElement& f);

// Automorphism generated by the cocycle c1(m,n) = n:
//   e_{m,n} -> exp(i t n) e_{m,n},
// with t complex so the analytic continuation t = -i hbar is available.
AlgebraElement automorphism_c1(Coeff t, const AlgebraElement& f);

// The cocycle c1 and the generic evaluation-rule wrapper.
struct Cocycle1 {
  std::function<double(const Arrow&)> value;
};
Cocycle1 cocycle_c1();

enum class MeasureFamily { Geometric, Dirac0, DiracInf, Custom };

// Measure on the space of units; the three closed-form families are the
// KMS measures of c1 at beta = -hbar, -inf, 0 respectively.
class UnitMeasure {
 public:
  static UnitMeasure geometric(double hbar);  // mu_hbar(n) = e^{-n hbar}(1 - e^{-hbar})
  static UnitMeasure dirac_zero();            // mu_{-inf}(0) = 1
  static UnitMeasure dirac_inf();             // mu_0(inf) = 1
  static UnitMeasure custom(std::function<double(const Unit&)> w, std::string label);

  MeasureFamily family() const { return family_; }
  const std::string& label() const { return label_; }
  double weight(const Unit& u) const;

 private:
  UnitMeasure(MeasureFamily f, double hbar, std::function<double(const Unit&)> w, std::string label)
      : family_(f), hbar_(hbar), weight_fn_(std::move(w)), label_(std::move(label)) {}
  MeasureFamily family_;
  double hbar_;
  std::function<double(const Unit&)> weight_fn_;
  std::string label_;
};

UnitMeasure kms_measure(MeasureFamily family, double hbar = 0.0);

// State phi_mu(f) = sum_u f(u, 0) mu(u) and the GNS inner product
// <f, g> = phi_mu(f^* * g) = sum_gamma mu(target gamma) conj(f(gamma)) g(gamma).
Coeff state(const AlgebraElement& f, const UnitMeasure& mu);
Coeff gns_inner(const AlgebraElement& f, const AlgebraElement& g, const UnitMeasure& mu);

// Tomita-Takesaki data of the geometric measure on the GNS space:
//   D e_{m,n} = e^{hbar n} e_{m,n}          (equals automorphism_c1(-i hbar))
//   J f = D^{1/2} f^*  pointwise, antilinear, with J J = id and S = J D^{1/2}.
AlgebraElement modular_operator(const AlgebraElement& f, double hbar);
AlgebraElement modular_conjugation(const AlgebraElement& f, double hbar);

class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix of the GNS(mu_{-inf}) action e_{m,n}|p> = delta_{m+n,p}|m> on the
// span of |0> .. |N-1>. Every arrow must satisfy m, m+n < N; violations are
// truncation errors, not silent corruption.
Eigen::MatrixXcd shift_realization(const AlgebraElement& f, int truncation);

// The fiber of f over INF as Fourier coefficients: exponent n -> f(inf, n).
std::map<std::int64_t, Coeff> evaluation_map(const AlgebraElement& f);

// Truncation of the shift operator S = sum_m e_{1+m,-1}: the finite part up
// to m < truncation plus the limit atom e_{inf,-1} that a convergent series
// carries in its INF fiber (omit it to stay inside the shift_realization
// guard band).
AlgebraElement shift_element(int truncation, bool include_inf_atom = true);

}  // namespace podles

#endif  // PODLES_GROUPOID_ALGEBRA_HPP
