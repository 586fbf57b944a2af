#include <doctest.h>

#include <cmath>

#include <Eigen/Eigenvalues>

#include "podles/polarization.hpp"
#include "podles/quantum_sphere.hpp"
#include "podles/rng.hpp"

using namespace podles;

namespace {
const QuantumSphereParams kParams{0.5};
constexpr int kCutoff = 30;
}  // namespace

TEST_CASE("generators: coefficient formulas") {
  const GeneratorPair gen = build_generators(kParams, kCutoff);
  const double q = kParams.q();

  CHECK(std::abs(gen.tau.coeff(arrow(0, 0)) - Coeff(1.0)) == 0.0);
  CHECK(std::abs(gen.alpha.coeff(arrow(0, 1)) - Coeff(std::sqrt(1.0 - q * q))) < 1e-16);
  CHECK(std::abs(gen.tau.coeff(arrow(3, 0)) - Coeff(std::pow(q, 6))) < 1e-16);

  double prev_tau = 2.0, prev_alpha = 2.0;
  for (int m = 0; m < kCutoff; ++m) {
    const double ct = gen.tau.coeff(arrow(m, 0)).real();
    const double ca = gen.alpha.coeff(arrow(m, 1)).real();
    CHECK(ct > 0.0);
    CHECK(ca > 0.0);
    CHECK(ct < prev_tau);
    CHECK(ca < prev_alpha);
    CHECK(gen.tau.coeff(arrow(m, 0)).imag() == 0.0);
    CHECK(gen.alpha.coeff(arrow(m, 1)).imag() == 0.0);
    prev_tau = ct;
    prev_alpha = ca;
  }
  CHECK_THROWS_AS(build_generators(kParams, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_generators(QuantumSphereParams{-1.0}, 5), std::invalid_argument);
}

TEST_CASE("relations hold on the truncation-safe window") {
  const GeneratorPair gen = build_generators(kParams, kCutoff);
  const RelationReport rep = check_relations(gen, kParams);
  CHECK_FALSE(rep.window_empty);
  CHECK(rep.safe_window == kCutoff - 2);
  CHECK(rep.residual_sphere < 1e-12);
  CHECK(rep.residual_opposite < 1e-12);
  CHECK(rep.residual_commute < 1e-12);
}

TEST_CASE("relations: degenerate cutoff reports an empty window") {
  const GeneratorPair tiny = build_generators(kParams, 1);
  const RelationReport rep = check_relations(tiny, kParams);
  CHECK(rep.window_empty);
}

TEST_CASE("relations: residual off the safe window is pure truncation") {
  // q^2 a*a - tau(1-tau) is supported exactly at the cutoff edge
  const GeneratorPair gen = build_generators(kParams, 8);
  const double q = kParams.q();
  const AlgebraElement tau = gen.tau, alpha = gen.alpha;
  const AlgebraElement lhs =
      Coeff(q * q) * (involute(alpha) * alpha) - (tau - tau * tau);
  for (const auto& [a, c] : lhs.terms()) {
    CHECK_FALSE(a.m.is_inf());
    CHECK(a.m.value() >= 8);
  }
  // and its size is exactly the O(q^{2M}) edge coefficient
  const double q16 = std::pow(q, 16);
  CHECK(lhs.max_abs_coeff() == doctest::Approx(q16 * (1.0 - q16)).epsilon(1e-14));
}

TEST_CASE("representation rho: two routes agree") {
  const int n = 20;
  const GeneratorPair gen = build_generators(kParams, n);
  const Eigen::MatrixXcd tau_series = shift_realization(gen.tau, n + 1).topLeftCorner(n, n);
  const Eigen::MatrixXcd alpha_series = shift_realization(gen.alpha, n + 1).topLeftCorner(n, n);
  CHECK((rho_direct(SphereGenerator::Tau, kParams, n) - tau_series).cwiseAbs().maxCoeff() == 0.0);
  CHECK((rho_direct(SphereGenerator::Alpha, kParams, n) - alpha_series).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("representation rho: matrix elements") {
  const double q = kParams.q();
  const Eigen::MatrixXcd tau_mat = rho_direct(SphereGenerator::Tau, kParams, 6);
  CHECK(std::abs(tau_mat(2, 2) - Coeff(std::pow(q, 4))) == 0.0);

  const Eigen::MatrixXcd alpha_mat = rho_direct(SphereGenerator::Alpha, kParams, 6);
  // rho(alpha) psi_0 = 0: column 0 vanishes
  CHECK(alpha_mat.col(0).cwiseAbs().maxCoeff() == 0.0);
  CHECK(std::abs(alpha_mat(0, 1) - Coeff(std::sqrt(1.0 - q * q))) < 1e-16);
  CHECK_THROWS_AS(rho_direct(SphereGenerator::Tau, kParams, 1), std::invalid_argument);
}

TEST_CASE("representation rho: defining relations as matrices") {
  const int n = 24;
  const double q2 = kParams.q() * kParams.q();
  const Eigen::MatrixXcd t = rho_direct(SphereGenerator::Tau, kParams, n);
  const Eigen::MatrixXcd a = rho_direct(SphereGenerator::Alpha, kParams, n);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  // the first relation is exact on the full matrix block
  CHECK((q2 * a.adjoint() * a - t * (id - t)).cwiseAbs().maxCoeff() < 1e-15);
  // the opposite relation feels the truncation edge only in the last column
  const Eigen::MatrixXcd r2 = q2 * a * a.adjoint() - q2 * t * (id - q2 * t);
  CHECK(r2.topLeftCorner(n - 1, n - 1).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((a * t - q2 * t * a).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("counit values") {
  CHECK(counit(SphereGenerator::Tau) == Coeff(1.0));
  CHECK(counit(SphereGenerator::Alpha) == Coeff(0.0));
}

TEST_CASE("haar state values") {
  const GeneratorPair gen = build_generators(kParams, kCutoff);
  const double hbar = kParams.hbar;

  AlgebraElement unit_block(GroupoidTag::GS);
  for (int m = 0; m < kCutoff; ++m) unit_block.add_term(arrow(m, 0), Coeff(1.0));
  CHECK(std::abs(haar_state(unit_block, kParams) - Coeff(1.0 - std::exp(-kCutoff * hbar))) <
        1e-14);

  // geometric-series oracle for phi(tau)
  double oracle = 0.0;
  for (int m = 0; m < kCutoff; ++m)
    oracle += std::exp(-2.0 * m * (hbar / 2.0)) * std::exp(-m * hbar) * (1.0 - std::exp(-hbar));
  CHECK(std::abs(haar_state(gen.tau, kParams) - Coeff(oracle)) < 1e-14);
  // closed form of the full series for comparison
  const double closed = (1.0 - std::exp(-hbar)) / (1.0 - std::exp(-2.0 * hbar));
  CHECK(haar_state(gen.tau, kParams).real() ==
        doctest::Approx(closed * (1.0 - std::exp(-2.0 * hbar * kCutoff))).epsilon(1e-14));

  CHECK(std::abs(haar_state(gen.alpha, kParams)) == 0.0);
}

TEST_CASE("haar state is KMS on generator words") {
  const GeneratorPair gen = build_generators(kParams, kCutoff);
  const double hbar = kParams.hbar;
  const UnitMeasure mu = UnitMeasure::geometric(hbar);

  std::vector<AlgebraElement> words{gen.tau, gen.alpha, involute(gen.alpha)};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      words.push_back(words[i] * words[j]);
      for (std::size_t k = 0; k < 3; ++k) words.push_back((words[i] * words[j]) * words[k]);
    }

  Rng rng(2024);
  for (int rep = 0; rep < 150; ++rep) {
    const auto& f = words[static_cast<std::size_t>(rng.integer(0, words.size() - 1))];
    const auto& g = words[static_cast<std::size_t>(rng.integer(0, words.size() - 1))];
    const Coeff lhs = state(f * automorphism_c1(Coeff(0.0, -hbar), g), mu);
    const Coeff rhs = state(g * f, mu);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-30});
    CHECK(std::abs(lhs - rhs) / scale < 1e-10);
  }
}

TEST_CASE("spectrum of rho(tau) equals the Bohr-Sommerfeld values") {
  const int n = 64;
  const GeneratorPair gen = build_generators(kParams, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(shift_realization(gen.tau, n));
  const auto leaves = bs_leaves(kParams.hbar, n - 1);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(solver.eigenvalues()(n - 1 - k) - std::exp(-kParams.hbar * k)) < 1e-12);
    CHECK(std::abs(solver.eigenvalues()(n - 1 - k) - leaves[k].tau_value(kParams.hbar)) < 1e-12);
  }
}

TEST_CASE("automorphism action on the generators") {
  const GeneratorPair gen = build_generators(kParams, kCutoff);
  const double t = 0.9;
  CHECK(AlgebraElement::max_coeff_distance(automorphism_c1(Coeff(t), gen.tau), gen.tau) == 0.0);
  CHECK(AlgebraElement::max_coeff_distance(automorphism_c1(Coeff(t), gen.alpha),
                                           Coeff(std::polar(1.0, t)) * gen.alpha) < 1e-16);
}
