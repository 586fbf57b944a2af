#include "podles/quantum_sphere.hpp"

#include <algorithm>
#include <cmath>

namespace podles {

GeneratorPair build_generators(const QuantumSphereParams& params, int cutoff) {
  params.validate();
  if (cutoff < 1) throw std::invalid_argument("build_generators: cutoff must be >= 1");
  const double q = params.q();
  GeneratorPair gen{AlgebraElement(GroupoidTag::GS), AlgebraElement(GroupoidTag::GS), cutoff};
  for (int m = 0; m < cutoff; ++m) {
    gen.tau.add_term(arrow(m, 0), Coeff(std::pow(q, 2 * m)));
    gen.alpha.add_term(arrow(m, 1),
                       Coeff(std::pow(q, m) * std::sqrt(1.0 - std::pow(q, 2 * (m + 1)))));
  }
  return gen;
}

double RelationReport::max_residual() const {
  return std::max({residual_sphere, residual_opposite, residual_commute});
}

RelationReport check_relations(const GeneratorPair& gen, const QuantumSphereParams& params) {
  params.validate();
  const double q2 = params.q() * params.q();

  const AlgebraElement& tau = gen.tau;
  const AlgebraElement& alpha = gen.alpha;
  const AlgebraElement alpha_star = involute(alpha);
  const AlgebraElement tau2 = tau * tau;

  // c = 0 forms with the unit eliminated: tau(1-tau) = tau - tau^2 etc.
  const AlgebraElement lhs1 = Coeff(q2) * (alpha_star * alpha) - (tau - tau2);
  const AlgebraElement lhs2 =
      Coeff(q2) * (alpha * alpha_star) - (Coeff(q2) * tau - Coeff(q2 * q2) * tau2);
  const AlgebraElement lhs3 = alpha * tau - Coeff(q2) * (tau * alpha);

  RelationReport report;
  report.safe_window = gen.cutoff - 2;
  report.window_empty = report.safe_window <= 0;
  if (!report.window_empty) {
    report.residual_sphere = lhs1.max_abs_coeff_below(report.safe_window);
    report.residual_opposite = lhs2.max_abs_coeff_below(report.safe_window);
    report.residual_commute = lhs3.max_abs_coeff_below(report.safe_window);
  }
  return report;
}

Eigen::MatrixXcd rho_direct(SphereGenerator which, const QuantumSphereParams& params, int dim) {
  params.validate();
  if (dim < 2) throw std::invalid_argument("rho_direct: dimension must be >= 2");
  const double q = params.q();
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  if (which == SphereGenerator::Tau) {
    for (int n = 0; n < dim; ++n) mat(n, n) = std::pow(q, 2 * n);
  } else {
    for (int n = 1; n < dim; ++n)
      mat(n - 1, n) = std::pow(q, n - 1) * std::sqrt(1.0 - std::pow(q, 2 * n));
  }
  return mat;
}

Coeff counit(SphereGenerator which) {
  return which == SphereGenerator::Tau ? Coeff(1.0) : Coeff(0.0);
}

Coeff haar_state(const AlgebraElement& f, const QuantumSphereParams& params) {
  params.validate();
  return state(f, UnitMeasure::geometric(params.hbar));
}

}  // namespace podles
