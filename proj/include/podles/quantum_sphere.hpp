#ifndef PODLES_QUANTUM_SPHERE_HPP
#define PODLES_QUANTUM_SPHERE_HPP

#include <complex>
#include <cstdint>

#include "podles/groupoid_algebra.hpp"

namespace podles {

// Deformation data of the standard quantum sphere (c = 0), with
// q = exp(-hbar/2) so that q^2 matches the geometric KMS measure weight.
struct QuantumSphereParams {
  double hbar = 0.5;

  double q() const { return std::exp(-hbar / 2.0); }
  void validate() const {
    if (!(hbar > 0.0)) throw std::invalid_argument("QuantumSphereParams: hbar must be > 0");
  }
};

// Truncated generator series inside the convolution algebra:
//   tau   = sum_{m<M} q^{2m} e_{m,0}
//   alpha = sum_{m<M} q^m (1 - q^{2(m+1)})^{1/2} e_{m,1}
struct GeneratorPair {
  AlgebraElement tau;
  AlgebraElement alpha;
  int cutoff = 0;
};

GeneratorPair build_generators(const QuantumSphereParams& params, int cutoff);

// Residuals of the defining relations at c = 0,
//   q^2 a* a = tau (1 - tau),  q^2 a a* = q^2 tau (1 - q^2 tau),  a tau = q^2 tau a,
// measured as the largest coefficient magnitude on the truncation-safe
// window m < cutoff - 2 (outside it the cutoff itself leaves residue).
struct RelationReport {
  double residual_sphere = 0.0;     // q^2 a*a - tau(1-tau)
  double residual_opposite = 0.0;   // q^2 aa* - q^2 tau(1-q^2 tau)
  double residual_commute = 0.0;    // a tau - q^2 tau a
  std::int64_t safe_window = 0;     // window bound m < safe_window
  bool window_empty = false;

  double max_residual() const;
};

RelationReport check_relations(const GeneratorPair& gen, const QuantumSphereParams& params);

enum class SphereGenerator { Tau, Alpha };

// The irreducible infinite-dimensional representation, built directly from
//   rho(tau) psi_n = q^{2n} psi_n,   rho(alpha) psi_n = q^{n-1}(1-q^{2n})^{1/2} psi_{n-1}.
// Must agree entrywise with shift_realization of the generator series on
// the guard-banded block.
Eigen::MatrixXcd rho_direct(SphereGenerator which, const QuantumSphereParams& params, int dim);

// Counit values on the generators.
Coeff counit(SphereGenerator which);

// Haar state = GNS state of the geometric measure at the same hbar.
Coeff haar_state(const AlgebraElement& f, const QuantumSphereParams& params);

}  // namespace podles

#endif  // PODLES_QUANTUM_SPHERE_HPP
