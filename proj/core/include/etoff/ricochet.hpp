#pragma once

// Cross-check of the correlation experiments through a maximally entangled
// state |Phi+> = d^(-1/2) sum_n |n>|n> in the computational basis.
//
// The combined estimation U = (m, z') is the POVM
//   Pi(m, z') = Phi^(m)dagger(Psi_m dagger(Lambda(z')))
// on the input; its statistics against X and Z are computed once directly and
// once as local measurements on the two halves of |Phi+>.

#include "etoff/noise_disturbance.hpp"

namespace etoff {

enum class Estimator {
  final_outcome,      // U = (m, z') with z' the final Z outcome
  standard_decision,  // z' replaced by the MAP guess of z given (m, z')
};

struct ConsistencyReport {
  double ux_discrepancy = 0.0;           // p(u, x): direct vs entangled
  double uz_discrepancy = 0.0;           // p(u, z): direct vs entangled
  double conditional_discrepancy = 0.0;  // p(x|u) vs Tr(Pi(x)^T rho_C(u))
  double overlap_discrepancy = 0.0;      // |c~ - c|
  double marginal_discrepancy = 0.0;     // U marginals vs noise_joint / disturbance_joint
  double refinement_slack = 0.0;         // N_1(M, X) - H(X|U), expected >= 0
  double uncertainty_slack = 0.0;        // H(X|U) + H(Z|U) + 2 ln c, expected >= 0
  std::size_t outcomes = 0;

  [[nodiscard]] double max_discrepancy() const;
  /// All discrepancies below tol and both slacks above -tol.
  [[nodiscard]] bool passed(double tol = 1e-9) const;
};

/// Effects Pi(u) of the combined estimation, ordered u = m * |Z| + z'.
std::vector<ComplexMatrix> combined_effects(const ProjectiveObservable& z, const QuantumInstrument& m,
                                            const Channel& correction);

ConsistencyReport ricochet_oracle(const ProjectiveObservable& x, const ProjectiveObservable& z,
                                  const QuantumInstrument& m, const Channel& correction,
                                  Estimator estimator = Estimator::final_outcome);

}  // namespace etoff
