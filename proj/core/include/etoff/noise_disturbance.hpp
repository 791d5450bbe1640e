#pragma once

// The two correlation experiments behind information-theoretic noise and
// disturbance. Inputs are eigenstates Pi(x)/d_x drawn with probability d_x/d.
//
// Joint tables put the input eigenvalue on the rows (the variable being
// estimated) and the observed quantity on the columns.

#include "etoff/entropy.hpp"
#include "etoff/quantum.hpp"

namespace etoff {

/// Renyi orders are admitted in (0, 1], widened to (0, 2] for qubits; Tsallis for any alpha > 0.
bool order_admissible(const EntropyOrder& order, Index dim);
/// Throws OrderOutOfRange naming the admitted interval.
void require_order_admissible(const EntropyOrder& order, Index dim);

/// p(m, x) = (d_x/d) Tr Phi^(m)(Pi(x)/d_x); rows x, columns m.
JointDistribution noise_joint(const ProjectiveObservable& x, const QuantumInstrument& m);

struct NoiseExperiment {
  ProjectiveObservable x;
  QuantumInstrument m;
  JointDistribution joint;
};
NoiseExperiment make_noise_experiment(const ProjectiveObservable& x, const QuantumInstrument& m);

/// Conditional entropy of X given the outcome M; no optimization over guessing functions.
double noise(const ProjectiveObservable& x, const QuantumInstrument& m, const EntropyOrder& order);

/// p(z', z) = (1/d) Tr[Lambda(z') Psi(Phi_M(Lambda(z)))]; rows z, columns z'.
/// Psi maps (output) (x) (flag) back to the input space.
JointDistribution disturbance_joint(const ProjectiveObservable& z, const QuantumInstrument& m,
                                    const Channel& correction);

struct DisturbanceExperiment {
  ProjectiveObservable z;
  QuantumInstrument m;
  Channel correction;
  JointDistribution joint;
};
DisturbanceExperiment make_disturbance_experiment(const ProjectiveObservable& z,
                                                  const QuantumInstrument& m,
                                                  const Channel& correction);

/// Psi(sigma (x) |m><m|) = sigma. Needs dim_out == dim_in.
Channel discard_flag_correction(const QuantumInstrument& m);
/// Psi(sigma (x) |m><m|) = Tr(sigma) |z_g(m)><z_g(m)| with g = outcome_to_z.
Channel reprepare_correction(const ProjectiveObservable& z, const QuantumInstrument& m,
                             const std::vector<std::size_t>& outcome_to_z);

struct ErrorFidelity {
  double q_error;       // sum_z sum_{z' != z} p(z', z)
  double avg_fidelity;  // (1/d) sum_z F(Psi Phi_M(|z><z|), |z><z|)
};

/// Throws DegenerateObservable if Z has a degenerate eigenvalue.
ErrorFidelity error_and_fidelity(const DisturbanceExperiment& experiment);

/// Psi Phi_M(rho): the instrument followed by the correction, on the input space.
ComplexMatrix corrected_output(const QuantumInstrument& m, const Channel& correction,
                               const ComplexMatrix& rho);

}  // namespace etoff
