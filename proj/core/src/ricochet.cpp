#include "etoff/ricochet.hpp"

#include <algorithm>
#include <cmath>

#include "etoff/uncertainty.hpp"

namespace etoff {

namespace {

constexpr double kNegligibleOutcome = 1e-12;

ComplexMatrix max_entangled(Index d) {
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Index n = 0; n < d; ++n) v(n * d + n) = 1.0;
  v /= std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

// Tr((a (x) b) rho) for rho on C^d (x) C^d.
double local_expectation(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& rho) {
  return (kron(a, b) * rho).trace().real();
}

}  // namespace

double ConsistencyReport::max_discrepancy() const {
  return std::max({ux_discrepancy, uz_discrepancy, conditional_discrepancy, overlap_discrepancy,
                   marginal_discrepancy});
}

bool ConsistencyReport::passed(double tol) const {
  return max_discrepancy() < tol && refinement_slack >= -tol && uncertainty_slack >= -tol;
}

std::vector<ComplexMatrix> combined_effects(const ProjectiveObservable& z, const QuantumInstrument& m,
                                            const Channel& correction) {
  const Index n = static_cast<Index>(m.num_outcomes());
  const Index dout = m.dim_out();
  if (correction.dim_in() != dout * n || correction.dim_out() != z.dim()) {
    throw DimensionMismatch("combined_effects: correction does not act on output x flag");
  }
  std::vector<ComplexMatrix> out;
  for (Index k = 0; k < n; ++k) {
    for (const auto& b : z.branches()) {
      const ComplexMatrix back = correction.adjoint_apply(b.projector);
      ComplexMatrix block(dout, dout);
      for (Index i = 0; i < dout; ++i)
        for (Index j = 0; j < dout; ++j) block(i, j) = back(i * n + k, j * n + k);
      out.push_back(m.adjoint_branch(static_cast<std::size_t>(k), block));
    }
  }
  return out;
}

ConsistencyReport ricochet_oracle(const ProjectiveObservable& x, const ProjectiveObservable& z,
                                  const QuantumInstrument& m, const Channel& correction,
                                  Estimator estimator) {
  if (x.dim() != z.dim() || x.dim() != m.dim_in()) {
    throw DimensionMismatch("ricochet_oracle: observables and instrument differ in dimension");
  }
  const Index d = x.dim();
  const double dd = static_cast<double>(d);
  const std::size_t n = m.num_outcomes();
  const std::size_t nz = z.size();
  const std::size_t nx = x.size();

  std::vector<ComplexMatrix> effects = combined_effects(z, m, correction);
  ConsistencyReport rep;

  // Marginals over the estimate reproduce the two experiments.
  const JointDistribution noise_j = noise_joint(x, m);
  const JointDistribution dist_j = disturbance_joint(z, m, correction);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < nx; ++i) {
      double s = 0.0;
      for (std::size_t e = 0; e < nz; ++e) s += (effects[k * nz + e] * x[i].projector).trace().real() / dd;
      rep.marginal_discrepancy = std::max(rep.marginal_discrepancy, std::abs(s - noise_j(i, k)));
    }
  for (std::size_t e = 0; e < nz; ++e)
    for (std::size_t j = 0; j < nz; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += (effects[k * nz + e] * z[j].projector).trace().real() / dd;
      rep.marginal_discrepancy = std::max(rep.marginal_discrepancy, std::abs(s - dist_j(j, e)));
    }

  if (estimator == Estimator::standard_decision) {
    std::vector<ComplexMatrix> merged(n * nz, ComplexMatrix::Zero(d, d));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t e = 0; e < nz; ++e) {
        const ComplexMatrix& eff = effects[k * nz + e];
        std::size_t guess = 0;
        double best = -1.0;
        for (std::size_t j = 0; j < nz; ++j) {
          const double p = (eff * z[j].projector).trace().real();
          if (p > best) best = p, guess = j;
        }
        merged[k * nz + guess] += eff;
      }
    effects = std::move(merged);
  }
  rep.outcomes = effects.size();

  const ComplexMatrix phi = max_entangled(d);
  const ComplexMatrix id = identity(d);
  Eigen::MatrixXd ux(static_cast<Index>(nx), static_cast<Index>(effects.size()));
  Eigen::MatrixXd uz(static_cast<Index>(nz), static_cast<Index>(effects.size()));
  for (std::size_t u = 0; u < effects.size(); ++u) {
    const ComplexMatrix& eff = effects[u];
    for (std::size_t i = 0; i < nx; ++i) {
      const double direct = (eff * x[i].projector).trace().real() / dd;
      const double entangled = local_expectation(eff, x[i].projector.transpose(), phi);
      rep.ux_discrepancy = std::max(rep.ux_discrepancy, std::abs(direct - entangled));
      ux(static_cast<Index>(i), static_cast<Index>(u)) = std::max(0.0, direct);
    }
    for (std::size_t j = 0; j < nz; ++j) {
      const double direct = (eff * z[j].projector).trace().real() / dd;
      const double entangled = local_expectation(eff, z[j].projector.transpose(), phi);
      rep.uz_discrepancy = std::max(rep.uz_discrepancy, std::abs(direct - entangled));
      uz(static_cast<Index>(j), static_cast<Index>(u)) = std::max(0.0, direct);
    }

    const double pu = local_expectation(eff, id, phi);
    if (pu < kNegligibleOutcome) continue;
    const ComplexMatrix rho_c = partial_trace(kron(eff, id) * phi, d, d, Subsystem::B) / pu;
    for (std::size_t i = 0; i < nx; ++i) {
      const double via_state = (x[i].projector.transpose() * rho_c).trace().real();
      const double direct = (eff * x[i].projector).trace().real() / dd / pu;
      rep.conditional_discrepancy = std::max(rep.conditional_discrepancy, std::abs(via_state - direct));
    }
  }

  const OverlapCharacteristic c = overlap(x, z);
  rep.overlap_discrepancy = std::abs(overlap_transposed(x, z).c - c.c);

  const double hx_u = cond_shannon(ux);
  const double hz_u = cond_shannon(uz);
  rep.refinement_slack = cond_shannon(noise_j.table()) - hx_u;
  rep.uncertainty_slack = hx_u + hz_u + 2.0 * std::log(c.c);
  return rep;
}

}  // namespace etoff
