#include "etoff/noise_disturbance.hpp"

#include <cmath>
#include <sstream>

namespace etoff {

namespace {

std::vector<std::string> eigenvalue_labels(const ProjectiveObservable& obs) {
  std::vector<std::string> out;
  for (const auto& b : obs.branches()) {
    std::ostringstream os;
    os.precision(17);
    os << b.label;
    out.push_back(os.str());
  }
  return out;
}

std::vector<std::string> outcome_labels(const QuantumInstrument& m) {
  std::vector<std::string> out;
  for (const auto& b : m.branches()) out.push_back(b.label);
  return out;
}

void require_correction_shape(const QuantumInstrument& m, const Channel& correction, Index d) {
  const Index flagged = m.dim_out() * static_cast<Index>(m.num_outcomes());
  if (correction.dim_in() != flagged || correction.dim_out() != d) {
    std::ostringstream os;
    os << "correction must map dimension " << flagged << " (output x flag) to " << d << ", got "
       << correction.dim_in() << " -> " << correction.dim_out();
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

bool order_admissible(const EntropyOrder& order, Index dim) {
  if (order.family != EntropyFamily::renyi) return true;
  const double upper = dim == 2 ? 2.0 : 1.0;
  return order.alpha <= upper + kShannonBranch;
}

void require_order_admissible(const EntropyOrder& order, Index dim) {
  if (!order_admissible(order, dim)) {
    std::ostringstream os;
    os << "Renyi order " << order.alpha << " outside (0, " << (dim == 2 ? 2 : 1)
       << "] admitted at dimension " << dim;
    throw OrderOutOfRange(os.str());
  }
}

JointDistribution noise_joint(const ProjectiveObservable& x, const QuantumInstrument& m) {
  if (x.dim() != m.dim_in()) {
    throw DimensionMismatch("noise_joint: observable and instrument input differ in dimension");
  }
  const double d = static_cast<double>(x.dim());
  Eigen::MatrixXd table(static_cast<Index>(x.size()), static_cast<Index>(m.num_outcomes()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const ObservableBranch& b = x[i];
    const ComplexMatrix input = b.projector / static_cast<double>(b.degeneracy);
    for (std::size_t k = 0; k < m.num_outcomes(); ++k) {
      const double p_given = m.apply_branch(k, input).trace().real();
      table(static_cast<Index>(i), static_cast<Index>(k)) = (b.degeneracy / d) * p_given;
    }
  }
  return JointDistribution(std::move(table), eigenvalue_labels(x), outcome_labels(m));
}

NoiseExperiment make_noise_experiment(const ProjectiveObservable& x, const QuantumInstrument& m) {
  return {x, m, noise_joint(x, m)};
}

double noise(const ProjectiveObservable& x, const QuantumInstrument& m, const EntropyOrder& order) {
  require_order_admissible(order, x.dim());
  return conditional_entropy(noise_joint(x, m), order);
}

ComplexMatrix corrected_output(const QuantumInstrument& m, const Channel& correction,
                               const ComplexMatrix& rho) {
  const Index n = static_cast<Index>(m.num_outcomes());
  ComplexMatrix flagged = ComplexMatrix::Zero(m.dim_out() * n, m.dim_out() * n);
  for (Index k = 0; k < n; ++k) {
    const ComplexMatrix out = m.apply_branch(static_cast<std::size_t>(k), rho);
    for (Index i = 0; i < m.dim_out(); ++i)
      for (Index j = 0; j < m.dim_out(); ++j) flagged(i * n + k, j * n + k) = out(i, j);
  }
  return correction.apply(flagged);
}

JointDistribution disturbance_joint(const ProjectiveObservable& z, const QuantumInstrument& m,
                                    const Channel& correction) {
  if (z.dim() != m.dim_in()) {
    throw DimensionMismatch("disturbance_joint: observable and instrument input differ");
  }
  require_correction_shape(m, correction, z.dim());
  const double d = static_cast<double>(z.dim());
  const Index nz = static_cast<Index>(z.size());
  Eigen::MatrixXd table(nz, nz);
  for (Index in = 0; in < nz; ++in) {
    const ObservableBranch& b = z[static_cast<std::size_t>(in)];
    const ComplexMatrix out =
        corrected_output(m, correction, b.projector / static_cast<double>(b.degeneracy));
    for (Index est = 0; est < nz; ++est) {
      const double p_given = (z[static_cast<std::size_t>(est)].projector * out).trace().real();
      table(in, est) = (b.degeneracy / d) * p_given;
    }
  }
  const auto labels = eigenvalue_labels(z);
  return JointDistribution(std::move(table), labels, labels);
}

DisturbanceExperiment make_disturbance_experiment(const ProjectiveObservable& z,
                                                  const QuantumInstrument& m,
                                                  const Channel& correction) {
  return {z, m, correction, disturbance_joint(z, m, correction)};
}

Channel discard_flag_correction(const QuantumInstrument& m) {
  if (m.dim_out() != m.dim_in()) {
    throw DimensionMismatch("discard_flag_correction: instrument output differs from its input");
  }
  const Index d = m.dim_out();
  const Index n = static_cast<Index>(m.num_outcomes());
  KrausSet kraus;
  for (Index k = 0; k < n; ++k) {
    ComplexMatrix op = ComplexMatrix::Zero(d, d * n);
    for (Index i = 0; i < d; ++i) op(i, i * n + k) = 1.0;
    kraus.push_back(std::move(op));
  }
  return Channel(std::move(kraus));
}

Channel reprepare_correction(const ProjectiveObservable& z, const QuantumInstrument& m,
                             const std::vector<std::size_t>& outcome_to_z) {
  if (outcome_to_z.size() != m.num_outcomes()) {
    throw DimensionMismatch("reprepare_correction: need one target per outcome");
  }
  const Index d = z.dim();
  const Index dout = m.dim_out();
  const Index n = static_cast<Index>(m.num_outcomes());
  KrausSet kraus;
  for (Index k = 0; k < n; ++k) {
    const std::size_t target = outcome_to_z[static_cast<std::size_t>(k)];
    if (target >= z.size()) throw ValidationError("reprepare_correction: target out of range");
    const ComplexMatrix& proj = z[target].projector;
    Index col = 0;
    proj.colwise().norm().maxCoeff(&col);
    const ComplexVector state = proj.col(col).normalized();
    for (Index i = 0; i < dout; ++i) {
      ComplexMatrix op = ComplexMatrix::Zero(d, dout * n);
      op.col(i * n + k) = state;
      kraus.push_back(std::move(op));
    }
  }
  return Channel(std::move(kraus));
}

ErrorFidelity error_and_fidelity(const DisturbanceExperiment& ex) {
  if (!ex.z.non_degenerate()) {
    throw DegenerateObservable(
        "error_and_fidelity: the fidelity identity needs a non-degenerate observable");
  }
  const auto& t = ex.joint.table();
  double q = 0.0;
  for (Index in = 0; in < t.rows(); ++in)
    for (Index est = 0; est < t.cols(); ++est)
      if (in != est) q += t(in, est);

  double f = 0.0;
  for (const auto& b : ex.z.branches()) {
    const ComplexMatrix out = corrected_output(ex.m, ex.correction, b.projector);
    const DensityMatrix rho(ComplexMatrix(0.5 * (out + out.adjoint())));
    f += fidelity(rho, DensityMatrix(b.projector));
  }
  return {q, f / static_cast<double>(ex.z.dim())};
}

}  // namespace etoff
