#include "etoff/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace etoff {

namespace {

std::string label_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_shared_shape(const KrausSet& kraus, const char* what) {
  if (kraus.empty()) throw ValidationError(std::string(what) + ": empty Kraus set");
  for (const auto& k : kraus) {
    if (k.rows() != kraus.front().rows() || k.cols() != kraus.front().cols() || k.size() == 0) {
      throw DimensionMismatch(std::string(what) + ": Kraus operators differ in shape");
    }
    require_finite(k, what);
  }
}

}  // namespace

ProjectiveObservable::ProjectiveObservable(std::vector<double> labels,
                                           std::vector<ComplexMatrix> projectors) {
  if (labels.size() != projectors.size() || projectors.empty()) {
    throw ValidationError("ProjectiveObservable: need one label per projector");
  }
  dim_ = projectors.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    if (p.rows() != dim_ || p.cols() != dim_) {
      throw DimensionMismatch("ProjectiveObservable: projectors differ in dimension");
    }
    require_finite(p, "ProjectiveObservable");
    if (hermiticity_defect(p) > kDecompositionTol || max_abs_diff(p * p, p) > kDecompositionTol) {
      throw ValidationError("ProjectiveObservable: branch " + label_string(labels[i]) +
                            " is not an orthogonal projector");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > kDecompositionTol) {
        throw ValidationError("ProjectiveObservable: projectors are not mutually orthogonal");
      }
      if (labels[i] == labels[j]) {
        throw ValidationError("ProjectiveObservable: duplicate eigenvalue label");
      }
    }
    const double tr = p.trace().real();
    const double rounded = std::round(tr);
    if (std::abs(tr - rounded) > 1e-6 || rounded < 1.0) {
      throw ValidationError("ProjectiveObservable: projector trace is not a positive integer");
    }
    sum += p;
    branches_.push_back({labels[i], p, static_cast<int>(rounded)});
  }
  if (max_abs_diff(sum, identity(dim_)) > kDecompositionTol) {
    throw ValidationError("ProjectiveObservable: projectors do not resolve the identity");
  }
}

bool ProjectiveObservable::non_degenerate() const {
  return std::all_of(branches_.begin(), branches_.end(),
                     [](const ObservableBranch& b) { return b.degeneracy == 1; });
}

ComplexMatrix ProjectiveObservable::reconstruct() const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& b : branches_) out += b.label * b.projector;
  return out;
}

ProjectiveObservable ProjectiveObservable::transposed() const {
  std::vector<double> labels;
  std::vector<ComplexMatrix> projectors;
  for (const auto& b : branches_) {
    labels.push_back(b.label);
    projectors.push_back(b.projector.transpose());
  }
  return ProjectiveObservable(std::move(labels), std::move(projectors));
}

ProjectiveObservable ProjectiveObservable::from_basis(const ComplexMatrix& basis) {
  if (basis.rows() != basis.cols()) {
    throw DimensionMismatch("ProjectiveObservable::from_basis: basis must be square");
  }
  std::vector<double> labels;
  std::vector<ComplexMatrix> projectors;
  for (Index k = 0; k < basis.cols(); ++k) {
    const ComplexVector v = basis.col(k);
    labels.push_back(static_cast<double>(k));
    projectors.push_back(v * v.adjoint());
  }
  return ProjectiveObservable(std::move(labels), std::move(projectors));
}

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("Povm: no elements");
  dim_ = elements_.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& e : elements_) {
    if (e.rows() != dim_ || e.cols() != dim_) throw DimensionMismatch("Povm: element shape");
    if (min_eigenvalue(HermitianMatrix(e)) < -kStructuralTol) {
      throw ValidationError("Povm: element is not positive semidefinite");
    }
    sum += e;
  }
  if (max_abs_diff(sum, identity(dim_)) > kDecompositionTol) {
    throw ValidationError("Povm: elements do not sum to the identity");
  }
}

double completeness_residual(const KrausSet& kraus) {
  require_shared_shape(kraus, "completeness_residual");
  const Index d_in = kraus.front().cols();
  ComplexMatrix sum = ComplexMatrix::Zero(d_in, d_in);
  for (const auto& k : kraus) sum.noalias() += k.adjoint() * k;
  return max_abs_diff(sum, identity(d_in));
}

Channel::Channel(KrausSet kraus) : kraus_(std::move(kraus)) {
  require_shared_shape(kraus_, "Channel");
  dim_in_ = kraus_.front().cols();
  dim_out_ = kraus_.front().rows();
  const double residual = completeness_residual(kraus_);
  if (residual > kDecompositionTol) {
    std::ostringstream os;
    os << "Channel: Kraus completeness residual " << residual;
    throw ValidationError(os.str());
  }
}

ComplexMatrix Channel::apply(const ComplexMatrix& rho) const { return apply_cp(kraus_, rho); }

ComplexMatrix Channel::adjoint_apply(const ComplexMatrix& y) const {
  if (y.rows() != dim_out_ || y.cols() != dim_out_) {
    throw DimensionMismatch("Channel::adjoint_apply: effect does not act on the output");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * y * k;
  return out;
}

QuantumInstrument::QuantumInstrument(std::vector<InstrumentBranch> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) throw ValidationError("QuantumInstrument: no outcomes");
  KrausSet all;
  for (std::size_t m = 0; m < branches_.size(); ++m) {
    if (branches_[m].kraus.empty()) {
      throw ValidationError("QuantumInstrument: outcome '" + branches_[m].label +
                            "' has no Kraus operators");
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (branches_[j].label == branches_[m].label) {
        throw ValidationError("QuantumInstrument: duplicate outcome label '" +
                              branches_[m].label + "'");
      }
    }
    all.insert(all.end(), branches_[m].kraus.begin(), branches_[m].kraus.end());
  }
  require_shared_shape(all, "QuantumInstrument");
  dim_in_ = all.front().cols();
  dim_out_ = all.front().rows();
  const double residual = completeness_residual(all);
  if (residual > kDecompositionTol) {
    std::ostringstream os;
    os << "QuantumInstrument: branches do not sum to a trace-preserving map (residual "
       << residual << ")";
    throw ValidationError(os.str());
  }
}

std::size_t QuantumInstrument::index_of(const std::string& label) const {
  for (std::size_t m = 0; m < branches_.size(); ++m)
    if (branches_[m].label == label) return m;
  throw ValidationError("QuantumInstrument: unknown outcome label '" + label + "'");
}

ComplexMatrix QuantumInstrument::apply_branch(std::size_t m, const ComplexMatrix& rho) const {
  return apply_cp(branches_.at(m).kraus, rho);
}

ComplexMatrix QuantumInstrument::adjoint_branch(std::size_t m, const ComplexMatrix& effect) const {
  if (effect.rows() != dim_out_ || effect.cols() != dim_out_) {
    throw DimensionMismatch("QuantumInstrument::adjoint_branch: effect shape");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : branches_.at(m).kraus) out.noalias() += k.adjoint() * effect * k;
  return out;
}

ComplexMatrix apply_cp(const KrausSet& kraus, const ComplexMatrix& rho) {
  require_shared_shape(kraus, "apply_cp");
  if (rho.rows() != kraus.front().cols() || rho.cols() != kraus.front().cols()) {
    std::ostringstream os;
    os << "apply_cp: input is " << rho.rows() << "x" << rho.cols() << ", Kraus operators act on "
       << kraus.front().cols();
    throw DimensionMismatch(os.str());
  }
  ComplexMatrix out = ComplexMatrix::Zero(kraus.front().rows(), kraus.front().rows());
  for (const auto& k : kraus) out.noalias() += k * rho * k.adjoint();
  return out;
}

HermitianMatrix apply_cp(const KrausSet& kraus, const DensityMatrix& rho) {
  ComplexMatrix out = apply_cp(kraus, rho.matrix());
  return HermitianMatrix(ComplexMatrix(0.5 * (out + out.adjoint())));
}

double outcome_probability(const QuantumInstrument& inst, const std::string& label,
                           const DensityMatrix& rho) {
  if (rho.dim() != inst.dim_in()) throw DimensionMismatch("outcome_probability: state dimension");
  const std::size_t m = inst.index_of(label);
  return std::clamp(inst.apply_branch(m, rho.matrix()).trace().real(), 0.0, 1.0);
}

DensityMatrix post_measurement_state(const QuantumInstrument& inst, const std::string& label,
                                     const DensityMatrix& rho) {
  if (rho.dim() != inst.dim_in()) {
    throw DimensionMismatch("post_measurement_state: state dimension");
  }
  const std::size_t m = inst.index_of(label);
  const ComplexMatrix out = inst.apply_branch(m, rho.matrix());
  const double p = out.trace().real();
  if (p <= 1e-12) {
    throw ZeroProbabilityOutcome("post_measurement_state: outcome '" + label +
                                 "' has zero probability");
  }
  return DensityMatrix(ComplexMatrix((out + out.adjoint()) / (2.0 * p)));
}

DensityMatrix flag_map(const QuantumInstrument& inst, const DensityMatrix& rho) {
  if (rho.dim() != inst.dim_in()) throw DimensionMismatch("flag_map: state dimension");
  const Index n = static_cast<Index>(inst.num_outcomes());
  ComplexMatrix out = ComplexMatrix::Zero(inst.dim_out() * n, inst.dim_out() * n);
  for (Index m = 0; m < n; ++m) {
    ComplexMatrix flag = ComplexMatrix::Zero(n, n);
    flag(m, m) = 1.0;
    out += kron(inst.apply_branch(static_cast<std::size_t>(m), rho.matrix()), flag);
  }
  return DensityMatrix(ComplexMatrix(0.5 * (out + out.adjoint())));
}

ProjectiveObservable spectral_decompose(const HermitianMatrix& h) {
  const EigenDecomposition e = eigh(h);
  const Index d = h.dim();
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  std::vector<double> labels;
  std::vector<ComplexMatrix> projectors;
  Index start = 0;
  while (start < d) {
    Index stop = start + 1;
    while (stop < d && e.values(stop) - e.values(stop - 1) <= kDegeneracyGap * scale) ++stop;
    const auto block = e.vectors.middleCols(start, stop - start);
    labels.push_back(e.values.segment(start, stop - start).mean());
    projectors.push_back(block * block.adjoint());
    start = stop;
  }
  return ProjectiveObservable(std::move(labels), std::move(projectors));
}

QuantumInstrument luders_instrument(const ProjectiveObservable& obs) {
  std::vector<InstrumentBranch> branches;
  for (const auto& b : obs.branches()) branches.push_back({label_string(b.label), {b.projector}});
  return QuantumInstrument(std::move(branches));
}

QuantumInstrument trivial_instrument(Index d) {
  return QuantumInstrument({InstrumentBranch{"0", {identity(d)}}});
}

ComplexMatrix choi_matrix(const KrausSet& kraus) {
  require_shared_shape(kraus, "choi_matrix");
  const Index d_in = kraus.front().cols();
  const Index d_out = kraus.front().rows();
  ComplexMatrix choi = ComplexMatrix::Zero(d_in * d_out, d_in * d_out);
  for (Index i = 0; i < d_in; ++i) {
    for (Index j = 0; j < d_in; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(d_in, d_in);
      unit(i, j) = 1.0;
      choi.block(i * d_out, j * d_out, d_out, d_out) = apply_cp(kraus, unit);
    }
  }
  return choi / static_cast<double>(d_in);
}

}  // namespace etoff
