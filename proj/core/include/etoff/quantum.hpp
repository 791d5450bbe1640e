#pragma once

// Observables, POVMs, channels and quantum instruments as Kraus-operator data.
//
// Tensor ordering: the flag register of an instrument is the minor factor, i.e.
// the flagged output space is (output) (x) (flag) with index i * n_outcomes + m.

#include <cstddef>
#include <string>
#include <vector>

#include "etoff/matrix.hpp"

namespace etoff {

using KrausSet = std::vector<ComplexMatrix>;

/// Relative gap below which two eigenvalues are treated as one degenerate level.
inline constexpr double kDegeneracyGap = 1e-8;

struct ObservableBranch {
  double label;  // eigenvalue
  ComplexMatrix projector;
  int degeneracy;  // Tr(projector)
};

/// Orthogonal resolution of the identity labelled by real eigenvalues.
class ProjectiveObservable {
 public:
  /// Validates idempotence, orthogonality and completeness; fills in degeneracies.
  ProjectiveObservable(std::vector<double> labels, std::vector<ComplexMatrix> projectors);

  [[nodiscard]] Index dim() const { return dim_; }
  [[nodiscard]] std::size_t size() const { return branches_.size(); }
  [[nodiscard]] const std::vector<ObservableBranch>& branches() const { return branches_; }
  [[nodiscard]] const ObservableBranch& operator[](std::size_t i) const { return branches_[i]; }
  [[nodiscard]] bool non_degenerate() const;

  /// sum_x x Pi(x).
  [[nodiscard]] ComplexMatrix reconstruct() const;
  /// Same observable with every projector transposed in the computational basis.
  [[nodiscard]] ProjectiveObservable transposed() const;

  /// Non-degenerate observable with eigenvalues 0, 1, ... on the columns of `basis`.
  static ProjectiveObservable from_basis(const ComplexMatrix& basis);

 private:
  Index dim_;
  std::vector<ObservableBranch> branches_;
};

class Povm {
 public:
  explicit Povm(std::vector<ComplexMatrix> elements);

  [[nodiscard]] Index dim() const { return dim_; }
  [[nodiscard]] const std::vector<ComplexMatrix>& elements() const { return elements_; }
  [[nodiscard]] std::size_t size() const { return elements_.size(); }

 private:
  Index dim_;
  std::vector<ComplexMatrix> elements_;
};

/// Trace-preserving CP map in Kraus form.
class Channel {
 public:
  explicit Channel(KrausSet kraus);

  [[nodiscard]] Index dim_in() const { return dim_in_; }
  [[nodiscard]] Index dim_out() const { return dim_out_; }
  [[nodiscard]] const KrausSet& kraus() const { return kraus_; }

  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// Heisenberg-picture action: sum K^dagger Y K.
  [[nodiscard]] ComplexMatrix adjoint_apply(const ComplexMatrix& y) const;

 private:
  Index dim_in_;
  Index dim_out_;
  KrausSet kraus_;
};

struct InstrumentBranch {
  std::string label;
  KrausSet kraus;
};

/// Outcome-indexed CP maps whose sum is trace preserving.
class QuantumInstrument {
 public:
  explicit QuantumInstrument(std::vector<InstrumentBranch> branches);

  [[nodiscard]] Index dim_in() const { return dim_in_; }
  [[nodiscard]] Index dim_out() const { return dim_out_; }
  [[nodiscard]] std::size_t num_outcomes() const { return branches_.size(); }
  [[nodiscard]] const std::vector<InstrumentBranch>& branches() const { return branches_; }
  [[nodiscard]] const InstrumentBranch& operator[](std::size_t m) const { return branches_[m]; }
  /// Throws ValidationError for an unknown label.
  [[nodiscard]] std::size_t index_of(const std::string& label) const;

  /// Unnormalized Phi^(m)(rho).
  [[nodiscard]] ComplexMatrix apply_branch(std::size_t m, const ComplexMatrix& rho) const;
  /// Phi^(m) dagger applied to an effect on the output.
  [[nodiscard]] ComplexMatrix adjoint_branch(std::size_t m, const ComplexMatrix& effect) const;

 private:
  Index dim_in_;
  Index dim_out_;
  std::vector<InstrumentBranch> branches_;
};

/// || sum K^dagger K - 1 ||_max; kraus operators must share their shape.
double completeness_residual(const KrausSet& kraus);

/// sum_n K(n) rho K(n)^dagger; unnormalized.
ComplexMatrix apply_cp(const KrausSet& kraus, const ComplexMatrix& rho);
HermitianMatrix apply_cp(const KrausSet& kraus, const DensityMatrix& rho);

double outcome_probability(const QuantumInstrument& inst, const std::string& label,
                           const DensityMatrix& rho);
/// Phi^(m)(rho) / p(m); throws ZeroProbabilityOutcome when p(m) <= 1e-12.
DensityMatrix post_measurement_state(const QuantumInstrument& inst, const std::string& label,
                                     const DensityMatrix& rho);
/// sum_m Phi^(m)(rho) (x) |m><m| on (output) (x) (flag).
DensityMatrix flag_map(const QuantumInstrument& inst, const DensityMatrix& rho);

/// Groups the spectrum into degenerate levels and builds the eigenprojectors.
ProjectiveObservable spectral_decompose(const HermitianMatrix& h);

/// Luders instrument: Kraus operator Pi(x) for each outcome, labelled by the eigenvalue.
QuantumInstrument luders_instrument(const ProjectiveObservable& obs);
/// Single outcome "0" with the identity Kraus operator.
QuantumInstrument trivial_instrument(Index d);

/// Choi matrix (1/d) sum_ij |i><j| (x) Phi(|i><j|) of a Kraus map.
ComplexMatrix choi_matrix(const KrausSet& kraus);

}  // namespace etoff
