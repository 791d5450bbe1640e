#pragma once

// Dense complex linear algebra for small systems (d <= 16).

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "etoff/errors.hpp"

namespace etoff {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Structural checks: Hermiticity, unit trace, positivity.
inline constexpr double kStructuralTol = 1e-10;
/// Residuals of decompositions and completeness relations.
inline constexpr double kDecompositionTol = 1e-9;

ComplexMatrix identity(Index n);

/// Throws ValidationError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const char* what = "matrix");

/// max |m - m^dagger| over all entries; requires a square matrix.
double hermiticity_defect(const ComplexMatrix& m);

/// Square matrix equal to its own conjugate transpose within kStructuralTol.
class HermitianMatrix {
 public:
  /// Validates the input and stores its Hermitian part.
  explicit HermitianMatrix(const ComplexMatrix& m);

  [[nodiscard]] Index dim() const { return m_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);
  explicit DensityMatrix(const HermitianMatrix& h);

  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const ComplexVector& psi);
  /// Identity / d.
  static DensityMatrix maximally_mixed(Index d);

  [[nodiscard]] Index dim() const { return m_.dim(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return m_.matrix(); }
  [[nodiscard]] const HermitianMatrix& hermitian() const { return m_; }

 private:
  HermitianMatrix m_;
};

struct EigenDecomposition {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are eigenvectors
};

EigenDecomposition eigh(const HermitianMatrix& m);
/// Same as above for a raw matrix; throws if non-square or not Hermitian.
EigenDecomposition eigh(const ComplexMatrix& m);

/// Singular values in descending order.
RealVector singular_values(const ComplexMatrix& m);
double spectral_norm(const ComplexMatrix& m);
/// Schatten 1-norm: sum of singular values.
double trace_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Partial trace of an operator on A (x) B; `keep` names the surviving factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b, Subsystem keep);

/// Square root of a PSD matrix through eigh; eigenvalues in (-kStructuralTol, 0) are clipped.
ComplexMatrix psd_sqrt(const HermitianMatrix& m);

/// Minimum eigenvalue of a Hermitian matrix.
double min_eigenvalue(const HermitianMatrix& m);

/// F(rho, omega) = || sqrt(rho) sqrt(omega) ||_1^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& omega);

/// max-abs entrywise difference; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace etoff
