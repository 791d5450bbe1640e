#include "etoff/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace etoff {

namespace {

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw DimensionMismatch(os.str());
  }
}

// Square root of a density matrix with eigenvalues below the eigensolver's
// resolution set to zero; their roots (~1e-8) would otherwise enter fidelities.
ComplexMatrix state_sqrt(const HermitianMatrix& m) {
  constexpr double kFloor = 1e-14;
  const EigenDecomposition e = eigh(m);
  RealVector roots(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) roots(i) = e.values(i) > kFloor ? std::sqrt(e.values(i)) : 0.0;
  return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

ComplexMatrix identity(Index n) { return ComplexMatrix::Identity(n, n); }

void require_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw ValidationError(std::string(what) + ": non-finite entry");
  }
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  require_square(m, "HermitianMatrix");
  require_finite(m, "HermitianMatrix");
  const double defect = hermiticity_defect(m);
  if (defect > kStructuralTol) {
    std::ostringstream os;
    os << "HermitianMatrix: deviation from conjugate transpose " << defect;
    throw ValidationError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

DensityMatrix::DensityMatrix(const HermitianMatrix& h) : m_(h) {
  const double tr = h.matrix().trace().real();
  if (std::abs(tr - 1.0) > kStructuralTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " differs from 1";
    throw ValidationError(os.str());
  }
  const double lo = min_eigenvalue(h);
  if (lo < -kStructuralTol) {
    std::ostringstream os;
    os << "DensityMatrix: negative eigenvalue " << lo;
    throw ValidationError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double n = psi.squaredNorm();
  if (!(n > 0.0)) throw ValidationError("DensityMatrix::pure: zero vector");
  return DensityMatrix(ComplexMatrix(psi * psi.adjoint() / n));
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(ComplexMatrix(identity(d) / static_cast<double>(d)));
}

EigenDecomposition eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigh: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenDecomposition eigh(const ComplexMatrix& m) { return eigh(HermitianMatrix(m)); }

RealVector singular_values(const ComplexMatrix& m) {
  require_finite(m, "singular_values");
  if (m.size() == 0) return RealVector();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  if (svd.info() != Eigen::Success) {
    throw NumericalFailure("singular_values: SVD did not converge");
  }
  return svd.singularValues();
}

double spectral_norm(const ComplexMatrix& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Index dim_a, Index dim_b, Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: matrix is " << m.rows() << "x" << m.cols() << ", dims are (" << dim_a
       << ", " << dim_b << ")";
    throw DimensionMismatch(os.str());
  }
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j)
        for (Index k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index k = 0; k < dim_a; ++k) out += m.block(k * dim_b, k * dim_b, dim_b, dim_b);
  return out;
}

ComplexMatrix psd_sqrt(const HermitianMatrix& m) {
  const EigenDecomposition e = eigh(m);
  RealVector roots(e.values.size());
  for (Index i = 0; i < e.values.size(); ++i) {
    const double v = e.values(i);
    if (v < -kStructuralTol) {
      throw ValidationError("psd_sqrt: matrix is not positive semidefinite");
    }
    roots(i) = std::sqrt(std::max(v, 0.0));
  }
  return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

double min_eigenvalue(const HermitianMatrix& m) { return eigh(m).values(0); }

double fidelity(const DensityMatrix& rho, const DensityMatrix& omega) {
  if (rho.dim() != omega.dim()) {
    throw DimensionMismatch("fidelity: density matrices of different dimension");
  }
  const double n = trace_norm(state_sqrt(rho.hermitian()) * state_sqrt(omega.hermitian()));
  return std::clamp(n * n, 0.0, 1.0);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace etoff
