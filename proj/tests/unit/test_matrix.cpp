#include <doctest.h>

#include <cmath>
#include <numbers>

#include "etoff/matrix.hpp"
#include "etoff/sampling.hpp"

using namespace etoff;

TEST_CASE("eigh on diagonal and identity inputs") {
  const EigenDecomposition id = eigh(identity(2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));

  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 3.0;
  m(1, 1) = -1.0;
  const EigenDecomposition e = eigh(m);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(3.0));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix h = sample_hermitian(4, s);
    const EigenDecomposition e = eigh(h);
    CHECK(std::abs(e.values.sum() - h.trace().real()) < 1e-9);
    const ComplexMatrix back = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK(max_abs_diff(back, h) < 1e-9);
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, identity(4)) < 1e-9);
    for (Index i = 1; i < 4; ++i) CHECK(e.values(i - 1) <= e.values(i));
  }
}

TEST_CASE("eigh rejects non-square and non-Hermitian input") {
  CHECK_THROWS_AS(eigh(ComplexMatrix::Zero(2, 3)), ValidationError);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(m), ValidationError);
}

TEST_CASE("spectral and trace norms") {
  CHECK(spectral_norm(identity(3)) == doctest::Approx(1.0));
  CHECK(spectral_norm(ComplexMatrix::Zero(3, 3)) == doctest::Approx(0.0));

  ComplexVector a(2), b(2);
  a << 1.0, 0.0;
  b << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  const ComplexMatrix prod = (a * a.adjoint()) * (b * b.adjoint());
  CHECK(std::abs(spectral_norm(prod) - std::abs(a.dot(b))) < 1e-9);

  CHECK(trace_norm(identity(4)) == doctest::Approx(4.0));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  CHECK(trace_norm(d) == doctest::Approx(5.0));
  CHECK(std::abs(trace_norm(sample_haar_unitary(3, 11)) - 3.0) < 1e-9);
}

TEST_CASE("partial trace") {
  ComplexVector phi = ComplexVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::numbers::sqrt2;
  const ComplexMatrix rho = phi * phi.adjoint();
  CHECK(max_abs_diff(partial_trace(rho, 2, 2, Subsystem::A), 0.5 * identity(2)) < 1e-12);

  const ComplexMatrix ra = sample_density_matrix(2, 1).matrix();
  const ComplexMatrix rb = sample_density_matrix(3, 2).matrix();
  const ComplexMatrix prod = kron(ra, rb);
  CHECK(max_abs_diff(partial_trace(prod, 2, 3, Subsystem::A), ra) < 1e-10);
  CHECK(max_abs_diff(partial_trace(prod, 2, 3, Subsystem::B), rb) < 1e-10);

  const ComplexMatrix h = sample_hermitian(6, 4);
  CHECK(std::abs(partial_trace(h, 3, 2, Subsystem::A).trace() - h.trace()) < 1e-10);
  CHECK_THROWS_AS(partial_trace(h, 4, 2, Subsystem::A), DimensionMismatch);
}

TEST_CASE("fidelity") {
  const DensityMatrix rho = sample_density_matrix(3, 9);
  const DensityMatrix omega = sample_density_matrix(3, 10);
  CHECK(std::abs(fidelity(rho, rho) - 1.0) < 1e-9);
  CHECK(std::abs(fidelity(rho, omega) - fidelity(omega, rho)) < 1e-9);

  ComplexVector e0 = ComplexVector::Zero(2), e1 = ComplexVector::Zero(2);
  e0(0) = 1.0;
  e1(1) = 1.0;
  CHECK(fidelity(DensityMatrix::pure(e0), DensityMatrix::pure(e1)) == doctest::Approx(0.0));
  CHECK(std::abs(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::pure(e0)) - 0.5) < 1e-9);
  CHECK_THROWS_AS(fidelity(rho, DensityMatrix::maximally_mixed(2)), DimensionMismatch);
}

TEST_CASE("density matrix validation") {
  ComplexMatrix m = identity(2);
  CHECK_THROWS_AS(DensityMatrix{m}, ValidationError);  // trace 2
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);
  ComplexMatrix nan = 0.5 * identity(2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(DensityMatrix{nan}, ValidationError);
}

TEST_CASE("psd square root") {
  const DensityMatrix rho = sample_density_matrix(3, 5);
  const ComplexMatrix r = psd_sqrt(rho.hermitian());
  CHECK(max_abs_diff(r * r, rho.matrix()) < 1e-10);
  CHECK(min_eigenvalue(rho.hermitian()) >= 0.0);
}
