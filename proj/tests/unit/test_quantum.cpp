#include <doctest.h>

#include <cmath>

#include "etoff/quantum.hpp"
#include "etoff/sampling.hpp"
#include "etoff/serialization.hpp"
#include "oracles.hpp"

using namespace etoff;

namespace {

ComplexMatrix diag(std::initializer_list<double> v) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(v.size()), static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) m(i, i) = x, ++i;
  return m;
}

ComplexMatrix ket(Index d, Index i) {
  ComplexMatrix k = ComplexMatrix::Zero(d, d);
  k(i, i) = 1.0;
  return k;
}

}  // namespace

TEST_CASE("projective observable validation") {
  CHECK_NOTHROW(ProjectiveObservable({0.0, 1.0}, {ket(2, 0), ket(2, 1)}));
  CHECK_THROWS_AS(ProjectiveObservable({0.0}, {ket(2, 0)}), ValidationError);                 // incomplete
  CHECK_THROWS_AS(ProjectiveObservable({0.0, 1.0}, {ket(2, 0), ket(2, 0)}), ValidationError);  // overlap
  CHECK_THROWS_AS(ProjectiveObservable({0.0, 0.0}, {ket(2, 0), ket(2, 1)}), ValidationError);  // repeated label
  CHECK_THROWS_AS(ProjectiveObservable({0.0, 1.0}, {0.5 * identity(2), 0.5 * identity(2)}), ValidationError);
  CHECK_THROWS_AS(ProjectiveObservable({0.0, 1.0}, {ket(2, 0), ket(3, 1)}), DimensionMismatch);
}

TEST_CASE("spectral decomposition") {
  const ProjectiveObservable z = spectral_decompose(HermitianMatrix(diag({1.0, -1.0})));
  CHECK(z.size() == 2);
  CHECK(z[0].degeneracy == 1);
  CHECK(z[0].label == doctest::Approx(-1.0));

  const ProjectiveObservable one = spectral_decompose(HermitianMatrix(identity(3)));
  CHECK(one.size() == 1);
  CHECK(one[0].degeneracy == 3);

  const ProjectiveObservable near = spectral_decompose(HermitianMatrix(diag({1.0, 1.0 + 1e-12, -1.0})));
  REQUIRE(near.size() == 2);
  CHECK(near[0].degeneracy == 1);
  CHECK(near[1].degeneracy == 2);
  CHECK_FALSE(near.non_degenerate());

  for (std::uint64_t s = 0; s < 30; ++s) {
    const ComplexMatrix h = sample_hermitian(4, s);
    CHECK(max_abs_diff(spectral_decompose(HermitianMatrix(h)).reconstruct(), h) < 1e-8);
  }
}

TEST_CASE("channels and CP maps") {
  const DensityMatrix rho = sample_density_matrix(2, 3);
  CHECK(max_abs_diff(apply_cp(KrausSet{identity(2)}, rho.matrix()), rho.matrix()) < 1e-14);
  CHECK(apply_cp(KrausSet{ComplexMatrix::Zero(2, 2)}, rho.matrix()).norm() == 0.0);

  // depolarizing Kraus set with p = 0.3
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  const double p = 0.3;
  const Channel dep({std::sqrt(1 - 3 * p / 4) * identity(2), std::sqrt(p / 4) * x, std::sqrt(p / 4) * y,
                     std::sqrt(p / 4) * z});
  CHECK(std::abs(dep.apply(rho.matrix()).trace().real() - 1.0) < 1e-10);
  CHECK(max_abs_diff(dep.adjoint_apply(identity(2)), identity(2)) < 1e-12);
  CHECK_THROWS_AS(Channel({0.5 * identity(2)}), ValidationError);
  CHECK_THROWS_AS(Channel({}), ValidationError);
  CHECK_THROWS_AS((void)dep.apply(identity(3) / 3.0), DimensionMismatch);
}

TEST_CASE("instrument outcome probabilities") {
  const ProjectiveObservable obs = ProjectiveObservable::from_basis(identity(3));
  const QuantumInstrument lu = luders_instrument(obs);
  const DensityMatrix e1(ket(3, 1));
  CHECK(outcome_probability(lu, lu[1].label, e1) == doctest::Approx(1.0));
  CHECK(outcome_probability(lu, lu[0].label, e1) == doctest::Approx(0.0));
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
  for (const auto& b : lu.branches()) CHECK(outcome_probability(lu, b.label, mixed) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(outcome_probability(lu, "nope", mixed), ValidationError);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const QuantumInstrument m = sample_random_instrument(3, 1 + s % 4, 1 + s % 2, s);
    const DensityMatrix rho = sample_density_matrix(3, 50 + s);
    double total = 0;
    for (const auto& b : m.branches()) {
      const double pm = outcome_probability(m, b.label, rho);
      CHECK(pm >= -1e-10);
      total += pm;
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("post-measurement states") {
  const ProjectiveObservable obs = ProjectiveObservable::from_basis(identity(2));
  const QuantumInstrument lu = luders_instrument(obs);
  CHECK(max_abs_diff(post_measurement_state(lu, lu[0].label, DensityMatrix(ket(2, 0))).matrix(), ket(2, 0)) < 1e-12);
  CHECK_THROWS_AS(post_measurement_state(lu, lu[1].label, DensityMatrix(ket(2, 0))), ZeroProbabilityOutcome);

  const ProjectiveObservable deg({0.0, 1.0}, {ket(3, 0) + ket(3, 1), ket(3, 2)});
  const QuantumInstrument ld = luders_instrument(deg);
  const DensityMatrix post = post_measurement_state(ld, ld[0].label, DensityMatrix::maximally_mixed(3));
  CHECK(max_abs_diff(post.matrix(), (ket(3, 0) + ket(3, 1)) / 2.0) < 1e-12);
}

TEST_CASE("flag map") {
  const DensityMatrix rho = sample_density_matrix(2, 8);
  const DensityMatrix f = flag_map(trivial_instrument(2), rho);
  CHECK(max_abs_diff(f.matrix(), rho.matrix()) < 1e-14);

  const QuantumInstrument m = sample_random_instrument(2, 3, 2, 4);
  const DensityMatrix fm = flag_map(m, rho);
  CHECK(std::abs(fm.matrix().trace().real() - 1.0) < 1e-9);
  for (Index k = 0; k < 3; ++k) {
    double block = 0;
    for (Index i = 0; i < 2; ++i) block += fm.matrix()(i * 3 + k, i * 3 + k).real();
    CHECK(std::abs(block - outcome_probability(m, m[static_cast<std::size_t>(k)].label, rho)) < 1e-12);
    for (Index l = 0; l < 3; ++l)
      if (l != k)
        for (Index i = 0; i < 2; ++i)
          for (Index j = 0; j < 2; ++j) CHECK(std::abs(fm.matrix()(i * 3 + k, j * 3 + l)) < 1e-15);
  }

  const ProjectiveObservable deg({0.0, 1.0}, {ket(3, 0) + ket(3, 1), ket(3, 2)});
  const DensityMatrix fl = flag_map(luders_instrument(deg), DensityMatrix::maximally_mixed(3));
  CHECK(std::abs(fl.matrix()(0, 0).real() - 1.0 / 3.0) < 1e-12);  // block 0 = Pi(0)/3
  CHECK(std::abs(fl.matrix()(5, 5).real() - 1.0 / 3.0) < 1e-12);  // block 1 = Pi(1)/3
}

TEST_CASE("samplers are valid and deterministic") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const QuantumInstrument m = sample_random_instrument(2 + s % 2, 1 + s % 4, 1 + s % 3, s);
    KrausSet all;
    for (const auto& b : m.branches()) all.insert(all.end(), b.kraus.begin(), b.kraus.end());
    CHECK(completeness_residual(all) < 1e-9);
    CHECK(std::abs(flag_map(m, sample_density_matrix(m.dim_in(), s)).matrix().trace().real() - 1.0) < 1e-9);
  }
  const ComplexMatrix u = sample_haar_unitary(2, 5);
  CHECK(max_abs_diff(u.adjoint() * u, identity(2)) < 1e-9);
  CHECK(sample_haar_unitary(3, 77) == sample_haar_unitary(3, 77));
  CHECK_FALSE(sample_haar_unitary(3, 77) == sample_haar_unitary(3, 78));

  const QuantumInstrument a = sample_random_instrument(2, 2, 1, 12);
  const QuantumInstrument b = sample_random_instrument(2, 2, 1, 12);
  for (std::size_t k = 0; k < 2; ++k) CHECK(a[k].kraus[0] == b[k].kraus[0]);

  const ProjectiveObservable o = sample_random_observable(4, {2, 1, 1}, 3);
  CHECK(o.size() == 3);
  CHECK(o[0].degeneracy == 2);
  CHECK_THROWS_AS(sample_random_observable(4, {2, 1}, 3), ValidationError);
  CHECK_THROWS_AS(sample_random_instrument(3, 0, 1, 3), ValidationError);
}

TEST_CASE("instrument validation") {
  CHECK_THROWS_AS(QuantumInstrument({{"0", {ket(2, 0)}}}), ValidationError);
  CHECK_THROWS_AS(QuantumInstrument({{"a", {ket(2, 0)}}, {"a", {ket(2, 1)}}}), ValidationError);
  CHECK_THROWS_AS(QuantumInstrument({}), ValidationError);
}

TEST_CASE("transposed observable and Choi matrix") {
  const ProjectiveObservable o = sample_random_observable(3, {1, 1, 1}, 21);
  const ProjectiveObservable t = o.transposed();
  for (std::size_t i = 0; i < o.size(); ++i) CHECK(max_abs_diff(t[i].projector, o[i].projector.transpose()) < 1e-15);
  const ComplexMatrix c = choi_matrix(KrausSet{identity(2)});
  CHECK(std::abs(c.trace().real() - 1.0) < 1e-12);
  CHECK(std::abs(c(0, 3) - 0.5) < 1e-12);
}

TEST_CASE("JSON round trips") {
  const QuantumInstrument m = sample_random_instrument(3, 2, 2, 6);
  const QuantumInstrument back = instrument_from_json(Json::parse(to_json(m).dump()));
  CHECK(back.num_outcomes() == 2);
  CHECK(back[1].label == m[1].label);
  CHECK(max_abs_diff(back[1].kraus[1], m[1].kraus[1]) == 0.0);

  const ProjectiveObservable o = sample_random_observable(3, {2, 1}, 7);
  const ProjectiveObservable ob = observable_from_json(Json::parse(to_json(o).dump()));
  CHECK(max_abs_diff(ob[0].projector, o[0].projector) == 0.0);

  const Json matrix_form = {{"matrix", matrix_to_json(diag({2.0, -1.0, 2.0}))}};
  const ProjectiveObservable fromm = observable_from_json(matrix_form);
  CHECK(fromm.size() == 2);

  const TradeoffInstance inst{o, sample_random_observable(3, {1, 1, 1}, 8), m};
  const TradeoffInstance ib = instance_from_json(to_json(inst));
  CHECK(ib.m.dim_in() == 3);

  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), ValidationError);
  CHECK_THROWS_AS(instrument_from_json(Json::parse("{\"branches\": 4}")), ValidationError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ValidationError);
}
