#include <doctest.h>

#include <cmath>
#include <numbers>

#include "etoff/certificate.hpp"
#include "etoff/sampling.hpp"
#include "oracles.hpp"

using namespace etoff;

namespace {

SearchConfig quick() {
  SearchConfig s;
  s.restarts = 2;
  s.max_iterations = 300;
  return s;
}

}  // namespace

TEST_CASE("overlap examples") {
  const auto z = ProjectiveObservable::from_basis(identity(2));
  const auto x = ProjectiveObservable::from_basis(oracle::hadamard());
  const OverlapCharacteristic same = overlap(z, z);
  CHECK(same.c == doctest::Approx(1.0));
  CHECK(same.eta == doctest::Approx(0.0));

  const OverlapCharacteristic conj = overlap(x, z);
  CHECK(std::abs(conj.c - 1.0 / std::numbers::sqrt2) < 1e-9);
  CHECK(std::abs(conj.eta - std::numbers::pi / 4) < 1e-9);
  CHECK(std::abs(conj.eta - std::acos(conj.c)) < 1e-12);

  const auto f3 = ProjectiveObservable::from_basis(oracle::fourier(3));
  CHECK(std::abs(overlap(f3, ProjectiveObservable::from_basis(identity(3))).c - 1.0 / std::sqrt(3.0)) < 1e-9);
  CHECK_THROWS_AS(overlap(z, f3), DimensionMismatch);
}

TEST_CASE("overlap is symmetric and transpose invariant") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index d = 2 + static_cast<Index>(s % 3);
    const ComplexMatrix ua = sample_haar_unitary(d, s), ub = sample_haar_unitary(d, 1000 + s);
    const auto a = ProjectiveObservable::from_basis(ua);
    const auto b = ProjectiveObservable::from_basis(ub);
    const double c = overlap(a, b).c;
    CHECK(std::abs(c - overlap(b, a).c) < 1e-15);
    CHECK(std::abs(overlap_transposed(a, b).c - c) < 1e-12);
    CHECK(std::abs(c - oracle::basis_overlap(ua, ub)) < 1e-9);
    CHECK(c >= 1.0 / std::sqrt(static_cast<double>(d)) - 1e-9);
    CHECK(c <= 1.0 + 1e-12);
  }
}

TEST_CASE("parametric sum") {
  for (double a : {0.3, 1.0, 4.0}) CHECK(parametric_sum(0.0, a) == doctest::Approx(1.0));
  CHECK(parametric_sum(std::acos(std::sqrt(0.5)), 2.0) == doctest::Approx(0.5));
  CHECK(parametric_sum(std::acos(std::sqrt(0.4)), 1.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(parametric_sum(std::numbers::pi / 2, 1.0), ValidationError);
  CHECK_THROWS_AS(parametric_sum(-0.1, 1.0), ValidationError);
  // continuous across the breakpoint cos^2 = 1/2
  const double t = std::acos(std::sqrt(0.5));
  CHECK(std::abs(parametric_sum(t - 1e-9, 0.7) - parametric_sum(t + 1e-9, 0.7)) < 1e-6);
}

TEST_CASE("bbar bound") {
  for (EntropyFamily f : {EntropyFamily::tsallis, EntropyFamily::renyi})
    for (double a : {0.3, 1.0, 5.0}) CHECK(bbar_bound(1.0, a, 2.0, f).value == doctest::Approx(0.0));

  const double c = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(bbar_bound(c, 1.0, 1.0, EntropyFamily::renyi).value -
                 oracle::grid_bbar(c, 1.0, 1.0, EntropyFamily::renyi)) < 1e-6);
  CHECK(std::abs(bbar_bound(c, 2.0, 2.0, EntropyFamily::renyi).value -
                 oracle::grid_bbar(c, 2.0, 2.0, EntropyFamily::renyi)) < 1e-6);
  const BoundValue b = bbar_bound(0.3, 0.5, 2.0, EntropyFamily::tsallis);
  REQUIRE(b.argmin_theta.has_value());
  CHECK(*b.argmin_theta >= 0.0);
  CHECK(*b.argmin_theta <= std::acos(0.3));
  CHECK(b.kind == BoundKind::B_T);
  CHECK(std::abs(bbar_objective(*b.argmin_theta, std::acos(0.3), 0.5, 2.0, EntropyFamily::tsallis) - b.value) < 1e-12);

  CHECK_THROWS_AS(bbar_bound(0.0, 1.0, 1.0, EntropyFamily::renyi), ValidationError);
  CHECK_THROWS_AS(bbar_bound(1.5, 1.0, 1.0, EntropyFamily::renyi), ValidationError);
  CHECK_THROWS_AS(bbar_bound(0.5, -1.0, 1.0, EntropyFamily::renyi), ValidationError);
}

TEST_CASE("bbar bound matches the grid oracle on a coarse sweep") {
  for (double c : {0.15, 0.6, 0.95})
    for (double a : {0.3, 1.0, 5.0})
      for (double b : {0.5, 2.0})
        for (EntropyFamily f : {EntropyFamily::tsallis, EntropyFamily::renyi})
          {
          const double v = bbar_bound(c, a, b, f).value;
          CHECK(std::abs(v - oracle::grid_bbar(c, a, b, f, 20000)) < 1e-6);
          CHECK(v <= oracle::grid_bbar(c, a, b, f, 20000, false) + 1e-12);
        }
}

TEST_CASE("round-off remainders do not inflate the bound at small orders") {
  const double c = 1.0 / std::numbers::sqrt2;  // c * c rounds below 1/2
  CHECK(std::abs(bbar_bound(c, 0.3, 0.3, EntropyFamily::renyi).value - std::log(2.0)) < 1e-12);
  CHECK(std::abs(parametric_sum(std::acos(1.0 / std::sqrt(3.0)), 0.3) - 3.0 * std::pow(1.0 / 3.0, 0.3)) < 1e-12);

  const auto z = ProjectiveObservable::from_basis(identity(2));
  const auto x = ProjectiveObservable::from_basis(oracle::hadamard());
  for (double a : {0.3, 0.5}) {
    const TradeoffCertificate cert = certify(x, z, luders_instrument(z), a, a, Relation::Prop2, quick());
    CHECK(cert.passed);
    CHECK(std::abs(cert.margin) < 1e-9);
  }
}

TEST_CASE("MU bounds") {
  const MuBounds one = mu_bounds(1.0, 1.0, 1.0);
  CHECK(one.tsallis.value == doctest::Approx(0.0));
  CHECK(one.renyi.value == doctest::Approx(0.0));
  const double c = 1.0 / std::numbers::sqrt2;
  const MuBounds s = mu_bounds(c, 1.0, 1.0);
  CHECK(std::abs(s.tsallis.value - std::log(2.0)) < 1e-12);
  CHECK(std::abs(s.renyi.value - std::log(2.0)) < 1e-12);
  const MuBounds two = mu_bounds(c, 2.0, 2.0 / 3.0);
  CHECK(two.tsallis.value == doctest::Approx(0.5));
  CHECK(*two.tsallis.mu == doctest::Approx(2.0));
  CHECK_THROWS_AS(mu_bounds(c, 1.0, 2.0), ConstraintViolation);
  CHECK_THROWS_AS(mu_bounds(c, 0.4, 2.0), ConstraintViolation);
  for (double cc : {0.2, 0.5, 0.9}) {
    const MuBounds m = mu_bounds(cc, 1.0, 1.0);
    CHECK(std::abs(m.tsallis.value + 2 * std::log(cc)) < 1e-12);
    CHECK(std::abs(m.renyi.value + 2 * std::log(cc)) < 1e-12);
  }
}

TEST_CASE("admissibility") {
  CHECK_NOTHROW(check_admissible(Relation::Prop1, 5.0, 0.1, 3));
  CHECK_THROWS_AS(check_admissible(Relation::Prop2, 1.5, 1.0, 3), AdmissibilityError);
  CHECK_NOTHROW(check_admissible(Relation::Prop2, 1.5, 2.0, 2));
  CHECK_THROWS_AS(check_admissible(Relation::Prop3, 1.0, 2.0, 2), AdmissibilityError);
  CHECK_NOTHROW(check_admissible(Relation::Prop3, 3.0, 0.6, 4));
  CHECK_THROWS_AS(check_admissible(Relation::Binary, 1.0, 1.0, 3), AdmissibilityError);
  CHECK_THROWS_AS(check_admissible(Relation::Binary, 3.0, 0.6, 2), AdmissibilityError);
  CHECK_THROWS_AS(check_admissible(Relation::Prop1, 0.0, 1.0, 2), AdmissibilityError);
  try {
    check_admissible(Relation::Prop2, 1.5, 1.0, 3);
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("(0, 1]") != std::string::npos);
  }
  CHECK(relation_from_string("Binary") == Relation::Binary);
  CHECK_THROWS_AS(relation_from_string("Prop9"), ValidationError);
}

TEST_CASE("certificate at the qubit saturation point") {
  const auto z = ProjectiveObservable::from_basis(identity(2));
  const auto x = ProjectiveObservable::from_basis(oracle::hadamard());
  const TradeoffCertificate cert = certify(x, z, luders_instrument(z), 1.0, 1.0, Relation::Prop3, quick());
  CHECK(std::abs(cert.noise - std::log(2.0)) < 1e-9);
  CHECK(std::abs(cert.disturbance) < 1e-9);
  CHECK(std::abs(cert.bound.value - std::log(2.0)) < 1e-12);
  CHECK(cert.bound.kind == BoundKind::STND);
  CHECK(std::abs(cert.margin) < 1e-7);
  CHECK(cert.passed);
  CHECK(cert.disturbance_upper_bound);
}

TEST_CASE("trivial instrument passes every relation") {
  const auto x = sample_random_observable(2, {1, 1}, 1);
  const auto z = sample_random_observable(2, {1, 1}, 2);
  TradeoffEvaluator ev(x, z, trivial_instrument(2), quick());
  for (auto [r, a, b] : {std::tuple{Relation::Prop1, 0.5, 2.0}, {Relation::Prop2, 2.0, 0.3},
                         {Relation::Prop3, 2.0, 2.0 / 3.0}, {Relation::Binary, 1.5, 0.75}}) {
    const TradeoffCertificate c = ev.certify(r, a, b);
    CHECK(c.passed);
    CHECK(c.noise == doctest::Approx(relation_family(r) == EntropyFamily::renyi ? std::log(2.0) : alpha_log(2.0, a)));
  }
  CHECK_THROWS_AS(certify(x, z, trivial_instrument(2), 1.5, 1.0, Relation::Prop3), AdmissibilityError);
}

TEST_CASE("certificates serialize losslessly") {
  const auto x = sample_random_observable(3, {1, 1, 1}, 5);
  const auto z = sample_random_observable(3, {2, 1}, 6);
  const auto m = sample_random_instrument(3, 2, 1, 7);
  SearchConfig s = quick();
  s.seed = 123456789012345ull;
  const TradeoffCertificate cert = certify(x, z, m, 0.3, 0.7, Relation::Prop2, s);
  const TradeoffCertificate back = certificate_from_json(Json::parse(to_json(cert).dump()));
  CHECK(back.noise == cert.noise);
  CHECK(back.margin == cert.margin);
  CHECK(back.bound.value == cert.bound.value);
  CHECK(back.seed == cert.seed);
  CHECK(csv_row(back) == csv_row(cert));
  CHECK(csv_header() == "relation,d,alpha,beta,c,noise,disturbance,bound,margin,passed,seed");
  CHECK_THROWS_AS(certificate_from_json(Json::parse("{\"relation\": \"Prop1\"}")), ValidationError);
}
