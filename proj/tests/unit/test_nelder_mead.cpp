#include <doctest.h>

#include <cmath>

#include "etoff/errors.hpp"
#include "etoff/nelder_mead.hpp"

using namespace etoff;

TEST_CASE("Nelder-Mead minimizes a quadratic") {
  const Objective f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0) + 3.0;
  };
  const NelderMeadResult r = nelder_mead(f, {0.0, 0.0});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("Nelder-Mead handles Rosenbrock in a few dimensions") {
  const Objective f = [](std::span<const double> x) {
    double s = 0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
      s += 100 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1 - x[i], 2);
    return s;
  };
  NelderMeadOptions o;
  o.max_iterations = 20000;
  o.f_tolerance = 1e-14;
  const NelderMeadResult r = nelder_mead(f, {-1.2, 1.0, 0.5}, o);
  CHECK(r.value < 1e-6);
}

TEST_CASE("Nelder-Mead never returns worse than the start") {
  const Objective f = [](std::span<const double> x) { return std::sin(5 * x[0]) + std::cos(3 * x[1]) + x[2] * x[2]; };
  NelderMeadOptions o;
  o.max_iterations = 3;
  const std::vector<double> start{0.3, -0.2, 0.1};
  CHECK(nelder_mead(f, start, o).value <= f(start));
  o.max_iterations = 0;
  const NelderMeadResult none = nelder_mead(f, start, o);
  CHECK_FALSE(none.converged);
  CHECK(none.value <= f(start));
}

TEST_CASE("Nelder-Mead treats NaN as infinitely bad") {
  const Objective f = [](std::span<const double> x) { return x[0] < 0 ? std::nan("") : (x[0] - 0.5) * (x[0] - 0.5); };
  const NelderMeadResult r = nelder_mead(f, {0.1});
  CHECK(std::isfinite(r.value));
  CHECK(r.x[0] == doctest::Approx(0.5).epsilon(1e-3));
  CHECK_THROWS_AS(nelder_mead(f, {}), ValidationError);
}
