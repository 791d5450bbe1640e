#include "etoff/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "etoff/errors.hpp"

namespace etoff {

namespace {

using Point = std::vector<double>;

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, Point start, const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) throw ValidationError("nelder_mead: empty parameter vector");
  const double dn = static_cast<double>(n);
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 0.5 / dn;
  const double shrink = n > 1 ? 1.0 - 1.0 / dn : 0.5;

  int evaluations = 0;
  auto eval = [&](const Point& p) {
    ++evaluations;
    const double v = f(p);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Point> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  // Running vertex sum; the centroid of all but the worst vertex is (sum - worst) / n.
  Point sum(n, 0.0), centroid(n), trial(n), trial2(n);
  auto resum = [&] {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (const Point& p : simplex)
      for (std::size_t k = 0; k < n; ++k) sum[k] += p[k];
  };
  resum();
  auto replace = [&](std::size_t i, const Point& p, double v) {
    for (std::size_t k = 0; k < n; ++k) sum[k] += p[k] - simplex[i][k];
    simplex[i] = p;
    values[i] = v;
  };

  int iter = 0;
  bool converged = false;
  std::size_t worst = 0;
  auto along = [&](double t, Point& out) {
    // centroid + t * (centroid - worst)
    for (std::size_t k = 0; k < n; ++k) out[k] = centroid[k] + t * (centroid[k] - simplex[worst][k]);
  };

  for (; iter < options.max_iterations; ++iter) {
    // best: lowest value (first on ties); worst: highest (last on ties); second: next highest
    std::size_t best = 0;
    worst = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (values[i] < values[best]) best = i;
      if (values[i] >= values[worst]) worst = i;
    }
    std::size_t second = worst == 0 ? 1 : 0;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst && values[i] >= values[second]) second = i;
    if (values[worst] - values[best] <= options.f_tolerance) {
      converged = true;
      break;
    }
    if (iter % 512 == 511) resum();  // bound drift of the running sum
    for (std::size_t k = 0; k < n; ++k) centroid[k] = (sum[k] - simplex[worst][k]) / dn;

    along(reflect, trial);
    const double fr = eval(trial);
    if (fr < values[best]) {
      along(expand, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        replace(worst, trial2, fe);
      } else {
        replace(worst, trial, fr);
      }
      continue;
    }
    if (fr < values[second]) {
      replace(worst, trial, fr);
      continue;
    }
    // contraction: outside if the reflection improved on the worst point, inside otherwise
    const bool outside = fr < values[worst];
    along(outside ? reflect * contract : -contract, trial2);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[worst])) {
      replace(worst, trial2, fc);
      continue;
    }
    const Point anchor = simplex[best];
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      Point& p = simplex[i];
      for (std::size_t k = 0; k < n; ++k) p[k] = anchor[k] + shrink * (p[k] - anchor[k]);
      values[i] = eval(p);
    }
    resum();
  }

  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  return {simplex[best], values[best], iter, evaluations, converged};
}

}  // namespace etoff
