#pragma once

#include <functional>
#include <span>
#include <vector>

namespace etoff {

struct NelderMeadOptions {
  int max_iterations = 2000;
  /// Stop once max f - min f over the simplex falls below this.
  double f_tolerance = 1e-12;
  /// Edge length of the initial right-angled simplex.
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value;
  int iterations;
  int evaluations;
  bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Downhill simplex with the dimension-adaptive coefficients of Gao and Han
/// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
/// The returned value never exceeds f(start).
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> start,
                             const NelderMeadOptions& options = {});

}  // namespace etoff
