#pragma once

// Standard (maximum a posteriori) decision, error probabilities, and the
// bounds that tie conditional entropies to the error of a decision rule.

#include <cstddef>
#include <string_view>
#include <vector>

#include "etoff/entropy.hpp"

namespace etoff {

/// guess[y] is the X index chosen when Y = y.
struct DecisionRule {
  std::vector<std::size_t> guess;
};

struct ErrorReport {
  double p_error;
  double p_success;
  DecisionRule rule;
};

/// MAP rule; ties go to the smallest X index.
ErrorReport standard_decision(const JointDistribution& j);
ErrorReport error_of_rule(const JointDistribution& j, const DecisionRule& rule);

enum class BoundId {
  // lower bounds
  shannon_log,          // -ln(1 - pe) <= H_1(X|Y)
  renyi_log,            // -ln(1 - pe) <= R_a(X|Y), all a
  tsallis_log,          // ln_a(1/(1 - pe)) <= H~_a(X|Y), a in (0, 2]
  tsallis_linear,       // 2 ln_a(2) pe <= H~_a(X|Y), a in (0, 2]; all a when d = 2
  tsallis_dimensional,  // d ln_a(d)/(d - 1) pe <= H~_a(X|Y), a > 2
  binary_renyi_linear,  // d = 2, a >= 1: 2 ln_a(2) pe <= R_a(X|Y)
  binary_renyi_ln2,     // d = 2, a <= 1: 2 ln(2) pe <= R_a(X|Y)
  // upper bounds
  fano,                 // H_1(X|Y) <= h_1(pe) + pe ln(d - 1), any rule
  tsallis_fano_sub,     // a < 1: h_a(pe) + pe^a ln_a(d - 1), any rule
  tsallis_fano_super,   // a > 1: h_a(pe) + pe ln_a(d - 1), any rule
  renyi_fano,           // a >= 1: R_a(X|Y) <= H_1(X|Y) <= Fano, any rule
  renyi_error_sub,      // a < 1: ln((1-pe)^a + (d-1)^(1-a) pe^a)/(1-a), standard rule only
};

std::string_view to_string(BoundId id);

struct BoundEntry {
  BoundId id;
  double value;
};

/// Every lower bound applicable to (alpha, family, |X|), evaluated at the standard error.
std::vector<BoundEntry> lower_bounds(const JointDistribution& j, double alpha, EntropyFamily family);
/// Same, from a known standard-decision error and alphabet size.
std::vector<BoundEntry> lower_bounds(double p_error, std::size_t d, double alpha,
                                     EntropyFamily family);

/// Fano-type upper bounds for `rule`. Throws RuleMismatch when a bound that is stated
/// only for the standard decision is requested with a suboptimal rule.
std::vector<BoundEntry> fano_upper_bounds(const JointDistribution& j, double alpha,
                                          EntropyFamily family, const DecisionRule& rule);
/// Same from the error pair of a rule; `standard` says whether the rule is the MAP rule.
std::vector<BoundEntry> fano_upper_bounds(double p_error, double p_success, std::size_t d,
                                          double alpha, EntropyFamily family, bool standard);

}  // namespace etoff
