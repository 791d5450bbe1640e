#include "etoff/decision.hpp"

#include <cmath>
#include <sstream>

namespace etoff {

namespace {

bool near_one(double alpha) { return std::abs(alpha - 1.0) < kShannonBranch; }

// 0^a = 0 for the error terms, matching the 0 log 0 convention.
double pow0(double base, double a) { return base > 0.0 ? std::pow(base, a) : 0.0; }

double ln_alpha_dminus1(std::size_t d, double alpha) {
  return d > 1 ? alpha_log(static_cast<double>(d - 1), alpha) : 0.0;
}

double shannon_fano(double pe, double ps, std::size_t d) {
  const double log_rest = d > 2 ? std::log(static_cast<double>(d - 1)) : 0.0;
  return binary_tsallis(pe, ps, 1.0) + pe * log_rest;
}

}  // namespace

std::string_view to_string(BoundId id) {
  switch (id) {
    case BoundId::shannon_log:
      return "shannon_log";
    case BoundId::renyi_log:
      return "renyi_log";
    case BoundId::tsallis_log:
      return "tsallis_log";
    case BoundId::tsallis_linear:
      return "tsallis_linear";
    case BoundId::tsallis_dimensional:
      return "tsallis_dimensional";
    case BoundId::binary_renyi_linear:
      return "binary_renyi_linear";
    case BoundId::binary_renyi_ln2:
      return "binary_renyi_ln2";
    case BoundId::fano:
      return "fano";
    case BoundId::tsallis_fano_sub:
      return "tsallis_fano_sub";
    case BoundId::tsallis_fano_super:
      return "tsallis_fano_super";
    case BoundId::renyi_fano:
      return "renyi_fano";
    case BoundId::renyi_error_sub:
      return "renyi_error_sub";
  }
  return "unknown";
}

ErrorReport standard_decision(const JointDistribution& j) {
  const auto& t = j.table();
  DecisionRule rule;
  rule.guess.resize(j.num_y());
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    Eigen::Index best = 0;
    for (Eigen::Index x = 1; x < t.rows(); ++x)
      if (t(x, y) > t(best, y)) best = x;  // strict: smallest index wins ties
    rule.guess[static_cast<std::size_t>(y)] = static_cast<std::size_t>(best);
  }
  return error_of_rule(j, rule);
}

ErrorReport error_of_rule(const JointDistribution& j, const DecisionRule& rule) {
  if (rule.guess.size() != j.num_y()) {
    std::ostringstream os;
    os << "error_of_rule: rule covers " << rule.guess.size() << " outcomes, joint has "
       << j.num_y();
    throw DimensionMismatch(os.str());
  }
  const auto& t = j.table();
  // Both sums are accumulated directly; forming 1 - p_success would erase small
  // error masses that the power terms in the Fano bounds amplify.
  double pe = 0.0;
  double ps = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const auto g = static_cast<Eigen::Index>(rule.guess[static_cast<std::size_t>(y)]);
    if (g >= t.rows()) throw DimensionMismatch("error_of_rule: guess outside the X alphabet");
    for (Eigen::Index x = 0; x < t.rows(); ++x) (x == g ? ps : pe) += t(x, y);
  }
  return {pe, ps, rule};
}

std::vector<BoundEntry> lower_bounds(double pe, std::size_t d, double alpha,
                                     EntropyFamily family) {
  std::vector<BoundEntry> out;
  const double log_term = -std::log1p(-pe);
  switch (family) {
    case EntropyFamily::shannon:
      out.push_back({BoundId::shannon_log, log_term});
      break;
    case EntropyFamily::renyi:
      out.push_back({BoundId::renyi_log, log_term});
      if (d == 2) {
        if (alpha >= 1.0 - kShannonBranch)
          out.push_back({BoundId::binary_renyi_linear, 2.0 * alpha_log(2.0, alpha) * pe});
        if (alpha <= 1.0 + kShannonBranch)
          out.push_back({BoundId::binary_renyi_ln2, 2.0 * std::log(2.0) * pe});
      }
      break;
    case EntropyFamily::tsallis:
      if (alpha <= 2.0) {
        out.push_back({BoundId::tsallis_log, alpha_log(1.0 / (1.0 - pe), alpha)});
        out.push_back({BoundId::tsallis_linear, 2.0 * alpha_log(2.0, alpha) * pe});
      } else {
        const double dd = static_cast<double>(d);
        if (d > 1)
          out.push_back(
              {BoundId::tsallis_dimensional, dd * alpha_log(dd, alpha) / (dd - 1.0) * pe});
        if (d == 2) out.push_back({BoundId::tsallis_linear, 2.0 * alpha_log(2.0, alpha) * pe});
      }
      break;
  }
  return out;
}

std::vector<BoundEntry> lower_bounds(const JointDistribution& j, double alpha,
                                     EntropyFamily family) {
  return lower_bounds(standard_decision(j).p_error, j.num_x(), alpha, family);
}

std::vector<BoundEntry> fano_upper_bounds(double pe, double ps, std::size_t d, double alpha,
                                          EntropyFamily family, bool standard) {
  std::vector<BoundEntry> out;
  switch (family) {
    case EntropyFamily::shannon:
      out.push_back({BoundId::fano, shannon_fano(pe, ps, d)});
      break;
    case EntropyFamily::tsallis:
      if (near_one(alpha)) {
        out.push_back({BoundId::fano, shannon_fano(pe, ps, d)});
      } else if (alpha < 1.0) {
        out.push_back({BoundId::tsallis_fano_sub,
                       binary_tsallis(pe, ps, alpha) + pow0(pe, alpha) * ln_alpha_dminus1(d, alpha)});
      } else {
        out.push_back({BoundId::tsallis_fano_super,
                       binary_tsallis(pe, ps, alpha) + pe * ln_alpha_dminus1(d, alpha)});
      }
      break;
    case EntropyFamily::renyi:
      if (alpha >= 1.0 - kShannonBranch) {
        out.push_back({BoundId::renyi_fano, shannon_fano(pe, ps, d)});
      } else {
        if (!standard) {
          throw RuleMismatch(
              "fano_upper_bounds: the Renyi bound for alpha < 1 is stated for the standard "
              "decision only");
        }
        const double rest = d > 1 ? std::pow(static_cast<double>(d - 1), 1.0 - alpha) : 0.0;
        out.push_back({BoundId::renyi_error_sub,
                       std::log(pow0(ps, alpha) + rest * pow0(pe, alpha)) / (1.0 - alpha)});
      }
      break;
  }
  return out;
}

std::vector<BoundEntry> fano_upper_bounds(const JointDistribution& j, double alpha,
                                          EntropyFamily family, const DecisionRule& rule) {
  const ErrorReport r = error_of_rule(j, rule);
  const ErrorReport best = standard_decision(j);
  const bool standard = r.p_error <= best.p_error + 1e-12;
  return fano_upper_bounds(r.p_error, r.p_success, j.num_x(), alpha, family, standard);
}

}  // namespace etoff
