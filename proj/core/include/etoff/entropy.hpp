#pragma once

// Classical Renyi / Tsallis / Shannon entropies and their conditional forms.
//
// Conventions shared by every function here:
//   * terms with p = 0 contribute exactly 0 (0 log 0 = 0, 0^a = 0);
//   * |alpha - 1| < kShannonBranch switches to the Shannon formula;
//   * conditioning columns with p(y) = 0 are skipped.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "etoff/errors.hpp"

namespace etoff {

inline constexpr double kShannonBranch = 1e-7;
/// Entries in (-kProbabilityClip, 0) are clipped to zero; larger negatives are errors.
inline constexpr double kProbabilityClip = 1e-12;
inline constexpr double kNormalizationTol = 1e-9;
/// Order used to request the min-entropy from the Renyi functions.
inline constexpr double kInfiniteOrder = std::numeric_limits<double>::infinity();

/// Probability vector over a finite alphabet.
class ProbVector {
 public:
  /// Clips tiny negatives, checks normalization and renormalizes.
  explicit ProbVector(std::vector<double> probs);

  [[nodiscard]] std::span<const double> probs() const { return p_; }
  [[nodiscard]] std::size_t size() const { return p_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return p_[i]; }

 private:
  std::vector<double> p_;
};

/// Joint table p(x, y); rows index X (the estimated variable), columns index Y.
class JointDistribution {
 public:
  explicit JointDistribution(Eigen::MatrixXd table, std::vector<std::string> x_labels = {},
                             std::vector<std::string> y_labels = {});

  [[nodiscard]] const Eigen::MatrixXd& table() const { return table_; }
  [[nodiscard]] std::size_t num_x() const { return static_cast<std::size_t>(table_.rows()); }
  [[nodiscard]] std::size_t num_y() const { return static_cast<std::size_t>(table_.cols()); }
  [[nodiscard]] double operator()(std::size_t x, std::size_t y) const {
    return table_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
  }
  [[nodiscard]] const std::vector<std::string>& x_labels() const { return x_labels_; }
  [[nodiscard]] const std::vector<std::string>& y_labels() const { return y_labels_; }

  [[nodiscard]] std::vector<double> marginal_x() const;
  [[nodiscard]] std::vector<double> marginal_y() const;
  /// p(. | y); undefined (throws ZeroProbabilityOutcome) when p(y) = 0.
  [[nodiscard]] ProbVector conditional_given(std::size_t y) const;

  /// Joint of X with the coarse-grained Y where columns a and b are merged.
  [[nodiscard]] JointDistribution merge_columns(std::size_t a, std::size_t b) const;

 private:
  Eigen::MatrixXd table_;
  std::vector<std::string> x_labels_;
  std::vector<std::string> y_labels_;
};

enum class EntropyFamily { renyi, tsallis, shannon };

std::string_view to_string(EntropyFamily family);
EntropyFamily entropy_family_from_string(std::string_view name);

/// Entropy order together with the family it parametrizes.
struct EntropyOrder {
  double alpha;
  EntropyFamily family;

  /// Throws ValidationError unless alpha > 0 (and alpha ~ 1 for Shannon).
  EntropyOrder(double alpha, EntropyFamily family);
};

/// ln_alpha(xi) = (xi^(1-alpha) - 1) / (1 - alpha), ln(xi) in the limit.
double alpha_log(double xi, double alpha);

double shannon_entropy(std::span<const double> p);
double shannon_entropy(const ProbVector& p);
/// alpha = kInfiniteOrder gives the min-entropy.
double renyi_entropy(const ProbVector& p, double alpha);
double tsallis_entropy(const ProbVector& p, double alpha);
double min_entropy(const ProbVector& p);

/// Registry of the monotone maps f with f(1) = 0 used by E^f_alpha.
enum class MonotoneMap {
  log,              // f(xi) = ln xi, gives Renyi
  shifted_identity  // f(xi) = xi - 1, gives Tsallis
};
MonotoneMap monotone_map_from_id(std::string_view id);
double apply_monotone_map(MonotoneMap f, double xi);

/// E^f_alpha(p) = f(sum p^alpha) / (1 - alpha).
double generalized_entropy(const ProbVector& p, double alpha, MonotoneMap f);

/// h_alpha(q): Tsallis entropy of (q, 1 - q).
double binary_tsallis(double q, double alpha);
/// Same, with the complement supplied separately so that q close to 1 keeps precision.
double binary_tsallis(double q, double q_complement, double alpha);

// Conditional forms. The Eigen overloads take the raw joint table (rows X, columns Y)
// and skip validation; they exist for inner loops that build tables themselves.

/// sum_y p(y)^alpha H_alpha(X|y); satisfies the chain rule.
double cond_tsallis_first(const JointDistribution& j, double alpha);
/// sum_y p(y) H_alpha(X|y); the form used for noise and disturbance.
double cond_tsallis_second(const JointDistribution& j, double alpha);
double cond_tsallis_second(const Eigen::MatrixXd& table, double alpha);
/// sum_y p(y) R_alpha(X|y); alpha = kInfiniteOrder gives the conditional min-entropy.
double cond_renyi(const JointDistribution& j, double alpha);
double cond_renyi(const Eigen::MatrixXd& table, double alpha);
double cond_shannon(const JointDistribution& j);
double cond_shannon(const Eigen::MatrixXd& table);

/// Entropy of the given family and order.
double entropy(const ProbVector& p, const EntropyOrder& order);
/// Tsallis -> second form, Renyi -> cond_renyi, Shannon -> cond_shannon.
double conditional_entropy(const JointDistribution& j, const EntropyOrder& order);
double conditional_entropy(const Eigen::MatrixXd& table, const EntropyOrder& order);

/// Joint entropy of the (X, Y) pair read as a single variable.
double joint_tsallis(const JointDistribution& j, double alpha);

}  // namespace etoff
