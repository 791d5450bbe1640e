#include "etoff/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace etoff {

namespace {

bool near_one(double alpha) { return std::abs(alpha - 1.0) < kShannonBranch; }

void require_order(double alpha, const char* what) {
  if (!(alpha > 0.0) || std::isnan(alpha)) {
    std::ostringstream os;
    os << what << ": order must be positive, got " << alpha;
    throw ValidationError(os.str());
  }
}

double power_sum(std::span<const double> p, double alpha) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s += std::pow(v, alpha);
  return s;
}

double max_entry(std::span<const double> p) { return *std::max_element(p.begin(), p.end()); }

// Column entropies on an unnormalized column with total mass `mass` > 0.
double column_shannon(const Eigen::MatrixXd& t, Eigen::Index y, double mass) {
  double h = 0.0;
  for (Eigen::Index x = 0; x < t.rows(); ++x) {
    const double v = t(x, y);
    if (v > 0.0) {
      const double q = v / mass;
      h -= q * std::log(q);
    }
  }
  return h;
}

double column_power_sum(const Eigen::MatrixXd& t, Eigen::Index y, double mass, double alpha) {
  double s = 0.0;
  for (Eigen::Index x = 0; x < t.rows(); ++x) {
    const double v = t(x, y);
    if (v > 0.0) s += std::pow(v / mass, alpha);
  }
  return s;
}

double column_max(const Eigen::MatrixXd& t, Eigen::Index y, double mass) {
  return t.col(y).maxCoeff() / mass;
}

double column_mass(const Eigen::MatrixXd& t, Eigen::Index y) {
  double m = 0.0;
  for (Eigen::Index x = 0; x < t.rows(); ++x) m += std::max(t(x, y), 0.0);
  return m;
}

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

}  // namespace

ProbVector::ProbVector(std::vector<double> probs) : p_(std::move(probs)) {
  if (p_.empty()) throw ValidationError("ProbVector: empty");
  double sum = 0.0;
  for (double& v : p_) {
    if (std::isnan(v) || v < -kProbabilityClip) {
      std::ostringstream os;
      os << "ProbVector: invalid entry " << v;
      throw ValidationError(os.str());
    }
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (!(sum > 0.0)) throw ValidationError("ProbVector: all-zero vector");
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os << "ProbVector: entries sum to " << sum;
    throw ValidationError(os.str());
  }
  for (double& v : p_) v /= sum;
}

JointDistribution::JointDistribution(Eigen::MatrixXd table, std::vector<std::string> x_labels,
                                     std::vector<std::string> y_labels)
    : table_(std::move(table)), x_labels_(std::move(x_labels)), y_labels_(std::move(y_labels)) {
  if (table_.size() == 0) throw ValidationError("JointDistribution: empty table");
  if (!table_.allFinite()) throw ValidationError("JointDistribution: non-finite entry");
  if (table_.minCoeff() < -kProbabilityClip) {
    std::ostringstream os;
    os << "JointDistribution: negative entry " << table_.minCoeff();
    throw ValidationError(os.str());
  }
  table_ = table_.cwiseMax(0.0);
  const double sum = table_.sum();
  if (std::abs(sum - 1.0) > kNormalizationTol) {
    std::ostringstream os;
    os << "JointDistribution: entries sum to " << sum;
    throw ValidationError(os.str());
  }
  table_ /= sum;
  if (x_labels_.empty()) x_labels_ = default_labels(num_x());
  if (y_labels_.empty()) y_labels_ = default_labels(num_y());
  if (x_labels_.size() != num_x() || y_labels_.size() != num_y()) {
    throw DimensionMismatch("JointDistribution: label count does not match table shape");
  }
}

std::vector<double> JointDistribution::marginal_x() const {
  std::vector<double> out(num_x());
  for (std::size_t x = 0; x < num_x(); ++x) out[x] = table_.row(static_cast<Eigen::Index>(x)).sum();
  return out;
}

std::vector<double> JointDistribution::marginal_y() const {
  std::vector<double> out(num_y());
  for (std::size_t y = 0; y < num_y(); ++y) out[y] = table_.col(static_cast<Eigen::Index>(y)).sum();
  return out;
}

ProbVector JointDistribution::conditional_given(std::size_t y) const {
  const auto col = table_.col(static_cast<Eigen::Index>(y));
  const double mass = col.sum();
  if (!(mass > 0.0)) throw ZeroProbabilityOutcome("conditional_given: p(y) = 0");
  std::vector<double> out(num_x());
  for (std::size_t x = 0; x < num_x(); ++x) out[x] = col(static_cast<Eigen::Index>(x)) / mass;
  return ProbVector(std::move(out));
}

JointDistribution JointDistribution::merge_columns(std::size_t a, std::size_t b) const {
  if (a >= num_y() || b >= num_y() || a == b) {
    throw ValidationError("merge_columns: invalid column pair");
  }
  const std::size_t keep = std::min(a, b);
  const std::size_t drop = std::max(a, b);
  Eigen::MatrixXd out(table_.rows(), table_.cols() - 1);
  std::vector<std::string> labels;
  Eigen::Index c = 0;
  for (std::size_t y = 0; y < num_y(); ++y) {
    if (y == drop) continue;
    out.col(c) = table_.col(static_cast<Eigen::Index>(y));
    if (y == keep) {
      out.col(c) += table_.col(static_cast<Eigen::Index>(drop));
      labels.push_back(y_labels_[keep] + "+" + y_labels_[drop]);
    } else {
      labels.push_back(y_labels_[y]);
    }
    ++c;
  }
  return JointDistribution(std::move(out), x_labels_, std::move(labels));
}

std::string_view to_string(EntropyFamily family) {
  switch (family) {
    case EntropyFamily::renyi:
      return "renyi";
    case EntropyFamily::tsallis:
      return "tsallis";
    case EntropyFamily::shannon:
      return "shannon";
  }
  return "unknown";
}

EntropyFamily entropy_family_from_string(std::string_view name) {
  if (name == "renyi" || name == "Renyi" || name == "R") return EntropyFamily::renyi;
  if (name == "tsallis" || name == "Tsallis" || name == "T") return EntropyFamily::tsallis;
  if (name == "shannon" || name == "Shannon") return EntropyFamily::shannon;
  throw ValidationError("unknown entropy family '" + std::string(name) + "'");
}

EntropyOrder::EntropyOrder(double a, EntropyFamily f) : alpha(a), family(f) {
  require_order(alpha, "EntropyOrder");
  if (family == EntropyFamily::shannon && !near_one(alpha)) {
    throw ValidationError("EntropyOrder: Shannon family requires alpha = 1");
  }
}

double alpha_log(double xi, double alpha) {
  if (!(xi > 0.0)) {
    std::ostringstream os;
    os << "alpha_log: argument must be positive, got " << xi;
    throw ValidationError(os.str());
  }
  require_order(alpha, "alpha_log");
  if (near_one(alpha)) return std::log(xi);
  return std::expm1((1.0 - alpha) * std::log(xi)) / (1.0 - alpha);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

double shannon_entropy(const ProbVector& p) { return shannon_entropy(p.probs()); }

double min_entropy(const ProbVector& p) { return -std::log(max_entry(p.probs())); }

double renyi_entropy(const ProbVector& p, double alpha) {
  if (std::isinf(alpha) && alpha > 0) return min_entropy(p);
  require_order(alpha, "renyi_entropy");
  if (near_one(alpha)) return shannon_entropy(p);
  return std::max(0.0, std::log(power_sum(p.probs(), alpha)) / (1.0 - alpha));
}

double tsallis_entropy(const ProbVector& p, double alpha) {
  require_order(alpha, "tsallis_entropy");
  if (near_one(alpha)) return shannon_entropy(p);
  return std::max(0.0, (power_sum(p.probs(), alpha) - 1.0) / (1.0 - alpha));
}

MonotoneMap monotone_map_from_id(std::string_view id) {
  if (id == "renyi" || id == "log" || id == "R") return MonotoneMap::log;
  if (id == "tsallis" || id == "shifted_identity" || id == "T") return MonotoneMap::shifted_identity;
  throw ValidationError("unknown monotone map id '" + std::string(id) + "'");
}

double apply_monotone_map(MonotoneMap f, double xi) {
  switch (f) {
    case MonotoneMap::log:
      return std::log(xi);
    case MonotoneMap::shifted_identity:
      return xi - 1.0;
  }
  throw ValidationError("apply_monotone_map: unknown map");
}

double generalized_entropy(const ProbVector& p, double alpha, MonotoneMap f) {
  require_order(alpha, "generalized_entropy");
  // f'(1) = 1 for both registered maps, so the alpha -> 1 limit is Shannon.
  if (near_one(alpha)) return shannon_entropy(p);
  return std::max(0.0, apply_monotone_map(f, power_sum(p.probs(), alpha)) / (1.0 - alpha));
}

double binary_tsallis(double q, double alpha) {
  if (!(q >= 0.0 && q <= 1.0)) {
    std::ostringstream os;
    os << "binary_tsallis: q must lie in [0, 1], got " << q;
    throw ValidationError(os.str());
  }
  return binary_tsallis(q, 1.0 - q, alpha);
}

double binary_tsallis(double q, double q_complement, double alpha) {
  require_order(alpha, "binary_tsallis");
  const std::vector<double> p{q, q_complement};
  if (near_one(alpha)) return shannon_entropy(p);
  return std::max(0.0, (power_sum(p, alpha) - 1.0) / (1.0 - alpha));
}

double cond_tsallis_first(const JointDistribution& j, double alpha) {
  require_order(alpha, "cond_tsallis_first");
  const auto& t = j.table();
  double h = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double mass = column_mass(t, y);
    if (!(mass > 0.0)) continue;
    const double hy = near_one(alpha) ? column_shannon(t, y, mass)
                                      : (column_power_sum(t, y, mass, alpha) - 1.0) / (1.0 - alpha);
    h += (near_one(alpha) ? mass : std::pow(mass, alpha)) * hy;
  }
  return std::max(0.0, h);
}

double cond_tsallis_second(const Eigen::MatrixXd& t, double alpha) {
  require_order(alpha, "cond_tsallis_second");
  double h = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double mass = column_mass(t, y);
    if (!(mass > 0.0)) continue;
    const double hy = near_one(alpha) ? column_shannon(t, y, mass)
                                      : (column_power_sum(t, y, mass, alpha) - 1.0) / (1.0 - alpha);
    h += mass * hy;
  }
  return std::max(0.0, h);
}

double cond_tsallis_second(const JointDistribution& j, double alpha) {
  return cond_tsallis_second(j.table(), alpha);
}

double cond_renyi(const Eigen::MatrixXd& t, double alpha) {
  const bool infinite = std::isinf(alpha) && alpha > 0;
  if (!infinite) require_order(alpha, "cond_renyi");
  double h = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double mass = column_mass(t, y);
    if (!(mass > 0.0)) continue;
    double hy;
    if (infinite) {
      hy = -std::log(column_max(t, y, mass));
    } else if (near_one(alpha)) {
      hy = column_shannon(t, y, mass);
    } else {
      hy = std::log(column_power_sum(t, y, mass, alpha)) / (1.0 - alpha);
    }
    h += mass * hy;
  }
  return std::max(0.0, h);
}

double cond_renyi(const JointDistribution& j, double alpha) { return cond_renyi(j.table(), alpha); }

double cond_shannon(const Eigen::MatrixXd& t) {
  double h = 0.0;
  for (Eigen::Index y = 0; y < t.cols(); ++y) {
    const double mass = column_mass(t, y);
    if (mass > 0.0) h += mass * column_shannon(t, y, mass);
  }
  return std::max(0.0, h);
}

double cond_shannon(const JointDistribution& j) { return cond_shannon(j.table()); }

double entropy(const ProbVector& p, const EntropyOrder& order) {
  switch (order.family) {
    case EntropyFamily::renyi:
      return renyi_entropy(p, order.alpha);
    case EntropyFamily::tsallis:
      return tsallis_entropy(p, order.alpha);
    case EntropyFamily::shannon:
      return shannon_entropy(p);
  }
  throw ValidationError("entropy: unknown family");
}

double conditional_entropy(const Eigen::MatrixXd& table, const EntropyOrder& order) {
  switch (order.family) {
    case EntropyFamily::renyi:
      return cond_renyi(table, order.alpha);
    case EntropyFamily::tsallis:
      return cond_tsallis_second(table, order.alpha);
    case EntropyFamily::shannon:
      return cond_shannon(table);
  }
  throw ValidationError("conditional_entropy: unknown family");
}

double conditional_entropy(const JointDistribution& j, const EntropyOrder& order) {
  return conditional_entropy(j.table(), order);
}

double joint_tsallis(const JointDistribution& j, double alpha) {
  const auto& t = j.table();
  std::vector<double> flat(t.data(), t.data() + t.size());
  return tsallis_entropy(ProbVector(std::move(flat)), alpha);
}

}  // namespace etoff
