#pragma once

// Trade-off certificates: noise + disturbance checked against a lower bound.
//
//   Prop1   Tsallis noise/disturbance, any alpha, beta > 0, bound B_T
//   Prop2   Renyi, alpha, beta in (0, 1] ((0, 2] for qubits), bound B_R
//   Prop3   Tsallis, 1/alpha + 1/beta = 2, bound ln_mu(1/c^2) (-2 ln c at alpha = beta = 1)
//   Binary  Renyi, qubits, 1/alpha + 1/beta = 2 with alpha, beta <= 2, bound -2 ln c

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>

#include "etoff/correction_search.hpp"
#include "etoff/serialization.hpp"
#include "etoff/uncertainty.hpp"

namespace etoff {

enum class Relation { Prop1, Prop2, Prop3, Binary };
std::string_view to_string(Relation relation);
/// Throws ValidationError for an unknown name.
Relation relation_from_string(std::string_view name);
/// Entropy family in which noise and disturbance are measured for the relation.
EntropyFamily relation_family(Relation relation);

/// Margins above -kCertificateSlack pass.
inline constexpr double kCertificateSlack = 1e-7;

bool admissible(Relation relation, double alpha, double beta, Index dim);
/// Throws AdmissibilityError naming the violated constraint.
void check_admissible(Relation relation, double alpha, double beta, Index dim);

struct TradeoffCertificate {
  Relation relation;
  Index dim;
  double alpha;
  double beta;
  double c;
  double noise;
  double disturbance;  // upper bound from the correction search
  BoundValue bound;
  double margin;
  bool passed;
  std::uint64_t seed;
  bool disturbance_upper_bound = true;
  std::string correction_family;
  int search_restarts = 0;
  int search_iterations = 0;
  bool search_converged = true;
};

/// Caches noise per order, the disturbance search per order, and the overlap,
/// so several relations on one instance share work.
class TradeoffEvaluator {
 public:
  TradeoffEvaluator(ProjectiveObservable x, ProjectiveObservable z, QuantumInstrument m,
                    SearchConfig search = {});

  TradeoffCertificate certify(Relation relation, double alpha, double beta);
  double noise_value(const EntropyOrder& order);
  const CorrectionSearchResult& disturbance_result(const EntropyOrder& order);
  [[nodiscard]] const OverlapCharacteristic& overlap_characteristic() const { return overlap_; }
  [[nodiscard]] Index dim() const { return x_.dim(); }

 private:
  using Key = std::pair<int, double>;
  static Key key_of(const EntropyOrder& order);

  ProjectiveObservable x_;
  ProjectiveObservable z_;
  QuantumInstrument m_;
  SearchConfig search_;
  OverlapCharacteristic overlap_;
  std::map<Key, double> noise_cache_;
  std::map<Key, CorrectionSearchResult> disturbance_cache_;
};

TradeoffCertificate certify(const ProjectiveObservable& x, const ProjectiveObservable& z,
                            const QuantumInstrument& m, double alpha, double beta,
                            Relation relation, const SearchConfig& search = {});

/// Bound value used by the relation at overlap c.
BoundValue relation_bound(Relation relation, double c, double alpha, double beta);

Json to_json(const TradeoffCertificate& cert);
TradeoffCertificate certificate_from_json(const Json& j);

/// relation,d,alpha,beta,c,noise,disturbance,bound,margin,passed,seed
std::string csv_header();
/// Reals printed with 9 significant digits.
std::string csv_row(const TradeoffCertificate& cert);

}  // namespace etoff
