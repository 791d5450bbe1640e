#include "etoff/certificate.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "etoff/noise_disturbance.hpp"

namespace etoff {

namespace {

std::string describe(double alpha, double beta, Index dim) {
  std::ostringstream os;
  os << " (alpha = " << alpha << ", beta = " << beta << ", d = " << dim << ")";
  return os.str();
}

std::optional<std::string> violation(Relation relation, double alpha, double beta, Index dim) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    return "orders must be finite and positive";
  }
  const double renyi_cap = dim == 2 ? 2.0 : 1.0;
  switch (relation) {
    case Relation::Prop1:
      return std::nullopt;
    case Relation::Prop2:
      if (alpha > renyi_cap + kShannonBranch || beta > renyi_cap + kShannonBranch) {
        return dim == 2 ? "Prop2 needs alpha, beta in (0, 2] at d = 2"
                        : "Prop2 needs alpha, beta in (0, 1] at d > 2";
      }
      return std::nullopt;
    case Relation::Prop3:
      if (!conjugate_pair(alpha, beta)) return "Prop3 needs 1/alpha + 1/beta = 2";
      return std::nullopt;
    case Relation::Binary:
      if (dim != 2) return "Binary needs d = 2";
      if (!conjugate_pair(alpha, beta)) return "Binary needs 1/alpha + 1/beta = 2";
      if (alpha > 2.0 + kShannonBranch || beta > 2.0 + kShannonBranch) {
        return "Binary needs alpha, beta in (0, 2]";
      }
      return std::nullopt;
  }
  return "unknown relation";
}

std::string fmt(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::Prop1:
      return "Prop1";
    case Relation::Prop2:
      return "Prop2";
    case Relation::Prop3:
      return "Prop3";
    case Relation::Binary:
      return "Binary";
  }
  return "unknown";
}

Relation relation_from_string(std::string_view name) {
  for (Relation r : {Relation::Prop1, Relation::Prop2, Relation::Prop3, Relation::Binary})
    if (to_string(r) == name) return r;
  throw ValidationError("unknown relation: " + std::string(name) +
                        " (expected Prop1, Prop2, Prop3 or Binary)");
}

EntropyFamily relation_family(Relation relation) {
  return relation == Relation::Prop1 || relation == Relation::Prop3 ? EntropyFamily::tsallis
                                                                    : EntropyFamily::renyi;
}

bool admissible(Relation relation, double alpha, double beta, Index dim) {
  return !violation(relation, alpha, beta, dim);
}

void check_admissible(Relation relation, double alpha, double beta, Index dim) {
  if (auto v = violation(relation, alpha, beta, dim)) {
    throw AdmissibilityError(*v + describe(alpha, beta, dim));
  }
}

BoundValue relation_bound(Relation relation, double c, double alpha, double beta) {
  switch (relation) {
    case Relation::Prop1:
      return bbar_bound(c, alpha, beta, EntropyFamily::tsallis);
    case Relation::Prop2:
      return bbar_bound(c, alpha, beta, EntropyFamily::renyi);
    case Relation::Prop3: {
      MuBounds mu = mu_bounds(c, alpha, beta);
      if (std::abs(alpha - 1.0) < kShannonBranch && std::abs(beta - 1.0) < kShannonBranch) {
        mu.renyi.kind = BoundKind::STND;
        return mu.renyi;
      }
      return mu.tsallis;
    }
    case Relation::Binary: {
      MuBounds mu = mu_bounds(c, alpha, beta);
      mu.renyi.kind = BoundKind::STND_R1;
      return mu.renyi;
    }
  }
  throw ValidationError("relation_bound: unknown relation");
}

TradeoffEvaluator::TradeoffEvaluator(ProjectiveObservable x, ProjectiveObservable z,
                                     QuantumInstrument m, SearchConfig search)
    : x_(std::move(x)), z_(std::move(z)), m_(std::move(m)), search_(search), overlap_(overlap(x_, z_)) {
  if (x_.dim() != m_.dim_in()) {
    throw DimensionMismatch("certify: observables and instrument differ in dimension");
  }
}

TradeoffEvaluator::Key TradeoffEvaluator::key_of(const EntropyOrder& order) {
  if (std::abs(order.alpha - 1.0) < kShannonBranch) return {static_cast<int>(EntropyFamily::shannon), 1.0};
  return {static_cast<int>(order.family), order.alpha};
}

double TradeoffEvaluator::noise_value(const EntropyOrder& order) {
  const Key k = key_of(order);
  auto it = noise_cache_.find(k);
  if (it == noise_cache_.end()) it = noise_cache_.emplace(k, noise(x_, m_, order)).first;
  return it->second;
}

const CorrectionSearchResult& TradeoffEvaluator::disturbance_result(const EntropyOrder& order) {
  const Key k = key_of(order);
  auto it = disturbance_cache_.find(k);
  if (it == disturbance_cache_.end()) {
    it = disturbance_cache_.emplace(k, disturbance(z_, m_, order, search_)).first;
  }
  return it->second;
}

TradeoffCertificate TradeoffEvaluator::certify(Relation relation, double alpha, double beta) {
  check_admissible(relation, alpha, beta, dim());
  const EntropyFamily family = relation_family(relation);
  const double n = noise_value(EntropyOrder(alpha, family));
  const CorrectionSearchResult& dist = disturbance_result(EntropyOrder(beta, family));
  const BoundValue bound = relation_bound(relation, overlap_.c, alpha, beta);

  TradeoffCertificate cert{relation, dim(), alpha, beta, overlap_.c, n, dist.best_value, bound,
                           0.0, false, search_.seed, true, {}, 0, 0, true};
  cert.margin = n + dist.best_value - bound.value;
  cert.passed = cert.margin >= -kCertificateSlack;
  cert.disturbance_upper_bound = dist.upper_bound;
  cert.correction_family = std::string(to_string(dist.family));
  cert.search_restarts = dist.restarts;
  cert.search_iterations = dist.iterations;
  cert.search_converged = dist.converged;
  return cert;
}

TradeoffCertificate certify(const ProjectiveObservable& x, const ProjectiveObservable& z,
                            const QuantumInstrument& m, double alpha, double beta,
                            Relation relation, const SearchConfig& search) {
  check_admissible(relation, alpha, beta, x.dim());
  TradeoffEvaluator ev(x, z, m, search);
  return ev.certify(relation, alpha, beta);
}

Json to_json(const TradeoffCertificate& cert) {
  Json bound{{"id", std::string(to_string(cert.bound.kind))},
             {"value", cert.bound.value},
             {"alpha", cert.bound.alpha},
             {"beta", cert.bound.beta},
             {"c", cert.bound.c}};
  bound["mu"] = cert.bound.mu ? Json(*cert.bound.mu) : Json(nullptr);
  bound["argmin_theta"] = cert.bound.argmin_theta ? Json(*cert.bound.argmin_theta) : Json(nullptr);
  return Json{{"relation", std::string(to_string(cert.relation))},
              {"d", cert.dim},
              {"alpha", cert.alpha},
              {"beta", cert.beta},
              {"c", cert.c},
              {"noise", cert.noise},
              {"disturbance", cert.disturbance},
              {"disturbance_upper_bound", cert.disturbance_upper_bound},
              {"bound", bound},
              {"margin", cert.margin},
              {"passed", cert.passed},
              {"seed", cert.seed},
              {"search",
               {{"correction_family", cert.correction_family},
                {"restarts", cert.search_restarts},
                {"iterations", cert.search_iterations},
                {"converged", cert.search_converged}}}};
}

TradeoffCertificate certificate_from_json(const Json& j) {
  try {
    const Json& b = j.at("bound");
    BoundValue bound{bound_kind_from_string(b.at("id").get<std::string>()),
                     b.at("value").get<double>(),
                     b.at("alpha").get<double>(),
                     b.at("beta").get<double>(),
                     std::nullopt,
                     b.at("c").get<double>(),
                     std::nullopt};
    if (b.contains("mu") && !b["mu"].is_null()) bound.mu = b["mu"].get<double>();
    if (b.contains("argmin_theta") && !b["argmin_theta"].is_null()) {
      bound.argmin_theta = b["argmin_theta"].get<double>();
    }
    TradeoffCertificate cert{relation_from_string(j.at("relation").get<std::string>()),
                             j.at("d").get<Index>(),
                             j.at("alpha").get<double>(),
                             j.at("beta").get<double>(),
                             j.at("c").get<double>(),
                             j.at("noise").get<double>(),
                             j.at("disturbance").get<double>(),
                             bound,
                             j.at("margin").get<double>(),
                             j.at("passed").get<bool>(),
                             j.at("seed").get<std::uint64_t>(),
                             true, {}, 0, 0, true};
    cert.disturbance_upper_bound = j.value("disturbance_upper_bound", true);
    if (j.contains("search")) {
      const Json& s = j["search"];
      cert.correction_family = s.value("correction_family", std::string());
      cert.search_restarts = s.value("restarts", 0);
      cert.search_iterations = s.value("iterations", 0);
      cert.search_converged = s.value("converged", true);
    }
    return cert;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("certificate JSON: ") + e.what());
  }
}

std::string csv_header() { return "relation,d,alpha,beta,c,noise,disturbance,bound,margin,passed,seed"; }

std::string csv_row(const TradeoffCertificate& cert) {
  std::ostringstream os;
  os << to_string(cert.relation) << ',' << cert.dim << ',' << fmt(cert.alpha, 9) << ','
     << fmt(cert.beta, 9) << ',' << fmt(cert.c, 9) << ',' << fmt(cert.noise, 9) << ','
     << fmt(cert.disturbance, 9) << ',' << fmt(cert.bound.value, 9) << ',' << fmt(cert.margin, 9)
     << ',' << (cert.passed ? "true" : "false") << ',' << cert.seed;
  return os.str();
}

}  // namespace etoff
