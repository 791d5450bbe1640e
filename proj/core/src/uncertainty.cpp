#include "etoff/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace etoff {

namespace {

void require_c(double c) {
  if (!(c > 0.0 && c <= 1.0 + 1e-12)) {
    std::ostringstream os;
    os << "overlap characteristic must lie in (0, 1], got " << c;
    throw ValidationError(os.str());
  }
}

double pow0(double base, double a) { return base > 0.0 ? std::pow(base, a) : 0.0; }

constexpr double kRemainderFloor = 1e-14;

struct Split {
  double k;
  double t;  // cos^2
  double r;  // 1 - k t
};

Split split(double theta) {
  const double t = std::cos(theta) * std::cos(theta);
  double k = std::floor(1.0 / t);
  if (k < 1.0) k = 1.0;
  // At cos^2 = 1/k the remainder is round-off; kept, it would enter as r^a with a < 1
  // and inflate the bound (about 2e-5 at c = 1/sqrt(2), a = 0.3). Dropping it only lowers it.
  double r = 1.0 - k * t;
  if (r < kRemainderFloor) r = 0.0;
  return {k, t, r};
}

double term(double theta, double a, EntropyFamily family) {
  const Split s = split(theta);
  if (std::abs(a - 1.0) < kShannonBranch || family == EntropyFamily::shannon) {
    double v = -s.k * s.t * std::log(s.t);
    if (s.r > 0.0) v -= s.r * std::log(s.r);
    return v;
  }
  const double sum = s.k * std::pow(s.t, a) + pow0(s.r, a);
  const double f = family == EntropyFamily::renyi ? std::log(sum) : sum - 1.0;
  return f / (1.0 - a);
}

constexpr int kCoarseGrid = 64;
constexpr double kThetaTol = 1e-13;

}  // namespace

OverlapCharacteristic overlap(const ProjectiveObservable& x, const ProjectiveObservable& z) {
  if (x.dim() != z.dim()) throw DimensionMismatch("overlap: observables differ in dimension");
  Eigen::MatrixXd norms(static_cast<Index>(x.size()), static_cast<Index>(z.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      norms(static_cast<Index>(i), static_cast<Index>(j)) =
          spectral_norm(x[i].projector * z[j].projector);
  const double c = std::min(1.0, norms.maxCoeff());
  return {c, std::acos(c), std::move(norms)};
}

OverlapCharacteristic overlap_transposed(const ProjectiveObservable& x,
                                         const ProjectiveObservable& z) {
  return overlap(x.transposed(), z.transposed());
}

double parametric_sum(double theta, double alpha) {
  if (!(theta >= 0.0 && theta < std::numbers::pi / 2.0)) {
    throw ValidationError("parametric_sum: theta must lie in [0, pi/2)");
  }
  const Split s = split(theta);
  return s.k * std::pow(s.t, alpha) + pow0(s.r, alpha);
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::B_T:
      return "B_T";
    case BoundKind::B_R:
      return "B_R";
    case BoundKind::MU_T:
      return "MU_T";
    case BoundKind::MU_R:
      return "MU_R";
    case BoundKind::STND:
      return "STND";
    case BoundKind::STND_R1:
      return "STND_R1";
  }
  return "unknown";
}

BoundKind bound_kind_from_string(std::string_view name) {
  for (BoundKind k : {BoundKind::B_T, BoundKind::B_R, BoundKind::MU_T, BoundKind::MU_R,
                      BoundKind::STND, BoundKind::STND_R1})
    if (to_string(k) == name) return k;
  throw ValidationError("unknown bound id: " + std::string(name));
}

double bbar_objective(double theta, double eta, double alpha, double beta, EntropyFamily family) {
  return term(theta, alpha, family) + term(eta - theta, beta, family);
}

BoundValue bbar_bound(double c, double alpha, double beta, EntropyFamily family) {
  require_c(c);
  if (!(alpha >= 0.0 && beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ValidationError("bbar_bound: orders must be finite and nonnegative");
  }
  const BoundKind kind = family == EntropyFamily::tsallis ? BoundKind::B_T : BoundKind::B_R;
  const double cc = std::min(c, 1.0);
  const double eta = std::acos(cc);
  auto f = [&](double th) { return bbar_objective(th, eta, alpha, beta, family); };
  if (eta <= 0.0) return {kind, std::max(0.0, f(0.0)), alpha, beta, std::nullopt, cc, 0.0};

  std::vector<double> cuts{0.0, eta};
  for (double k = 2.0;; k += 1.0) {
    const double th = std::acos(1.0 / std::sqrt(k));
    if (th >= eta) break;
    cuts.push_back(th);
    cuts.push_back(eta - th);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-15; }),
             cuts.end());

  double best_theta = 0.0;
  double best = f(0.0);
  auto offer = [&](double th) {
    const double v = f(th);
    if (v < best) best = v, best_theta = th;
  };
  offer(eta);

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p];
    const double hi = cuts[p + 1];
    if (hi - lo <= 0.0) continue;
    const double h = (hi - lo) / kCoarseGrid;
    int best_i = 0;
    double best_g = f(lo);
    for (int i = 1; i <= kCoarseGrid; ++i) {
      const double v = f(lo + i * h);
      if (v < best_g) best_g = v, best_i = i;
    }
    offer(lo);
    offer(hi);
    double a = lo + std::max(0, best_i - 1) * h;
    double b = lo + std::min(kCoarseGrid, best_i + 1) * h;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > kThetaTol) {
      if (f1 < f2) {
        b = x2, x2 = x1, f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = f(x1);
      } else {
        a = x1, x1 = x2, f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = f(x2);
      }
    }
    offer(lo + best_i * h);
    offer(0.5 * (a + b));
  }
  return {kind, std::max(0.0, best), alpha, beta, std::nullopt, cc, best_theta};
}

bool conjugate_pair(double alpha, double beta) {
  return alpha > 0.0 && beta > 0.0 && std::abs(1.0 / alpha + 1.0 / beta - 2.0) <= kConjugateTol;
}

MuBounds mu_bounds(double c, double alpha, double beta) {
  require_c(c);
  if (!conjugate_pair(alpha, beta)) {
    std::ostringstream os;
    os << "1/alpha + 1/beta = 2 required, got alpha = " << alpha << ", beta = " << beta;
    throw ConstraintViolation(os.str());
  }
  const double cc = std::min(c, 1.0);
  const double mu = std::max(alpha, beta);
  const BoundValue t{BoundKind::MU_T, alpha_log(1.0 / (cc * cc), mu), alpha, beta, mu, cc, std::nullopt};
  const BoundValue r{BoundKind::MU_R, -2.0 * std::log(cc) + 0.0, alpha, beta, mu, cc, std::nullopt};
  return {t, r};
}

}  // namespace etoff
