#pragma once

// Overlap characteristic c of two observables and the lower bounds on
// noise + disturbance built from it.

#include <optional>
#include <string_view>

#include "etoff/entropy.hpp"
#include "etoff/quantum.hpp"

namespace etoff {

struct OverlapCharacteristic {
  double c;
  double eta;              // arccos(c)
  Eigen::MatrixXd norms;   // ||Pi(x) Lambda(z)||_inf, rows x, columns z
};

/// c = max_{x,z} ||Pi(x) Lambda(z)||_inf.
OverlapCharacteristic overlap(const ProjectiveObservable& x, const ProjectiveObservable& z);
/// Same characteristic for the transposed projector families.
OverlapCharacteristic overlap_transposed(const ProjectiveObservable& x, const ProjectiveObservable& z);

/// D_a(theta) = k cos^2(theta)^a + (1 - k cos^2(theta))^a with k = floor(1/cos^2 theta).
double parametric_sum(double theta, double alpha);

enum class BoundKind { B_T, B_R, MU_T, MU_R, STND, STND_R1 };
std::string_view to_string(BoundKind kind);
BoundKind bound_kind_from_string(std::string_view name);

struct BoundValue {
  BoundKind kind;
  double value;
  double alpha;
  double beta;
  std::optional<double> mu;
  double c;
  std::optional<double> argmin_theta;
};

/// f(D_a(theta))/(1 - a) + f(D_b(eta - theta))/(1 - b), f = ln (Renyi) or xi - 1 (Tsallis).
/// Orders within 1e-7 of 1 use the -sum p ln p limit of their term.
double bbar_objective(double theta, double eta, double alpha, double beta, EntropyFamily family);

/// Minimum of bbar_objective over theta in [0, arccos c]. The objective is
/// smooth between the points where 1/cos^2 of either angle is an integer; each
/// piece gets a coarse grid followed by golden-section refinement.
BoundValue bbar_bound(double c, double alpha, double beta, EntropyFamily family);

struct MuBounds {
  BoundValue tsallis;  // ln_mu(1/c^2), mu = max(alpha, beta)
  BoundValue renyi;    // -2 ln c
};

/// Throws ConstraintViolation unless |1/alpha + 1/beta - 2| <= kConjugateTol.
MuBounds mu_bounds(double c, double alpha, double beta);

inline constexpr double kConjugateTol = 1e-9;
bool conjugate_pair(double alpha, double beta);

}  // namespace etoff
