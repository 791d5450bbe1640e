#pragma once

// Search over correction channels for the information-theoretic disturbance.
//
// A correction followed by the final Z measurement only matters through the
// flag-indexed POVM family E_m(z') it induces on the instrument output, so the
// search runs over such families and realizes the winner as a
// measure-and-prepare channel. Candidates tried before the continuous search:
//   discard_flag    Psi(sigma (x) |m><m|) = sigma
//   reprepare       prepare |z_g(m)> for a map g from outcomes to Z values
//   measure_decide  measure the output in the Z basis, then decide from (m, k)

#include <cstdint>

#include "etoff/entropy.hpp"
#include "etoff/quantum.hpp"

namespace etoff {

struct SearchConfig {
  int restarts = 8;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  double f_tolerance = 1e-12;
};

enum class CorrectionFamily { discard_flag, reprepare, measure_decide, continuous };
std::string_view to_string(CorrectionFamily family);

struct CorrectionSearchResult {
  double best_value;
  Channel best_channel;
  int restarts;
  int iterations;
  bool converged;
  /// Always true: the search can only overestimate the minimum over all channels.
  bool upper_bound = true;
  CorrectionFamily family;
};

/// Above this many maps g the exact candidates fall back to the MAP assignment.
inline constexpr std::size_t kMaxEnumeratedMaps = 4096;

/// Minimum over the searched corrections of the conditional entropy of Z given Z'.
/// Restart 0 refines the best candidate; restart r > 0 starts from a point drawn
/// with derive_seed(seed, r). Throws OrderOutOfRange like noise().
CorrectionSearchResult disturbance(const ProjectiveObservable& z, const QuantumInstrument& m,
                                   const EntropyOrder& order, const SearchConfig& search = {});

}  // namespace etoff
