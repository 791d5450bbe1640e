#pragma once

// Seeded random objects for property sweeps. Every sampler takes an explicit
// seed and draws from its own generator; equal seeds give bit-identical output.

#include <cstdint>
#include <vector>

#include "etoff/quantum.hpp"

namespace etoff {

/// Haar-distributed unitary (Ginibre matrix, QR, phase-corrected diagonal of R).
ComplexMatrix sample_haar_unitary(Index d, std::uint64_t seed);

struct InstrumentShape {
  Index dim_in;
  Index dim_out;
  std::size_t num_outcomes;
  std::size_t kraus_per_outcome;
};

/// Haar isometry from the input into (output) (x) (environment) (x) (outcome),
/// split by outcome: K_{m,e} = (<m| (x) <e| (x) 1) V.
QuantumInstrument sample_random_instrument(const InstrumentShape& shape, std::uint64_t seed);
/// Square instrument (dim_in = dim_out = d).
QuantumInstrument sample_random_instrument(Index d, std::size_t num_outcomes,
                                           std::size_t kraus_per_outcome, std::uint64_t seed);

/// Channel whose Stinespring isometry is Haar-random.
Channel sample_random_channel(Index dim_in, Index dim_out, std::size_t num_kraus, std::uint64_t seed);

/// Observable with eigenspaces of the given sizes in a Haar-random basis;
/// eigenvalues are 0, 1, 2, ... in profile order.
ProjectiveObservable sample_random_observable(Index d, const std::vector<int>& degeneracy_profile,
                                              std::uint64_t seed);

/// Haar-random pure state mixed down by a random spectrum (full rank generically).
DensityMatrix sample_density_matrix(Index d, std::uint64_t seed);

/// Random Hermitian matrix with standard Gaussian entries.
ComplexMatrix sample_hermitian(Index d, std::uint64_t seed);

/// Uniformly random probability vector / joint table (flat Dirichlet via exponentials).
std::vector<double> sample_probabilities(std::size_t n, std::uint64_t seed);

/// SplitMix64 mix of (seed, stream); used to derive independent sub-seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace etoff
