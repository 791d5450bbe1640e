#include "etoff/sampling.hpp"

#include <cmath>
#include <random>

namespace etoff {

namespace {

using Engine = std::mt19937_64;

ComplexMatrix ginibre(Index rows, Index cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  return g;
}

ComplexMatrix haar_unitary(Index d, Engine& rng) {
  const ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double a = std::abs(rk);
    q.col(k) *= a > 0.0 ? rk / a : Complex(1.0, 0.0);
  }
  return q;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ComplexMatrix sample_haar_unitary(Index d, std::uint64_t seed) {
  if (d <= 0) throw ValidationError("sample_haar_unitary: dimension must be positive");
  Engine rng(seed);
  return haar_unitary(d, rng);
}

QuantumInstrument sample_random_instrument(const InstrumentShape& shape, std::uint64_t seed) {
  if (shape.dim_in <= 0 || shape.dim_out <= 0 || shape.num_outcomes == 0 ||
      shape.kraus_per_outcome == 0) {
    throw ValidationError("sample_random_instrument: all shape entries must be positive");
  }
  const Index n = static_cast<Index>(shape.num_outcomes);
  const Index k = static_cast<Index>(shape.kraus_per_outcome);
  const Index big = shape.dim_out * k * n;
  if (big < shape.dim_in) {
    throw ValidationError(
        "sample_random_instrument: dim_out * kraus_per_outcome * num_outcomes must be at least "
        "dim_in");
  }
  Engine rng(seed);
  const ComplexMatrix isometry = haar_unitary(big, rng).leftCols(shape.dim_in);
  std::vector<InstrumentBranch> branches;
  for (Index m = 0; m < n; ++m) {
    InstrumentBranch b{std::to_string(m), {}};
    for (Index e = 0; e < k; ++e) {
      b.kraus.push_back(isometry.middleRows((m * k + e) * shape.dim_out, shape.dim_out));
    }
    branches.push_back(std::move(b));
  }
  return QuantumInstrument(std::move(branches));
}

QuantumInstrument sample_random_instrument(Index d, std::size_t num_outcomes,
                                           std::size_t kraus_per_outcome, std::uint64_t seed) {
  return sample_random_instrument({d, d, num_outcomes, kraus_per_outcome}, seed);
}

Channel sample_random_channel(Index dim_in, Index dim_out, std::size_t num_kraus,
                              std::uint64_t seed) {
  QuantumInstrument inst = sample_random_instrument({dim_in, dim_out, 1, num_kraus}, seed);
  return Channel(inst[0].kraus);
}

ProjectiveObservable sample_random_observable(Index d, const std::vector<int>& profile,
                                              std::uint64_t seed) {
  Index total = 0;
  for (int s : profile) {
    if (s <= 0) throw ValidationError("sample_random_observable: degeneracies must be positive");
    total += s;
  }
  if (total != d || profile.empty()) {
    throw ValidationError("sample_random_observable: degeneracy profile must sum to the dimension");
  }
  const ComplexMatrix u = sample_haar_unitary(d, seed);
  std::vector<double> labels;
  std::vector<ComplexMatrix> projectors;
  Index col = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const auto block = u.middleCols(col, profile[i]);
    labels.push_back(static_cast<double>(i));
    projectors.push_back(block * block.adjoint());
    col += profile[i];
  }
  return ProjectiveObservable(std::move(labels), std::move(projectors));
}

DensityMatrix sample_density_matrix(Index d, std::uint64_t seed) {
  Engine rng(seed);
  const ComplexMatrix g = ginibre(d, d, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(ComplexMatrix(0.5 * (rho + rho.adjoint())));
}

ComplexMatrix sample_hermitian(Index d, std::uint64_t seed) {
  Engine rng(seed);
  const ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<double> sample_probabilities(std::size_t n, std::uint64_t seed) {
  Engine rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double sum = 0.0;
  for (auto& v : p) sum += (v = expo(rng));
  for (auto& v : p) v /= sum;
  return p;
}

}  // namespace etoff
