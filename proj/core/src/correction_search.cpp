#include "etoff/correction_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

#include "etoff/nelder_mead.hpp"
#include "etoff/noise_disturbance.hpp"
#include "etoff/sampling.hpp"

namespace etoff {

namespace {

using Family = std::vector<std::vector<ComplexMatrix>>;  // [m][z'] -> E_m(z') or G_m(z')

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > kMaxEnumeratedMaps / std::max<std::size_t>(base, 1) + 1) return kMaxEnumeratedMaps + 1;
    out *= base;
  }
  return out;
}

// Advances a mixed-radix counter; false once it wraps.
bool next_assignment(std::vector<std::size_t>& g, std::size_t radix) {
  for (auto& digit : g) {
    if (++digit < radix) return true;
    digit = 0;
  }
  return false;
}

class Problem {
 public:
  Problem(const ProjectiveObservable& z, const QuantumInstrument& m, const EntropyOrder& order)
      : z_(z),
        m_(m),
        order_(order),
        n_(static_cast<Index>(m.num_outcomes())),
        nz_(static_cast<Index>(z.size())),
        dout_(m.dim_out()),
        table_(nz_, nz_),
        a_(nz_ * dout_, dout_),
        g_(nz_ * dout_, dout_),
        gb_(nz_ * dout_, dout_),
        s_(dout_, dout_),
        llt_(dout_) {
    const double d = static_cast<double>(z.dim());
    b_.resize(static_cast<std::size_t>(n_));
    p_.resize(n_, nz_);
    for (Index k = 0; k < n_; ++k) {
      for (Index in = 0; in < nz_; ++in) {
        ComplexMatrix b = m.apply_branch(static_cast<std::size_t>(k), z[static_cast<std::size_t>(in)].projector) / d;
        b = 0.5 * (b + b.adjoint()).eval();
        p_(k, in) = b.trace().real();
        b_[static_cast<std::size_t>(k)].push_back(std::move(b));
      }
    }
  }

  [[nodiscard]] Index num_params() const { return 2 * n_ * nz_ * dout_ * dout_; }
  [[nodiscard]] bool square() const { return dout_ == z_.dim(); }

  double value_of_table() {
    table_ = table_.cwiseMax(0.0);
    return conditional_entropy(table_, order_);
  }

  // Entropy for a POVM family E_m(z').
  double value_of_povms(const Family& e) {
    table_.setZero();
    for (Index k = 0; k < n_; ++k)
      for (Index est = 0; est < nz_; ++est)
        for (Index in = 0; in < nz_; ++in)
          table_(in, est) += (e[static_cast<std::size_t>(k)][static_cast<std::size_t>(est)] *
                              b_[static_cast<std::size_t>(k)][static_cast<std::size_t>(in)])
                                 .trace()
                                 .real();
    return value_of_table();
  }

  double value_of_reprepare(const std::vector<std::size_t>& g) {
    table_.setZero();
    for (Index k = 0; k < n_; ++k)
      table_.col(static_cast<Index>(g[static_cast<std::size_t>(k)])) += p_.row(k).transpose();
    return value_of_table();
  }

  // g[k * nz + outcome] is the estimate after reading flag k and Z outcome.
  double value_of_measure_decide(const std::vector<std::size_t>& g) {
    table_.setZero();
    for (Index k = 0; k < n_; ++k)
      for (Index out = 0; out < nz_; ++out)
        table_.col(static_cast<Index>(g[static_cast<std::size_t>(k * nz_ + out)])) +=
            q_.row(k * nz_ + out).transpose();
    return value_of_table();
  }

  void prepare_measure_decide() {
    q_.resize(n_ * nz_, nz_);
    for (Index k = 0; k < n_; ++k)
      for (Index out = 0; out < nz_; ++out)
        for (Index in = 0; in < nz_; ++in)
          q_(k * nz_ + out, in) = (z_[static_cast<std::size_t>(out)].projector *
                                   b_[static_cast<std::size_t>(k)][static_cast<std::size_t>(in)])
                                      .trace()
                                      .real();
  }

  // Orthonormalizes A_m into G_m = A_m (A_m^dagger A_m)^(-1/2)-like isometry via Cholesky.
  bool isometry_from_params(std::span<const double> x, Index k, ComplexMatrix& g) {
    const Index rows = nz_ * dout_;
    const std::size_t base = static_cast<std::size_t>(2 * k * rows * dout_);
    for (Index c = 0; c < dout_; ++c)
      for (Index r = 0; r < rows; ++r) {
        const std::size_t at = base + static_cast<std::size_t>(2 * (c * rows + r));
        a_(r, c) = Complex(x[at], x[at + 1]);
      }
    s_.noalias() = a_.adjoint() * a_;
    llt_.compute(s_);
    if (llt_.info() != Eigen::Success) return false;
    // S = L L^dagger; G = A L^(-dagger) has G^dagger G = 1.
    g = a_;
    llt_.matrixU().solveInPlace<Eigen::OnTheRight>(g);
    return true;
  }

  double value_of_params(std::span<const double> x) {
    table_.setZero();
    for (Index k = 0; k < n_; ++k) {
      if (!isometry_from_params(x, k, g_)) return std::numeric_limits<double>::infinity();
      for (Index in = 0; in < nz_; ++in) {
        gb_.noalias() = g_ * b_[static_cast<std::size_t>(k)][static_cast<std::size_t>(in)];
        for (Index est = 0; est < nz_; ++est) {
          table_(in, est) += (gb_.middleRows(est * dout_, dout_).cwiseProduct(
                                  g_.middleRows(est * dout_, dout_).conjugate()))
                                 .sum()
                                 .real();
        }
      }
    }
    return value_of_table();
  }

  std::vector<double> params_from_roots(const Family& roots) const {
    const Index rows = nz_ * dout_;
    std::vector<double> x(static_cast<std::size_t>(num_params()));
    for (Index k = 0; k < n_; ++k) {
      const std::size_t base = static_cast<std::size_t>(2 * k * rows * dout_);
      for (Index c = 0; c < dout_; ++c)
        for (Index r = 0; r < rows; ++r) {
          const Complex v = roots[static_cast<std::size_t>(k)][static_cast<std::size_t>(r / dout_)](r % dout_, c);
          const std::size_t at = base + static_cast<std::size_t>(2 * (c * rows + r));
          x[at] = v.real();
          x[at + 1] = v.imag();
        }
    }
    return x;
  }

  Family roots_from_params(std::span<const double> x) {
    Family out(static_cast<std::size_t>(n_));
    ComplexMatrix g(nz_ * dout_, dout_);
    for (Index k = 0; k < n_; ++k) {
      if (!isometry_from_params(x, k, g)) throw NumericalFailure("correction search: singular isometry");
      for (Index est = 0; est < nz_; ++est)
        out[static_cast<std::size_t>(k)].push_back(g.middleRows(est * dout_, dout_));
    }
    return out;
  }

  // Measure-and-prepare channel: Kraus |z'> <i| G_m(z') (x) <m|.
  Channel channel_from_roots(const Family& roots) const {
    const Index d = z_.dim();
    KrausSet kraus;
    for (Index est = 0; est < nz_; ++est) {
      const ComplexMatrix& proj = z_[static_cast<std::size_t>(est)].projector;
      Index col = 0;
      proj.colwise().norm().maxCoeff(&col);
      const ComplexVector state = proj.col(col).normalized();
      for (Index k = 0; k < n_; ++k) {
        const ComplexMatrix& g = roots[static_cast<std::size_t>(k)][static_cast<std::size_t>(est)];
        for (Index i = 0; i < g.rows(); ++i) {
          if (g.row(i).norm() < 1e-15) continue;
          ComplexMatrix op = ComplexMatrix::Zero(d, dout_ * n_);
          for (Index j = 0; j < dout_; ++j) op.col(j * n_ + k) = state * g(i, j);
          kraus.push_back(std::move(op));
        }
      }
    }
    return Channel(std::move(kraus));
  }

  Family roots_from_povms(const Family& e) const {
    Family out(e.size());
    for (std::size_t k = 0; k < e.size(); ++k)
      for (const auto& el : e[k]) out[k].push_back(psd_sqrt(HermitianMatrix(el)));
    return out;
  }

  Family reprepare_povms(const std::vector<std::size_t>& g) const {
    Family e(static_cast<std::size_t>(n_));
    for (Index k = 0; k < n_; ++k)
      for (Index est = 0; est < nz_; ++est)
        e[static_cast<std::size_t>(k)].push_back(
            static_cast<Index>(g[static_cast<std::size_t>(k)]) == est
                ? identity(dout_)
                : ComplexMatrix(ComplexMatrix::Zero(dout_, dout_)));
    return e;
  }

  Family measure_decide_povms(const std::vector<std::size_t>& g) const {
    Family e(static_cast<std::size_t>(n_));
    for (Index k = 0; k < n_; ++k) {
      auto& row = e[static_cast<std::size_t>(k)];
      row.assign(static_cast<std::size_t>(nz_), ComplexMatrix::Zero(dout_, dout_));
      for (Index out = 0; out < nz_; ++out)
        row[g[static_cast<std::size_t>(k * nz_ + out)]] += z_[static_cast<std::size_t>(out)].projector;
    }
    return e;
  }

  Family discard_povms() const {
    Family e(static_cast<std::size_t>(n_));
    for (auto& row : e)
      for (const auto& b : z_.branches()) row.push_back(b.projector);
    return e;
  }

  [[nodiscard]] Index n() const { return n_; }
  [[nodiscard]] Index nz() const { return nz_; }
  [[nodiscard]] const Eigen::MatrixXd& p() const { return p_; }
  [[nodiscard]] const Eigen::MatrixXd& q() const { return q_; }

 private:
  const ProjectiveObservable& z_;
  const QuantumInstrument& m_;
  EntropyOrder order_;
  Index n_;
  Index nz_;
  Index dout_;
  std::vector<std::vector<ComplexMatrix>> b_;  // Phi^(m)(Lambda(z)) / d
  Eigen::MatrixXd p_;                          // Tr b_[m][z]
  Eigen::MatrixXd q_;                          // Tr Lambda(k) b_[m][z], row m * nz + k
  Eigen::MatrixXd table_;
  ComplexMatrix a_, g_, gb_, s_;
  Eigen::LLT<ComplexMatrix> llt_;
};

struct Candidate {
  double value;
  Family povms;
  CorrectionFamily family;
};

std::vector<std::size_t> map_rule(const Eigen::MatrixXd& rows) {
  std::vector<std::size_t> g(static_cast<std::size_t>(rows.rows()));
  for (Index r = 0; r < rows.rows(); ++r) {
    Index best = 0;
    for (Index c = 1; c < rows.cols(); ++c)
      if (rows(r, c) > rows(r, best)) best = c;
    g[static_cast<std::size_t>(r)] = static_cast<std::size_t>(best);
  }
  return g;
}

}  // namespace

std::string_view to_string(CorrectionFamily family) {
  switch (family) {
    case CorrectionFamily::discard_flag:
      return "discard_flag";
    case CorrectionFamily::reprepare:
      return "reprepare";
    case CorrectionFamily::measure_decide:
      return "measure_decide";
    case CorrectionFamily::continuous:
      return "continuous";
  }
  return "unknown";
}

CorrectionSearchResult disturbance(const ProjectiveObservable& z, const QuantumInstrument& m,
                                   const EntropyOrder& order, const SearchConfig& search) {
  if (z.dim() != m.dim_in()) {
    throw DimensionMismatch("disturbance: observable and instrument input differ in dimension");
  }
  require_order_admissible(order, z.dim());
  if (search.restarts < 0 || search.max_iterations < 0) {
    throw ValidationError("disturbance: negative search budget");
  }

  Problem prob(z, m, order);
  const auto n = static_cast<std::size_t>(prob.n());
  const auto nz = static_cast<std::size_t>(prob.nz());

  std::optional<Candidate> best;
  std::optional<Channel> discard;
  auto offer = [&](double v, const Family& e, CorrectionFamily f) {
    if (!best || v < best->value) best = Candidate{v, e, f};
  };

  if (prob.square()) {
    const Family e = prob.discard_povms();
    offer(prob.value_of_povms(e), e, CorrectionFamily::discard_flag);
    discard = discard_flag_correction(m);
  }

  {
    std::vector<std::size_t> best_g;
    double best_v = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<std::size_t>& g) {
      const double v = prob.value_of_reprepare(g);
      if (v < best_v) best_v = v, best_g = g;
    };
    if (checked_power(nz, n) <= kMaxEnumeratedMaps) {
      std::vector<std::size_t> g(n, 0);
      do consider(g);
      while (next_assignment(g, nz));
    } else {
      consider(map_rule(prob.p()));
    }
    offer(best_v, prob.reprepare_povms(best_g), CorrectionFamily::reprepare);
  }

  if (prob.square()) {
    prob.prepare_measure_decide();
    std::vector<std::size_t> best_g;
    double best_v = std::numeric_limits<double>::infinity();
    auto consider = [&](const std::vector<std::size_t>& g) {
      const double v = prob.value_of_measure_decide(g);
      if (v < best_v) best_v = v, best_g = g;
    };
    if (checked_power(nz, n * nz) <= kMaxEnumeratedMaps) {
      std::vector<std::size_t> g(n * nz, 0);
      do consider(g);
      while (next_assignment(g, nz));
    } else {
      consider(map_rule(prob.q()));
    }
    offer(best_v, prob.measure_decide_povms(best_g), CorrectionFamily::measure_decide);
  }

  const Candidate seed_candidate = *best;
  Family best_roots = prob.roots_from_povms(seed_candidate.povms);
  double best_value = seed_candidate.value;
  CorrectionFamily best_family = seed_candidate.family;

  NelderMeadOptions nm;
  nm.max_iterations = search.max_iterations;
  nm.f_tolerance = search.f_tolerance;
  const Objective objective = [&prob](std::span<const double> x) { return prob.value_of_params(x); };

  int iterations = 0;
  bool converged = true;
  for (int r = 0; r < search.restarts; ++r) {
    std::vector<double> start;
    if (r == 0) {
      start = prob.params_from_roots(best_roots);
    } else {
      std::mt19937_64 rng(derive_seed(search.seed, static_cast<std::uint64_t>(r)));
      std::normal_distribution<double> normal;
      start.resize(static_cast<std::size_t>(prob.num_params()));
      for (auto& v : start) v = normal(rng);
    }
    const NelderMeadResult res = nelder_mead(objective, std::move(start), nm);
    iterations += res.iterations;
    converged = converged && res.converged;
    if (res.value < best_value) {
      best_value = res.value;
      best_roots = prob.roots_from_params(res.x);
      best_family = CorrectionFamily::continuous;
    }
  }

  Channel channel = best_family == CorrectionFamily::discard_flag && discard
                        ? *discard
                        : prob.channel_from_roots(best_roots);
  return {std::max(best_value, 0.0), std::move(channel), search.restarts, iterations, converged,
          true, best_family};
}

}  // namespace etoff
