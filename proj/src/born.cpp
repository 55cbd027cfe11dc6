#include "caqt/born.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include <boost/math/distributions/binomial.hpp>

#include "caqt/amplitude.hpp"
#include "caqt/errors.hpp"
#include "caqt/hilbert.hpp"

namespace caqt {

namespace {

// Neumaier summation; the oracle adds up to 2e5 terms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    carry_ += std::abs(sum_) >= std::abs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Largest n whose binomial coefficients are all exact doubles.
constexpr std::uint64_t kExactPascalRows = 56;

double site_probability(const WaveState& state, std::size_t site) {
  if (site >= state.size()) {
    throw std::invalid_argument("site " + std::to_string(site) + " is outside a " +
                                std::to_string(state.size()) + "-site state");
  }
  return born(state).probabilities[site];
}

// (p, 1 - p) with the complement summed over the other sites, which keeps
// its relative accuracy when p is close to one.
std::pair<double, double> site_odds(const WaveState& state, std::size_t site) {
  const double p = site_probability(state, site);
  const auto r = born(state);
  double q = 0.0;
  for (std::size_t i = 0; i < r.probabilities.size(); ++i) {
    if (i != site) q += r.probabilities[i];
  }
  return {p, q};
}

std::vector<double> pmf_with_complement(std::uint64_t n, double p, double q) {
  std::vector<double> pmf(n + 1);
  if (n <= kExactPascalRows) {
    std::vector<double> row{1.0};
    for (std::uint64_t r = 1; r <= n; ++r) {
      std::vector<double> next(r + 1, 1.0);
      for (std::uint64_t k = 1; k < r; ++k) next[k] = row[k - 1] + row[k];
      row.swap(next);
    }
    for (std::uint64_t k = 0; k <= n; ++k) {
      pmf[k] = row[k] * std::pow(p, static_cast<double>(k)) * std::pow(q, static_cast<double>(n - k));
    }
    return pmf;
  }
  if (p == 0.0 || q == 0.0) {
    pmf[p == 0.0 ? 0 : n] = 1.0;
    return pmf;
  }
  // Anchor at the mode, then walk outward with the ratio of neighbours;
  // terms only shrink away from the mode, so the recurrence is stable.
  const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  const auto mode = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(std::floor(static_cast<double>(n + 1) * p)));
  pmf[mode] = boost::math::pdf(dist, static_cast<double>(mode));
  const double odds = p / q;
  for (std::uint64_t k = mode; k < n; ++k) {
    pmf[k + 1] = pmf[k] * (static_cast<double>(n - k) / static_cast<double>(k + 1)) * odds;
  }
  for (std::uint64_t k = mode; k > 0; --k) {
    pmf[k - 1] = pmf[k] * (static_cast<double>(k) / static_cast<double>(n - k + 1)) / odds;
  }
  return pmf;
}

}  // namespace

ProbabilityReport born(const WaveState& state) {
  state.validate();
  const double norm = norm_squared(state);
  if (!(norm > 0.0)) throw ZeroState("state has zero norm; Born probabilities are undefined");

  const auto m = state.size();
  ProbabilityReport r;
  r.probabilities.resize(m);
  r.densities.resize(m);
  r.weights.resize(m);
  r.normalized_input = std::abs(norm - 1.0) <= 1e-12;
  for (std::size_t i = 0; i < m; ++i) {
    const auto idx = static_cast<Eigen::Index>(i);
    const double w = state.weights(idx);
    r.weights[i] = w;
    r.densities[i] = std::norm(state.amplitudes(idx)) / norm;
    r.probabilities[i] = w * r.densities[i];
    r.total += r.probabilities[i];
  }
  return r;
}

void FractionFilterSpec::validate() const {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("target fraction must lie in [0, 1]");
  }
  if (!(epsilon > 0.0)) throw std::invalid_argument("window half-width must be positive");
  if (replicas < 1) throw std::invalid_argument("ensemble needs at least one replica");
}

bool FractionFilterSpec::keeps(std::uint64_t count) const {
  const double observed = static_cast<double>(count) / static_cast<double>(replicas);
  return std::abs(observed - fraction) <= epsilon;
}

std::vector<double> binomial_pmf(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("probability must lie in [0, 1]");
  return pmf_with_complement(n, p, 1.0 - p);
}

double ensemble_distance_exact(const WaveState& state, const FractionFilterSpec& spec) {
  spec.validate();
  const auto [p, q] = site_odds(state, spec.site);
  const auto pmf = pmf_with_complement(spec.replicas, p, q);
  double kept = 0.0;
  double dropped = 0.0;
  for (std::uint64_t n = 0; n < pmf.size(); ++n) {
    (spec.keeps(n) ? kept : dropped) += pmf[n];
  }
  // Whichever side is smaller is summed directly to avoid cancellation.
  return dropped <= 0.5 ? dropped : 1.0 - kept;
}

double ensemble_distance_oracle(const WaveState& state, const FractionFilterSpec& spec) {
  spec.validate();
  state.validate();
  const auto m = static_cast<std::uint64_t>(state.size());
  if (spec.site >= m) throw std::invalid_argument("site is outside the state");
  std::uint64_t components = 1;
  for (std::uint64_t r = 0; r < spec.replicas; ++r) {
    if (components > kMaxEnsembleComponents / m) {
      throw EnsembleTooLarge("ensemble of " + std::to_string(spec.replicas) + " replicas over " +
                             std::to_string(m) + " sites exceeds " +
                             std::to_string(kMaxEnsembleComponents) + " components");
    }
    components *= m;
  }

  const double single_norm = norm_squared(state);
  if (!(single_norm > 0.0)) throw ZeroState("state has zero norm");
  const Eigen::VectorXcd replica = state.amplitudes / std::sqrt(single_norm);

  // Product state, per-component weights and replica counts at the site,
  // expanded in place one replica at a time (row-major over replica digits).
  std::vector<Complex> product(components);
  std::vector<double> weight(components);
  std::vector<std::uint32_t> count(components);
  product[0] = 1.0;
  weight[0] = 1.0;
  count[0] = 0;
  std::size_t size = 1;
  for (std::uint64_t r = 0; r < spec.replicas; ++r) {
    // Walking backwards, slot i * m + d never overwrites an unread entry.
    for (std::size_t i = size; i-- > 0;) {
      const Complex a = product[i];
      const double w = weight[i];
      const std::uint32_t c = count[i];
      for (std::uint64_t d = m; d-- > 0;) {
        const auto j = i * m + d;
        const auto di = static_cast<Eigen::Index>(d);
        const Complex b = replica(di);
        // Written out: std::complex operator* goes through the Annex G
        // NaN-recovery path, which dominates this loop.
        product[j] = Complex(a.real() * b.real() - a.imag() * b.imag(),
                             a.real() * b.imag() + a.imag() * b.real());
        weight[j] = w * state.weights(di);
        count[j] = c + (d == spec.site ? 1u : 0u);
      }
    }
    size *= m;
  }

  std::vector<char> kept(spec.replicas + 1);
  for (std::uint64_t n = 0; n <= spec.replicas; ++n) kept[n] = spec.keeps(n);

  CompensatedSum total;
  CompensatedSum distance;
  for (std::size_t j = 0; j < product.size(); ++j) {
    const Complex filtered = kept[count[j]] ? product[j] : Complex(0.0, 0.0);
    distance.add(weight[j] * std::norm(filtered - product[j]));
    total.add(weight[j] * std::norm(product[j]));
  }
  return distance.value() / total.value();
}

std::vector<SweepRow> convergence_sweep(const WaveState& state, std::size_t site, double fraction,
                                        double epsilon, std::span<const std::uint64_t> replicas) {
  for (std::size_t i = 1; i < replicas.size(); ++i) {
    if (replicas[i] <= replicas[i - 1]) {
      throw std::invalid_argument("replica counts must be strictly ascending");
    }
  }
  const double p = site_probability(state, site);
  const double offset = std::abs(fraction - p);

  std::vector<SweepRow> rows;
  rows.reserve(replicas.size());
  for (const auto n : replicas) {
    FractionFilterSpec spec{site, fraction, epsilon, n};
    SweepRow row;
    row.replicas = n;
    row.distance_sq = ensemble_distance_exact(state, spec);
    const double nd = static_cast<double>(n);
    if (offset < epsilon) {
      const double gap = epsilon - offset;
      row.hoeffding_bound = 2.0 * std::exp(-2.0 * nd * gap * gap);
      row.within_envelope = row.distance_sq <= row.hoeffding_bound;
    } else if (offset > epsilon) {
      const double gap = offset - epsilon;
      row.hoeffding_bound = std::max(0.0, 1.0 - 2.0 * std::exp(-2.0 * nd * gap * gap));
      row.within_envelope = row.distance_sq >= row.hoeffding_bound;
    } else {
      row.hoeffding_bound = 1.0;
      row.within_envelope = row.distance_sq <= 1.0;
    }
    rows.push_back(row);
  }
  return rows;
}

NullDetection null_detection_check(const WaveState& state, std::size_t site, const StepKernel& k,
                                   int steps, double tolerance) {
  if (site >= state.size()) throw std::invalid_argument("blocked site is outside the state");
  const WaveState blocked = apply_filter(Projector::blocking(state.size(), site), state);
  const WaveState free_run = evolve(state, k, steps);
  const WaveState blocked_run = evolve(blocked, k, steps);

  WaveState diff = free_run;
  diff.amplitudes = blocked_run.amplitudes - free_run.amplitudes;
  NullDetection out;
  out.deviation = std::sqrt(norm_squared(diff));
  out.no_effect = tolerance == 0.0 ? blocked_run.amplitudes == free_run.amplitudes
                                   : out.deviation <= tolerance;
  return out;
}

}  // namespace caqt
