#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "caqt/lattice.hpp"
#include "caqt/wave_state.hpp"

namespace caqt {

/// Born probabilities of a state under its weighted inner product.
struct ProbabilityReport {
  std::vector<double> probabilities;  // w_i |A_i|^2 / <psi|psi>
  std::vector<double> densities;      // probabilities[i] / w_i
  std::vector<double> weights;
  double total = 0.0;
  bool normalized_input = false;  // input norm was already 1 (to 1e-12)
};

/// Throws ZeroState when <psi|psi> = 0.
ProbabilityReport born(const WaveState& state);

/// N-replica filter keeping configurations whose fraction n/N of replicas at
/// `site` satisfies |n/N - f| <= epsilon (inclusive).
struct FractionFilterSpec {
  std::size_t site = 0;
  double fraction = 0.0;
  double epsilon = 0.0;
  std::uint64_t replicas = 1;

  void validate() const;
  bool keeps(std::uint64_t count) const;
};

/// Binomial probability mass C(n, k) p^k (1-p)^(n-k) for all k in [0, n].
std::vector<double> binomial_pmf(std::uint64_t n, double p);

/// Squared Hilbert distance ||P psi_N - psi_N||^2 for the normalized product
/// state of N replicas, via its closed binomial form.
double ensemble_distance_exact(const WaveState& state, const FractionFilterSpec& spec);

inline constexpr std::uint64_t kMaxEnsembleComponents = 200'000;

/// Same quantity from the materialized M^N product state. Throws
/// EnsembleTooLarge when M^N exceeds kMaxEnsembleComponents.
double ensemble_distance_oracle(const WaveState& state, const FractionFilterSpec& spec);

struct SweepRow {
  std::uint64_t replicas = 0;
  double distance_sq = 0.0;
  /// Inside the window (|f - p| < eps): Hoeffding upper bound
  /// 2 exp(-2N (eps - |f - p|)^2). Outside (|f - p| > eps): lower bound
  /// 1 - 2 exp(-2N (|f - p| - eps)^2). On the edge: the trivial bound 1.
  double hoeffding_bound = 0.0;
  bool within_envelope = true;
};

/// Exact distances for each N (strictly ascending), checked against the
/// Hoeffding envelope row by row.
std::vector<SweepRow> convergence_sweep(const WaveState& state, std::size_t site, double fraction,
                                        double epsilon, std::span<const std::uint64_t> replicas);

struct NullDetection {
  bool no_effect = false;
  double deviation = 0.0;  // ||evolve(blocked) - evolve(original)||
};

/// Blocks `site` at state.time, evolves both branches `steps` steps and
/// compares them. tolerance = 0 demands bit-identical vectors.
NullDetection null_detection_check(const WaveState& state, std::size_t site, const StepKernel& k,
                                   int steps, double tolerance = 0.0);

}  // namespace caqt
