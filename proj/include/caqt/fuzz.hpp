#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "caqt/lattice.hpp"
#include "caqt/setup.hpp"

namespace caqt {

using Rng = std::mt19937_64;

struct SetupShape {
  int max_filters = 3;
  int max_gap = 3;        // time steps between consecutive slices
  int max_holes = 3;      // per filter, capped at the lattice size
};

/// Random valid normal form with src.time = 0.
CanonicalSetup random_canonical(Rng& rng, std::size_t num_sites, const SetupShape& shape);

/// An expression whose AND/OR tree reassembles `s`.
SetupExprPtr random_expression_for(Rng& rng, const CanonicalSetup& s);

/// Deterministic in `seed`; always canonicalizes. max_filters = 0 yields a
/// single elementary leaf.
SetupExprPtr random_setup(std::uint64_t seed, const LatticeConfig& cfg, int max_filters);

/// Applies `steps` random law-preserving rewrites (OR commutativity,
/// associativity of both connectives, AND-over-OR distribution and its
/// factoring, and splitting of bracket literals). A rewrite whose result no
/// longer canonicalizes is discarded and another is drawn.
SetupExprPtr rewrite_random(Rng& rng, const SetupExprPtr& e, int steps);

/// (later, earlier) with earlier.dst == later.src.
std::pair<CanonicalSetup, CanonicalSetup> random_and_pair(Rng& rng, std::size_t num_sites,
                                                          const SetupShape& shape);

/// Two setups that differ only in the hole set of one filter, with disjoint holes.
std::pair<CanonicalSetup, CanonicalSetup> random_or_pair(Rng& rng, std::size_t num_sites,
                                                         const SetupShape& shape);

/// Lattice with random size in [min_sites, max_sites], boundary, potential
/// in [-2, 2] and weights in [0.5, 2] (or all ones when `uniform_weights`).
LatticeConfig random_lattice(Rng& rng, std::size_t min_sites, std::size_t max_sites,
                             bool uniform_weights = true);

/// Complex Gaussian entries; never the zero vector.
Eigen::VectorXcd random_amplitudes(Rng& rng, std::size_t num_sites);

}  // namespace caqt
