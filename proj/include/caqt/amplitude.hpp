#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "caqt/lattice.hpp"
#include "caqt/setup.hpp"
#include "caqt/wave_state.hpp"

namespace caqt {

inline constexpr std::size_t kMaxPaths = 1'000'000;

/// <dst| K^d_n P_n ... P_1 K^d_0 |src>, evaluated by propagating the source
/// state one step at a time. Throws LatticeMismatch if the setup leaves the
/// kernel's lattice.
Complex amplitude_chain(const CanonicalSetup& s, const StepKernel& k);

/// Brute-force sum over every choice of one hole per filter of the product
/// of elementary link amplitudes. Throws PathExplosion above `max_paths`.
Complex amplitude_pathsum(const CanonicalSetup& s, const StepKernel& k,
                          std::size_t max_paths = kMaxPaths);

/// Evaluates an expression with the sum and product rules directly on its
/// tree: AND multiplies, OR adds, leaves use amplitude_chain. The expression
/// is canonicalized first so invalid compositions still throw.
Complex amplitude_expr(const SetupExpr& e, const StepKernel& k);

/// `steps` applications of K, no filters.
WaveState propagate(const WaveState& state, const StepKernel& k, int steps);

/// Evolves `steps` steps from state.time. A filter at time t is applied to
/// the slice at t, so filters at state.time act on the input itself.
/// Throws FilterOutsideWindow for filters outside [state.time, state.time + steps].
WaveState evolve(const WaveState& state, const StepKernel& k, int steps,
                 std::span<const Filter> filters = {});

/// || i (psi(t+dt) - psi(t-dt)) / (2 dt) - H psi(t) ||, with the exact
/// kernel exp(-i H dt) supplying both neighbours.
double schrodinger_residual(const WaveState& state, const Hamiltonian& h, double dt);

struct Superposition {
  WaveState state;  // at time t
  Complex alpha;    // source -> (first hole, t0)
  Complex beta;     // source -> (second hole, t0)
};

/// Source at `src`, a two-hole filter at `t0`, observed at `t`.
Superposition build_superposition(SpacetimePoint src, std::pair<int, int> holes, int t0, int t,
                                  const StepKernel& k);

}  // namespace caqt
