#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "caqt/lattice.hpp"

namespace caqt {

/// Amplitudes over the lattice sites at one time slice, plus the cell
/// weights that define their inner product.
struct WaveState {
  int time = 0;
  Eigen::VectorXcd amplitudes;
  Eigen::VectorXd weights;

  std::size_t size() const { return static_cast<std::size_t>(amplitudes.size()); }

  /// Uniform weights.
  static WaveState uniform(Eigen::VectorXcd amplitudes, int time = 0);
  static WaveState on_lattice(const LatticeConfig& cfg, Eigen::VectorXcd amplitudes, int time = 0);
  /// Unit amplitude at `site`, zero elsewhere.
  static WaveState basis(std::size_t num_sites, std::size_t site, int time = 0);

  /// Throws LengthMismatch unless amplitudes and weights agree in length,
  /// and std::invalid_argument on non-finite amplitudes.
  void validate() const;
};

}  // namespace caqt
