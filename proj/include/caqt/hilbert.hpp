#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "caqt/setup.hpp"
#include "caqt/wave_state.hpp"

namespace caqt {

/// Diagonal 0/1 operator kept as its hole set; never materialized densely.
class Projector {
 public:
  explicit Projector(std::vector<std::size_t> holes);
  explicit Projector(const Filter& filter);

  /// Every site open: the identity.
  static Projector all(std::size_t num_sites);
  /// Single hole at `site`.
  static Projector elementary(std::size_t site);
  /// Every site open except `site`.
  static Projector blocking(std::size_t num_sites, std::size_t site);

  const std::vector<std::size_t>& holes() const { return holes_; }
  bool is_open(std::size_t site) const;

 private:
  std::vector<std::size_t> holes_;
};

/// <phi|psi> = sum_i w_i conj(phi_i) psi_i with all w_i > 0.
class WeightedInnerProduct {
 public:
  explicit WeightedInnerProduct(Eigen::VectorXd weights);
  static WeightedInnerProduct uniform(std::size_t num_sites);

  const Eigen::VectorXd& weights() const { return weights_; }

  Complex operator()(const Eigen::VectorXcd& phi, const Eigen::VectorXcd& psi) const;
  double norm_squared(const Eigen::VectorXcd& psi) const;

 private:
  Eigen::VectorXd weights_;
};

/// Zeroes the amplitudes at blocked sites; open sites are copied untouched.
WaveState apply_filter(const Projector& p, const WaveState& s);
void apply_filter_in_place(const Projector& p, Eigen::VectorXcd& amplitudes);

/// Throws LengthMismatch on differing dimensions.
Complex inner_product(const WeightedInnerProduct& ip, const WaveState& phi, const WaveState& psi);

/// Squared norm of `s` under its own weights.
double norm_squared(const WaveState& s);

/// (P psi, (1 - P) psi). Throws LengthMismatch when `ip` and `s` disagree.
std::pair<WaveState, WaveState> decompose(const Projector& p, const WaveState& s,
                                          const WeightedInnerProduct& ip);

}  // namespace caqt
