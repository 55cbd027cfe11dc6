#include "caqt/wave_state.hpp"

#include <string>

#include "caqt/errors.hpp"

namespace caqt {

WaveState WaveState::uniform(Eigen::VectorXcd amplitudes, int time) {
  WaveState s;
  s.time = time;
  s.weights = Eigen::VectorXd::Ones(amplitudes.size());
  s.amplitudes = std::move(amplitudes);
  return s;
}

WaveState WaveState::on_lattice(const LatticeConfig& cfg, Eigen::VectorXcd amplitudes, int time) {
  if (static_cast<std::size_t>(amplitudes.size()) != cfg.num_sites) {
    throw LatticeMismatch("state has " + std::to_string(amplitudes.size()) +
                          " amplitudes but the lattice has " + std::to_string(cfg.num_sites) +
                          " sites");
  }
  WaveState s;
  s.time = time;
  s.amplitudes = std::move(amplitudes);
  s.weights = Eigen::Map<const Eigen::VectorXd>(cfg.weights.data(),
                                                static_cast<Eigen::Index>(cfg.weights.size()));
  return s;
}

WaveState WaveState::basis(std::size_t num_sites, std::size_t site, int time) {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(num_sites));
  a(static_cast<Eigen::Index>(site)) = 1.0;
  return uniform(std::move(a), time);
}

void WaveState::validate() const {
  if (amplitudes.size() != weights.size()) {
    throw LengthMismatch("state has " + std::to_string(amplitudes.size()) + " amplitudes but " +
                         std::to_string(weights.size()) + " weights");
  }
  if (!amplitudes.allFinite()) throw std::invalid_argument("state has non-finite amplitudes");
}

}  // namespace caqt
