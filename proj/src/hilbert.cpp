#include "caqt/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "caqt/errors.hpp"

namespace caqt {

Projector::Projector(std::vector<std::size_t> holes) : holes_(std::move(holes)) {
  std::sort(holes_.begin(), holes_.end());
  holes_.erase(std::unique(holes_.begin(), holes_.end()), holes_.end());
}

Projector::Projector(const Filter& filter) {
  holes_.reserve(filter.holes.size());
  for (int h : filter.holes) {
    if (h < 0) throw LatticeMismatch("filter hole " + std::to_string(h) + " is negative");
    holes_.push_back(static_cast<std::size_t>(h));
  }
  std::sort(holes_.begin(), holes_.end());
  holes_.erase(std::unique(holes_.begin(), holes_.end()), holes_.end());
}

Projector Projector::all(std::size_t num_sites) {
  std::vector<std::size_t> holes(num_sites);
  for (std::size_t i = 0; i < num_sites; ++i) holes[i] = i;
  return Projector(std::move(holes));
}

Projector Projector::elementary(std::size_t site) { return Projector(std::vector{site}); }

Projector Projector::blocking(std::size_t num_sites, std::size_t site) {
  std::vector<std::size_t> holes;
  holes.reserve(num_sites);
  for (std::size_t i = 0; i < num_sites; ++i) {
    if (i != site) holes.push_back(i);
  }
  return Projector(std::move(holes));
}

bool Projector::is_open(std::size_t site) const {
  return std::binary_search(holes_.begin(), holes_.end(), site);
}

void apply_filter_in_place(const Projector& p, Eigen::VectorXcd& amplitudes) {
  const auto n = static_cast<std::size_t>(amplitudes.size());
  if (!p.holes().empty() && p.holes().back() >= n) {
    throw LatticeMismatch("filter hole " + std::to_string(p.holes().back()) +
                          " is outside a state of " + std::to_string(n) + " sites");
  }
  auto hole = p.holes().begin();
  for (std::size_t i = 0; i < n; ++i) {
    if (hole != p.holes().end() && *hole == i) {
      ++hole;
    } else {
      amplitudes(static_cast<Eigen::Index>(i)) = Complex(0.0, 0.0);
    }
  }
}

WaveState apply_filter(const Projector& p, const WaveState& s) {
  WaveState out = s;
  apply_filter_in_place(p, out.amplitudes);
  return out;
}

WeightedInnerProduct::WeightedInnerProduct(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(std::isfinite(weights_(i)) && weights_(i) > 0.0)) {
      throw std::invalid_argument("inner-product weight " + std::to_string(i) +
                                  " must be positive and finite");
    }
  }
}

WeightedInnerProduct WeightedInnerProduct::uniform(std::size_t num_sites) {
  return WeightedInnerProduct(Eigen::VectorXd::Ones(static_cast<Eigen::Index>(num_sites)));
}

Complex WeightedInnerProduct::operator()(const Eigen::VectorXcd& phi,
                                         const Eigen::VectorXcd& psi) const {
  if (phi.size() != weights_.size() || psi.size() != weights_.size()) {
    throw LengthMismatch("inner product of lengths " + std::to_string(phi.size()) + " and " +
                         std::to_string(psi.size()) + " under " +
                         std::to_string(weights_.size()) + " weights");
  }
  Complex sum = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) sum += weights_(i) * std::conj(phi(i)) * psi(i);
  return sum;
}

double WeightedInnerProduct::norm_squared(const Eigen::VectorXcd& psi) const {
  if (psi.size() != weights_.size()) {
    throw LengthMismatch("norm of a length " + std::to_string(psi.size()) + " state under " +
                         std::to_string(weights_.size()) + " weights");
  }
  double sum = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) sum += weights_(i) * std::norm(psi(i));
  return sum;
}

Complex inner_product(const WeightedInnerProduct& ip, const WaveState& phi, const WaveState& psi) {
  return ip(phi.amplitudes, psi.amplitudes);
}

double norm_squared(const WaveState& s) {
  s.validate();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) {
    sum += s.weights(i) * std::norm(s.amplitudes(i));
  }
  return sum;
}

std::pair<WaveState, WaveState> decompose(const Projector& p, const WaveState& s,
                                          const WeightedInnerProduct& ip) {
  if (ip.weights().size() != s.amplitudes.size()) {
    throw LengthMismatch("inner product and state dimensions differ");
  }
  WaveState kept = apply_filter(p, s);
  WaveState blocked = s;
  for (std::size_t h : p.holes()) blocked.amplitudes(static_cast<Eigen::Index>(h)) = 0.0;
  return {std::move(kept), std::move(blocked)};
}

}  // namespace caqt
