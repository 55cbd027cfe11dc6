#include "caqt/amplitude.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "caqt/errors.hpp"
#include "caqt/hilbert.hpp"

namespace caqt {

namespace {

void check_on_lattice(const CanonicalSetup& s, std::size_t num_sites) {
  auto check = [&](int site) {
    if (site < 0 || static_cast<std::size_t>(site) >= num_sites) {
      throw LatticeMismatch("site " + std::to_string(site) + " is outside the kernel's " +
                            std::to_string(num_sites) + "-site lattice");
    }
  };
  check(s.src.site);
  check(s.dst.site);
  for (const auto& f : s.filters) {
    for (int h : f.holes) check(h);
  }
}

void step_in_place(const StepKernel& k, Eigen::VectorXcd& v, int steps, Eigen::VectorXcd& scratch) {
  for (int i = 0; i < steps; ++i) {
    scratch.noalias() = k.matrix() * v;
    v.swap(scratch);
  }
}

Complex eval_tree(const SetupExpr& e, const StepKernel& k) {
  if (std::holds_alternative<SetupExpr::Leaf>(e.node)) {
    return amplitude_chain(canonicalize(e), k);
  }
  if (const auto* conj = std::get_if<SetupExpr::And>(&e.node)) {
    return eval_tree(*conj->later, k) * eval_tree(*conj->earlier, k);
  }
  const auto& disj = std::get<SetupExpr::Or>(e.node);
  return eval_tree(*disj.left, k) + eval_tree(*disj.right, k);
}

}  // namespace

Complex amplitude_chain(const CanonicalSetup& s, const StepKernel& k) {
  s.validate();
  check_on_lattice(s, k.num_sites());
  if (s.is_zero_duration()) return 1.0;

  const auto m = static_cast<Eigen::Index>(k.num_sites());
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
  Eigen::VectorXcd scratch(m);
  v(s.src.site) = 1.0;
  int now = s.src.time;
  for (const auto& f : s.filters) {
    step_in_place(k, v, f.time - now, scratch);
    apply_filter_in_place(Projector(f), v);
    now = f.time;
  }
  step_in_place(k, v, s.dst.time - now, scratch);
  return v(s.dst.site);
}

Complex amplitude_pathsum(const CanonicalSetup& s, const StepKernel& k, std::size_t max_paths) {
  s.validate();
  check_on_lattice(s, k.num_sites());
  if (s.is_zero_duration()) return 1.0;

  std::size_t paths = 1;
  for (const auto& f : s.filters) {
    if (f.holes.size() > max_paths / paths) {
      throw PathExplosion("setup has more than " + std::to_string(max_paths) +
                          " hole combinations; use amplitude_chain");
    }
    paths *= f.holes.size();
  }

  // Elementary link amplitudes <x'|K^gap|x> for every gap length used.
  std::vector<int> times{s.src.time};
  for (const auto& f : s.filters) times.push_back(f.time);
  times.push_back(s.dst.time);
  std::map<int, Eigen::MatrixXcd> powers;
  for (std::size_t j = 0; j + 1 < times.size(); ++j) {
    const int gap = times[j + 1] - times[j];
    if (powers.count(gap)) continue;
    Eigen::MatrixXcd p = k.matrix();
    for (int i = 1; i < gap; ++i) p = k.matrix() * p;
    powers.emplace(gap, std::move(p));
  }
  std::vector<const Eigen::MatrixXcd*> links;
  for (std::size_t j = 0; j + 1 < times.size(); ++j) {
    links.push_back(&powers.at(times[j + 1] - times[j]));
  }

  const std::size_t n = s.filters.size();
  std::vector<std::size_t> choice(n, 0);
  Complex total = 0.0;
  for (std::size_t path = 0; path < paths; ++path) {
    Complex product = 1.0;
    int from = s.src.site;
    for (std::size_t j = 0; j < n; ++j) {
      const int to = s.filters[j].holes[choice[j]];
      product *= (*links[j])(to, from);
      from = to;
    }
    product *= (*links[n])(s.dst.site, from);
    total += product;

    for (std::size_t j = 0; j < n; ++j) {
      if (++choice[j] < s.filters[j].holes.size()) break;
      choice[j] = 0;
    }
  }
  return total;
}

Complex amplitude_expr(const SetupExpr& e, const StepKernel& k) {
  canonicalize(e);
  return eval_tree(e, k);
}

WaveState propagate(const WaveState& state, const StepKernel& k, int steps) {
  return evolve(state, k, steps);
}

WaveState evolve(const WaveState& state, const StepKernel& k, int steps,
                 std::span<const Filter> filters) {
  if (steps < 0) throw std::invalid_argument("cannot evolve a negative number of steps");
  if (state.size() != k.num_sites()) {
    throw LatticeMismatch("state has " + std::to_string(state.size()) + " sites, kernel has " +
                          std::to_string(k.num_sites()));
  }
  const int start = state.time;
  const int stop = state.time + steps;
  std::vector<Filter> ordered(filters.begin(), filters.end());
  for (const auto& f : ordered) {
    if (f.time < start || f.time > stop) {
      throw FilterOutsideWindow("filter at time " + std::to_string(f.time) +
                                " lies outside the evolution window [" + std::to_string(start) +
                                ", " + std::to_string(stop) + "]");
    }
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Filter& a, const Filter& b) { return a.time < b.time; });

  WaveState out = state;
  Eigen::VectorXcd scratch(out.amplitudes.size());
  int now = start;
  for (const auto& f : ordered) {
    step_in_place(k, out.amplitudes, f.time - now, scratch);
    apply_filter_in_place(Projector(f), out.amplitudes);
    now = f.time;
  }
  step_in_place(k, out.amplitudes, stop - now, scratch);
  out.time = stop;
  return out;
}

double schrodinger_residual(const WaveState& state, const Hamiltonian& h, double dt) {
  const StepKernel k = build_kernel(h, dt);
  const Eigen::VectorXcd& psi = state.amplitudes;
  const Eigen::VectorXcd forward = k.matrix() * psi;
  const Eigen::VectorXcd backward = k.matrix().adjoint() * psi;
  const Complex i(0.0, 1.0);
  const Eigen::VectorXcd lhs = i * (forward - backward) / (2.0 * dt);
  return (lhs - h.matrix() * psi).norm();
}

Superposition build_superposition(SpacetimePoint src, std::pair<int, int> holes, int t0, int t,
                                  const StepKernel& k) {
  const auto [first, second] = holes;
  if (first == second) {
    throw SetupError(SetupErrorKind::OverlappingHoles, "superposition needs two distinct holes");
  }
  if (!(src.time < t0 && t0 < t)) {
    throw SetupError(SetupErrorKind::InvalidSetup,
                     "superposition needs source time < filter time < observation time");
  }
  const Filter screen = Filter::at(t0, {first, second});
  check_on_lattice(CanonicalSetup{src, SpacetimePoint{first, t}, {screen}}, k.num_sites());

  const WaveState source = WaveState::basis(k.num_sites(), static_cast<std::size_t>(src.site), src.time);
  Superposition out;
  out.state = evolve(source, k, t - src.time, std::span<const Filter>(&screen, 1));
  out.alpha = amplitude_chain(CanonicalSetup{src, SpacetimePoint{first, t0}, {}}, k);
  out.beta = amplitude_chain(CanonicalSetup{src, SpacetimePoint{second, t0}, {}}, k);
  return out;
}

}  // namespace caqt
