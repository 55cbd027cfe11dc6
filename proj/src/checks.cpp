#include "caqt/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "caqt/amplitude.hpp"
#include "caqt/born.hpp"
#include "caqt/dsl.hpp"
#include "caqt/fuzz.hpp"
#include "caqt/hilbert.hpp"

namespace caqt {

namespace {

// A case returns its error statistic and fills `why` on failure.
using CaseFn = std::function<double(Rng&, std::string& why)>;

struct Fixture {
  LatticeConfig lattice;
  StepKernel kernel;
};

Fixture random_fixture(Rng& rng, std::size_t min_sites, std::size_t max_sites) {
  LatticeConfig cfg = random_lattice(rng, min_sites, max_sites);
  const double dt = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
  StepKernel k = build_kernel(build_hamiltonian(cfg), dt);
  return {std::move(cfg), std::move(k)};
}

// |a - b| relative to the magnitude scale of the operands being combined.
double scaled_error(Complex a, Complex b, double scale) {
  return std::abs(a - b) / std::max(scale, 1e-300);
}

std::string describe(const CanonicalSetup& s) { return print(s); }

double homomorphism_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 2, 8);
  const SetupShape shape{3, 3, 3};

  const auto [later, earlier] = random_and_pair(rng, fx.lattice.num_sites, shape);
  const Complex joined = amplitude_chain(and_compose(later, earlier), fx.kernel);
  const Complex a = amplitude_chain(later, fx.kernel);
  const Complex b = amplitude_chain(earlier, fx.kernel);
  const double product_err = scaled_error(joined, a * b, std::abs(a) * std::abs(b));
  if (product_err > kProductRuleTol) {
    std::ostringstream os;
    os << "product rule: psi(" << describe(later) << " AND " << describe(earlier)
       << ") relative error " << product_err;
    why = os.str();
  }

  const auto [left, right] = random_or_pair(rng, fx.lattice.num_sites, shape);
  const Complex merged = amplitude_chain(or_compose(left, right), fx.kernel);
  const Complex l = amplitude_chain(left, fx.kernel);
  const Complex r = amplitude_chain(right, fx.kernel);
  const double sum_err = scaled_error(merged, l + r, std::abs(l) + std::abs(r));
  if (sum_err > kSumRuleTol && why.empty()) {
    std::ostringstream os;
    os << "sum rule: psi(" << describe(left) << " OR " << describe(right)
       << ") relative error " << sum_err;
    why = os.str();
  }
  return std::max(product_err, sum_err);
}

double rewrite_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 2, 6);
  const SetupShape shape{4, 2, 3};
  const auto original = random_expression_for(rng, random_canonical(rng, fx.lattice.num_sites, shape));
  const int steps = std::uniform_int_distribution<int>(1, 10)(rng);
  const auto rewritten = rewrite_random(rng, original, steps);

  if (canonicalize(*original) != canonicalize(*rewritten)) {
    why = "canonical forms differ: " + print(*original) + " vs " + print(*rewritten);
    return INFINITY;
  }
  const Complex lhs = amplitude_expr(*original, fx.kernel);
  const Complex rhs = amplitude_expr(*rewritten, fx.kernel);
  const Complex direct = amplitude_chain(canonicalize(*original), fx.kernel);
  const double err = std::max(std::abs(lhs - rhs), std::abs(lhs - direct));
  if (err > kRewriteTol) {
    std::ostringstream os;
    os << "amplitudes of " << print(*original) << " and " << print(*rewritten) << " differ by "
       << err;
    why = os.str();
  }
  return err;
}

double transparent_filter_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 2, 8);
  const std::size_t m = fx.lattice.num_sites;
  CanonicalSetup s;
  std::vector<int> free_times;
  do {
    s = random_canonical(rng, m, SetupShape{3, 3, 3});
    free_times.clear();
    for (int t = s.src.time + 1; t < s.dst.time; ++t) {
      const bool taken = std::any_of(s.filters.begin(), s.filters.end(),
                                     [t](const Filter& f) { return f.time == t; });
      if (!taken) free_times.push_back(t);
    }
  } while (free_times.empty());
  const int t = free_times[std::uniform_int_distribution<std::size_t>(0, free_times.size() - 1)(rng)];

  std::vector<int> every(m);
  for (std::size_t i = 0; i < m; ++i) every[i] = static_cast<int>(i);
  CanonicalSetup open = s;
  const auto pos = std::find_if(open.filters.begin(), open.filters.end(),
                                [t](const Filter& f) { return f.time > t; });
  open.filters.insert(pos, Filter{t, every});

  const Complex base = amplitude_chain(s, fx.kernel);
  const double err = std::max(std::abs(amplitude_chain(open, fx.kernel) - base),
                              std::abs(amplitude_pathsum(open, fx.kernel) - base));
  if (err > kTransparentFilterTol) {
    std::ostringstream os;
    os << "all-holes filter at t=" << t << " in " << print(s) << " changed the amplitude by " << err;
    why = os.str();
  }
  return err;
}

double oracle_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 2, 8);
  const auto s = random_canonical(rng, fx.lattice.num_sites, SetupShape{4, 3, 4});
  const double err = std::abs(amplitude_chain(s, fx.kernel) - amplitude_pathsum(s, fx.kernel));
  if (err > kOracleTol) {
    std::ostringstream os;
    os << "chain and path sum disagree on " << print(s) << " by " << err;
    why = os.str();
  }
  return err;
}

double superposition_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 3, 8);
  const int m = static_cast<int>(fx.lattice.num_sites);
  std::uniform_int_distribution<int> site(0, m - 1);
  std::uniform_int_distribution<int> gap(1, 4);
  const SpacetimePoint src{site(rng), 0};
  const int t0 = src.time + gap(rng);
  const int t = t0 + gap(rng);
  const int first = site(rng);
  int second = site(rng);
  while (second == first) second = site(rng);

  const auto sup = build_superposition(src, {first, second}, t0, t, fx.kernel);
  const auto m_sites = static_cast<std::size_t>(m);
  const WaveState primed = propagate(WaveState::basis(m_sites, static_cast<std::size_t>(first), t0), fx.kernel, t - t0);
  const WaveState double_primed =
      propagate(WaveState::basis(m_sites, static_cast<std::size_t>(second), t0), fx.kernel, t - t0);
  const Eigen::VectorXcd expected = sup.alpha * primed.amplitudes + sup.beta * double_primed.amplitudes;
  const double err = (sup.state.amplitudes - expected).cwiseAbs().maxCoeff();
  if (err > kSuperpositionTol) {
    std::ostringstream os;
    os << "superposition through holes {" << first << "," << second << "}@" << t0
       << " deviates by " << err;
    why = os.str();
  }
  return err;
}

double schrodinger_case(Rng& rng, std::string& why) {
  const LatticeConfig cfg = random_lattice(rng, 2, 16);
  const Hamiltonian h = build_hamiltonian(cfg);
  Eigen::VectorXcd a = random_amplitudes(rng, cfg.num_sites);
  a.normalize();
  const WaveState psi = WaveState::uniform(a);

  double dt = 1e-2;
  double previous = schrodinger_residual(psi, h, dt);
  double worst = INFINITY;
  for (int halving = 0; halving < 3; ++halving) {
    dt /= 2.0;
    const double next = schrodinger_residual(psi, h, dt);
    const double ratio = previous / next;
    worst = std::min(worst, ratio);
    if (!(ratio >= kSchrodingerMinRatio) && why.empty()) {
      std::ostringstream os;
      os << "residual ratio " << ratio << " at dt=" << dt << " on " << cfg.num_sites << " sites";
      why = os.str();
    }
    previous = next;
  }
  return worst;
}

double null_detection_case(Rng& rng, std::string& why) {
  const auto fx = random_fixture(rng, 3, 8);
  const std::size_t m = fx.lattice.num_sites;
  std::uniform_int_distribution<std::size_t> site(0, m - 1);
  const int steps = std::uniform_int_distribution<int>(1, 6)(rng);

  // Exact node: bit-identical futures.
  Eigen::VectorXcd a = random_amplitudes(rng, m);
  const std::size_t node = site(rng);
  a(static_cast<Eigen::Index>(node)) = 0.0;
  const auto exact = null_detection_check(WaveState::uniform(a), node, fx.kernel, steps);
  if (!exact.no_effect) {
    why = "blocking an exact node changed the evolution by " + std::to_string(exact.deviation);
    return exact.deviation;
  }

  // Interference node from two sources behind a two-hole screen.
  const std::size_t first = site(rng);
  std::size_t second = site(rng);
  while (second == first) second = site(rng);
  const int t0 = 2;
  const int t = t0 + std::uniform_int_distribution<int>(1, 4)(rng);
  const SpacetimePoint src{static_cast<int>(site(rng)), 0};
  const auto sup = build_superposition(src, {static_cast<int>(first), static_cast<int>(second)},
                                       t0, t, fx.kernel);
  const auto primed = propagate(WaveState::basis(m, first, t0), fx.kernel, t - t0);
  const auto double_primed = propagate(WaveState::basis(m, second, t0), fx.kernel, t - t0);
  std::size_t x0 = 0;
  for (std::size_t i = 1; i < m; ++i) {
    if (std::abs(double_primed.amplitudes(static_cast<Eigen::Index>(i))) >
        std::abs(double_primed.amplitudes(static_cast<Eigen::Index>(x0)))) {
      x0 = i;
    }
  }
  const auto i0 = static_cast<Eigen::Index>(x0);
  const Complex beta = -sup.alpha * primed.amplitudes(i0) / double_primed.amplitudes(i0);
  WaveState tuned = primed;
  tuned.amplitudes = sup.alpha * primed.amplitudes + beta * double_primed.amplitudes;
  const auto tolerant = null_detection_check(tuned, x0, fx.kernel, steps, kInterferenceNodeTol);
  if (!tolerant.no_effect) {
    why = "blocking an interference node changed the evolution by " +
          std::to_string(tolerant.deviation);
  }
  return tolerant.deviation;
}

const std::map<std::string, CaseFn>& registry() {
  static const std::map<std::string, CaseFn> suites{
      {"homomorphism", homomorphism_case},
      {"rewrite-invariance", rewrite_case},
      {"transparent-filter", transparent_filter_case},
      {"oracle-equivalence", oracle_case},
      {"superposition", superposition_case},
      {"schrodinger", schrodinger_case},
      {"null-detection", null_detection_case},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& check_suites() {
  static const std::vector<std::string> names{
      "homomorphism", "rewrite-invariance", "transparent-filter", "oracle-equivalence",
      "superposition", "schrodinger",       "null-detection"};
  return names;
}

CheckReport run_check(const std::string& suite, std::uint64_t seed, std::size_t cases) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw std::invalid_argument("unknown check suite '" + suite + "'");

  CheckReport report;
  report.suite = suite;
  report.cases = cases;
  // Schrodinger reports the smallest ratio; the rest report the largest error.
  const bool minimize = suite == "schrodinger";
  report.worst = minimize ? INFINITY : 0.0;
  for (std::size_t i = 0; i < cases; ++i) {
    const std::uint64_t case_seed = seed + i;
    Rng rng(case_seed);
    std::string why;
    double stat = 0.0;
    try {
      stat = it->second(rng, why);
    } catch (const std::exception& e) {
      why = std::string("unexpected exception: ") + e.what();
    }
    report.worst = minimize ? std::min(report.worst, stat) : std::max(report.worst, stat);
    if (!why.empty()) report.failures.push_back({case_seed, why});
  }
  return report;
}

}  // namespace caqt
