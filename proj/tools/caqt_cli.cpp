// caqt: batch front-end for the amplitude laboratory.
//
// Exit codes: 0 success, 1 usage or failed check, 2 parse error,
// 3 invalid composition, 4 lattice mismatch, 5 zero state.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "caqt/amplitude.hpp"
#include "caqt/born.hpp"
#include "caqt/checks.hpp"
#include "caqt/dsl.hpp"
#include "caqt/errors.hpp"
#include "caqt/hilbert.hpp"
#include "caqt/lattice.hpp"

namespace {

using namespace caqt;
using nlohmann::json;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kComposition = 3,
  kMismatch = 4,
  kZero = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Keeps trailing zeros so every value shows 17 significant digits.
std::string g17_padded(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.17g", x);
  return buf;
}

std::string complex_text(Complex z) {
  const bool negative = z.imag() < 0.0;
  return g17_padded(z.real()) + (negative ? " - " : " + ") +
         g17_padded(negative ? -z.imag() : z.imag()) + "i";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string lattice_path;
  double dt = 0.1;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out_path;

  std::string setup_file;     // amp
  std::string amplitudes;     // state spec, inline JSON or a path
  std::string state_setup;    // state spec, DSL setup to evolve
  int steps = 0;              // evolve
  std::vector<std::string> filters;
  std::size_t site = 0;       // ensemble
  double fraction = 0.0;
  double epsilon = 0.0;
  std::vector<std::uint64_t> replicas;
  std::string suite;          // check
  std::size_t cases = 100;
};

LatticeConfig require_lattice(const Options& o) {
  if (o.lattice_path.empty()) throw UsageError("--lattice is required for this command");
  return load_lattice(o.lattice_path);
}

StepKernel kernel_for(const LatticeConfig& cfg, double dt) {
  if (!(dt > 0.0)) throw UsageError("--dt must be positive");
  return build_kernel(build_hamiltonian(cfg), dt);
}

Eigen::VectorXcd amplitudes_from_json(const json& doc) {
  const json& arr = doc.is_object() ? doc.at("amplitudes") : doc;
  if (!arr.is_array()) throw json::type_error::create(302, "amplitudes must be an array", &arr);
  Eigen::VectorXcd a(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& pair = arr[i];
    if (pair.is_number()) {
      a(static_cast<Eigen::Index>(i)) = Complex(pair.get<double>(), 0.0);
    } else {
      if (!pair.is_array() || pair.size() != 2) {
        throw json::type_error::create(302, "amplitude entries must be [re, im] pairs", &pair);
      }
      a(static_cast<Eigen::Index>(i)) = Complex(pair[0].get<double>(), pair[1].get<double>());
    }
  }
  return a;
}

// Inline amplitudes, or the wave function at the detector time of a setup.
WaveState load_state(const Options& o, const LatticeConfig& cfg) {
  if (!o.amplitudes.empty() == !o.state_setup.empty()) {
    throw UsageError("give exactly one of --amplitudes or --setup");
  }
  if (!o.amplitudes.empty()) {
    const auto first = o.amplitudes.find_first_not_of(" \t\n");
    const bool inline_json =
        first != std::string::npos && (o.amplitudes[first] == '[' || o.amplitudes[first] == '{');
    const std::string text = inline_json ? o.amplitudes : read_file(o.amplitudes);
    const auto a = amplitudes_from_json(json::parse(text));
    auto state = WaveState::on_lattice(cfg, a);
    state.validate();
    return state;
  }
  const auto expr = parse_setup(read_file(o.state_setup));
  bind(*expr, cfg.num_sites);
  const CanonicalSetup s = canonicalize(*expr);
  const StepKernel k = kernel_for(cfg, o.dt);
  WaveState source = WaveState::on_lattice(
      cfg, WaveState::basis(cfg.num_sites, static_cast<std::size_t>(s.src.site)).amplitudes,
      s.src.time);
  return evolve(source, k, s.dst.time - s.src.time, s.filters);
}

std::string cmd_amp(const Options& o) {
  const LatticeConfig cfg = require_lattice(o);
  const auto expr = parse_setup(read_file(o.setup_file));
  bind(*expr, cfg.num_sites);
  const CanonicalSetup s = canonicalize(*expr);
  const Complex psi = amplitude_chain(s, kernel_for(cfg, o.dt));
  if (o.format == "json") {
    return json{{"setup", print(s)}, {"re", psi.real()}, {"im", psi.imag()}}.dump() + "\n";
  }
  return complex_text(psi) + "\n";
}

std::string cmd_evolve(const Options& o) {
  const LatticeConfig cfg = require_lattice(o);
  WaveState state = load_state(o, cfg);
  std::vector<Filter> filters;
  for (const auto& text : o.filters) filters.push_back(parse_filter(text));
  for (const auto& f : filters) {
    if (f.holes.front() < 0 || static_cast<std::size_t>(f.holes.back()) >= cfg.num_sites) {
      throw SetupError(SetupErrorKind::UnboundSite, "filter " + print(f) + " leaves the lattice");
    }
  }
  if (o.steps < 0) throw UsageError("--steps must be non-negative");
  const WaveState out = evolve(state, kernel_for(cfg, o.dt), o.steps, filters);
  if (o.format == "json") {
    json amps = json::array();
    for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i) {
      amps.push_back({out.amplitudes(i).real(), out.amplitudes(i).imag()});
    }
    return json{{"time", out.time}, {"amplitudes", amps}}.dump() + "\n";
  }
  std::string csv = "site,re,im\n";
  for (Eigen::Index i = 0; i < out.amplitudes.size(); ++i) {
    csv += std::to_string(i) + "," + g17(out.amplitudes(i).real()) + "," +
           g17(out.amplitudes(i).imag()) + "\n";
  }
  return csv;
}

std::string cmd_born(const Options& o) {
  const LatticeConfig cfg = require_lattice(o);
  const ProbabilityReport r = born(load_state(o, cfg));
  if (o.format == "json") {
    return json{{"probabilities", r.probabilities},
                {"densities", r.densities},
                {"weights", r.weights},
                {"total", r.total},
                {"normalized_input", r.normalized_input}}
               .dump() +
           "\n";
  }
  std::string csv = "site,probability,density,weight\n";
  for (std::size_t i = 0; i < r.probabilities.size(); ++i) {
    csv += std::to_string(i) + "," + g17(r.probabilities[i]) + "," + g17(r.densities[i]) + "," +
           g17(r.weights[i]) + "\n";
  }
  return csv;
}

std::string cmd_ensemble(const Options& o) {
  if (o.replicas.empty()) throw UsageError("--replicas needs at least one N");
  for (std::size_t i = 1; i < o.replicas.size(); ++i) {
    if (o.replicas[i] <= o.replicas[i - 1]) {
      throw UsageError("--replicas must be strictly ascending");
    }
  }
  if (!(o.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  if (!(o.fraction >= 0.0 && o.fraction <= 1.0)) throw UsageError("--fraction must lie in [0, 1]");
  const LatticeConfig cfg = require_lattice(o);
  const WaveState state = load_state(o, cfg);
  if (o.site >= state.size()) throw UsageError("--site is outside the lattice");
  const auto rows = convergence_sweep(state, o.site, o.fraction, o.epsilon, o.replicas);
  if (o.format == "json") {
    json out = json::array();
    for (const auto& row : rows) {
      out.push_back({{"N", row.replicas},
                     {"distance_sq", row.distance_sq},
                     {"hoeffding_bound", row.hoeffding_bound}});
    }
    return out.dump() + "\n";
  }
  std::string csv = "N,distance_sq,hoeffding_bound\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.replicas) + "," + g17(row.distance_sq) + "," +
           g17(row.hoeffding_bound) + "\n";
  }
  return csv;
}

int cmd_check(const Options& o, std::string& output) {
  const auto& suites = check_suites();
  if (std::find(suites.begin(), suites.end(), o.suite) == suites.end()) {
    std::string list;
    for (const auto& s : suites) list += "  " + s + "\n";
    std::cerr << "error: unknown suite '" << o.suite << "'; available suites:\n" << list;
    return kUsage;
  }
  if (o.cases == 0) std::cerr << "warning: --cases 0 runs no cases\n";
  const CheckReport report = run_check(o.suite, o.seed, o.cases);
  for (const auto& f : report.failures) {
    std::cerr << "FAIL seed=" << f.seed << ": " << f.message << "\n"
              << "  reproduce: caqt check " << o.suite << " --seed " << f.seed << " --cases 1\n";
  }
  if (!report.passed()) {
    std::cerr << o.suite << ": " << report.failures.size() << " of " << report.cases
              << " cases failed\n";
    return kUsage;
  }
  if (o.format == "json") {
    output = json{{"suite", o.suite}, {"seed", o.seed}, {"cases", report.cases},
                  {"failures", 0}, {"worst", report.worst}}
                 .dump() +
             "\n";
  } else {
    output = o.suite + ": " + std::to_string(report.cases) + " cases passed (seed " +
             std::to_string(o.seed) + ", worst " + g17(report.worst) + ")\n";
  }
  return kOk;
}

int emit(const Options& o, const std::string& text) {
  if (o.out_path.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream out(o.out_path);
  if (!out) {
    std::cerr << "error: cannot write '" << o.out_path << "'\n";
    return kUsage;
  }
  out << text;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Consistent-amplitude laboratory: setups, amplitudes, evolution and Born statistics"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--lattice", o.lattice_path, "Lattice configuration (JSON)");
  app.add_option("--dt", o.dt, "Kernel time step")->capture_default_str();
  app.add_option("--seed", o.seed, "Seed for check suites")->capture_default_str();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", o.out_path, "Write output to PATH instead of stdout");

  auto add_state_options = [&](CLI::App* cmd) {
    cmd->add_option("--amplitudes", o.amplitudes,
                    "Inline JSON array of [re, im] pairs, or a file containing one");
    cmd->add_option("--setup", o.state_setup,
                    "Setup file; the state is the wave function at its detector time");
  };

  auto* amp = app.add_subcommand("amp", "Amplitude of a setup");
  amp->add_option("setup", o.setup_file, "Setup file (DSL)")->required();

  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a state through optional filters");
  add_state_options(evolve_cmd);
  evolve_cmd->add_option("--steps", o.steps, "Number of kernel steps")->capture_default_str();
  evolve_cmd->add_option("--filter", o.filters, "Filter such as {1,3}@2 (repeatable)");

  auto* born_cmd = app.add_subcommand("born", "Born probabilities of a state");
  add_state_options(born_cmd);

  auto* ensemble = app.add_subcommand("ensemble", "Replica-ensemble filter distances");
  add_state_options(ensemble);
  ensemble->add_option("--site", o.site, "Detector site k")->required();
  ensemble->add_option("--fraction", o.fraction, "Target fraction f")->required();
  ensemble->add_option("--epsilon", o.epsilon, "Window half-width")->required();
  ensemble->add_option("--replicas", o.replicas, "Ascending replica counts N")
      ->required()
      ->delimiter(',');

  auto* check = app.add_subcommand("check", "Run a randomized property suite");
  check->add_option("suite", o.suite, "Suite name")->required();
  check->add_option("--cases", o.cases, "Number of cases")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    std::string output;
    if (amp->parsed()) {
      output = cmd_amp(o);
    } else if (evolve_cmd->parsed()) {
      output = cmd_evolve(o);
    } else if (born_cmd->parsed()) {
      output = cmd_born(o);
    } else if (ensemble->parsed()) {
      output = cmd_ensemble(o);
    } else {
      const int code = cmd_check(o, output);
      if (code != kOk) return code;
    }
    return emit(o, output);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const json::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const LatticeError& e) {
    std::cerr << "lattice error: " << e.what() << "\n";
    return kParse;
  } catch (const SetupError& e) {
    std::cerr << "invalid setup: " << e.what() << "\n";
    return kComposition;
  } catch (const LatticeMismatch& e) {
    std::cerr << "lattice mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const LengthMismatch& e) {
    std::cerr << "lattice mismatch: " << e.what() << "\n";
    return kMismatch;
  } catch (const FilterOutsideWindow& e) {
    std::cerr << "invalid setup: " << e.what() << "\n";
    return kComposition;
  } catch (const ZeroState& e) {
    std::cerr << "zero state: " << e.what() << "\n";
    return kZero;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
