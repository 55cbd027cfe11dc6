#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace caqt {

// Tolerances of the randomized property suites.
inline constexpr double kProductRuleTol = 1e-12;     // relative
inline constexpr double kSumRuleTol = 1e-12;         // relative
inline constexpr double kRewriteTol = 1e-10;
inline constexpr double kTransparentFilterTol = 1e-12;
inline constexpr double kOracleTol = 1e-10;
inline constexpr double kSuperpositionTol = 1e-12;
inline constexpr double kSchrodingerMinRatio = 3.0;
inline constexpr double kInterferenceNodeTol = 1e-12;

struct CaseFailure {
  std::uint64_t seed = 0;
  std::string message;
};

struct CheckReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<CaseFailure> failures;
  /// Largest observed error statistic across cases (suite specific).
  double worst = 0.0;

  bool passed() const { return failures.empty(); }
};

/// homomorphism, rewrite-invariance, transparent-filter, oracle-equivalence,
/// superposition, schrodinger, null-detection
const std::vector<std::string>& check_suites();

/// Runs case i with seed `seed + i`, so a single failing case can be replayed
/// with `--seed <case seed> --cases 1`. Throws std::invalid_argument for an
/// unknown suite.
CheckReport run_check(const std::string& suite, std::uint64_t seed, std::size_t cases);

}  // namespace caqt
