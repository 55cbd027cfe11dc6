#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "caqt/checks.hpp"

using namespace caqt;

TEST_CASE("every property suite passes on a short run") {
  for (const auto& suite : check_suites()) {
    CAPTURE(suite);
    const auto report = run_check(suite, 0, 50);
    CHECK(report.passed());
    CHECK(report.cases == 50);
    for (const auto& f : report.failures) MESSAGE(f.seed, ": ", f.message);
  }
}

TEST_CASE("suites are deterministic in the seed") {
  const auto a = run_check("homomorphism", 42, 20);
  const auto b = run_check("homomorphism", 42, 20);
  CHECK(a.worst == b.worst);
  CHECK(run_check("schrodinger", 7, 5).worst == run_check("schrodinger", 7, 5).worst);
}

TEST_CASE("case i replays alone with seed + i") {
  const auto batch = run_check("oracle-equivalence", 100, 10);
  double worst = 0.0;
  for (std::uint64_t s = 100; s < 110; ++s) worst = std::max(worst, run_check("oracle-equivalence", s, 1).worst);
  CHECK(worst == batch.worst);
}

TEST_CASE("unknown suites and empty runs") {
  CHECK_THROWS_AS(run_check("no-such-suite", 0, 1), std::invalid_argument);
  const auto empty = run_check("superposition", 0, 0);
  CHECK(empty.passed());
  CHECK(empty.cases == 0);
  CHECK(check_suites().size() == 7);
}
