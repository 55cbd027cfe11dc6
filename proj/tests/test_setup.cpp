#include <doctest.h>

#include "caqt/dsl.hpp"
#include "caqt/errors.hpp"
#include "caqt/fuzz.hpp"
#include "caqt/setup.hpp"

using namespace caqt;

namespace {

CanonicalSetup link(int src_site, int src_time, int dst_site, int dst_time,
                    std::vector<Filter> filters = {}) {
  return CanonicalSetup{{src_site, src_time}, {dst_site, dst_time}, std::move(filters)};
}

template <typename F>
void expect_kind(F&& f, SetupErrorKind kind) {
  try {
    f();
    FAIL("expected SetupError ", to_string(kind));
  } catch (const SetupError& e) {
    CHECK(e.kind() == kind);
  }
}

}  // namespace

TEST_CASE("AND joins at a single-hole junction filter") {
  const auto joined = and_compose(link(2, 2, 0, 4), link(0, 0, 2, 2));
  CHECK(joined == link(0, 0, 0, 4, {Filter{2, {2}}}));

  const auto with_filters =
      and_compose(link(2, 3, 1, 6, {Filter{5, {0, 1}}}), link(0, 0, 2, 3, {Filter{1, {2}}}));
  CHECK(with_filters == link(0, 0, 1, 6, {Filter{1, {2}}, Filter{3, {2}}, Filter{5, {0, 1}}}));
}

TEST_CASE("AND rejects mismatched junctions") {
  expect_kind([] { and_compose(link(1, 2, 0, 4), link(0, 0, 2, 2)); },
              SetupErrorKind::JunctionMismatch);
  expect_kind([] { and_compose(link(2, 3, 0, 4), link(0, 0, 2, 2)); },
              SetupErrorKind::JunctionMismatch);
}

TEST_CASE("zero-duration setup is the AND identity") {
  const auto s = link(0, 0, 1, 3, {Filter{1, {0, 2}}});
  CHECK(and_compose(link(1, 3, 1, 3), s) == s);
  CHECK(and_compose(s, link(0, 0, 0, 0)) == s);
}

TEST_CASE("AND is associative over every site triple on three sites") {
  int checked = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          const auto first = link(a, 0, b, 1);
          const auto second = link(b, 1, c, 2);
          const auto third = link(c, 2, d, 3);
          const auto left = and_compose(and_compose(third, second), first);
          const auto right = and_compose(third, and_compose(second, first));
          CHECK(left == right);
          CHECK(left == link(a, 0, d, 3, {Filter{1, {b}}, Filter{2, {c}}}));
          ++checked;
        }
  CHECK(checked == 81);
}

TEST_CASE("OR unions the single differing filter") {
  const auto merged =
      or_compose(link(0, 0, 0, 4, {Filter{2, {1}}}), link(0, 0, 0, 4, {Filter{2, {3}}}));
  CHECK(merged == link(0, 0, 0, 4, {Filter{2, {1, 3}}}));

  expect_kind([] { or_compose(link(0, 0, 0, 4, {Filter{2, {1}}}), link(0, 0, 0, 4, {Filter{2, {1}}})); },
              SetupErrorKind::OverlappingHoles);
  expect_kind([] { or_compose(link(0, 0, 0, 4, {Filter{2, {1, 2}}}), link(0, 0, 0, 4, {Filter{2, {2, 3}}})); },
              SetupErrorKind::OverlappingHoles);
  expect_kind(
      [] {
        or_compose(link(0, 0, 0, 4, {Filter{1, {0}}, Filter{2, {1}}}),
                   link(0, 0, 0, 4, {Filter{1, {1}}, Filter{2, {2}}}));
      },
      SetupErrorKind::NotOrComposable);
  expect_kind([] { or_compose(link(0, 0, 0, 4), link(1, 0, 0, 4)); },
              SetupErrorKind::NotOrComposable);
  expect_kind([] { or_compose(link(0, 0, 0, 4), link(0, 0, 0, 4)); },
              SetupErrorKind::NotOrComposable);
  expect_kind([] { or_compose(link(0, 0, 0, 4, {Filter{2, {1}}}), link(0, 0, 0, 4, {Filter{3, {1}}})); },
              SetupErrorKind::NotOrComposable);
}

TEST_CASE("OR is commutative") {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = random_or_pair(rng, 6, SetupShape{});
    CHECK(or_compose(a, b) == or_compose(b, a));
    CHECK(canonicalize(*make_or(make_leaf(a), make_leaf(b))) ==
          canonicalize(*make_or(make_leaf(b), make_leaf(a))));
  }
}

TEST_CASE("AND does not commute") {
  const auto a = make_elementary({1, 1}, {0, 2});
  const auto b = make_elementary({0, 0}, {1, 1});
  CHECK(canonicalize(*make_and(a, b)) == link(0, 0, 0, 2, {Filter{1, {1}}}));
  expect_kind([&] { canonicalize(*make_and(b, a)); }, SetupErrorKind::JunctionMismatch);
}

TEST_CASE("AND distributes over OR") {
  const auto a = make_elementary({1, 4}, {0, 6});
  const auto b = make_leaf({2, 0}, {1, 4}, {Filter{2, {0}}});
  const auto c = make_leaf({2, 0}, {1, 4}, {Filter{2, {1}}});
  const auto lhs = canonicalize(*make_and(a, make_or(b, c)));
  const auto rhs = canonicalize(*make_or(make_and(a, b), make_and(a, c)));
  CHECK(lhs == rhs);
  CHECK(lhs == link(2, 0, 0, 6, {Filter{2, {0, 1}}, Filter{4, {1}}}));

  // OR does not distribute over AND: a OR (b AND c) has no valid reading here.
  const auto later = make_elementary({1, 2}, {0, 4});
  const auto earlier = make_elementary({0, 0}, {1, 2});
  expect_kind([&] { canonicalize(*make_or(later, make_and(later, earlier))); },
              SetupErrorKind::NotOrComposable);
}

TEST_CASE("leaves canonicalize to their own normal form") {
  CHECK(canonicalize(*make_elementary({0, 0}, {2, 3})) == link(0, 0, 2, 3));
  CHECK(canonicalize(*make_leaf({0, 0}, {2, 3}, {Filter{1, {3, 1}}})) ==
        link(0, 0, 2, 3, {Filter{1, {1, 3}}}));
  expect_kind([] { canonicalize(*make_elementary({0, 3}, {2, 1})); }, SetupErrorKind::InvalidSetup);
  expect_kind([] { canonicalize(*make_elementary({0, 1}, {2, 1})); }, SetupErrorKind::InvalidSetup);
  expect_kind([] { canonicalize(*make_leaf({0, 0}, {2, 3}, {Filter{3, {1}}})); },
              SetupErrorKind::InvalidSetup);
  expect_kind([] { canonicalize(*make_leaf({0, 0}, {2, 4}, {Filter{2, {1}}, Filter{1, {1}}})); },
              SetupErrorKind::InvalidSetup);
  expect_kind([] { canonicalize(*make_leaf({0, 0}, {2, 4}, {Filter{2, {1, 1}}})); },
              SetupErrorKind::InvalidSetup);
  CHECK_THROWS(Filter::at(1, {}));
  CHECK(Filter::at(1, {3, 0, 3}).holes == std::vector<int>{0, 3});
}

TEST_CASE("canonicalization errors point at the offending subexpression") {
  const auto e = parse_setup("[(0,9);(0,5)] OR\n  ([(0,4);(2,2)] AND [(1,2);(0,0)])");
  try {
    canonicalize(*e);
    FAIL("expected JunctionMismatch");
  } catch (const SetupError& err) {
    CHECK(err.kind() == SetupErrorKind::JunctionMismatch);
    REQUIRE(err.span().known());
    CHECK(err.span().line == 2);
    CHECK(err.span().column == 4);
  }
}

TEST_CASE("random rewrites preserve the canonical form") {
  Rng rng(2024);
  int changed = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto target = random_canonical(rng, 5, SetupShape{4, 2, 3});
    const auto original = random_expression_for(rng, target);
    REQUIRE(canonicalize(*original) == target);
    const int steps = std::uniform_int_distribution<int>(1, 10)(rng);
    const auto rewritten = rewrite_random(rng, original, steps);
    CHECK(canonicalize(*rewritten) == target);
    if (!structurally_equal(*original, *rewritten)) ++changed;
  }
  // Guard against a rewriter that silently does nothing.
  CHECK(changed > 500);
}

TEST_CASE("random_setup is deterministic and always valid") {
  const auto cfg = LatticeConfig::uniform(6);
  CHECK(structurally_equal(*random_setup(1, cfg, 3), *random_setup(1, cfg, 3)));
  int errors = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    try {
      const auto e = random_setup(seed, cfg, 4);
      bind(*e, cfg.num_sites);
      canonicalize(*e);
    } catch (const std::exception&) {
      ++errors;
    }
  }
  CHECK(errors == 0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto e = random_setup(seed, cfg, 0);
    const auto* leaf = std::get_if<SetupExpr::Leaf>(&e->node);
    REQUIRE(leaf != nullptr);
    CHECK(leaf->filters.empty());
  }
}

TEST_CASE("bind rejects sites outside the lattice") {
  expect_kind([] { bind(*make_elementary({0, 0}, {3, 2}), 3); }, SetupErrorKind::UnboundSite);
  expect_kind([] { bind(link(0, 0, 1, 2, {Filter{1, {5}}}), 3); }, SetupErrorKind::UnboundSite);
  expect_kind([] { bind(*make_elementary({-1, 0}, {1, 2}), 3); }, SetupErrorKind::UnboundSite);
  CHECK_NOTHROW(bind(*make_elementary({0, 0}, {2, 2}), 3));
}
