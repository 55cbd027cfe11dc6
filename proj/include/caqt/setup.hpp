#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <variant>
#include <vector>

#include "caqt/errors.hpp"

namespace caqt {

/// A lattice site at an integer time step.
struct SpacetimePoint {
  int site = 0;
  int time = 0;

  auto operator<=>(const SpacetimePoint&) const = default;
};

/// A screen at `time` that is open only at `holes` (strictly increasing).
struct Filter {
  int time = 0;
  std::vector<int> holes;

  auto operator<=>(const Filter&) const = default;

  /// Sorted, deduplicated hole set; rejects empty sets.
  static Filter at(int time, std::vector<int> holes);
};

/// Normal form of a setup: source, ordered filters, detector.
///
/// Either src.time < dst.time with every filter strictly in between, or the
/// zero-duration setup src == dst with no filters.
struct CanonicalSetup {
  SpacetimePoint src;
  SpacetimePoint dst;
  std::vector<Filter> filters;

  bool operator==(const CanonicalSetup&) const = default;

  bool is_zero_duration() const { return src.time == dst.time; }

  /// Throws SetupError(InvalidSetup) when the normal-form invariants fail.
  void validate() const;
};

struct SetupExpr;
using SetupExprPtr = std::shared_ptr<const SetupExpr>;

/// AST of setups composed with the physical AND / OR connectives.
///
/// Leaves are bracket literals `[dst; filters...; src]`; an elementary setup
/// is a leaf with no filters. Validity is decided by canonicalize().
struct SetupExpr {
  struct Leaf {
    SpacetimePoint src;
    SpacetimePoint dst;
    std::vector<Filter> filters;
  };
  /// `later` runs after `earlier`; earlier.dst must equal later.src.
  struct And {
    SetupExprPtr later;
    SetupExprPtr earlier;
  };
  struct Or {
    SetupExprPtr left;
    SetupExprPtr right;
  };

  std::variant<Leaf, And, Or> node;
  SourceSpan span;
};

SetupExprPtr make_leaf(SpacetimePoint src, SpacetimePoint dst, std::vector<Filter> filters = {},
                       SourceSpan span = {});
SetupExprPtr make_elementary(SpacetimePoint src, SpacetimePoint dst);
SetupExprPtr make_and(SetupExprPtr later, SetupExprPtr earlier, SourceSpan span = {});
SetupExprPtr make_or(SetupExprPtr left, SetupExprPtr right, SourceSpan span = {});
SetupExprPtr make_leaf(const CanonicalSetup& setup);

/// Structural AST equality (ignores spans).
bool structurally_equal(const SetupExpr& a, const SetupExpr& b);

/// [later][earlier]: filters become earlier ++ {junction} ++ later.
CanonicalSetup and_compose(const CanonicalSetup& later, const CanonicalSetup& earlier);

/// Union of the single differing filter of two otherwise identical setups.
CanonicalSetup or_compose(const CanonicalSetup& a, const CanonicalSetup& b);

CanonicalSetup canonicalize(const SetupExpr& e);

/// Throws SetupError(UnboundSite) for any site outside [0, num_sites).
void bind(const SetupExpr& e, std::size_t num_sites);
void bind(const CanonicalSetup& s, std::size_t num_sites);

}  // namespace caqt
