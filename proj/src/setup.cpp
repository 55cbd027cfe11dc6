#include "caqt/setup.hpp"

#include <algorithm>
#include <iterator>
#include <string>

namespace caqt {

namespace {

std::string point_str(const SpacetimePoint& p) {
  return "(" + std::to_string(p.site) + "," + std::to_string(p.time) + ")";
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

CanonicalSetup canonical_leaf(const SetupExpr::Leaf& leaf) {
  CanonicalSetup s{leaf.src, leaf.dst, {}};
  s.filters.reserve(leaf.filters.size());
  for (const auto& f : leaf.filters) {
    std::vector<int> holes = f.holes;
    std::sort(holes.begin(), holes.end());
    if (std::adjacent_find(holes.begin(), holes.end()) != holes.end()) {
      throw SetupError(SetupErrorKind::InvalidSetup,
                       "filter at time " + std::to_string(f.time) + " lists a hole twice");
    }
    s.filters.push_back(Filter{f.time, std::move(holes)});
  }
  s.validate();
  return s;
}

}  // namespace

Filter Filter::at(int time, std::vector<int> holes) {
  std::sort(holes.begin(), holes.end());
  holes.erase(std::unique(holes.begin(), holes.end()), holes.end());
  if (holes.empty()) {
    throw SetupError(SetupErrorKind::InvalidSetup,
                     "filter at time " + std::to_string(time) + " has no holes");
  }
  return Filter{time, std::move(holes)};
}

void CanonicalSetup::validate() const {
  if (src.time > dst.time) {
    throw SetupError(SetupErrorKind::InvalidSetup,
                     "source " + point_str(src) + " is later than detector " + point_str(dst));
  }
  if (src.time == dst.time) {
    if (src != dst) {
      throw SetupError(SetupErrorKind::InvalidSetup,
                       "source " + point_str(src) + " and detector " + point_str(dst) +
                           " are distinct points at the same time");
    }
    if (!filters.empty()) {
      throw SetupError(SetupErrorKind::InvalidSetup, "zero-duration setup cannot hold filters");
    }
    return;
  }
  int previous = src.time;
  for (const auto& f : filters) {
    if (f.holes.empty()) {
      throw SetupError(SetupErrorKind::InvalidSetup,
                       "filter at time " + std::to_string(f.time) + " has no holes");
    }
    if (!std::is_sorted(f.holes.begin(), f.holes.end()) ||
        std::adjacent_find(f.holes.begin(), f.holes.end()) != f.holes.end()) {
      throw SetupError(SetupErrorKind::InvalidSetup,
                       "filter at time " + std::to_string(f.time) + " holes are not a sorted set");
    }
    if (f.time <= previous || f.time >= dst.time) {
      throw SetupError(SetupErrorKind::InvalidSetup,
                       "filter at time " + std::to_string(f.time) +
                           " is not strictly between its neighbours (" +
                           std::to_string(previous) + ", " + std::to_string(dst.time) + ")");
    }
    previous = f.time;
  }
}

SetupExprPtr make_leaf(SpacetimePoint src, SpacetimePoint dst, std::vector<Filter> filters,
                       SourceSpan span) {
  return std::make_shared<const SetupExpr>(
      SetupExpr{SetupExpr::Leaf{src, dst, std::move(filters)}, span});
}

SetupExprPtr make_elementary(SpacetimePoint src, SpacetimePoint dst) { return make_leaf(src, dst); }

SetupExprPtr make_leaf(const CanonicalSetup& setup) {
  return make_leaf(setup.src, setup.dst, setup.filters);
}

SetupExprPtr make_and(SetupExprPtr later, SetupExprPtr earlier, SourceSpan span) {
  return std::make_shared<const SetupExpr>(
      SetupExpr{SetupExpr::And{std::move(later), std::move(earlier)}, span});
}

SetupExprPtr make_or(SetupExprPtr left, SetupExprPtr right, SourceSpan span) {
  return std::make_shared<const SetupExpr>(
      SetupExpr{SetupExpr::Or{std::move(left), std::move(right)}, span});
}

bool structurally_equal(const SetupExpr& a, const SetupExpr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* la = std::get_if<SetupExpr::Leaf>(&a.node)) {
    const auto& lb = std::get<SetupExpr::Leaf>(b.node);
    return la->src == lb.src && la->dst == lb.dst && la->filters == lb.filters;
  }
  if (const auto* aa = std::get_if<SetupExpr::And>(&a.node)) {
    const auto& ab = std::get<SetupExpr::And>(b.node);
    return structurally_equal(*aa->later, *ab.later) &&
           structurally_equal(*aa->earlier, *ab.earlier);
  }
  const auto& oa = std::get<SetupExpr::Or>(a.node);
  const auto& ob = std::get<SetupExpr::Or>(b.node);
  return structurally_equal(*oa.left, *ob.left) && structurally_equal(*oa.right, *ob.right);
}

CanonicalSetup and_compose(const CanonicalSetup& later, const CanonicalSetup& earlier) {
  if (earlier.dst != later.src) {
    throw SetupError(SetupErrorKind::JunctionMismatch,
                     "earlier setup ends at " + point_str(earlier.dst) +
                         " but later setup starts at " + point_str(later.src));
  }
  // A zero-duration setup is the identity for AND.
  if (earlier.is_zero_duration()) return later;
  if (later.is_zero_duration()) return earlier;

  CanonicalSetup out{earlier.src, later.dst, {}};
  out.filters.reserve(earlier.filters.size() + later.filters.size() + 1);
  out.filters = earlier.filters;
  out.filters.push_back(Filter{earlier.dst.time, {earlier.dst.site}});
  out.filters.insert(out.filters.end(), later.filters.begin(), later.filters.end());
  return out;
}

CanonicalSetup or_compose(const CanonicalSetup& a, const CanonicalSetup& b) {
  if (a.src != b.src || a.dst != b.dst) {
    throw SetupError(SetupErrorKind::NotOrComposable,
                     "operands have different endpoints: [" + point_str(a.dst) + ", " +
                         point_str(a.src) + "] vs [" + point_str(b.dst) + ", " + point_str(b.src) +
                         "]");
  }
  if (a.filters.size() != b.filters.size()) {
    throw SetupError(SetupErrorKind::NotOrComposable, "operands have different filter counts");
  }
  if (a.filters.empty()) {
    throw SetupError(SetupErrorKind::NotOrComposable, "operands have no filter to merge");
  }
  std::vector<std::size_t> differing;
  for (std::size_t i = 0; i < a.filters.size(); ++i) {
    if (a.filters[i].time != b.filters[i].time) {
      throw SetupError(SetupErrorKind::NotOrComposable,
                       "filter " + std::to_string(i) + " sits at different times (" +
                           std::to_string(a.filters[i].time) + " vs " +
                           std::to_string(b.filters[i].time) + ")");
    }
    if (a.filters[i].holes != b.filters[i].holes) differing.push_back(i);
  }
  if (differing.size() > 1) {
    throw SetupError(SetupErrorKind::NotOrComposable,
                     "operands differ at " + std::to_string(differing.size()) + " filters");
  }
  const std::size_t j = differing.empty() ? 0 : differing.front();
  const auto& ha = a.filters[j].holes;
  const auto& hb = b.filters[j].holes;
  if (!disjoint(ha, hb)) {
    throw SetupError(SetupErrorKind::OverlappingHoles,
                     "hole sets at time " + std::to_string(a.filters[j].time) + " intersect");
  }
  CanonicalSetup out = a;
  auto& holes = out.filters[j].holes;
  holes.clear();
  std::merge(ha.begin(), ha.end(), hb.begin(), hb.end(), std::back_inserter(holes));
  return out;
}

CanonicalSetup canonicalize(const SetupExpr& e) {
  try {
    if (const auto* leaf = std::get_if<SetupExpr::Leaf>(&e.node)) {
      return canonical_leaf(*leaf);
    }
    if (const auto* conj = std::get_if<SetupExpr::And>(&e.node)) {
      return and_compose(canonicalize(*conj->later), canonicalize(*conj->earlier));
    }
    const auto& disj = std::get<SetupExpr::Or>(e.node);
    return or_compose(canonicalize(*disj.left), canonicalize(*disj.right));
  } catch (const SetupError& err) {
    throw err.located(e.span);
  }
}

namespace {

void check_site(int site, std::size_t num_sites, const SourceSpan& span) {
  if (site < 0 || static_cast<std::size_t>(site) >= num_sites) {
    throw SetupError(SetupErrorKind::UnboundSite,
                     "site " + std::to_string(site) + " is outside the lattice [0, " +
                         std::to_string(num_sites) + ")",
                     span);
  }
}

void bind_points(const SpacetimePoint& src, const SpacetimePoint& dst,
                 const std::vector<Filter>& filters, std::size_t num_sites,
                 const SourceSpan& span) {
  check_site(src.site, num_sites, span);
  check_site(dst.site, num_sites, span);
  for (const auto& f : filters) {
    for (int h : f.holes) check_site(h, num_sites, span);
  }
}

}  // namespace

void bind(const SetupExpr& e, std::size_t num_sites) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, SetupExpr::Leaf>) {
          bind_points(node.src, node.dst, node.filters, num_sites, e.span);
        } else if constexpr (std::is_same_v<T, SetupExpr::And>) {
          bind(*node.later, num_sites);
          bind(*node.earlier, num_sites);
        } else {
          bind(*node.left, num_sites);
          bind(*node.right, num_sites);
        }
      },
      e.node);
}

void bind(const CanonicalSetup& s, std::size_t num_sites) {
  bind_points(s.src, s.dst, s.filters, num_sites, {});
}

}  // namespace caqt
