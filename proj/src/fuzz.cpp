#include "caqt/fuzz.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace caqt {

namespace {

int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool coin(Rng& rng, double p_true) { return std::bernoulli_distribution(p_true)(rng); }

std::vector<int> random_holes(Rng& rng, std::size_t num_sites, int max_holes) {
  const int cap = std::min<int>(max_holes, static_cast<int>(num_sites));
  const int count = uniform_int(rng, 1, std::max(1, cap));
  std::vector<int> sites(num_sites);
  std::iota(sites.begin(), sites.end(), 0);
  std::shuffle(sites.begin(), sites.end(), rng);
  sites.resize(static_cast<std::size_t>(count));
  std::sort(sites.begin(), sites.end());
  return sites;
}

CanonicalSetup random_from(Rng& rng, SpacetimePoint src, std::size_t num_sites,
                           const SetupShape& shape) {
  CanonicalSetup s{src, src, {}};
  const int nf = uniform_int(rng, 0, std::max(0, shape.max_filters));
  int t = src.time;
  for (int i = 0; i < nf; ++i) {
    t += uniform_int(rng, 1, shape.max_gap);
    s.filters.push_back(Filter{t, random_holes(rng, num_sites, shape.max_holes)});
  }
  t += uniform_int(rng, 1, shape.max_gap);
  s.dst = SpacetimePoint{uniform_int(rng, 0, static_cast<int>(num_sites) - 1), t};
  return s;
}

// Splits the hole set at `j` into two nonempty disjoint parts.
std::pair<CanonicalSetup, CanonicalSetup> split_or(Rng& rng, const CanonicalSetup& s,
                                                   std::size_t j) {
  std::vector<int> holes = s.filters[j].holes;
  std::shuffle(holes.begin(), holes.end(), rng);
  const auto cut = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(holes.size()) - 1));
  std::vector<int> left(holes.begin(), holes.begin() + static_cast<std::ptrdiff_t>(cut));
  std::vector<int> right(holes.begin() + static_cast<std::ptrdiff_t>(cut), holes.end());
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  CanonicalSetup a = s;
  CanonicalSetup b = s;
  a.filters[j].holes = std::move(left);
  b.filters[j].holes = std::move(right);
  return {std::move(a), std::move(b)};
}

// [dst; later...; x; earlier...; src] = [dst; later...; x] AND [x; earlier...; src]
std::pair<CanonicalSetup, CanonicalSetup> split_and(const CanonicalSetup& s, std::size_t j) {
  const SpacetimePoint junction{s.filters[j].holes.front(), s.filters[j].time};
  const auto cut = s.filters.begin() + static_cast<std::ptrdiff_t>(j);
  CanonicalSetup earlier{s.src, junction, {s.filters.begin(), cut}};
  CanonicalSetup later{junction, s.dst, {cut + 1, s.filters.end()}};
  return {std::move(later), std::move(earlier)};
}

// One structural split of a literal with at least one filter.
SetupExprPtr split_once(Rng& rng, const CanonicalSetup& s) {
  const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(s.filters.size()) - 1));
  if (s.filters[j].holes.size() == 1) {
    auto [later, earlier] = split_and(s, j);
    return make_and(make_leaf(later), make_leaf(earlier));
  }
  auto [a, b] = split_or(rng, s, j);
  return make_or(make_leaf(a), make_leaf(b));
}

SetupExprPtr expression_for(Rng& rng, const CanonicalSetup& s, int depth) {
  if (s.filters.empty() || (depth > 0 && coin(rng, 0.2))) return make_leaf(s);
  const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(s.filters.size()) - 1));
  if (s.filters[j].holes.size() == 1) {
    auto [later, earlier] = split_and(s, j);
    return make_and(expression_for(rng, later, depth + 1), expression_for(rng, earlier, depth + 1));
  }
  auto [a, b] = split_or(rng, s, j);
  return make_or(expression_for(rng, a, depth + 1), expression_for(rng, b, depth + 1));
}

std::size_t count_nodes(const SetupExpr& e) {
  if (const auto* conj = std::get_if<SetupExpr::And>(&e.node)) {
    return 1 + count_nodes(*conj->later) + count_nodes(*conj->earlier);
  }
  if (const auto* disj = std::get_if<SetupExpr::Or>(&e.node)) {
    return 1 + count_nodes(*disj->left) + count_nodes(*disj->right);
  }
  return 1;
}

std::vector<SetupExprPtr> candidate_rewrites(Rng& rng, const SetupExprPtr& e) {
  std::vector<SetupExprPtr> out;
  if (const auto* leaf = std::get_if<SetupExpr::Leaf>(&e->node)) {
    if (!leaf->filters.empty()) {
      try {
        out.push_back(split_once(rng, canonicalize(*e)));
      } catch (const SetupError&) {
      }
    }
    return out;
  }
  if (const auto* disj = std::get_if<SetupExpr::Or>(&e->node)) {
    const auto& l = disj->left;
    const auto& r = disj->right;
    out.push_back(make_or(r, l));
    if (const auto* inner = std::get_if<SetupExpr::Or>(&l->node)) {
      out.push_back(make_or(inner->left, make_or(inner->right, r)));
    }
    if (const auto* inner = std::get_if<SetupExpr::Or>(&r->node)) {
      out.push_back(make_or(make_or(l, inner->left), inner->right));
    }
    const auto* la = std::get_if<SetupExpr::And>(&l->node);
    const auto* ra = std::get_if<SetupExpr::And>(&r->node);
    if (la && ra) {
      if (structurally_equal(*la->later, *ra->later)) {
        out.push_back(make_and(la->later, make_or(la->earlier, ra->earlier)));
      }
      if (structurally_equal(*la->earlier, *ra->earlier)) {
        out.push_back(make_and(make_or(la->later, ra->later), la->earlier));
      }
    }
    return out;
  }
  const auto& conj = std::get<SetupExpr::And>(e->node);
  const auto& later = conj.later;
  const auto& earlier = conj.earlier;
  if (const auto* inner = std::get_if<SetupExpr::And>(&later->node)) {
    out.push_back(make_and(inner->later, make_and(inner->earlier, earlier)));
  }
  if (const auto* inner = std::get_if<SetupExpr::And>(&earlier->node)) {
    out.push_back(make_and(make_and(later, inner->later), inner->earlier));
  }
  if (const auto* inner = std::get_if<SetupExpr::Or>(&earlier->node)) {
    out.push_back(make_or(make_and(later, inner->left), make_and(later, inner->right)));
  }
  if (const auto* inner = std::get_if<SetupExpr::Or>(&later->node)) {
    out.push_back(make_or(make_and(inner->left, earlier), make_and(inner->right, earlier)));
  }
  return out;
}

// Rebuilds `e` with the node at preorder index `target` rewritten.
SetupExprPtr rewrite_node(Rng& rng, const SetupExprPtr& e, std::size_t& index, std::size_t target,
                          bool& changed) {
  if (index++ == target) {
    auto options = candidate_rewrites(rng, e);
    if (options.empty()) return e;
    changed = true;
    return options[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(options.size()) - 1))];
  }
  if (const auto* conj = std::get_if<SetupExpr::And>(&e->node)) {
    auto later = rewrite_node(rng, conj->later, index, target, changed);
    auto earlier = rewrite_node(rng, conj->earlier, index, target, changed);
    return changed ? make_and(std::move(later), std::move(earlier)) : e;
  }
  if (const auto* disj = std::get_if<SetupExpr::Or>(&e->node)) {
    auto left = rewrite_node(rng, disj->left, index, target, changed);
    auto right = rewrite_node(rng, disj->right, index, target, changed);
    return changed ? make_or(std::move(left), std::move(right)) : e;
  }
  return e;
}

}  // namespace

CanonicalSetup random_canonical(Rng& rng, std::size_t num_sites, const SetupShape& shape) {
  const SpacetimePoint src{uniform_int(rng, 0, static_cast<int>(num_sites) - 1), 0};
  return random_from(rng, src, num_sites, shape);
}

SetupExprPtr random_expression_for(Rng& rng, const CanonicalSetup& s) {
  return expression_for(rng, s, 0);
}

SetupExprPtr random_setup(std::uint64_t seed, const LatticeConfig& cfg, int max_filters) {
  Rng rng(seed);
  SetupShape shape;
  shape.max_filters = std::max(0, max_filters);
  return random_expression_for(rng, random_canonical(rng, cfg.num_sites, shape));
}

SetupExprPtr rewrite_random(Rng& rng, const SetupExprPtr& e, int steps) {
  SetupExprPtr current = e;
  for (int step = 0; step < steps; ++step) {
    const std::size_t nodes = count_nodes(*current);
    for (int attempt = 0; attempt < 32; ++attempt) {
      const auto target = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(nodes) - 1));
      std::size_t index = 0;
      bool changed = false;
      auto candidate = rewrite_node(rng, current, index, target, changed);
      if (!changed) continue;
      try {
        canonicalize(*candidate);
      } catch (const SetupError&) {
        continue;
      }
      current = std::move(candidate);
      break;
    }
  }
  return current;
}

std::pair<CanonicalSetup, CanonicalSetup> random_and_pair(Rng& rng, std::size_t num_sites,
                                                          const SetupShape& shape) {
  CanonicalSetup earlier = random_canonical(rng, num_sites, shape);
  CanonicalSetup later = random_from(rng, earlier.dst, num_sites, shape);
  return {std::move(later), std::move(earlier)};
}

std::pair<CanonicalSetup, CanonicalSetup> random_or_pair(Rng& rng, std::size_t num_sites,
                                                         const SetupShape& shape) {
  SetupShape at_least_one = shape;
  at_least_one.max_filters = std::max(1, shape.max_filters);
  CanonicalSetup s;
  do {
    s = random_canonical(rng, num_sites, at_least_one);
  } while (s.filters.empty());
  const auto j = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(s.filters.size()) - 1));
  // Two disjoint nonempty hole sets drawn from a random subset of at least two sites.
  std::vector<int> sites(num_sites);
  std::iota(sites.begin(), sites.end(), 0);
  std::shuffle(sites.begin(), sites.end(), rng);
  const int cap = std::max(2, std::min<int>(2 * shape.max_holes, static_cast<int>(num_sites)));
  sites.resize(static_cast<std::size_t>(uniform_int(rng, 2, cap)));
  std::sort(sites.begin(), sites.end());
  s.filters[j].holes = sites;
  return split_or(rng, s, j);
}

LatticeConfig random_lattice(Rng& rng, std::size_t min_sites, std::size_t max_sites,
                             bool uniform_weights) {
  const auto m = static_cast<std::size_t>(
      uniform_int(rng, static_cast<int>(min_sites), static_cast<int>(max_sites)));
  LatticeConfig cfg = LatticeConfig::uniform(m, 1.0, coin(rng, 0.5) ? Boundary::Periodic
                                                                    : Boundary::Reflecting);
  std::uniform_real_distribution<double> potential(-2.0, 2.0);
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  for (std::size_t i = 0; i < m; ++i) {
    cfg.potential[i] = potential(rng);
    if (!uniform_weights) cfg.weights[i] = weight(rng);
  }
  return cfg;
}

Eigen::VectorXcd random_amplitudes(Rng& rng, std::size_t num_sites) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd a(static_cast<Eigen::Index>(num_sites));
  do {
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(gauss(rng), gauss(rng));
  } while (a.norm() == 0.0);
  return a;
}

}  // namespace caqt
