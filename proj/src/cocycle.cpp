#include "cssg/cocycle.hpp"

#include <algorithm>
#include <set>

#include "cssg/automaton.hpp"

namespace cssg {

Ball canonical_base_ball(const Space& sp, int type_class) {
  auto b = bfs_find(sp, Ball(), [&](const Ball& v) {
    return !v.is_root() && sp.ball_class(v) == type_class;
  });
  if (!b) fail("internal-invariant", "type class without a proper ball");
  return *b;
}

static void validate_embedding(const Space& sp, const Ball& base,
                               const std::vector<Region>& regions) {
  if (base.is_root()) fail("root-ball", "embedding bases are proper balls");
  std::vector<Ball> srcs;
  srcs.reserve(regions.size());
  for (const auto& r : regions) srcs.push_back(r.src);
  validate_partition(sp, srcs, base);
  for (size_t i = 0; i < regions.size(); ++i) {
    const Ball& d = regions[i].dst;
    if (d.is_root()) fail("no-similarity", "embedding targets must be proper balls");
    sp.symbol_at(d);
    for (size_t j = i + 1; j < regions.size(); ++j)
      if (!d.disjoint(regions[j].dst))
        fail("not-a-partition", "embedding targets overlap");
    validate_label(sp, regions[i].src, d, regions[i].lab);
  }
}

EmbeddingClass class_canonicalize(const SpacePtr& sp, const Ball& base,
                                  std::vector<Region> regions) {
  for (auto& r : regions) r.lab = normalize_label(*sp, r.lab);
  validate_embedding(*sp, base, regions);
  Ball can = canonical_base_ball(*sp, sp->ball_class(base));
  if (!sp->decorated()) {
    std::vector<Region> out;
    out.reserve(regions.size());
    for (const auto& r : regions)
      out.push_back(Region{can.descend(base.suffix_of(r.src)), r.dst, r.lab});
    return EmbeddingClass{can, reduce_regions(*sp, std::move(out))};
  }
  // Decorated: every similarity can -> base is w |-> act(q, w) for a unique
  // state q; transport along each and keep the least reduced result.
  const auto* aut = sp->automaton();
  std::optional<EmbeddingClass> best;
  for (int q = 0; q < aut->num_states(); ++q) {
    int qi = aut->inverse(q);
    std::vector<Region> out;
    out.reserve(regions.size());
    for (const auto& r : regions) {
      auto w = aut->act(qi, base.suffix_of(r.src));
      int rq = aut->restrict_along(q, w);
      out.push_back(Region{can.descend(w), r.dst,
                           Label::st(aut->product(r.lab.state, rq))});
    }
    EmbeddingClass cand{can, reduce_regions(*sp, std::move(out))};
    if (!best || cand < *best) best = std::move(cand);
  }
  return *best;
}

EmbeddingClass inclusion_class(const SpacePtr& sp, const Ball& b) {
  return class_canonicalize(sp, b,
                            {Region{b, b, normalize_label(*sp, Label::can())}});
}

std::pair<std::vector<Ball>, std::vector<Ball>> zipper_sets(const Element& g0) {
  Element g = g0.reduced() ? g0 : reduce(g0);
  std::set<Ball> plus, minus;
  for (const auto& r : g.regions()) {
    for (Ball a = r.src; a.len() >= 2;) {
      a = a.parent();
      plus.insert(a);
    }
    for (Ball a = r.dst; a.len() >= 2;) {
      a = a.parent();
      minus.insert(a);
    }
  }
  return {std::vector<Ball>(plus.begin(), plus.end()),
          std::vector<Ball>(minus.begin(), minus.end())};
}

static void drop_zeros(CocycleVector& v) {
  for (auto it = v.begin(); it != v.end();)
    it = it->second == 0 ? v.erase(it) : std::next(it);
}

CocycleVector cocycle_vector(const Element& g0) {
  Element g = g0.reduced() ? g0 : reduce(g0);
  auto [plus, minus] = zipper_sets(g);
  CocycleVector v;
  for (const auto& b : plus) {
    auto cr = restrict_coset(g, b);
    v[class_canonicalize(g.space(), b, cr.regions)] += 1;
  }
  for (const auto& b : minus) v[inclusion_class(g.space(), b)] -= 1;
  drop_zeros(v);
  return v;
}

long long cocycle_norm_sq(const Element& g) {
  auto [plus, minus] = zipper_sets(g);
  // the two class sets never meet, so no cancellation occurs
  return (long long)plus.size() + (long long)minus.size();
}

CocycleVector pi_apply(const Element& g, const CocycleVector& v) {
  CocycleVector out;
  for (const auto& [cls, c] : v)
    out[class_canonicalize(g.space(), cls.base,
                           map_regions_through(g, cls.regions))] += c;
  drop_zeros(out);
  return out;
}

CocycleVector vec_add(const CocycleVector& a, const CocycleVector& b) {
  CocycleVector out = a;
  for (const auto& [k, c] : b) out[k] += c;
  drop_zeros(out);
  return out;
}

bool verify_cocycle_identity(const Element& g, const Element& h) {
  CocycleVector lhs = cocycle_vector(compose(g, h));
  CocycleVector rhs = vec_add(pi_apply(g, cocycle_vector(h)), cocycle_vector(g));
  return lhs == rhs;
}

CocycleVector project_orbit(const Space& sp, const CocycleVector& v, const Ball& b) {
  int cls = sp.ball_class(b);
  CocycleVector out;
  for (const auto& [k, c] : v)
    if (sp.ball_class(k.base) == cls) out[k] = c;
  return out;
}

std::vector<EmbeddingClass> orbit_infinite_witness(const SpacePtr& sp, const Ball& b,
                                                   int n) {
  const Space& s = *sp;
  if (b.is_root()) fail("root-ball", "pick a proper ball");
  int cls = s.ball_class(b);
  std::vector<EmbeddingClass> out;
  if (!s.ball_finite(b)) {
    // descending chain of type-equal balls inside b
    Ball d = b;
    for (int k = 0; k < n; ++k) {
      out.push_back(inclusion_class(sp, d));
      if (k + 1 == n) break;
      auto nxt = find_typed_ball(s, d, cls, {}, /*require_strict=*/true);
      if (!nxt)
        fail("orbit-exhausted", "no type-equal ball strictly inside " + d.str());
      d = *nxt;
    }
  } else {
    // pairwise disjoint type-equal balls across the space
    std::vector<Ball> used;
    Ball cur = b;
    for (int k = 0; k < n; ++k) {
      out.push_back(inclusion_class(sp, cur));
      used.push_back(cur);
      if (k + 1 == n) break;
      auto nxt = find_typed_ball(s, Ball(), cls, used, false);
      if (!nxt)
        fail("orbit-exhausted",
             "only " + std::to_string(k + 1) + " disjoint type-equal balls exist");
      cur = *nxt;
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[i] == out[j]) fail("orbit-exhausted", "witness classes collide");
  return out;
}

}  // namespace cssg
