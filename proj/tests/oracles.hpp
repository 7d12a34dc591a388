// Independent re-derivations of library quantities, used by the tests to
// cross-check results.  Everything here is deliberately naive: full rescans,
// frontier enumerations, and counting arguments, written without reference to
// the library's own algorithms.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cssg/builders.hpp"
#include "cssg/cocycle.hpp"
#include "cssg/io.hpp"
#include "cssg/random.hpp"

#ifndef FIXTURE_DIR
#error "FIXTURE_DIR must point at the fixture directory"
#endif

namespace orc {

using namespace cssg;

inline std::string fx(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

inline SpacePtr space(const std::string& stem) { return load_space(fx(stem + ".json")); }

inline Ball B(const std::string& addr) { return Ball::parse(addr); }

// Symbol classes as the least congruence over the child table: start from the
// discrete partition and merge two symbols whenever their child rows are
// position-wise equivalent under the current classes, rescanning until no
// merge applies.
inline std::vector<int> classes_naive(const Space& sp) {
  int n = sp.num_symbols();
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = i;
  auto find = [&](int a) {
    while (cls[a] != a) a = cls[a];
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (find(a) == find(b)) continue;
        if (sp.arity(a) != sp.arity(b)) continue;
        bool same = true;
        for (int p = 0; p < sp.arity(a) && same; ++p)
          same = find(sp.children_of(a)[p]) == find(sp.children_of(b)[p]);
        if (same) {
          cls[find(b)] = find(a);
          changed = true;
        }
      }
  }
  for (int i = 0; i < n; ++i) cls[i] = find(i);
  return cls;
}

// Number of ends distinguishable by looking `depth` levels below the symbol:
// terminal vertices strictly above the cut plus all vertices on the cut.
// Counted per symbol multiset so deep cuts stay cheap.
inline long long ends_visible(const Space& sp, int symbol, int depth) {
  std::map<int, long long> layer{{symbol, 1}};
  long long ends = 0;
  for (int d = 0; d < depth; ++d) {
    std::map<int, long long> next;
    for (const auto& [s, c] : layer) {
      if (sp.terminal(s)) ends += c;
      else
        for (int ch : sp.children_of(s)) next[ch] += c;
    }
    layer = std::move(next);
  }
  for (const auto& [s, c] : layer) ends += c;
  return ends;
}

// A ball has finitely many ends iff the visible-end count stabilises under
// deeper cuts.
inline bool ball_finite_naive(const Space& sp, const Ball& b) {
  int s = sp.symbol_at(b);
  int margin = sp.num_symbols() + 6;
  return ends_visible(sp, s, 20) == ends_visible(sp, s, 20 + margin);
}

// Every ball of exact depth `depth` under b, with terminal balls kept at
// their own (shallower) depth.
inline void frontier(const Space& sp, const Ball& b, int depth, std::vector<Ball>& out) {
  int s = sp.symbol_at(b);
  if (depth == 0 || sp.terminal(s)) {
    out.push_back(b);
    return;
  }
  for (int i = 0; i < sp.arity(s); ++i) frontier(sp, b.child(i), depth - 1, out);
}

inline std::vector<Ball> frontier(const Space& sp, const Ball& b, int depth) {
  std::vector<Ball> out;
  frontier(sp, b, depth, out);
  return out;
}

// Partition of `within` checked by definition: pairwise disjoint and every
// frontier ball below some cell.
inline bool is_partition_naive(const Space& sp, const Ball& within,
                               const std::vector<Ball>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (!within.is_prefix_of(cells[i])) return false;
    for (size_t j = i + 1; j < cells.size(); ++j)
      if (!cells[i].disjoint(cells[j])) return false;
  }
  size_t deep = within.len();
  for (const auto& c : cells) deep = std::max(deep, c.len());
  for (const auto& f : frontier(sp, within, (int)(deep - within.len()) + 1)) {
    int covered = 0;
    for (const auto& c : cells)
      if (c.is_prefix_of(f) || f.is_prefix_of(c)) covered++;
    if (covered == 0) return false;
  }
  return true;
}

// Proper balls on which g does not restrict to a single similarity: those
// contained in no source of the maximal partition.  Enumerates everything to
// two levels below the deepest source.
inline long long cut_balls_naive(const Element& g) {
  const Space& sp = *g.space();
  Element r = g.reduced() ? g : reduce(g);
  size_t deepest = 0;
  for (const auto& reg : r.regions()) deepest = std::max(deepest, reg.src.len());
  long long cuts = 0;
  std::vector<Ball> level{Ball()};
  for (size_t d = 1; d <= deepest + 2; ++d) {
    std::vector<Ball> next;
    for (const auto& b : level) {
      int s = sp.symbol_at(b);
      for (int i = 0; i < sp.arity(s); ++i) next.push_back(b.child(i));
    }
    for (const auto& b : next) {
      bool inside = false;
      for (const auto& reg : r.regions())
        if (reg.src.is_prefix_of(b)) inside = true;
      if (!inside) cuts++;
    }
    level = std::move(next);
  }
  return cuts;
}

inline long long norm_sq_naive(const Element& g) {
  return cut_balls_naive(g) + cut_balls_naive(inverse(g));
}

// Splits random non-terminal source cells of g into children, `rounds` times;
// the result is an unreduced refinement presenting the same map.
inline Element refine_noise(const Element& g, Rng& rng, int rounds = 2) {
  const SpacePtr& sp = g.space();
  Element fine = g.reduced() ? g : reduce(g);
  for (int pass = 0; pass < rounds; ++pass) {
    std::vector<Ball> sources;
    for (const auto& reg : fine.regions()) {
      if (!sp->terminal(sp->symbol_at(reg.src)) && rng.below(2) == 0)
        for (const auto& ch : child_cells(*sp, reg.src)) sources.push_back(ch);
      else
        sources.push_back(reg.src);
    }
    fine = Element(sp, split_regions_to(fine, sources), false);
  }
  return fine;
}

// Draws until the sample is not the identity.
inline Element random_nontrivial(const SpacePtr& sp, Rng& rng) {
  for (int t = 0; t < 64; ++t) {
    Element g = random_element(sp, rng);
    if (!is_identity(g)) return g;
  }
  fail("bad-request", "sampler produced only identities");
}

// Builds an element from (src, dst) address pairs with canonical labels.
inline Element elem(const SpacePtr& sp,
                    const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<Region> rs;
  for (const auto& [s, d] : pairs)
    rs.push_back(Region{Ball::parse(s), Ball::parse(d), Label::can()});
  return from_regions(sp, std::move(rs));
}

// Status lookup helper: the recorded status of the deepest map entry whose
// ball contains `b`, if any.
inline std::optional<BallStatus> status_at(
    const std::vector<std::pair<Ball, BallStatus>>& map, const Ball& b) {
  std::optional<BallStatus> hit;
  size_t best = 0;
  for (const auto& [ball, st] : map)
    if (ball.is_prefix_of(b) && (!hit || ball.len() >= best)) {
      hit = st;
      best = ball.len();
    }
  return hit;
}

}  // namespace orc
