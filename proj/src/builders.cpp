#include "cssg/builders.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "cssg/automaton.hpp"
#include "cssg/random.hpp"

namespace cssg {

namespace {

constexpr int kMatcherFuel = 200000;

void check_disjoint_family(const std::vector<Ball>& xs, const char* side) {
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i].comparable(xs[j]))
        fail("bad-request", std::string(side) + " balls " + xs[i].str() + " and " +
                                xs[j].str() + " overlap");
}

int count_infinite(const Space& sp, const std::vector<Ball>& cells) {
  int k = 0;
  for (const auto& c : cells)
    if (!sp.ball_finite(c)) ++k;
  return k;
}

// Replace the breadth-first least infinite cell by its children.  False when
// no infinite cell can be split.
bool split_least_infinite(const Space& sp, std::vector<Ball>& cells) {
  int pick = -1;
  for (int i = 0; i < (int)cells.size(); ++i) {
    if (sp.ball_finite(cells[i])) continue;
    if (pick < 0 || bfs_less(cells[i], cells[pick])) pick = i;
  }
  if (pick < 0) return false;
  Ball c = cells[pick];
  cells.erase(cells.begin() + pick);
  for (const auto& ch : child_cells(sp, c)) cells.push_back(ch);
  std::sort(cells.begin(), cells.end());
  return true;
}

std::vector<Ball> infinite_cells_of(const Space& sp, const std::vector<Ball>& cells) {
  std::vector<Ball> out;
  for (const auto& c : cells)
    if (!sp.ball_finite(c)) out.push_back(c);
  return out;
}

// Follow forced (arity-one) links downward until the type class matches.
// The descended ball covers the original exactly, so a match found this way
// leaves no remnant behind.
std::optional<Ball> forced_descend(const Space& sp, Ball b, int want_cls) {
  for (int guard = 0; guard < 4 * sp.num_symbols() + 8; ++guard) {
    if (sp.ball_class(b) == want_cls) return b;
    int sym = sp.symbol_at(b);
    if (sp.arity(sym) != 1) return std::nullopt;
    b = b.child(0);
  }
  return std::nullopt;
}

// ---- the extension matcher ----
//
// Completes the constraint family to a bijection.  Material untouched by
// both sides is pinned to the identity up front; the remaining unmatched
// source and target cells are paired off by a deterministic loop: matched
// type classes pair directly, unequal cell counts are equalised by splitting,
// a class mismatch at equal counts is resolved by a directed search for a
// ball of the missing class, and pinned identity cells are unpeeled back
// into play when one side runs dry.

void validate_constraints(const Space& sp, const std::vector<Constraint>& cons) {
  std::vector<Ball> src, dst;
  for (const auto& c : cons) {
    if (c.src.is_root() || c.dst.is_root())
      fail("covers-space", "constraint balls must be proper");
    sp.symbol_at(c.src);
    sp.symbol_at(c.dst);
    validate_label(sp, c.src, c.dst, normalize_label(sp, c.lab));
    bool moving = c.src != c.dst || !label_trivial(sp, normalize_label(sp, c.lab));
    if (moving && sp.ball_finite(c.src))
      fail("bad-request", "moving constraint on finite ball " + c.src.str());
    src.push_back(c.src);
    dst.push_back(c.dst);
  }
  check_disjoint_family(src, "constraint source");
  check_disjoint_family(dst, "constraint target");
}

Element extend_full(const SpacePtr& spp, const std::vector<Constraint>& cons) {
  const Space& sp = *spp;
  if (cons.empty()) return identity(spp);
  validate_constraints(sp, cons);

  std::vector<Ball> holes;
  for (const auto& c : cons) {
    holes.push_back(c.src);
    holes.push_back(c.dst);
  }
  std::vector<Ball> id_cells = complement_cells(sp, Ball(), holes);

  std::vector<Ball> s_holes = id_cells, t_holes = id_cells;
  for (const auto& c : cons) {
    s_holes.push_back(c.src);
    t_holes.push_back(c.dst);
  }
  std::vector<Ball> sc = complement_cells(sp, Ball(), s_holes);
  std::vector<Ball> tc = complement_cells(sp, Ball(), t_holes);

  Label triv = normalize_label(sp, Label::can());
  std::vector<Region> matches;

  auto unpeel = [&]() -> bool {
    if (id_cells.empty()) return false;
    Ball c = id_cells.front();
    id_cells.erase(id_cells.begin());
    sc.push_back(c);
    tc.push_back(c);
    std::sort(sc.begin(), sc.end());
    std::sort(tc.begin(), tc.end());
    return true;
  };

  int fuel = kMatcherFuel;
  while (fuel-- > 0) {
    if (sc.empty() && tc.empty()) break;

    if (sc.empty() != tc.empty()) {
      if (!unpeel())
        fail("extension-stuck", "one side ran out of material with nothing left to unpin");
      continue;
    }

    if (sc.size() == tc.size()) {
      // direct pairing of matching type classes, leftmost first
      int mi = -1, mj = -1;
      for (int i = 0; i < (int)sc.size() && mi < 0; ++i)
        for (int j = 0; j < (int)tc.size(); ++j)
          if (sp.ball_class(sc[i]) == sp.ball_class(tc[j])) {
            mi = i;
            mj = j;
            break;
          }
      if (mi >= 0) {
        matches.push_back(Region{sc[mi], tc[mj], triv});
        sc.erase(sc.begin() + mi);
        tc.erase(tc.begin() + mj);
        continue;
      }
      // no class meets: first look for a forced descent (no remnant), then
      // hunt for a ball of the wanted class inside a cell
      bool placed = false;
      for (int i = 0; i < (int)sc.size() && !placed; ++i)
        for (int j = 0; j < (int)tc.size() && !placed; ++j) {
          if (auto u = forced_descend(sp, sc[i], sp.ball_class(tc[j]))) {
            matches.push_back(Region{*u, tc[j], triv});
            sc.erase(sc.begin() + i);
            tc.erase(tc.begin() + j);
            placed = true;
          } else if (auto w = forced_descend(sp, tc[j], sp.ball_class(sc[i]))) {
            matches.push_back(Region{sc[i], *w, triv});
            sc.erase(sc.begin() + i);
            tc.erase(tc.begin() + j);
            placed = true;
          }
        }
      for (int i = 0; i < (int)sc.size() && !placed; ++i)
        for (int j = 0; j < (int)tc.size() && !placed; ++j) {
          if (auto u2 = find_typed_ball(sp, sc[i], sp.ball_class(tc[j]))) {
            matches.push_back(Region{*u2, tc[j], triv});
            Ball host = sc[i];
            sc.erase(sc.begin() + i);
            tc.erase(tc.begin() + j);
            for (const auto& rem : complement_cells(sp, host, {*u2})) sc.push_back(rem);
            std::sort(sc.begin(), sc.end());
            placed = true;
          } else if (auto w2 = find_typed_ball(sp, tc[j], sp.ball_class(sc[i]))) {
            matches.push_back(Region{sc[i], *w2, triv});
            Ball host = tc[j];
            tc.erase(tc.begin() + j);
            sc.erase(sc.begin() + i);
            for (const auto& rem : complement_cells(sp, host, {*w2})) tc.push_back(rem);
            std::sort(tc.begin(), tc.end());
            placed = true;
          }
        }
      if (placed) continue;
      if (!unpeel())
        fail("extension-stuck", "no type route between the remaining cells");
      continue;
    }

    // unequal counts: split a cell on the smaller side
    std::vector<Ball>& small = sc.size() < tc.size() ? sc : tc;
    int pick = -1;
    for (int i = 0; i < (int)small.size(); ++i)
      if (sp.arity(sp.symbol_at(small[i])) >= 2) {
        pick = i;
        break;
      }
    if (pick < 0)
      for (int i = 0; i < (int)small.size(); ++i)
        if (!sp.terminal(sp.symbol_at(small[i]))) {
          pick = i;
          break;
        }
    if (pick >= 0) {
      Ball c = small[pick];
      small.erase(small.begin() + pick);
      for (const auto& ch : child_cells(sp, c)) small.push_back(ch);
      std::sort(small.begin(), small.end());
      continue;
    }
    if (!unpeel())
      fail("extension-stuck", "only singleton cells left but counts differ");
  }
  if (!(sc.empty() && tc.empty()))
    fail("extension-diverged", "completion search exhausted its budget");

  std::vector<Region> regions;
  for (const auto& c : cons)
    regions.push_back(Region{c.src, c.dst, normalize_label(sp, c.lab)});
  for (const auto& m : matches) regions.push_back(m);
  for (const auto& c : id_cells) regions.push_back(Region{c, c, triv});
  return from_regions(spp, std::move(regions));
}

// Deepen a ball until the element resolves it to a single image ball.
Ball resolve_ball(const Element& g, Ball b) {
  for (int guard = 0; guard < 512; ++guard) {
    if (try_apply(g, b)) return b;
    b = b.child(0);
  }
  fail("internal-invariant", "ball failed to resolve under a group element");
}

}  // namespace

Element extend_partial(const SpacePtr& sp, const std::vector<Constraint>& cons) {
  if (cons.empty()) return identity(sp);
  validate_constraints(*sp, cons);
  std::vector<Ball> src, dst;
  for (const auto& c : cons) {
    src.push_back(c.src);
    dst.push_back(c.dst);
  }
  if (complement_cells(*sp, Ball(), src).empty())
    fail("covers-space", "constraint sources already cover the space");
  if (complement_cells(*sp, Ball(), dst).empty())
    fail("covers-space", "constraint targets already cover the space");
  return extend_full(sp, cons);
}

Element extend_within(const SpacePtr& sp, const std::vector<Ball>& universe,
                      const std::vector<Constraint>& cons) {
  const Space& s = *sp;
  for (const auto& u : universe) s.symbol_at(u);
  check_disjoint_family(universe, "universe");
  auto inside = [&](const Ball& b) {
    for (const auto& u : universe)
      if (u.is_prefix_of(b)) return true;
    return false;
  };
  for (const auto& c : cons)
    if (!inside(c.src) || !inside(c.dst))
      fail("not-contained", "constraint ball escapes the allowed region");
  std::vector<Constraint> all = cons;
  Label triv = normalize_label(s, Label::can());
  for (const auto& pin : complement_cells(s, Ball(), universe))
    all.push_back(Constraint{pin, pin, triv});
  return extend_full(sp, all);
}

Element swap_involution(const SpacePtr& sp, const Ball& b, const Ball& d) {
  const Space& s = *sp;
  if (b.is_root() || d.is_root()) fail("root-ball", "swap needs proper balls");
  s.symbol_at(b);
  s.symbol_at(d);
  if (!b.disjoint(d)) fail("bad-request", "swap balls must be disjoint");
  auto d0 = find_typed_ball(s, d, s.ball_class(b));
  if (!d0)
    fail("no-type-route",
         "no ball of " + b.str() + "'s type inside " + d.str());
  Label triv = normalize_label(s, Label::can());
  std::vector<Region> rs{Region{b, *d0, triv}, Region{*d0, b, triv}};
  for (const auto& c : complement_cells(s, Ball(), {b, *d0}))
    rs.push_back(Region{c, c, triv});
  return from_regions(sp, std::move(rs));
}

Ball move_witness(const Element& g0) {
  Element g = g0.reduced() ? g0 : reduce(g0);
  if (is_identity(g)) fail("identity-element", "the identity moves nothing");
  const Space& sp = *g.space();
  for (const auto& r : g.regions()) {
    if (r.src.disjoint(r.dst)) return r.src;
    if (r.src != r.dst) {
      int cap = 4 * sp.num_symbols() + 8 + (int)std::max(r.src.len(), r.dst.len());
      auto v = bfs_find(
          sp, r.src,
          [&](const Ball& x) {
            auto im = try_apply(g, x);
            return im && im->disjoint(x);
          },
          {}, cap);
      if (v) return *v;
      continue;
    }
    if (!label_trivial(sp, r.lab)) {
      // src == dst with a nontrivial state: descend to the first child the
      // state actually permutes
      const auto* aut = sp.automaton();
      int q = r.lab.state;
      Ball v = r.src;
      for (int guard = 0; guard <= aut->num_states() + 2; ++guard) {
        int moved = -1, deeper = -1;
        for (int i = 0; i < aut->degree(); ++i) {
          if (aut->perm(q, i) != i) {
            moved = i;
            break;
          }
          if (deeper < 0 && aut->section(q, i) != aut->identity()) deeper = i;
        }
        if (moved >= 0) return v.child(moved);
        if (deeper < 0) break;
        q = aut->section(q, deeper);
        v = v.child(deeper);
      }
    }
  }
  fail("internal-invariant", "non-identity element with no moving ball");
}

std::pair<Element, Element> split_small_support(const Element& g0) {
  Element g = g0.reduced() ? g0 : reduce(g0);
  if (is_identity(g)) fail("identity-element", "nothing to factor");
  const Space& sp = *g.space();
  Ball b = move_witness(g);
  Ball img = apply(g, b);
  if (complement_cells(sp, Ball(), {b, img}).empty()) {
    if (sp.terminal(sp.symbol_at(b)))
      fail("extension-stuck", "two singletons cover the space; no room to localise");
    b = b.child(0);
    img = apply(g, b);
  }
  CosetRep rc = restrict_coset(g, b);
  Label lab = rc.regions.front().lab;
  Label triv = normalize_label(sp, Label::can());
  std::vector<Region> rs{Region{b, img, lab}, Region{img, b, invert_label(sp, lab)}};
  for (const auto& c : complement_cells(sp, Ball(), {b, img}))
    rs.push_back(Region{c, c, triv});
  Element h1 = from_regions(g.space(), std::move(rs));
  Element h2 = compose(h1, g);  // h1 is an involution, so h1 . h2 = g
  return {h1, h2};
}

bool in_pointwise_stabilizer(const Element& f, const Ball& b) {
  const Space& sp = *f.space();
  CosetRep rc = restrict_coset(f, b);
  for (const auto& r : rc.regions)
    if (r.src != r.dst || !label_trivial(sp, r.lab)) return false;
  return true;
}

std::vector<Ball> clopen_normalize(const Space& sp, std::vector<Ball> cells) {
  for (const auto& c : cells) sp.symbol_at(c);
  check_disjoint_family(cells, "clopen");
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Ball, int> seen;
    for (const auto& c : cells)
      if (!c.is_root()) seen[c.parent()]++;
    for (const auto& [p, k] : seen) {
      if (k != sp.arity(sp.symbol_at(p))) continue;
      std::vector<Ball> next{p};
      for (const auto& c : cells)
        if (c.is_root() || c.parent() != p) next.push_back(c);
      cells = std::move(next);
      changed = true;
      break;
    }
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

Element vigorous_witness(const SpacePtr& sp, const std::vector<Ball>& a,
                         const std::vector<Ball>& b, const std::vector<Ball>& c) {
  const Space& s = *sp;
  for (int sym = 0; sym < s.num_symbols(); ++sym)
    if ((sym == s.root_symbol() || s.occurring()[sym]) && s.finite_type(sym))
      fail("finite-balls", "construction needs a space with no finite balls");
  if (a.empty() || b.empty() || c.empty())
    fail("bad-request", "the three clopen sets must be nonempty");
  auto an = clopen_normalize(s, a);
  auto bn = clopen_normalize(s, b);
  auto cn = clopen_normalize(s, c);
  auto inside = [&](const std::vector<Ball>& part) {
    for (const auto& x : part) {
      bool ok = false;
      for (const auto& u : an)
        if (u.is_prefix_of(x)) ok = true;
      if (!ok) return false;
    }
    return true;
  };
  if (!inside(bn) || !inside(cn))
    fail("not-contained", "both moving sets must sit inside the support set");
  if (bn == cn) return identity(sp);
  Ball cstar = cn.front();
  std::vector<Constraint> cons;
  std::vector<Ball> used;
  for (const auto& bi : bn) {
    auto t = find_typed_ball(s, cstar, s.ball_class(bi), used, true);
    if (!t)
      fail("no-type-route",
           "no room of " + bi.str() + "'s type inside " + cstar.str());
    cons.push_back(Constraint{bi, *t, Label::can()});
    used.push_back(*t);
  }
  return extend_within(sp, an, cons);
}

// ---- ping-pong pairs ----

namespace {

// Three pairwise-disjoint landing sites inside `host` with the requested
// type classes, each inside its own infinite cell of a partition of host.
std::array<Ball, 3> three_sites(const Space& s, const Ball& host, int cls_a,
                                int cls_b, int cls_c) {
  std::vector<Ball> cells = child_cells(s, host);
  std::sort(cells.begin(), cells.end());
  for (int guard = 0; count_infinite(s, cells) < 3; ++guard) {
    if (guard > 64 || !split_least_infinite(s, cells))
      fail("no-type-route", "cannot cut three infinite rooms inside " + host.str());
  }
  auto inf = infinite_cells_of(s, cells);
  std::array<int, 3> want{cls_a, cls_b, cls_c};
  std::array<Ball, 3> out;
  for (int k = 0; k < 3; ++k) {
    auto t = find_typed_ball(s, inf[k], want[k]);
    if (!t)
      fail("no-type-route", "no ball of the wanted type inside " + inf[k].str());
    out[k] = *t;
  }
  return out;
}

}  // namespace

namespace {

PingPongPair build_pingpong(const SpacePtr& sp, int extra_splits);

}  // namespace

PingPongPair pingpong_pair(const SpacePtr& sp, std::uint64_t seed) {
  // A given split depth can leave the constraint families covering the whole
  // space, which the extension property rightly refuses; cutting one more
  // cell always leaves room, so escalate deterministically.
  for (int attempt = 0;; ++attempt) {
    try {
      return build_pingpong(sp, (int)(seed % 3) + attempt);
    } catch (const Error& e) {
      std::string code = e.code();
      if (attempt < 16 && (code == "covers-space" || code == "extension-stuck" ||
                           code == "extension-diverged"))
        continue;
      throw;
    }
  }
}

namespace {

PingPongPair build_pingpong(const SpacePtr& sp, int extra_splits) {
  const Space& s = *sp;
  std::vector<Ball> cells = s.minimal_ball_partition();
  for (int guard = 0; count_infinite(s, cells) < 4; ++guard) {
    if (guard > 64 || !split_least_infinite(s, cells))
      fail("no-type-route", "cannot select four disjoint infinite balls");
  }
  for (int extra = extra_splits; extra > 0; --extra) split_least_infinite(s, cells);
  auto inf = infinite_cells_of(s, cells);
  PingPongPair p;
  p.b1p = inf[0];
  p.b1m = inf[1];
  p.b2p = inf[2];
  p.b2m = inf[3];
  int c1p = s.ball_class(p.b1p), c1m = s.ball_class(p.b1m);
  int c2p = s.ball_class(p.b2p), c2m = s.ball_class(p.b2m);

  // h pulls B1+, B2-, B2+ into rooms inside B1+ and pushes three rooms of
  // B1- onto B1-, B2-, B2+.
  auto hin = three_sites(s, p.b1p, c1p, c2m, c2p);
  auto hout = three_sites(s, p.b1m, c1m, c2m, c2p);
  p.h = extend_partial(
      sp, {Constraint{p.b1p, hin[0], Label::can()}, Constraint{p.b2m, hin[1], Label::can()},
           Constraint{p.b2p, hin[2], Label::can()}, Constraint{hout[0], p.b1m, Label::can()},
           Constraint{hout[1], p.b2m, Label::can()}, Constraint{hout[2], p.b2p, Label::can()}});

  auto gin = three_sites(s, p.b2p, c1m, c1p, c2p);
  auto gout = three_sites(s, p.b2m, c1m, c1p, c2m);
  p.g = extend_partial(
      sp, {Constraint{p.b1m, gin[0], Label::can()}, Constraint{p.b1p, gin[1], Label::can()},
           Constraint{p.b2p, gin[2], Label::can()}, Constraint{gout[0], p.b1m, Label::can()},
           Constraint{gout[1], p.b1p, Label::can()}, Constraint{gout[2], p.b2m, Label::can()}});
  return p;
}

bool image_inside(const Element& g, const Ball& src, const Ball& target) {
  if (auto im = try_apply(g, src)) return target.is_prefix_of(*im);
  for (const auto& ch : child_cells(*g.space(), src))
    if (!image_inside(g, ch, target)) return false;
  return true;
}

}  // namespace

bool pingpong_containments(const PingPongPair& p) {
  Element hi = inverse(p.h), gi = inverse(p.g);
  for (const Ball& c : {p.b1p, p.b2m, p.b2p})
    if (!image_inside(p.h, c, p.b1p)) return false;
  for (const Ball& c : {p.b1m, p.b2m, p.b2p})
    if (!image_inside(hi, c, p.b1m)) return false;
  for (const Ball& c : {p.b2p, p.b1m, p.b1p})
    if (!image_inside(p.g, c, p.b2p)) return false;
  for (const Ball& c : {p.b2m, p.b1m, p.b1p})
    if (!image_inside(gi, c, p.b2m)) return false;
  return true;
}

WordSweep pingpong_word_sweep(const PingPongPair& p, int maxlen) {
  std::array<Element, 4> gens{p.g, inverse(p.g), p.h, inverse(p.h)};
  WordSweep ws;
  // depth-first over reduced words; gens pair up as (k, k^1)
  std::function<void(const Element&, int, int)> walk = [&](const Element& e, int last,
                                                           int len) {
    ws.words++;
    if (len == maxlen) ws.top_length++;
    if (is_identity(e)) ws.identities++;
    if (len == maxlen) return;
    for (int k = 0; k < 4; ++k) {
      if (k == (last ^ 1)) continue;
      walk(compose(e, gens[k]), k, len + 1);
    }
  };
  for (int k = 0; k < 4; ++k) walk(gens[k], k, 1);
  return ws;
}

// ---- paradoxical decomposition ----

ParadoxData paradox_data(const SpacePtr& sp) {
  const Space& s = *sp;
  ParadoxData d;
  d.space = sp;
  for (const auto& c : s.minimal_ball_partition())
    if (!s.ball_finite(c)) d.cells.push_back(c);
  if (d.cells.empty()) fail("bad-request", "no infinite minimal cells");
  d.base = d.cells.front();
  for (const auto& c : d.cells) {
    int cls = s.ball_class(c);
    auto s1 = find_typed_ball(s, c, cls, {}, true);
    if (!s1) fail("no-type-route", "no strict subball of " + c.str() + "'s own type");
    auto s2 = find_typed_ball(s, c, cls, {*s1}, true);
    if (!s2) fail("no-type-route", "no second disjoint typed subball in " + c.str());
    d.sub.emplace_back(*s1, *s2);
    d.g.push_back(extend_partial(sp, {Constraint{*s1, c, Label::can()}}));
    d.h.push_back(extend_partial(sp, {Constraint{*s2, c, Label::can()}}));
  }
  return d;
}

Ball leftmost_infinite_cell(const Element& g, const Ball& b) {
  const Space& sp = *g.space();
  CosetRep rc = restrict_coset(g, b);
  for (const auto& r : rc.regions)
    if (!sp.ball_finite(r.src)) return r.src;
  fail("internal-invariant", "clipped partition of an infinite ball has no infinite cell");
}

Stratum classify_stratum(const ParadoxData& d, const CosetRep& rep) {
  const Space& sp = *d.space;
  if (rep.base != d.base) fail("bad-request", "representative clipped to the wrong ball");
  Ball img;
  bool found = false;
  for (const auto& r : rep.regions)
    if (!sp.ball_finite(r.src)) {
      img = r.dst;
      found = true;
      break;
    }
  if (!found) fail("internal-invariant", "no infinite cell in the representative");
  for (int k = 0; k < (int)d.cells.size(); ++k) {
    if (!d.cells[k].is_prefix_of(img)) continue;
    int j = 2;
    if (d.sub[k].first.is_prefix_of(img)) j = 1;
    else if (d.sub[k].second.is_prefix_of(img)) j = 3;
    return Stratum{k + 1, j};
  }
  fail("internal-invariant", "distinguished image landed in a finite minimal cell");
}

Stratum classify_stratum(const ParadoxData& d, const Element& f) {
  Element r = f.reduced() ? f : reduce(f);
  return classify_stratum(d, restrict_coset(r, d.base));
}

namespace {

// Post-compose a random element so its distinguished image lands where the
// requested stratum wants it.  Returns an unset optional when the type of
// the distinguished image cannot be placed (the caller resamples).
std::optional<Element> steer_into(const ParadoxData& d, const Element& r, int k, int j) {
  const Space& s = *d.space;
  Ball D = leftmost_infinite_cell(r, d.base);
  Ball I = apply(r, D);
  std::optional<Ball> t;
  if (j == 1) t = find_typed_ball(s, d.sub[k].first, s.ball_class(I));
  else if (j == 3) t = find_typed_ball(s, d.sub[k].second, s.ball_class(I));
  else {
    t = find_typed_ball(s, d.cells[k], s.ball_class(I),
                        {d.sub[k].first, d.sub[k].second});
    if (!t && s.ball_class(I) == s.ball_class(d.cells[k])) t = d.cells[k];
  }
  if (!t) return std::nullopt;
  if (*t == I) return r;
  Element m = extend_partial(d.space, {Constraint{I, *t, Label::can()}});
  return compose(m, r);
}

void note_violation(ParadoxReport& rep, const std::string& what) {
  rep.violations++;
  if (rep.notes.size() < 20) rep.notes.push_back(what);
}

// One translate identity: `c` (the sample translated by a mover) should
// classify into stratum `want` (whole stratum, or column only).  Merged
// regions can coarsen the distinguished cell and shift the classification
// even though the point map obeys the claimed inclusion; that exact
// situation is certified per instance — the translate's distinguished cell
// strictly contains `D` and still maps `D` inside `target` — and counted
// as a merge, not a violation.
void check_translate(ParadoxReport& rep, const ParadoxData& d, const Element& c,
                     const Ball& D, Stratum want, bool column_only,
                     const Ball& target, const std::string& what) {
  Element r = c.reduced() ? c : reduce(c);
  Stratum got = classify_stratum(d, r);
  if (column_only ? got.i == want.i : got == want) return;
  Ball dc = leftmost_infinite_cell(r, d.base);
  auto im = try_apply(r, D);
  if (dc != D && dc.is_prefix_of(D) && im && target.is_prefix_of(*im)) {
    rep.merges++;
    return;
  }
  note_violation(rep, what);
}

}  // namespace

ParadoxReport verify_paradox(const ParadoxData& d, int per_stratum, std::uint64_t seed) {
  ParadoxReport rep;
  int n = (int)d.cells.size();
  for (int k = 0; k < n; ++k) {
    for (int j = 1; j <= 3; ++j) {
      for (int t = 0; t < per_stratum; ++t) {
        Rng rng(mix_seed(seed, ((std::uint64_t)(k * 3 + j) << 32) | (std::uint32_t)t));
        Stratum want{k + 1, j};
        std::optional<Element> f;
        for (int attempt = 0; attempt < 25 && !f; ++attempt) {
          f = steer_into(d, random_element(d.space, rng), k, j);
          // the steering mover can itself merge regions and land the element
          // in a different stratum; discard such draws and try again
          if (f && classify_stratum(d, *f) != want) f.reset();
        }
        rep.samples++;
        std::string at = "stratum (" + std::to_string(k + 1) + "," + std::to_string(j) +
                         ") sample " + std::to_string(t);
        if (!f) {
          note_violation(rep, at + ": sampler found no placement");
          continue;
        }
        Ball D = leftmost_infinite_cell(*f, d.base);
        // translate identities for the k-th mover pair
        if (j == 1)
          check_translate(rep, d, compose(d.g[k], *f), D, Stratum{k + 1, 0}, true,
                          d.cells[k], at + ": g-translate left the column");
        if (j == 3)
          check_translate(rep, d, compose(d.h[k], *f), D, Stratum{k + 1, 0}, true,
                          d.cells[k], at + ": h-translate left the column");
        check_translate(rep, d, compose(inverse(d.g[k]), *f), D, Stratum{k + 1, 1}, false,
                        d.sub[k].first, at + ": inverse g-translate missed the first stratum");
        check_translate(rep, d, compose(inverse(d.h[k]), *f), D, Stratum{k + 1, 3}, false,
                        d.sub[k].second, at + ": inverse h-translate missed the third stratum");
      }
    }
  }
  // well-definedness on cosets: right factors supported away from the base
  // ball do not change the stratum
  const Space& s = *d.space;
  auto outside = complement_cells(s, Ball(), {d.base});
  for (int p = 0; p < 50; ++p) {
    Rng rng(mix_seed(seed, 0xC05E7ULL + p));
    Element f = random_element(d.space, rng);
    Element k = random_element_in(d.space, outside, rng);
    Element f2 = compose(f, k);
    rep.samples++;
    if (!coset_equals(restrict_coset(f, d.base), restrict_coset(f2, d.base))) {
      note_violation(rep, "coset pair " + std::to_string(p) + ": restrictions differ");
      continue;
    }
    if (classify_stratum(d, f) != classify_stratum(d, f2))
      note_violation(rep, "coset pair " + std::to_string(p) + ": strata differ");
  }
  return rep;
}

// ---- ICC conjugate sequences ----

std::vector<Element> icc_conjugates(const Element& f0, int n) {
  Element f = f0.reduced() ? f0 : reduce(f0);
  if (is_identity(f)) fail("identity-element", "the identity has one conjugate");
  const Space& sp = *f.space();
  SpacePtr spp = f.space();
  if (n <= 0) return {};

  // hunt for an infinite moved ball with disjoint image
  std::optional<Ball> binf;
  for (const auto& r : f.regions()) {
    if (r.src != r.dst) {
      int cap = 4 * sp.num_symbols() + 8 + (int)std::max(r.src.len(), r.dst.len());
      binf = bfs_find(
          sp, r.src,
          [&](const Ball& x) {
            if (sp.ball_finite(x)) return false;
            auto im = try_apply(f, x);
            return im && im->disjoint(x);
          },
          {}, cap);
      if (binf) break;
    } else if (!label_trivial(sp, r.lab)) {
      const auto* aut = sp.automaton();
      int q = r.lab.state;
      Ball v = r.src;
      for (int guard = 0; guard <= aut->num_states() + 2 && !binf; ++guard) {
        int moved = -1, deeper = -1;
        for (int i = 0; i < aut->degree(); ++i) {
          if (aut->perm(q, i) != i) {
            moved = i;
            break;
          }
          if (deeper < 0 && aut->section(q, i) != aut->identity()) deeper = i;
        }
        if (moved >= 0 && !sp.ball_finite(v.child(moved))) binf = v.child(moved);
        else if (moved < 0 && deeper >= 0) {
          q = aut->section(q, deeper);
          v = v.child(deeper);
        } else break;
      }
      if (binf) break;
    }
  }

  std::vector<Element> out;
  if (binf) {
    // descending chain of typed balls inside the image, avoiding a marker
    // ball so each conjugate shows its hand on a fresh ball
    Ball b = *binf;
    Ball dimg = apply(f, b);
    Element fi = inverse(f);
    Ball c = resolve_ball(fi, dimg.child(0));
    for (int guard = 0; !find_typed_ball(sp, dimg, sp.ball_class(b), {c}, true); ++guard) {
      if (guard > 64 || sp.terminal(sp.symbol_at(c)))
        fail("orbit-exhausted", "image ball cannot host the conjugating chain");
      c = resolve_ball(fi, c.child(0));
    }
    Ball w = apply(fi, c);
    Ball dk = dimg;
    std::vector<Ball> avoid{c};
    for (int k = 0; k < n; ++k) {
      auto next = find_typed_ball(sp, dk, sp.ball_class(b), avoid, true);
      if (!next) fail("orbit-exhausted", "typed chain ran out of depth");
      dk = *next;
      Element hk = swap_involution(spp, b, dk);
      avoid.push_back(apply(hk, w));
      out.push_back(conjugate(f, hk));
    }
  } else {
    // all motion is on finite balls: spread disjoint typed copies instead
    Ball b = move_witness(f);
    Ball fb = apply(f, b);
    std::vector<Ball> avoid{b, fb};
    for (int k = 0; k < n; ++k) {
      auto bk = find_typed_ball(sp, Ball(), sp.ball_class(b), avoid, true);
      if (!bk) fail("orbit-exhausted", "no fresh typed ball for the next conjugate");
      avoid.push_back(*bk);
      out.push_back(conjugate(f, swap_involution(spp, b, *bk)));
    }
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (equals(out[i], out[j]))
        fail("internal-invariant", "conjugate sequence collided");
  return out;
}

// ---- pointwise-stabiliser conjugacy probe ----

Element malnormal_witness(const SpacePtr& sp, const Ball& b) {
  const Space& s = *sp;
  if (b.is_root()) fail("root-ball", "need a proper ball");
  s.symbol_at(b);
  if (s.ball_finite(b)) fail("bad-request", "base ball must be infinite");
  Label triv = normalize_label(s, Label::can());
  std::vector<Region> rs;
  std::vector<Ball> ds;
  for (const auto& c : complement_cells(s, Ball(), {b})) {
    auto d = find_typed_ball(s, b, s.ball_class(c), ds, true);
    if (!d)
      fail("no-type-route", "no room of " + c.str() + "'s type inside " + b.str());
    rs.push_back(Region{c, *d, triv});
    rs.push_back(Region{*d, c, triv});
    ds.push_back(*d);
  }
  for (const auto& cell : complement_cells(s, b, ds))
    rs.push_back(Region{cell, cell, triv});
  return from_regions(sp, std::move(rs));
}

MalnormalReport malnormal_probe(const SpacePtr& sp, const Ball& b, int samples,
                                std::uint64_t seed) {
  Element g = malnormal_witness(sp, b);
  auto outside = complement_cells(*sp, Ball(), {b});
  MalnormalReport rep;
  for (int t = 0; t < samples; ++t) {
    Rng rng(mix_seed(seed, t));
    Element f = random_element_in(sp, outside, rng);
    rep.samples++;
    if (in_pointwise_stabilizer(conjugate(f, g), b) && !is_identity(f))
      rep.counterexamples++;
  }
  return rep;
}

// ---- unbounded cocycle sequence ----

Element unbounded_sequence(const SpacePtr& sp, const Ball& b, int n) {
  const Space& s = *sp;
  if (b.is_root()) fail("root-ball", "need a proper ball");
  s.symbol_at(b);
  if (s.ball_finite(b)) fail("bad-request", "base ball must be infinite");
  if (n < 1) fail("bad-request", "sequence index starts at 1");
  std::vector<Ball> cells = complement_cells(s, Ball(), {b});
  for (int guard = 0; count_infinite(s, cells) < 2 * n; ++guard) {
    if (guard > 32 + 4 * n || !split_least_infinite(s, cells))
      fail("no-type-route", "cannot cut enough swap sites outside " + b.str());
  }
  auto inf = infinite_cells_of(s, cells);
  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) {
    const Ball& src = inf[2 * i];
    auto t = find_typed_ball(s, inf[2 * i + 1], s.ball_class(src));
    if (!t) fail("no-type-route", "no partner of " + src.str() + "'s type");
    cons.push_back(Constraint{src, *t, Label::can()});
    cons.push_back(Constraint{*t, src, Label::can()});
  }
  Ball dk = b;
  std::vector<Ball> chain;
  for (int j = 0; j <= n; ++j) {
    auto next = find_typed_ball(s, dk, s.ball_class(b), {}, true);
    if (!next) fail("no-type-route", "typed chain stalled inside " + b.str());
    dk = *next;
    chain.push_back(dk);
  }
  cons.push_back(Constraint{chain[n - 1], chain[n], Label::can()});
  return extend_partial(sp, cons);
}

// ---- commutator separation ----

CommutatorSeparation commutator_separation_data(const Element& g0) {
  Element g = g0.reduced() ? g0 : reduce(g0);
  if (is_identity(g)) fail("identity-element", "the identity separates nothing");
  const Space& s = *g.space();
  for (int sym = 0; sym < s.num_symbols(); ++sym)
    if ((sym == s.root_symbol() || s.occurring()[sym]) && s.finite_type(sym))
      fail("finite-balls", "construction needs a space with no finite balls");
  Ball b = move_witness(g);
  Ball c = apply(g, b);
  std::vector<Ball> room;
  for (int guard = 0;; ++guard) {
    room = infinite_cells_of(s, complement_cells(s, Ball(), {b, c}));
    if ((int)room.size() >= 2) break;
    if (guard > 64) fail("internal-invariant", "no room beside a moved ball");
    b = b.child(0);
    c = apply(g, b);
  }
  CommutatorSeparation out;
  out.moved = b;
  out.image = c;
  out.d1 = room[0];
  out.d2 = room[1];
  Element h1 = swap_involution(g.space(), b, out.d1);
  Element h2 = swap_involution(g.space(), b, out.d2);
  out.f = commutator(h1, h2);
  return out;
}

Element commutator_separation_witness(const Element& g) {
  return commutator_separation_data(g).f;
}

}  // namespace cssg
