#include "cssg/space.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "cssg/automaton.hpp"

namespace cssg {

static char index_char(int i) {
  if (i < 10) return char('0' + i);
  return char('a' + (i - 10));
}

std::string Ball::str() const {
  if (ix.empty()) return "";
  std::string s;
  s.reserve(ix.size());
  for (int i : ix) {
    if (i < 0 || i >= 36) fail("address-unprintable", "index out of text range");
    s.push_back(index_char(i));
  }
  return s;
}

Ball Ball::parse(const std::string& s) {
  Ball b;
  b.ix.reserve(s.size());
  for (char c : s) {
    int v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'z') v = 10 + (c - 'a');
    else fail("invalid-address", std::string("bad address character '") + c + "'");
    b.ix.push_back(v);
  }
  return b;
}

Space::Space(SpacePresentation pres, std::shared_ptr<const GroupAutomaton> autom)
    : pres_(std::move(pres)), autom_(std::move(autom)) {
  int n = (int)pres_.symbols.size();
  if (n == 0) fail("empty-presentation", "no symbols");
  if (pres_.root < 0 || pres_.root >= n) fail("bad-root", "root symbol out of range");
  if ((int)pres_.children.size() != n)
    fail("bad-presentation", "children table size mismatch");
  for (const auto& row : pres_.children)
    for (int c : row)
      if (c < 0 || c >= n) fail("bad-presentation", "undeclared child symbol");
  compute_finite();
  compute_classes();
  compute_reach();
  if (autom_) {
    // Decoration requires a uniform degree matching the automaton on every
    // occurring non-root symbol (and the root, whose children it also permutes
    // through global states).
    int d = autom_->degree();
    for (int s = 0; s < n; ++s) {
      if (s != pres_.root && !occurring_[s]) continue;
      if (arity(s) != d)
        fail("degree-mismatch", "automaton degree " + std::to_string(d) +
                                    " but symbol " + pres_.symbols[s] + " has " +
                                    std::to_string(arity(s)) + " children");
    }
  }
}

void Space::compute_finite() {
  int n = num_symbols();
  finite_.assign(n, false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int s = 0; s < n; ++s) {
      if (finite_[s]) continue;
      bool all = true;
      for (int c : pres_.children[s]) all = all && finite_[c];
      if (all) {  // terminals hit this with an empty conjunction
        finite_[s] = true;
        changed = true;
      }
    }
  }
}

void Space::compute_classes() {
  int n = num_symbols();
  cls_.resize(n);
  for (int s = 0; s < n; ++s) cls_[s] = s;
  // Grow the congruence from the discrete partition: merge symbols whose child
  // sequences land in identical class sequences, repeat until stable.  Merges
  // only ever coarsen, so at most n rounds.
  for (;;) {
    std::map<std::vector<int>, int> bySig;
    std::vector<int> next(n);
    int k = 0;
    for (int s = 0; s < n; ++s) {
      std::vector<int> sig;
      sig.reserve(pres_.children[s].size());
      for (int c : pres_.children[s]) sig.push_back(cls_[c]);
      auto [it, fresh] = bySig.emplace(std::move(sig), k);
      if (fresh) ++k;
      next[s] = it->second;
    }
    if (next == cls_) {
      num_cls_ = k;
      break;
    }
    cls_ = next;
  }
  // Renumber so class ids follow first occurrence in symbol order.
  std::vector<int> order(num_cls_, -1);
  int k = 0;
  for (int s = 0; s < num_symbols(); ++s)
    if (order[cls_[s]] < 0) order[cls_[s]] = k++;
  for (int s = 0; s < num_symbols(); ++s) cls_[s] = order[cls_[s]];
}

void Space::compute_reach() {
  int n = num_symbols();
  reach_.assign(n, std::vector<bool>(n, false));
  for (int s = 0; s < n; ++s) {
    std::deque<int> q{s};
    reach_[s][s] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int c : pres_.children[u])
        if (!reach_[s][c]) {
          reach_[s][c] = true;
          q.push_back(c);
        }
    }
  }
  occurring_.assign(n, false);
  for (int c : pres_.children[pres_.root]) {
    if (!occurring_[c]) {
      for (int t = 0; t < n; ++t)
        if (reach_[c][t]) occurring_[t] = true;
    }
  }
}

int Space::symbol_at(const Ball& b) const {
  int s = pres_.root;
  for (int i : b.ix) {
    if (i < 0 || i >= arity(s))
      fail("invalid-address", "index " + std::to_string(i) + " invalid under symbol " +
                                  pres_.symbols[s] + " in address " + b.str());
    s = pres_.children[s][i];
  }
  return s;
}

bool Space::valid_address(const Ball& b) const {
  int s = pres_.root;
  for (int i : b.ix) {
    if (i < 0 || i >= arity(s)) return false;
    s = pres_.children[s][i];
  }
  return true;
}

int Space::ball_depth(const Ball& b) const {
  if (b.is_root()) fail("root-ball", "the whole space has no ball depth");
  symbol_at(b);  // validity
  return (int)b.len() - 1;
}

std::vector<Ball> Space::minimal_ball_partition() const {
  if (terminal(pres_.root))
    fail("root-terminal", "singleton space has no proper ball partition");
  std::vector<Ball> cells;
  for (int i = 0; i < arity(pres_.root); ++i) cells.push_back(Ball().child(i));
  return cells;
}

std::optional<int> Space::distance_exponent(const Ball& a, const Ball& b) {
  size_t m = 0;
  while (m < a.len() && m < b.len() && a.ix[m] == b.ix[m]) ++m;
  if (m == a.len() || m == b.len()) return std::nullopt;  // nested
  return (int)m;
}

// ---- partitions ----

namespace {

// Recursive frontier check: the cells with the empty relative address claim
// this vertex outright; otherwise the cells must split into complete child
// families all the way down.
bool check_cover(const Space& sp, int sym, std::vector<std::vector<int>>& cells,
                 std::string* why) {
  bool self = false;
  for (auto& c : cells)
    if (c.empty()) self = true;
  if (self) {
    if (cells.size() != 1) {
      if (why) *why = "a cell overlaps others";
      return false;
    }
    return true;
  }
  if (sp.terminal(sym)) {
    if (why) *why = "cells descend past a terminal, or leave it uncovered";
    return false;
  }
  int d = sp.arity(sym);
  std::vector<std::vector<std::vector<int>>> byChild(d);
  for (auto& c : cells) {
    int i = c.front();
    if (i < 0 || i >= d) {
      if (why) *why = "cell address invalid";
      return false;
    }
    byChild[i].push_back(std::vector<int>(c.begin() + 1, c.end()));
  }
  for (int i = 0; i < d; ++i) {
    if (byChild[i].empty()) {
      if (why) *why = "a branch is uncovered";
      return false;
    }
    if (!check_cover(sp, sp.children_of(sym)[i], byChild[i], why)) return false;
  }
  return true;
}

}  // namespace

bool is_partition(const Space& sp, const std::vector<Ball>& cells, const Ball& within) {
  if (!sp.valid_address(within)) return false;
  std::vector<std::vector<int>> rel;
  rel.reserve(cells.size());
  for (const auto& c : cells) {
    if (!within.is_prefix_of(c) || !sp.valid_address(c)) return false;
    rel.push_back(within.suffix_of(c));
  }
  if (rel.empty()) return false;
  return check_cover(sp, sp.symbol_at(within), rel, nullptr);
}

void validate_partition(const Space& sp, const std::vector<Ball>& cells,
                        const Ball& within) {
  std::vector<std::vector<int>> rel;
  rel.reserve(cells.size());
  for (const auto& c : cells) {
    if (!within.is_prefix_of(c))
      fail("not-a-partition", "cell " + c.str() + " escapes " + within.str());
    sp.symbol_at(c);
    rel.push_back(within.suffix_of(c));
  }
  if (rel.empty()) fail("not-a-partition", "no cells");
  std::string why;
  if (!check_cover(sp, sp.symbol_at(within), rel, &why))
    fail("not-a-partition", why);
}

std::vector<Ball> refine(const Space& sp, const std::vector<Ball>& a,
                         const std::vector<Ball>& b) {
  validate_partition(sp, a);
  validate_partition(sp, b);
  std::vector<Ball> out;
  for (const auto& ca : a)
    for (const auto& cb : b) {
      if (cb.is_prefix_of(ca)) out.push_back(ca);
      else if (ca.is_strict_prefix_of(cb)) out.push_back(cb);
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Ball> child_cells(const Space& sp, const Ball& b) {
  int s = sp.symbol_at(b);
  if (sp.terminal(s)) fail("terminal-split", "cannot split a singleton ball");
  std::vector<Ball> out;
  for (int i = 0; i < sp.arity(s); ++i) out.push_back(b.child(i));
  return out;
}

std::vector<Ball> complement_cells(const Space& sp, const Ball& within,
                                   const std::vector<Ball>& holes) {
  for (const auto& h : holes) {
    if (!within.is_prefix_of(h))
      fail("bad-complement", "hole " + h.str() + " outside " + within.str());
    sp.symbol_at(h);
  }
  std::vector<Ball> out;
  // Descend: emit subtrees that meet no hole; recurse where holes sit deeper.
  std::function<void(const Ball&)> walk = [&](const Ball& v) {
    bool inside = false, meets = false;
    for (const auto& h : holes) {
      if (h.is_prefix_of(v)) inside = true;
      if (v.comparable(h)) meets = true;
    }
    if (inside) return;
    if (!meets) {
      out.push_back(v);
      return;
    }
    for (const auto& c : child_cells(sp, v)) walk(c);
  };
  walk(within);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Ball> bfs_find(const Space& sp, const Ball& within,
                             const std::function<bool(const Ball&)>& pred,
                             const std::vector<Ball>& avoid, int depth_cap) {
  if (depth_cap < 0) depth_cap = 4 * sp.num_symbols() + 8;
  std::deque<Ball> q{within};
  while (!q.empty()) {
    Ball v = q.front();
    q.pop_front();
    bool blocked = false;
    for (const auto& a : avoid)
      if (a.is_prefix_of(v)) blocked = true;
    if (blocked) continue;
    bool overlaps = false;
    for (const auto& a : avoid)
      if (v.is_prefix_of(a)) overlaps = true;
    if (!overlaps && pred(v)) return v;
    if ((int)(v.len() - within.len()) >= depth_cap) continue;
    int s = sp.symbol_at(v);
    for (int i = 0; i < sp.arity(s); ++i) q.push_back(v.child(i));
  }
  return std::nullopt;
}

std::optional<Ball> find_typed_ball(const Space& sp, const Ball& within,
                                    int type_class, const std::vector<Ball>& avoid,
                                    bool require_strict, int depth_cap) {
  return bfs_find(
      sp, within,
      [&](const Ball& b) {
        if (require_strict && b == within) return false;
        if (b.is_root()) return false;  // proper balls only
        return sp.ball_class(b) == type_class;
      },
      avoid, depth_cap);
}

SpacePresentation make_vdr(int d, int r) {
  if (d < 1 || r < 1) fail("bad-presentation", "vdr needs d,r >= 1");
  SpacePresentation p;
  p.name = "vdr-" + std::to_string(d) + "-" + std::to_string(r);
  p.symbols = {"R", "x"};
  p.children = {std::vector<int>(r, 1), std::vector<int>(d, 1)};
  p.root = 0;
  return p;
}

}  // namespace cssg
