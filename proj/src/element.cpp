#include "cssg/element.hpp"

#include <algorithm>
#include <map>

#include "cssg/automaton.hpp"

namespace cssg {

std::vector<Ball> Element::source_cells() const {
  std::vector<Ball> v;
  v.reserve(regions_.size());
  for (const auto& r : regions_) v.push_back(r.src);
  return v;
}

std::vector<Ball> Element::target_cells() const {
  std::vector<Ball> v;
  v.reserve(regions_.size());
  for (const auto& r : regions_) v.push_back(r.dst);
  std::sort(v.begin(), v.end());
  return v;
}

Element identity(SpacePtr sp) {
  Label l = normalize_label(*sp, Label::can());
  return Element(std::move(sp), {Region{Ball(), Ball(), l}}, true);
}

static void sort_regions(std::vector<Region>& rs) {
  std::sort(rs.begin(), rs.end(),
            [](const Region& a, const Region& b) { return a.src < b.src; });
}

// One merge pass: group regions by source parent; a complete child family
// whose targets are the sibling family of one parent under a single label
// collapses into that parent region.  Returns true if anything merged.
static bool merge_pass(const Space& sp, std::vector<Region>& rs) {
  std::map<Ball, std::vector<Region>> fam;
  for (const auto& r : rs) {
    if (r.src.is_root()) continue;
    fam[r.src.parent()].push_back(r);
  }
  bool merged_any = false;
  std::vector<Region> out;
  std::vector<char> consumed(rs.size(), 0);
  for (auto& [p, members] : fam) {
    int d = sp.arity(sp.symbol_at(p));
    if ((int)members.size() != d) continue;
    // index members by the child slot they cover
    std::vector<const Region*> slot(d, nullptr);
    bool ok = true;
    for (const auto& m : members) {
      int i = m.src.ix.back();
      if (slot[i]) ok = false;
      else slot[i] = &m;
    }
    if (!ok) continue;
    // all targets must be children of one common parent
    if (slot[0]->dst.is_root()) continue;
    Ball q = slot[0]->dst.parent();
    for (int i = 0; i < d && ok; ++i)
      ok = !slot[i]->dst.is_root() && slot[i]->dst.parent() == q;
    if (!ok) continue;
    Label big;
    if (!sp.decorated()) {
      // canonical assembly: position-matched children, canonical labels
      for (int i = 0; i < d && ok; ++i)
        ok = slot[i]->lab.canonical() && slot[i]->dst.ix.back() == i;
      if (!ok) continue;
      big = Label::can();
      // the merged pair is type-equal by construction of the class congruence
    } else {
      const auto* aut = sp.automaton();
      std::vector<int> perm(d), secs(d);
      for (int i = 0; i < d && ok; ++i) {
        perm[i] = slot[i]->dst.ix.back();
        ok = !slot[i]->lab.canonical();
        if (ok) secs[i] = slot[i]->lab.state;
      }
      if (!ok) continue;
      auto q2 = aut->state_with(perm, secs);
      if (!q2) continue;
      big = Label::st(*q2);
    }
    if (sp.ball_class(p) != sp.ball_class(q)) continue;
    // replace the family by the parent region
    for (size_t k = 0; k < rs.size(); ++k) {
      for (const auto& m : members)
        if (!consumed[k] && rs[k] == m) consumed[k] = 1;
    }
    out.push_back(Region{p, q, big});
    merged_any = true;
  }
  if (!merged_any) return false;
  for (size_t k = 0; k < rs.size(); ++k)
    if (!consumed[k]) out.push_back(rs[k]);
  rs = std::move(out);
  return true;
}

std::vector<Region> reduce_regions(const Space& sp, std::vector<Region> rs) {
  while (merge_pass(sp, rs)) {
  }
  sort_regions(rs);
  return rs;
}

Element reduce(const Element& g) {
  if (g.reduced()) return g;
  return Element(g.space(), reduce_regions(*g.space(), g.regions()), true);
}

Element from_regions(SpacePtr sp, std::vector<Region> regions) {
  std::vector<Ball> src, dst;
  for (auto& r : regions) {
    r.lab = normalize_label(*sp, r.lab);
    src.push_back(r.src);
    dst.push_back(r.dst);
  }
  validate_partition(*sp, src);
  validate_partition(*sp, dst);
  for (const auto& r : regions)
    if (!r.src.is_root())  // root region: global similarity, label suffices
      validate_label(*sp, r.src, r.dst, r.lab);
    else if (r.dst != r.src)
      fail("no-similarity", "a global region must map the space to itself");
  sort_regions(regions);
  return reduce(Element(std::move(sp), std::move(regions), false));
}

std::optional<Ball> try_apply(const Element& g, const Ball& b) {
  const Space& sp = *g.space();
  if (!sp.valid_address(b)) fail("invalid-address", "no ball " + b.str());
  for (const auto& r : g.regions()) {
    if (r.src.is_prefix_of(b)) {
      auto img = apply_sim(sp, r.src, r.dst, r.lab, r.src.suffix_of(b));
      return r.dst.descend(img);
    }
  }
  return std::nullopt;
}

Ball apply(const Element& g, const Ball& b) {
  auto r = try_apply(g, b);
  if (!r)
    fail("insufficient-depth",
         "ball " + b.str() + " spans region boundaries; refine it first");
  return *r;
}

// Split the region (src, dst, lab) by one level: the child family.
static std::vector<Region> split_region(const Space& sp, const Region& r) {
  int s = sp.symbol_at(r.src);
  if (sp.terminal(s)) fail("terminal-split", "cannot split a singleton region");
  std::vector<Region> out;
  out.reserve(sp.arity(s));
  for (int i = 0; i < sp.arity(s); ++i) {
    auto [j, lab] = restrict_label(sp, r.src, r.dst, r.lab, i);
    out.push_back(Region{r.src.child(i), r.dst.child(j), lab});
  }
  return out;
}

std::vector<Region> split_regions_to(const Element& g, const std::vector<Ball>& sources) {
  const Space& sp = *g.space();
  std::vector<Region> out;
  std::function<void(const Region&)> walk = [&](const Region& r) {
    for (const auto& s : sources)
      if (r.src.is_strict_prefix_of(s)) {
        for (const auto& piece : split_region(sp, r)) walk(piece);
        return;
      }
    out.push_back(r);
  };
  for (const auto& r : g.regions()) walk(r);
  sort_regions(out);
  return out;
}

std::vector<Region> map_regions_through(const Element& g, const std::vector<Region>& rs) {
  const Space& sp = *g.space();
  std::vector<Region> out;
  // Push each region through g, splitting until its target sits inside a
  // single region of g.
  std::function<void(const Region&)> walk = [&](const Region& r) {
    for (const auto& rg : g.regions()) {
      if (rg.src.is_prefix_of(r.dst)) {
        auto img = apply_sim(sp, rg.src, rg.dst, rg.lab, rg.src.suffix_of(r.dst));
        Label lab2 = rg.lab;
        if (!lab2.canonical())
          lab2 = Label::st(sp.automaton()->restrict_along(lab2.state, rg.src.suffix_of(r.dst)));
        out.push_back(Region{r.src, rg.dst.descend(img), compose_labels(sp, lab2, r.lab)});
        return;
      }
    }
    for (const auto& piece : split_region(sp, r)) walk(piece);
  };
  for (const auto& r : rs) walk(r);
  sort_regions(out);
  return out;
}

Element compose(const Element& g, const Element& f) {
  if (g.space().get() != f.space().get() && g.space()->name() != f.space()->name())
    fail("space-mismatch", "elements live on different spaces");
  return reduce(Element(f.space(), map_regions_through(g, f.regions()), false));
}

Element inverse(const Element& g) {
  const Space& sp = *g.space();
  Element r = g.reduced() ? g : reduce(g);
  std::vector<Region> out;
  out.reserve(r.regions().size());
  for (const auto& reg : r.regions())
    out.push_back(Region{reg.dst, reg.src, invert_label(sp, reg.lab)});
  sort_regions(out);
  // the image of a maximum region is a maximum region of the inverse
  return Element(g.space(), std::move(out), true);
}

bool equals(const Element& a, const Element& b) {
  Element ra = a.reduced() ? a : reduce(a);
  Element rb = b.reduced() ? b : reduce(b);
  return ra.regions() == rb.regions();
}

bool is_identity(const Element& g) {
  Element r = g.reduced() ? g : reduce(g);
  for (const auto& reg : r.regions())
    if (reg.src != reg.dst || !label_trivial(*g.space(), reg.lab)) return false;
  return true;
}

Element conjugate(const Element& g, const Element& h) {
  return compose(inverse(h), compose(g, h));
}

Element commutator(const Element& g, const Element& h) {
  return compose(inverse(g), compose(inverse(h), compose(g, h)));
}

std::vector<std::pair<Ball, BallStatus>> support(const Element& g, int depth) {
  const Space& sp = *g.space();
  std::vector<std::pair<Ball, BallStatus>> out;
  std::function<void(const Ball&, int)> walk = [&](const Ball& b, int left) {
    if (left > 0 && !sp.terminal(sp.symbol_at(b))) {
      for (const auto& c : child_cells(sp, b)) walk(c, left - 1);
      return;
    }
    auto img = try_apply(g, b);
    BallStatus st;
    if (!img) st = BallStatus::Mixed;
    else if (*img == b) {
      // resolved fixed ball: trivial label means pointwise fixed
      Label lab;
      for (const auto& r : g.regions())
        if (r.src.is_prefix_of(b)) {
          lab = r.lab;
          if (!lab.canonical())
            lab = Label::st(
                sp.automaton()->restrict_along(lab.state, r.src.suffix_of(b)));
          break;
        }
      st = label_trivial(sp, lab) ? BallStatus::Fixed : BallStatus::Mixed;
    } else if (img->disjoint(b)) st = BallStatus::Moved;
    else st = BallStatus::Mixed;
    out.emplace_back(b, st);
  };
  walk(Ball(), depth);
  return out;
}

bool has_finite_support(const Element& g) {
  const Space& sp = *g.space();
  if (sp.decorated())
    fail("unsupported", "finite-support detection needs canonical labels");
  Element r = g.reduced() ? g : reduce(g);
  for (const auto& reg : r.regions())
    if (reg.src != reg.dst && !sp.ball_finite(reg.src)) return false;
  return true;
}

CosetRep restrict_coset(const Element& g, const Ball& base) {
  const Space& sp = *g.space();
  if (base.is_root()) fail("root-ball", "restrict to a proper ball");
  sp.symbol_at(base);
  Element r = g.reduced() ? g : reduce(g);
  std::vector<Region> out;
  for (const auto& reg : r.regions()) {
    if (reg.src.is_prefix_of(base)) {
      auto img = apply_sim(sp, reg.src, reg.dst, reg.lab, reg.src.suffix_of(base));
      Label lab = reg.lab;
      if (!lab.canonical())
        lab = Label::st(sp.automaton()->restrict_along(lab.state, reg.src.suffix_of(base)));
      out.push_back(Region{base, reg.dst.descend(img), lab});
      break;
    }
    if (base.is_strict_prefix_of(reg.src)) out.push_back(reg);
  }
  sort_regions(out);
  return CosetRep{base, std::move(out)};
}

bool coset_equals(const CosetRep& a, const CosetRep& b) { return a == b; }

}  // namespace cssg
