#include "cssg/checks.hpp"

#include <algorithm>
#include <set>

#include "cssg/builders.hpp"
#include "cssg/random.hpp"

namespace cssg {

void validate_matrix(const TransitionMatrix& m) {
  int n = (int)m.size();
  if (n == 0) fail("bad-presentation", "empty matrix");
  for (const auto& row : m) {
    if ((int)row.size() != n) fail("bad-presentation", "matrix is not square");
    for (int v : row)
      if (v != 0 && v != 1) fail("bad-presentation", "matrix entries must be 0 or 1");
  }
}

SpacePtr sft_from_matrix(const TransitionMatrix& m, const std::string& name) {
  validate_matrix(m);
  int n = (int)m.size();
  SpacePresentation pres;
  pres.name = name;
  pres.symbols.push_back("R");
  for (int i = 0; i < n; ++i) pres.symbols.push_back(std::to_string(i));
  pres.children.resize(n + 1);
  for (int i = 0; i < n; ++i) pres.children[0].push_back(i + 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (m[i][j]) pres.children[i + 1].push_back(j + 1);
    if (pres.children[i + 1].empty())
      fail("dead-symbol", "symbol " + std::to_string(i) + " has no followers");
  }
  pres.root = 0;
  return std::make_shared<const Space>(std::move(pres));
}

bool is_irreducible(const TransitionMatrix& m) {
  validate_matrix(m);
  int n = (int)m.size();
  // reach[i][j]: a path of length >= 1 from i to j
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) reach[i][j] = m[i][j] != 0;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!reach[i][j]) return false;
  return true;
}

std::vector<int> two_followed_symbols(const TransitionMatrix& m) {
  validate_matrix(m);
  std::vector<int> out;
  for (int i = 0; i < (int)m.size(); ++i) {
    int row = 0;
    for (int v : m[i]) row += v;
    if (row >= 2) out.push_back(i);
  }
  return out;
}

CssStarReport verify_css_star(const SpacePtr& spp) {
  const Space& sp = *spp;
  CssStarReport rep;
  std::vector<int> occ_syms, occ_inf;
  for (int s = 0; s < sp.num_symbols(); ++s) {
    if (!sp.occurring()[s]) continue;
    occ_syms.push_back(s);
    if (!sp.finite_type(s)) occ_inf.push_back(s);
  }
  // condition 1: every occurring infinite symbol reaches a branching symbol
  for (int s : occ_inf) {
    bool ok = false;
    for (int u = 0; u < sp.num_symbols() && !ok; ++u) {
      if (!sp.reachable_from(s)[u]) continue;
      int inf_children = 0;
      for (int ch : sp.children_of(u))
        if (!sp.finite_type(ch)) ++inf_children;
      if (inf_children >= 2) ok = true;
    }
    if (!ok) {
      rep.splitting = false;
      rep.witnesses.push_back("symbol " + sp.symbol_name(s) +
                              " reaches no symbol with two infinite children");
    }
  }
  // condition 2: every occurring class is reachable from every occurring
  // infinite symbol
  std::set<int> seen_cls;
  for (int t : occ_syms) {
    if (!seen_cls.insert(sp.type_class(t)).second) continue;
    for (int s : occ_inf) {
      bool ok = false;
      for (int u = 0; u < sp.num_symbols() && !ok; ++u)
        if (sp.reachable_from(s)[u] && sp.type_class(u) == sp.type_class(t)) ok = true;
      if (!ok) {
        rep.reaching = false;
        rep.witnesses.push_back("class of " + sp.symbol_name(t) +
                                " unreachable from " + sp.symbol_name(s));
      }
    }
  }
  return rep;
}

namespace {

void note_failure(ProbeReport& rep, const std::string& what) {
  rep.failures++;
  if (rep.notes.size() < 20) rep.notes.push_back(what);
}

// Image of a ball as cells, splitting until the element resolves each piece.
void image_cells_into(const Element& g, const Ball& b, std::vector<Ball>& out) {
  if (auto im = try_apply(g, b)) {
    out.push_back(*im);
    return;
  }
  for (const auto& ch : child_cells(*g.space(), b)) image_cells_into(g, ch, out);
}

std::vector<Ball> image_cells(const Element& g, const Ball& b) {
  std::vector<Ball> out;
  image_cells_into(g, b, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Sources of the non-identity regions of a reduced element.
std::vector<Ball> moved_cells(const Element& e0) {
  Element e = e0.reduced() ? e0 : reduce(e0);
  const Space& sp = *e.space();
  std::vector<Ball> out;
  for (const auto& r : e.regions())
    if (r.src != r.dst || !label_trivial(sp, r.lab)) out.push_back(r.src);
  return out;
}

}  // namespace

ProbeReport centralizer_probe(const SpacePtr& spp, const Ball& b, int samples,
                              std::uint64_t seed) {
  const Space& sp = *spp;
  if (b.is_root()) fail("root-ball", "need a proper ball");
  sp.symbol_at(b);
  auto outside = complement_cells(sp, Ball(), {b});
  ProbeReport rep;
  for (int t = 0; t < samples; ++t) {
    Rng rng(mix_seed(seed, t));
    if (t % 2 == 0) {
      // disjoint supports commute
      Element h = random_element_in(spp, outside, rng);
      Element g = random_element_in(spp, {b}, rng);
      rep.samples++;
      if (!is_identity(commutator(h, g)))
        note_failure(rep, "sample " + std::to_string(t) +
                              ": disjointly supported pair fails to commute");
      continue;
    }
    // an element moving material outside b does not centralise the
    // pointwise stabiliser of b
    bool ran = false;
    for (int attempt = 0; attempt < 20 && !ran; ++attempt) {
      Element g = random_element(spp, rng);
      std::optional<Ball> v;
      for (const auto& cell : outside) {
        v = bfs_find(sp, cell, [&](const Ball& x) {
          auto im = try_apply(g, x);
          return im && im->disjoint(x);
        });
        if (v) break;
      }
      if (!v) continue;
      Ball gv = apply(g, *v);
      auto d = find_typed_ball(sp, Ball(), sp.ball_class(*v), {b, *v, gv}, true);
      if (!d) continue;
      Element h = swap_involution(spp, *v, *d);
      ran = true;
      rep.samples++;
      if (is_identity(commutator(h, g)))
        note_failure(rep, "sample " + std::to_string(t) +
                              ": stabiliser swap unexpectedly commutes");
    }
  }
  return rep;
}

FiniteSupportReport finite_support_probe(const SpacePtr& spp, int samples,
                                         std::uint64_t seed) {
  const Space& sp = *spp;
  FiniteSupportReport rep;
  std::set<int> fin_classes;
  for (int s = 0; s < sp.num_symbols(); ++s)
    if (sp.occurring()[s] && sp.finite_type(s)) fin_classes.insert(sp.type_class(s));
  rep.classes = (int)fin_classes.size();
  auto fail_note = [&](const std::string& what) {
    rep.failures++;
    if (rep.notes.size() < 20) rep.notes.push_back(what);
  };
  if (fin_classes.empty()) {
    // no finite balls: the subgroup is {1}; spend the budget confirming no
    // sampled nontrivial element sneaks in with finite support
    rep.trivial = true;
    for (int t = 0; t < samples; ++t) {
      Rng rng(mix_seed(seed, t));
      Element g = random_element(spp, rng);
      rep.samples++;
      if (!is_identity(g) && has_finite_support(g))
        fail_note("sample " + std::to_string(t) + ": nontrivial finite support");
    }
    return rep;
  }
  auto random_finite_ball = [&](Rng& rng) -> std::optional<Ball> {
    for (int tries = 0; tries < 50; ++tries) {
      Ball b = random_ball(sp, Ball(), rng);
      if (sp.ball_finite(b)) return b;
    }
    return std::nullopt;
  };
  auto transposition = [&](Rng& rng) -> std::optional<Element> {
    auto b = random_finite_ball(rng);
    if (!b) return std::nullopt;
    auto d = find_typed_ball(sp, Ball(), sp.ball_class(*b), {*b}, true);
    if (!d) return std::nullopt;
    return swap_involution(spp, *b, *d);
  };
  for (int t = 0; t < samples; ++t) {
    Rng rng(mix_seed(seed, t));
    auto t1 = transposition(rng);
    auto t2 = transposition(rng);
    if (!t1 || !t2) continue;
    rep.samples++;
    std::string at = "sample " + std::to_string(t);
    if (!has_finite_support(*t1) || !has_finite_support(inverse(*t1)) ||
        !has_finite_support(compose(*t1, *t2))) {
      fail_note(at + ": closure under product/inverse failed");
      continue;
    }
    Element g = random_element(spp, rng);
    Element conj = conjugate(*t1, g);  // g^-1 t1 g
    if (!has_finite_support(conj)) {
      fail_note(at + ": conjugate lost finite support");
      continue;
    }
    // support transport: the conjugate moves exactly the g-preimages of the
    // transposed balls
    std::vector<Ball> expected;
    Element gi = inverse(g);
    for (const auto& cell : moved_cells(*t1))
      for (const auto& im : image_cells(gi, cell)) expected.push_back(im);
    auto lhs = clopen_normalize(sp, moved_cells(conj));
    auto rhs = clopen_normalize(sp, expected);
    if (lhs != rhs) {
      fail_note(at + ": conjugate support is not the transported support");
      continue;
    }
    // class separation: conjugation never mixes finite type classes
    int cls = sp.ball_class(moved_cells(*t1).front());
    for (const auto& cell : moved_cells(conj))
      if (sp.ball_class(cell) != cls) {
        fail_note(at + ": conjugate mixed type classes");
        break;
      }
  }
  return rep;
}

}  // namespace cssg
