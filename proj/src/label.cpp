#include "cssg/label.hpp"

#include "cssg/automaton.hpp"

namespace cssg {

bool sim_nonempty(const Space& sp, const Ball& b1, const Ball& b2) {
  if (b1.is_root() || b2.is_root())
    fail("root-ball", "similarities are between proper balls");
  return sp.ball_class(b1) == sp.ball_class(b2);
}

Label normalize_label(const Space& sp, Label l) {
  if (sp.decorated()) {
    if (l.canonical()) return Label::st(sp.automaton()->identity());
    if (l.state >= sp.automaton()->num_states())
      fail("label-mismatch", "automaton state out of range");
    return l;
  }
  if (!l.canonical())
    fail("label-mismatch", "decorated label on an undecorated space");
  return l;
}

void validate_label(const Space& sp, const Ball& src, const Ball& dst, Label l) {
  if (!sim_nonempty(sp, src, dst))
    fail("no-similarity", "no similarity " + src.str() + " -> " + dst.str() +
                              " (type classes differ)");
  normalize_label(sp, l);
}

std::vector<int> apply_sim(const Space& sp, const Ball& src, const Ball& dst,
                           Label l, const std::vector<int>& suffix) {
  if (!sp.valid_address(src.descend(suffix)))
    fail("invalid-address", "suffix invalid under " + src.str());
  l = normalize_label(sp, l);
  std::vector<int> out = l.canonical() ? suffix : sp.automaton()->act(l.state, suffix);
  // Type equality makes the image valid under dst; keep the check as a guard.
  if (!sp.valid_address(dst.descend(out)))
    fail("internal-invariant", "similarity image invalid under " + dst.str());
  return out;
}

Label compose_labels(const Space& sp, Label l1, Label l2) {
  l1 = normalize_label(sp, l1);
  l2 = normalize_label(sp, l2);
  if (l1.canonical() && l2.canonical()) return Label::can();
  return Label::st(sp.automaton()->product(l1.state, l2.state));
}

Label invert_label(const Space& sp, Label l) {
  l = normalize_label(sp, l);
  if (l.canonical()) return Label::can();
  return Label::st(sp.automaton()->inverse(l.state));
}

std::pair<int, Label> restrict_label(const Space& sp, const Ball& src,
                                     const Ball& dst, Label l, int i) {
  l = normalize_label(sp, l);
  int a = sp.arity(sp.symbol_at(src));
  if (i < 0 || i >= a) fail("invalid-address", "child index out of range");
  if (l.canonical()) return {i, Label::can()};
  const auto* aut = sp.automaton();
  (void)dst;
  return {aut->perm(l.state, i), Label::st(aut->section(l.state, i))};
}

bool label_trivial(const Space& sp, Label l) {
  if (l.canonical()) return true;
  return sp.decorated() && l.state == sp.automaton()->identity();
}

}  // namespace cssg
