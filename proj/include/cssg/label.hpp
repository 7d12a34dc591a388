// Similarity labels: which similarity B1 -> B2 a region carries.
//
// Canonical labels name the unique order-preserving similarity between balls
// whose symbols share a type class (it is the identity on relative
// addresses).  Decorated labels name an automaton state on a uniform space;
// there the canonical label is identified with the identity state.
#pragma once

#include "cssg/space.hpp"

namespace cssg {

struct Label {
  int state = -1;  // -1 = canonical, otherwise automaton state id

  bool canonical() const { return state < 0; }
  static Label can() { return Label{}; }
  static Label st(int q) { return Label{q}; }
  bool operator==(const Label& o) const { return state == o.state; }
  bool operator!=(const Label& o) const { return state != o.state; }
  bool operator<(const Label& o) const { return state < o.state; }
};

// True iff some similarity b1 -> b2 exists: the symbols share a type class.
// Both balls must be proper (the whole space is not a ball).
bool sim_nonempty(const Space& sp, const Ball& b1, const Ball& b2);

// On a decorated space the canonical label is stored as the identity state;
// on an undecorated space a decorated label is an error.
Label normalize_label(const Space& sp, Label l);

// Checks the label names an element of Sim(src, dst): type classes match and,
// when decorated, dst = src's sibling-class ... (the label itself fixes no
// target beyond type equality).  Errors: "label-mismatch", "no-similarity".
void validate_label(const Space& sp, const Ball& src, const Ball& dst, Label l);

// Image of the relative address `suffix` (valid under src's symbol) under the
// labelled similarity.  Canonical: the word itself.  Decorated: automaton
// action.  Errors: "invalid-address" if the suffix is not valid under src.
std::vector<int> apply_sim(const Space& sp, const Ball& src, const Ball& dst,
                           Label l, const std::vector<int>& suffix);

// l1 after l2 (function composition, l2 applied first).
Label compose_labels(const Space& sp, Label l1, Label l2);
Label invert_label(const Space& sp, Label l);

// Restriction of a labelled similarity src -> dst to the child `i` of src:
// returns the image child index under dst and the child's label.
std::pair<int, Label> restrict_label(const Space& sp, const Ball& src,
                                     const Ball& dst, Label l, int i);

// Trivial label test: does the label act as the identity on suffixes?
bool label_trivial(const Space& sp, Label l);

}  // namespace cssg
