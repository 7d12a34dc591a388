// Transition-matrix spaces, the two-condition branching/reaching check on
// the symbol graph, and randomized probes for the centralizer identities and
// the finite-support subgroup.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cssg/element.hpp"

namespace cssg {

// Square 0/1 matrix; rows list the symbols allowed to follow each symbol.
using TransitionMatrix = std::vector<std::vector<int>>;

void validate_matrix(const TransitionMatrix& m);

// Vertex-shift presentation: a fresh root whose children are all symbols in
// index order, each symbol's children its followers in index order.
// Errors: "bad-presentation" on a malformed matrix, "dead-symbol" on an
// all-zero row.
SpacePtr sft_from_matrix(const TransitionMatrix& m, const std::string& name);

// Strong connectivity of the follower graph.
bool is_irreducible(const TransitionMatrix& m);

// Symbols whose rows carry two or more ones.
std::vector<int> two_followed_symbols(const TransitionMatrix& m);

struct CssStarReport {
  bool splitting = true;  // every occurring infinite symbol reaches a symbol
                          // with two infinite-type children
  bool reaching = true;   // every occurring class is reachable from every
                          // occurring infinite symbol
  std::vector<std::string> witnesses;  // one line per failing symbol / pair
  bool pass() const { return splitting && reaching; }
};

CssStarReport verify_css_star(const SpacePtr& sp);

struct ProbeReport {
  long long samples = 0;
  long long failures = 0;
  std::vector<std::string> notes;  // one line per failure, capped
};

// Commutation identities around the pointwise stabiliser of b: elements
// supported outside b commute with elements supported inside b (positive
// direction), and an element moving material outside b fails to commute with
// a stabiliser swap built on a moved ball out there (negative direction).
ProbeReport centralizer_probe(const SpacePtr& sp, const Ball& b, int samples,
                              std::uint64_t seed);

struct FiniteSupportReport {
  long long samples = 0;
  long long failures = 0;
  bool trivial = false;  // no finite balls: the finite-support subgroup is {1}
  int classes = 0;       // distinct type classes among occurring finite symbols
  std::vector<std::string> notes;
};

// Samples finite-ball transpositions and checks subgroup closure, support
// transport under conjugation, and that distinct finite type classes never
// mix.
FiniteSupportReport finite_support_probe(const SpacePtr& sp, int samples,
                                         std::uint64_t seed);

}  // namespace cssg
