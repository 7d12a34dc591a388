// Compact ultrametric spaces presented as finitely-branching rooted trees.
//
// A presentation lists symbols, the ordered child sequence of each symbol, and
// a root symbol.  Ends of the tree are the points of the space; balls are tree
// vertices.  Terminal symbols (empty child sequence) present singleton ends: a
// terminal vertex is a one-point ball and has no addressable children.
// Distances only ever matter through longest-common-prefix exponents, so the
// metric base never appears.
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "cssg/base.hpp"

namespace cssg {

class GroupAutomaton;

struct SpacePresentation {
  std::vector<std::string> symbols;           // names, in declaration order
  std::vector<std::vector<int>> children;     // per symbol, child symbol ids
  int root = 0;
  std::string name;                           // fixture stem, used by file IO
};

class Space {
 public:
  explicit Space(SpacePresentation pres,
                 std::shared_ptr<const GroupAutomaton> autom = nullptr);

  int num_symbols() const { return (int)pres_.symbols.size(); }
  const std::string& symbol_name(int s) const { return pres_.symbols[s]; }
  const std::vector<int>& children_of(int s) const { return pres_.children[s]; }
  int arity(int s) const { return (int)pres_.children[s].size(); }
  bool terminal(int s) const { return pres_.children[s].empty(); }
  int root_symbol() const { return pres_.root; }
  const std::string& name() const { return pres_.name; }

  // Decoration: present iff the similarity structure is automaton-labelled.
  const GroupAutomaton* automaton() const { return autom_.get(); }
  bool decorated() const { return autom_ != nullptr; }

  // Least-fixpoint "has finitely many ends": terminals are finite, a symbol is
  // finite iff every child is.
  bool finite_type(int s) const { return finite_[s]; }

  // Type classes: the congruence grown from the discrete partition by merging
  // symbols whose child sequences are position-wise equivalent, iterated to a
  // fixpoint.  Two balls admit the canonical order-preserving similarity iff
  // their symbols share a class (for subshift presentations this is follower-
  // set equality).
  int type_class(int s) const { return cls_[s]; }
  int num_type_classes() const { return num_cls_; }

  // Symbol at a valid address; error "invalid-address" otherwise.
  int symbol_at(const Ball& b) const;
  bool valid_address(const Ball& b) const;

  bool ball_finite(const Ball& b) const { return finite_[symbol_at(b)]; }
  int ball_class(const Ball& b) const { return cls_[symbol_at(b)]; }

  // Number of proper balls strictly containing b: len - 1.  Root rejected.
  int ball_depth(const Ball& b) const;

  // All depth-one addresses.  Error "root-terminal" if the root is terminal.
  std::vector<Ball> minimal_ball_partition() const;

  // Longest-common-prefix exponent for incomparable balls; nullopt when one
  // contains the other (distance zero between nested balls' closures).
  static std::optional<int> distance_exponent(const Ball& a, const Ball& b);

  // Symbols reachable from s through child edges, including s itself.
  const std::vector<bool>& reachable_from(int s) const { return reach_[s]; }
  // Symbols occurring at proper addresses (children of the root onward).
  const std::vector<bool>& occurring() const { return occurring_; }

 private:
  void compute_classes();
  void compute_finite();
  void compute_reach();

  SpacePresentation pres_;
  std::shared_ptr<const GroupAutomaton> autom_;
  std::vector<bool> finite_;
  std::vector<int> cls_;
  int num_cls_ = 0;
  std::vector<std::vector<bool>> reach_;
  std::vector<bool> occurring_;
};

using SpacePtr = std::shared_ptr<const Space>;

// ---- Partitions of a ball into pairwise-disjoint covering subballs ----

// Checks that `cells` is a partition of the ball `within`: every cell extends
// `within`, no cell is a prefix of another, and the cells cover every end
// (recursive frontier completeness).  Errors: "not-a-partition".
void validate_partition(const Space& sp, const std::vector<Ball>& cells,
                        const Ball& within = Ball());
bool is_partition(const Space& sp, const std::vector<Ball>& cells,
                  const Ball& within = Ball());

// Coarsest common refinement of two partitions of the same ball.
std::vector<Ball> refine(const Space& sp, const std::vector<Ball>& a,
                         const std::vector<Ball>& b);

// Cells of `within` minus the pairwise-disjoint balls `holes` (each inside
// `within`): the maximal balls of the complement, in ball order.  Empty result
// iff the holes cover `within`.
std::vector<Ball> complement_cells(const Space& sp, const Ball& within,
                                   const std::vector<Ball>& holes);

// Children cells of a non-terminal ball.
std::vector<Ball> child_cells(const Space& sp, const Ball& b);

// Breadth-first leftmost ball satisfying `pred`, searching the subtree under
// `within` (inclusive), skipping subtrees of `avoid` balls entirely and never
// descending past `depth_cap` indices below `within`.  nullopt if none.
std::optional<Ball> bfs_find(const Space& sp, const Ball& within,
                             const std::function<bool(const Ball&)>& pred,
                             const std::vector<Ball>& avoid = {},
                             int depth_cap = -1);

// Breadth-first leftmost ball of the given type class under `within`
// (inclusive unless require_strict), disjoint from `avoid`.
std::optional<Ball> find_typed_ball(const Space& sp, const Ball& within,
                                    int type_class,
                                    const std::vector<Ball>& avoid = {},
                                    bool require_strict = false,
                                    int depth_cap = -1);

// Convenience fixture: the V_{d,r} tree, one d-ary symbol under a root with r
// children.
SpacePresentation make_vdr(int d, int r);

}  // namespace cssg
