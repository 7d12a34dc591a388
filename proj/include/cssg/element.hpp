// Group elements: finitely many labelled regions matching a source partition
// to a target partition.  The reduced form uses the maximal partition (no
// complete sibling family of regions assembles into a single parent
// similarity), which is unique; equality is structural equality of reduced
// forms.
#pragma once

#include "cssg/label.hpp"

namespace cssg {

struct Region {
  Ball src, dst;
  Label lab;
  bool operator==(const Region& o) const {
    return src == o.src && dst == o.dst && lab == o.lab;
  }
  bool operator<(const Region& o) const {
    if (src != o.src) return src < o.src;
    if (dst != o.dst) return dst < o.dst;
    return lab < o.lab;
  }
};

class Element {
 public:
  Element() = default;
  Element(SpacePtr sp, std::vector<Region> regions, bool reduced)
      : sp_(std::move(sp)), regions_(std::move(regions)), reduced_(reduced) {}

  const SpacePtr& space() const { return sp_; }
  const std::vector<Region>& regions() const { return regions_; }
  bool reduced() const { return reduced_; }
  std::vector<Ball> source_cells() const;
  std::vector<Ball> target_cells() const;

 private:
  SpacePtr sp_;
  std::vector<Region> regions_;
  bool reduced_ = false;
};

// A coset representative for g modulo the pointwise stabiliser of everything
// outside `base`: the reduced restriction of g to the ball `base`.  Two
// elements agree on the coset iff their restrictions coincide.
struct CosetRep {
  Ball base;
  std::vector<Region> regions;  // sources partition `base`, reduced in place
  bool operator==(const CosetRep& o) const {
    return base == o.base && regions == o.regions;
  }
};

Element identity(SpacePtr sp);

// Validates: sources form a partition of X, targets form a partition of X,
// every region label names an existing similarity.  Reduces eagerly.
// Errors: "not-a-partition", "no-similarity", "label-mismatch".
Element from_regions(SpacePtr sp, std::vector<Region> regions);

// Normal form: merge complete sibling families realisable as one parent
// similarity, to a fixpoint.  Idempotent.
Element reduce(const Element& g);

// g . f (f applied first).  Reduced.
Element compose(const Element& g, const Element& f);
Element inverse(const Element& g);
bool equals(const Element& a, const Element& b);
bool is_identity(const Element& g);

// Image ball of `b` under g.  Error "insufficient-depth" when b properly
// contains region boundaries (no auto-splitting), "invalid-address" when b is
// not a ball of the space.
Ball apply(const Element& g, const Ball& b);
std::optional<Ball> try_apply(const Element& g, const Ball& b);

// conjugate(g, h) = h^-1 g h;  commutator(g, h) = g^-1 h^-1 g h.
Element conjugate(const Element& g, const Element& h);
Element commutator(const Element& g, const Element& h);

enum class BallStatus { Fixed, Moved, Mixed };

// Per-ball movement report at the given depth (terminal balls shallower than
// `depth` appear at their own depth): Fixed = pointwise fixed, Moved = image
// disjoint, Mixed = neither resolved at this depth.
std::vector<std::pair<Ball, BallStatus>> support(const Element& g, int depth);

// For undecorated structures only (error "unsupported" otherwise): the moved
// set is clopen and finite iff every region that moves has a finite source.
bool has_finite_support(const Element& g);

// Reduced restriction of g to `base` (a proper ball).
CosetRep restrict_coset(const Element& g, const Ball& base);
bool coset_equals(const CosetRep& a, const CosetRep& b);

// Deterministic splitting helper: the regions of g refined so that every
// source cell lies inside some cell of `sources` (used by tests and builders).
std::vector<Region> split_regions_to(const Element& g, const std::vector<Ball>& sources);

// Merge fixpoint on a bare region list (no partition-of-X requirement, so it
// also reduces embeddings of a single ball).  Result sorted by source.
std::vector<Region> reduce_regions(const Space& sp, std::vector<Region> rs);

// Post-compose a region list with g: each (s -> t, l) becomes
// (s -> g(t), g|_t . l), splitting regions until their targets resolve.
std::vector<Region> map_regions_through(const Element& g, const std::vector<Region>& rs);

}  // namespace cssg
