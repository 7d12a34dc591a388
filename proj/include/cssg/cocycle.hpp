// The zipper cocycle.
//
// The group acts on classes [f, B] of locally-determined embeddings f of a
// ball B into the space, two pairs being identified when they differ by a
// similarity between their base balls.  Z is the set of inclusion classes of
// proper balls; b(g) = indicator(gZ) - indicator(Z) is a cocycle for the
// permutation action, and its support is computed exactly from the maximal
// partitions of g and g^-1: the classes in Z \ gZ are the inclusions of balls
// properly containing a maximal region of g^-1, and gZ \ Z consists of the
// restrictions of g to balls properly containing a maximal region of g.
#pragma once

#include <map>

#include "cssg/element.hpp"

namespace cssg {

// Canonical representative of a class [f, B]: the base is the breadth-first
// leftmost proper ball of B's type class, the embedding is transported there
// and reduced (decorated structures minimise over the finitely many
// transports in state order).
struct EmbeddingClass {
  Ball base;
  std::vector<Region> regions;  // sources partition `base`; targets disjoint

  bool operator==(const EmbeddingClass& o) const {
    return base == o.base && regions == o.regions;
  }
  bool operator<(const EmbeddingClass& o) const {
    if (base != o.base) return base < o.base;
    return regions < o.regions;
  }
};

// Integer combination of classes; zero coefficients are never stored.
using CocycleVector = std::map<EmbeddingClass, long long>;

Ball canonical_base_ball(const Space& sp, int type_class);

// Canonicalize [base, embedding].  The embedding's sources must partition
// `base`; targets must be pairwise disjoint proper balls.
EmbeddingClass class_canonicalize(const SpacePtr& sp, const Ball& base,
                                  std::vector<Region> regions);

EmbeddingClass inclusion_class(const SpacePtr& sp, const Ball& b);

// Balls (excluding the root) properly containing a maximal region of g
// (plus side) and of g^-1 (minus side), each sorted in ball order.
std::pair<std::vector<Ball>, std::vector<Ball>> zipper_sets(const Element& g);

// b(g): +1 on the restriction class of g at each plus ball, -1 on the
// inclusion class of each minus ball.
CocycleVector cocycle_vector(const Element& g);

// |gZ \ Z| + |Z \ gZ|; the proof's bijections guarantee no cancellation, so
// this equals the plus/minus counts directly.
long long cocycle_norm_sq(const Element& g);

// The permutation action on vectors: [f, B] -> [g . f, B], linearly.
CocycleVector pi_apply(const Element& g, const CocycleVector& v);

CocycleVector vec_add(const CocycleVector& a, const CocycleVector& b);

// Exact check of b(gh) = pi(g) b(h) + b(g).
bool verify_cocycle_identity(const Element& g, const Element& h);

// Restriction of a vector to the orbit whose base balls share `b`'s type.
CocycleVector project_orbit(const Space& sp, const CocycleVector& v, const Ball& b);

// n distinct classes in the orbit of [incl_B, B]: a descending chain of
// type-equal subballs when B is infinite, pairwise disjoint type-equal balls
// when B is finite.  Errors: "orbit-exhausted" when the space cannot supply
// them.
std::vector<EmbeddingClass> orbit_infinite_witness(const SpacePtr& sp, const Ball& b,
                                                   int n);

}  // namespace cssg
