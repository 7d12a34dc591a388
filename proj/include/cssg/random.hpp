// Seeded randomness: every fuzz harness and probe draws from an explicit
// 64-bit seed so runs are reproducible bit-for-bit.
#pragma once

#include <cstdint>
#include <random>

#include "cssg/element.hpp"

namespace cssg {

// splitmix64 scramble; derives independent streams from (seed, index) so
// batch items can be generated out of order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }
  // Uniform in [0, n); n >= 1.
  int below(int n);
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 gen_;
};

// Random proper ball: a walk down from `within` of length 1..max_steps,
// stopping early at terminal vertices.
Ball random_ball(const Space& sp, const Ball& within, Rng& rng,
                 int max_steps = 5);

// Random group element: a product of `moves` primitive moves (typed-ball
// swaps, displacement moves b -> strict subball, and state twists on
// decorated structures).  Moves that find no room are skipped.  `depth`
// bounds the random walks picking the balls each move touches.
Element random_element(const SpacePtr& sp, Rng& rng, int moves = 4,
                       int depth = 5);

// Random element supported inside the union of `cells` (identity outside).
Element random_element_in(const SpacePtr& sp, const std::vector<Ball>& cells,
                          Rng& rng, int moves = 3);

// Random square 0/1 matrix of dimension 2..max_dim, irreducible by
// construction (contains the full cycle) and with at least one row summing
// to 2 or more.
std::vector<std::vector<int>> random_irreducible_matrix(Rng& rng, int max_dim);

}  // namespace cssg
