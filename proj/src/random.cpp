#include "cssg/random.hpp"

#include <algorithm>

#include "cssg/automaton.hpp"
#include "cssg/builders.hpp"

namespace cssg {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::below(int n) {
  std::uniform_int_distribution<int> d(0, n - 1);
  return d(gen_);
}

Ball random_ball(const Space& sp, const Ball& within, Rng& rng, int max_steps) {
  Ball b = within;
  int steps = 1 + rng.below(max_steps);
  for (int t = 0; t < steps; ++t) {
    int s = sp.symbol_at(b);
    if (sp.terminal(s)) break;
    b = b.child(rng.below(sp.arity(s)));
  }
  return b;
}

namespace {

// One primitive move supported inside `within` (the whole space when root).
// Returns the identity when the draw finds no room.
Element random_move(const SpacePtr& spp, const Ball& within, Rng& rng,
                    int depth) {
  const Space& s = *spp;
  int kinds = s.decorated() ? 3 : 2;
  int kind = rng.below(kinds);
  if (kind == 0) {
    // swap a ball with a disjoint type-compatible partner
    Ball b = random_ball(s, within, rng, depth);
    if (b == within) return identity(spp);
    auto d = find_typed_ball(s, within, s.ball_class(b), {b}, true);
    if (!d) return identity(spp);
    return swap_involution(spp, b, *d);
  }
  if (kind == 1) {
    // displace an infinite ball onto a strict subball of its own type
    Ball b = random_ball(s, within, rng, std::max(1, depth - 2));
    if (s.ball_finite(b)) return identity(spp);
    auto t = find_typed_ball(s, b, s.ball_class(b), {}, true);
    if (!t) return identity(spp);
    std::vector<Constraint> cons{Constraint{b, *t, Label::can()}};
    try {
      if (within.is_root()) return extend_partial(spp, cons);
      return extend_within(spp, {within}, cons);
    } catch (const Error& e) {
      // A drawn displacement can be unextendable (e.g. b exhausts the host
      // through arity-1 steps, leaving no residual material); skip the move.
      if (e.code() == "extension-stuck" || e.code() == "extension-diverged")
        return identity(spp);
      throw;
    }
  }
  // twist: act by a nontrivial automaton state on one ball
  const auto* aut = s.automaton();
  int n = aut->num_states();
  if (n < 2) return identity(spp);
  int q = rng.below(n);
  if (q == aut->identity()) q = (q + 1) % n;
  Ball b = random_ball(s, within, rng, depth);
  std::vector<Region> rs{Region{b, b, Label::st(q)}};
  Label triv = normalize_label(s, Label::can());
  for (const auto& c : complement_cells(s, Ball(), {b}))
    rs.push_back(Region{c, c, triv});
  return from_regions(spp, std::move(rs));
}

}  // namespace

Element random_element(const SpacePtr& sp, Rng& rng, int moves, int depth) {
  Element acc = identity(sp);
  for (int m = 0; m < moves; ++m)
    acc = compose(random_move(sp, Ball(), rng, depth), acc);
  return acc;
}

Element random_element_in(const SpacePtr& sp, const std::vector<Ball>& cells,
                          Rng& rng, int moves) {
  Element acc = identity(sp);
  if (cells.empty()) return acc;
  for (int m = 0; m < moves; ++m) {
    const Ball& host = cells[rng.below((int)cells.size())];
    acc = compose(random_move(sp, host, rng, 5), acc);
  }
  return acc;
}

std::vector<std::vector<int>> random_irreducible_matrix(Rng& rng, int max_dim) {
  int d = 2 + rng.below(std::max(1, max_dim - 1));
  std::vector<std::vector<int>> m(d, std::vector<int>(d, 0));
  for (int i = 0; i < d; ++i) m[i][(i + 1) % d] = 1;  // full cycle
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (rng.below(3) == 0) m[i][j] = 1;
  bool followed = false;
  for (int i = 0; i < d; ++i) {
    int row = 0;
    for (int j = 0; j < d; ++j) row += m[i][j];
    if (row >= 2) followed = true;
  }
  if (!followed) m[0][0] = 1;
  return m;
}

}  // namespace cssg
