#include "cssg/batch.hpp"

#include <algorithm>
#include <functional>

#include "cssg/cocycle.hpp"
#include "cssg/random.hpp"

namespace cssg {

namespace {

template <typename Fn>
void run_indexed(int n, ExecMode mode, const Fn& fn) {
#ifdef _OPENMP
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
#endif
  (void)mode;
  for (int i = 0; i < n; ++i) fn(i);
}

// Collects per-index verdicts, then aggregates in index order so the report
// does not depend on scheduling.
BatchReport gather(int n, ExecMode mode,
                   const std::function<std::string(int)>& item) {
  std::vector<std::string> verdicts(n);
  run_indexed(n, mode, [&](int i) { verdicts[i] = item(i); });
  BatchReport rep;
  rep.samples = n;
  for (int i = 0; i < n; ++i) {
    if (verdicts[i].empty()) continue;
    rep.failures++;
    if (rep.notes.size() < 20)
      rep.notes.push_back("item " + std::to_string(i) + ": " + verdicts[i]);
  }
  return rep;
}

}  // namespace

BatchReport fuzz_group_laws(const SpacePtr& sp, int n, std::uint64_t seed,
                            ExecMode mode) {
  return gather(n, mode, [&](int i) -> std::string {
    Rng rng(mix_seed(seed, i));
    Element g = random_element(sp, rng);
    Element h = random_element(sp, rng);
    Element k = random_element(sp, rng);
    if (!equals(compose(compose(g, h), k), compose(g, compose(h, k))))
      return "associativity failed";
    if (!is_identity(compose(g, inverse(g))) || !is_identity(compose(inverse(g), g)))
      return "inverse law failed";
    Element e = identity(sp);
    if (!equals(compose(g, e), g) || !equals(compose(e, g), g))
      return "identity law failed";
    return {};
  });
}

BatchReport normal_form_batch(const SpacePtr& sp, int n, std::uint64_t seed,
                              ExecMode mode) {
  return gather(n, mode, [&](int i) -> std::string {
    Rng rng(mix_seed(seed, i));
    Element g = random_element(sp, rng);
    Element r = g.reduced() ? g : reduce(g);
    // random refinement: split a random subset of regions into children,
    // possibly twice
    Element fine = r;
    for (int pass = 0; pass < 1 + rng.below(2); ++pass) {
      std::vector<Ball> sources;
      for (const auto& reg : fine.regions()) {
        if (!sp->terminal(sp->symbol_at(reg.src)) && rng.coin())
          for (const auto& ch : child_cells(*sp, reg.src)) sources.push_back(ch);
        else
          sources.push_back(reg.src);
      }
      fine = Element(sp, split_regions_to(fine, sources), false);
    }
    if (!equals(reduce(fine), r)) return "refined element reduced differently";
    Element rr = reduce(r);
    if (!(rr.regions() == r.regions())) return "reduce is not idempotent";
    return {};
  });
}

BatchReport cocycle_identity_batch(const SpacePtr& sp, int n, std::uint64_t seed,
                                   ExecMode mode) {
  return gather(n, mode, [&](int i) -> std::string {
    Rng rng(mix_seed(seed, i));
    Element g = random_element(sp, rng);
    Element h = random_element(sp, rng);
    if (!verify_cocycle_identity(g, h)) return "cocycle identity failed";
    return {};
  });
}

}  // namespace cssg
