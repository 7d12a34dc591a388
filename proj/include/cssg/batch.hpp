// Batch verification kernels.  Every kernel runs either serially or with an
// OpenMP parallel loop; per-item seeds are derived from (seed, index), so
// the two modes produce identical reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cssg/element.hpp"

namespace cssg {

enum class ExecMode { Serial, Parallel };

struct BatchReport {
  long long samples = 0;
  long long failures = 0;
  std::vector<std::string> notes;  // one line per failure, capped

  bool pass() const { return failures == 0; }
};

// n random triples: associativity, two-sided inverses, two-sided identity.
BatchReport fuzz_group_laws(const SpacePtr& sp, int n, std::uint64_t seed,
                            ExecMode mode = ExecMode::Serial);

// n random elements: reducing a random refinement reproduces the reduced
// form, and reduce is idempotent.
BatchReport normal_form_batch(const SpacePtr& sp, int n, std::uint64_t seed,
                              ExecMode mode = ExecMode::Serial);

// n random pairs: the cocycle identity b(gh) = pi(g) b(h) + b(g), exactly.
BatchReport cocycle_identity_batch(const SpacePtr& sp, int n, std::uint64_t seed,
                                   ExecMode mode = ExecMode::Serial);

}  // namespace cssg
