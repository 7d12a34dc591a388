#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cssg/batch.hpp"
#include "oracles.hpp"

using namespace cssg;

// The parallel kernels must be drop-in replacements for the serial reference:
// identical sample counts, identical failures, identical notes, regardless of
// scheduling. Per-sample RNG streams are derived from (seed, index), so the
// reports have no legitimate reason to differ.

namespace {

void check_match(const BatchReport& a, const BatchReport& b) {
  CHECK(a.samples == b.samples);
  CHECK(a.failures == b.failures);
  CHECK(a.notes == b.notes);
}

}  // namespace

TEST_CASE("group-law fuzzing agrees across execution modes") {
  for (const char* name : {"binary", "golden-mean", "qaut", "houghton-H2"}) {
    CAPTURE(name);
    auto sp = orc::space(name);
    auto serial = fuzz_group_laws(sp, 200, 11, ExecMode::Serial);
    auto parallel = fuzz_group_laws(sp, 200, 11, ExecMode::Parallel);
    CHECK(serial.samples == 200);
    CHECK(serial.pass());
    check_match(serial, parallel);
  }
}

TEST_CASE("normal-form batch agrees across execution modes") {
  for (const char* name : {"binary", "golden-mean", "qaut", "houghton-H2"}) {
    CAPTURE(name);
    auto sp = orc::space(name);
    auto serial = normal_form_batch(sp, 200, 12, ExecMode::Serial);
    auto parallel = normal_form_batch(sp, 200, 12, ExecMode::Parallel);
    CHECK(serial.samples == 200);
    CHECK(serial.pass());
    check_match(serial, parallel);
  }
}

TEST_CASE("cocycle identity batch agrees across execution modes") {
  for (const char* name : {"binary", "golden-mean", "qaut", "houghton-H2"}) {
    CAPTURE(name);
    auto sp = orc::space(name);
    auto serial = cocycle_identity_batch(sp, 200, 13, ExecMode::Serial);
    auto parallel = cocycle_identity_batch(sp, 200, 13, ExecMode::Parallel);
    CHECK(serial.samples == 200);
    CHECK(serial.pass());
    check_match(serial, parallel);
  }
}

TEST_CASE("reports depend on the seed, not the mode") {
  auto sp = orc::space("binary");
  auto a = fuzz_group_laws(sp, 50, 1, ExecMode::Parallel);
  auto b = fuzz_group_laws(sp, 50, 1, ExecMode::Parallel);
  check_match(a, b);
}
