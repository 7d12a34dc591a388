// Compares the serial reference implementation of the batch kernels against
// the OpenMP path on each fixture space.  Usage: cssg_bench [N]  (default 2000
// samples per kernel).
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "cssg/batch.hpp"
#include "cssg/io.hpp"

using namespace cssg;

namespace {

double run_timed(const std::function<BatchReport(ExecMode)>& kernel, ExecMode mode,
                 long long* failures) {
  auto t0 = std::chrono::steady_clock::now();
  BatchReport r = kernel(mode);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  *failures += r.failures;
  return secs;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 2000;
  if (n <= 0) {
    std::fprintf(stderr, "usage: %s [samples-per-kernel]\n", argv[0]);
    return 2;
  }

  const std::vector<std::string> spaces{"binary", "golden-mean", "qaut",
                                        "houghton-H2"};
  struct Kernel {
    const char* name;
    BatchReport (*fn)(const SpacePtr&, int, std::uint64_t, ExecMode);
  };
  const std::vector<Kernel> kernels{{"group-laws", fuzz_group_laws},
                                    {"normal-form", normal_form_batch},
                                    {"cocycle-identity", cocycle_identity_batch}};

  std::printf("%d samples per kernel per space\n\n", n);
  std::printf("%-18s %-12s %10s %10s %8s\n", "kernel", "space", "serial",
              "parallel", "speedup");
  long long failures = 0;
  for (const auto& k : kernels) {
    for (const auto& name : spaces) {
      SpacePtr sp = load_space(std::string(FIXTURE_DIR) + "/" + name + ".json");
      auto kernel = [&](ExecMode m) { return k.fn(sp, n, 2026, m); };
      double ts = run_timed(kernel, ExecMode::Serial, &failures);
      double tp = run_timed(kernel, ExecMode::Parallel, &failures);
      std::printf("%-18s %-12s %9.3fs %9.3fs %7.2fx\n", k.name, name.c_str(), ts,
                  tp, ts / tp);
    }
  }
  if (failures) {
    std::printf("\n%lld kernel failures (!)\n", failures);
    return 1;
  }
  return 0;
}
