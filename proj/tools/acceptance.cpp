#include "linf/acceptance.hpp"

#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  bool all = true;
  linf::acceptance::run_all(seed, [&](const linf::acceptance::CriterionResult& r) {
    std::printf("criterion %2d %s: %s (%s, %.1fs)\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.detail.c_str(),
                r.seconds);
    std::fflush(stdout);
    all = all && r.passed;
  });
  return all ? 0 : 1;
}
