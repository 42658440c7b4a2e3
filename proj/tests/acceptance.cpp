// Acceptance run: one line per criterion, exit status 1 when any fails.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "hilbloc/acceptance.hpp"

int main(int argc, char** argv) {
  hilbloc::AcceptanceOptions opt;
  if (const char* env = std::getenv("HILBLOC_SEED")) opt.seed = std::strtoull(env, nullptr, 10);
  for (int k = 1; k < argc; ++k) {
    std::string a = argv[k];
    if (a == "--seed" && k + 1 < argc) {
      opt.seed = std::strtoull(argv[++k], nullptr, 10);
    } else if (a == "--only" && k + 1 < argc) {
      opt.only.insert(std::atoi(argv[++k]));
    } else {
      std::fprintf(stderr, "usage: acceptance [--seed N] [--only ID]...\n");
      return 2;
    }
  }
  opt.on_result = [](const hilbloc::CriterionResult& r) {
    std::printf("criterion %2d %-40s %s  %.1fs\n", r.id, r.title.c_str(), r.pass ? "PASS" : "FAIL", r.seconds);
    for (auto& [k, v] : r.facts) std::printf("    %s = %s\n", k.c_str(), v.c_str());
    for (auto& p : r.problems) std::printf("    ! %s\n", p.c_str());
    std::fflush(stdout);
  };
  auto rep = hilbloc::run_acceptance(opt);
  int failed = 0;
  for (auto& r : rep.results) failed += !r.pass;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(rep.results.size()) - failed, rep.results.size());
  return failed ? 1 : 0;
}
