// One line per acceptance criterion; exit status is nonzero if any fails.
#include "twobridge/acceptance.hpp"
#include "twobridge/twobridge.hpp"

#include <cstdio>

int main(int argc, char** argv) {
  using namespace twobridge::acceptance;
  Options opt;
  opt.workers = twobridge::default_workers();
  opt.log = &std::cerr;
  if (argc > 1) opt.budget_c = std::atoi(argv[1]);
  bool all = true;
  for (const auto& r : run_all(opt)) {
    std::printf("[%s] criterion %2d %-18s %7.2fs  %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    all = all && r.pass;
  }
  std::printf("%s\n", all ? "all acceptance criteria pass" : "some acceptance criteria FAIL");
  return all ? 0 : 1;
}
