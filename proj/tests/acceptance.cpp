// Integration gate: runs the canonical verification checks and prints one
// pass/fail line per check. With arguments, runs only the named check ids.
// Exit status is the number of failed checks.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "reproduce.hpp"

int main(int argc, char** argv) {
  std::vector<int> which;
  std::uint64_t seed = 20260808ull;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) {
      seed = std::strtoull(argv[++i], nullptr, 10);
    } else {
      which.push_back(std::atoi(arg.c_str()));
    }
  }

  const auto results = qtn::run_acceptance_checks(which, seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] %2d %-32s measured=%-12.5g limit=%-9.3g %6.2fs  %s\n",
                r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.measured,
                r.limit, r.seconds, r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%zu checks run, %d failed\n", results.size(), failed);
  return failed;
}
