// Prints one PASS/FAIL line per acceptance criterion, with runtime budgets.
// Exit status is 0 when every criterion passes, apart from the ones named
// with --known-discrepancy (their lines still print FAIL).
#include "pcfdyn/selftest.hpp"

#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <string>

int main(int argc, char** argv) {
  pcfdyn::RunConfig cfg;
  std::set<int> known;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) {
      cfg.threads = std::atoi(argv[++i]);
    } else if (arg == "--seed" && i + 1 < argc) {
      cfg.seed = std::strtoull(argv[++i], nullptr, 10);
    } else if (arg == "--known-discrepancy" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string id;
      while (std::getline(ss, id, ',')) known.insert(std::atoi(id.c_str()));
    } else {
      std::fprintf(stderr, "usage: %s [--threads N] [--seed S] [--known-discrepancy 4,...]\n", argv[0]);
      return 1;
    }
  }

  // Wall-clock budgets in seconds.
  const std::map<int, double> budget{{1, 1.0}, {2, 60.0}, {14, 600.0}};
  const auto rep = pcfdyn::run_selftest(cfg);
  int failures = 0;
  for (const auto& c : rep.criteria) {
    bool pass = c.pass;
    std::string note = c.detail;
    if (auto it = budget.find(c.id); it != budget.end()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "; %.2f s of %.0f s budget", c.seconds, it->second);
      note += buf;
      pass = pass && c.seconds < it->second;
    }
    const bool excused = !pass && known.count(c.id);
    std::printf("criterion %2d: %s  %s  (%s)%s\n", c.id, pass ? "PASS" : "FAIL", c.title.c_str(), note.c_str(),
                excused ? "  [known discrepancy]" : "");
    if (!pass && !excused) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
