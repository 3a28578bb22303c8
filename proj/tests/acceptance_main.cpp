// Acceptance suite: runs the verification criteria at their pinned
// tolerances and prints one PASS/FAIL line per criterion (plus the
// underlying checks).  Exit status 0 iff every executed criterion passes.
// An optional argument 1..16 restricts the run to a single criterion.

#include <cstdio>
#include <cstdlib>
#include <map>

#include "zetastar/verify.hpp"

int main(int argc, char** argv) {
  int filter = 0;
  if (argc > 1) filter = std::atoi(argv[1]);
  if (filter < 0 || filter > 16) {
    std::fprintf(stderr, "usage: %s [criterion 1..16]\n", argv[0]);
    return 2;
  }

  const zetastar::VerifyReport report = zetastar::run_verification({}, filter);

  std::map<int, std::pair<int, int>> per_criterion;  // criterion -> {passed, total}
  for (const auto& c : report.checks) {
    auto& [passed, total] = per_criterion[c.criterion];
    passed += c.pass ? 1 : 0;
    total += 1;
  }

  for (const auto& c : report.checks) {
    std::printf("  [%2d] %-4s %-62s expected %-22.15g computed %-22.15g residual %.3e\n",
                c.criterion, c.pass ? "ok" : "FAIL", c.name.c_str(), c.expected, c.computed,
                c.residual);
  }
  std::printf("\n");

  int failed_criteria = 0;
  for (const auto& [criterion, counts] : per_criterion) {
    const bool pass = counts.first == counts.second;
    if (!pass) ++failed_criteria;
    std::printf("criterion %2d: %s (%d/%d checks)\n", criterion, pass ? "PASS" : "FAIL",
                counts.first, counts.second);
  }
  std::printf("acceptance: %zu/%zu criteria passed\n",
              per_criterion.size() - static_cast<std::size_t>(failed_criteria),
              per_criterion.size());
  return failed_criteria == 0 ? 0 : 1;
}
