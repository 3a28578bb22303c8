#pragma once

#include <string>
#include <vector>

#include "zetastar/series.hpp"

namespace zetastar {

struct VerifyCheck {
  int criterion = 0;
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

/// Runs the identity suite (every acceptance criterion) with pinned
/// tolerances.  Deterministic: identical inputs produce identical reports.
/// criterion_filter = 0 runs everything; 1..16 runs a single criterion.
VerifyReport run_verification(const TruncationParams& base = {}, int criterion_filter = 0);

/// One TSV row per check: name, expected, computed, residual, PASS/FAIL.
std::string to_tsv(const VerifyReport& report);

}  // namespace zetastar
