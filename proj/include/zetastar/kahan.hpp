#pragma once

namespace zetastar {

/// Compensated accumulator: tracks the rounding error of each addition and
/// feeds it back into the next one.
struct KahanAccumulator {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double value) {
    const double y = value - compensation;
    const double t = sum + y;
    compensation = (t - sum) - y;
    sum = t;
  }

  operator double() const { return sum; }
};

}  // namespace zetastar
