#pragma once

#include <array>

namespace zetastar {

/// Truncated asymptotic expansion in inverse powers of the summation variable:
///
///   f(m) ~ sum_sigma  coeff(sigma) * m^(-sigma),   sigma in [kMinPow, kMaxPow].
///
/// These expansions close the tails of the nested monotone sums evaluated by
/// the series engine: every suffix sum sum_{u>=m} u^(-sigma) has an
/// Euler-Maclaurin expansion in inverse powers of m, so the whole dynamic
/// programme stays inside this coefficient algebra.  Powers above kMaxPow are
/// dropped; at the switch points used by the engine (m >= 512) their
/// contribution is far below double precision.
class TailSeries {
 public:
  static constexpr int kMinPow = -1;
  static constexpr int kMaxPow = 26;

  double coeff(int pow) const {
    if (pow < kMinPow || pow > kMaxPow) return 0.0;
    return c_[pow - kMinPow];
  }

  void add(int pow, double v) {
    if (pow >= kMinPow && pow <= kMaxPow) c_[pow - kMinPow] += v;
  }

  /// sum_sigma coeff(sigma) * x^(-sigma)
  double eval(double x) const;

  /// Smallest power with a nonzero coefficient; kMaxPow+1 if none.
  int lead_power() const;

  bool zero() const { return lead_power() > kMaxPow; }

  /// Multiply by m^(-k): shift every power up by k.
  TailSeries shifted(int k) const;

  TailSeries& operator+=(const TailSeries& o);
  TailSeries& operator*=(double s);
  friend TailSeries operator*(const TailSeries& a, const TailSeries& b);

 private:
  std::array<double, kMaxPow - kMinPow + 1> c_{};
};

/// Euler-Maclaurin expansion of the zeta tail sum_{u>=m} u^(-sigma).
/// Requires sigma >= 2; sigma beyond kMaxPow+1 yields the zero series.
TailSeries zeta_tail_from(int sigma);

/// Expansion of sum_{u>=m} f(u) for a series f decaying at least like m^-2.
/// Throws DomainError when f has mass at powers below 2.
TailSeries suffix_sum(const TailSeries& f);

/// exp(-L) for a series L with no constant term (lead power >= 1).
TailSeries exp_of_negated(const TailSeries& L);

}  // namespace zetastar
