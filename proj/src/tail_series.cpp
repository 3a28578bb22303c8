#include "zetastar/tail_series.hpp"

#include <cmath>

#include "zetastar/errors.hpp"

namespace zetastar {

double TailSeries::eval(double x) const {
  // Powers ascend from kMinPow = -1 (an m^{+1} term) upward.
  double result = coeff(-1) * x;
  double p = 1.0;
  const double inv = 1.0 / x;
  for (int pow = 0; pow <= kMaxPow; ++pow) {
    result += coeff(pow) * p;
    p *= inv;
  }
  return result;
}

int TailSeries::lead_power() const {
  for (int pow = kMinPow; pow <= kMaxPow; ++pow)
    if (c_[pow - kMinPow] != 0.0) return pow;
  return kMaxPow + 1;
}

TailSeries TailSeries::shifted(int k) const {
  TailSeries out;
  for (int pow = kMinPow; pow <= kMaxPow; ++pow) out.add(pow + k, coeff(pow));
  return out;
}

TailSeries& TailSeries::operator+=(const TailSeries& o) {
  for (int i = 0; i < static_cast<int>(c_.size()); ++i) c_[i] += o.c_[i];
  return *this;
}

TailSeries& TailSeries::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

TailSeries operator*(const TailSeries& a, const TailSeries& b) {
  TailSeries out;
  for (int pa = TailSeries::kMinPow; pa <= TailSeries::kMaxPow; ++pa) {
    const double ca = a.coeff(pa);
    if (ca == 0.0) continue;
    for (int pb = TailSeries::kMinPow; pb <= TailSeries::kMaxPow; ++pb) {
      const double cb = b.coeff(pb);
      if (cb == 0.0) continue;
      out.add(pa + pb, ca * cb);
    }
  }
  return out;
}

TailSeries zeta_tail_from(int sigma) {
  if (sigma < 2) throw DomainError("zeta_tail_from: divergent tail (sigma < 2)");
  TailSeries s;
  if (sigma > TailSeries::kMaxPow + 1) return s;
  const double a = sigma;
  // sum_{u>=m} u^-a = m^{1-a}/(a-1) + m^-a/2 + B2/2! a m^{-a-1}
  //                   - B4/4! a(a+1)(a+2) m^{-a-3} + ...
  s.add(sigma - 1, 1.0 / (a - 1.0));
  s.add(sigma, 0.5);
  s.add(sigma + 1, a / 12.0);
  s.add(sigma + 3, -a * (a + 1) * (a + 2) / 720.0);
  s.add(sigma + 5, a * (a + 1) * (a + 2) * (a + 3) * (a + 4) / 30240.0);
  s.add(sigma + 7, -a * (a + 1) * (a + 2) * (a + 3) * (a + 4) * (a + 5) * (a + 6) / 1209600.0);
  return s;
}

TailSeries suffix_sum(const TailSeries& f) {
  TailSeries out;
  for (int pow = TailSeries::kMinPow; pow <= TailSeries::kMaxPow; ++pow) {
    const double c = f.coeff(pow);
    if (c == 0.0) continue;
    if (pow < 2) throw DomainError("suffix_sum: series does not decay fast enough");
    TailSeries t = zeta_tail_from(pow);
    t *= c;
    out += t;
  }
  return out;
}

TailSeries exp_of_negated(const TailSeries& L) {
  if (!L.zero() && L.lead_power() < 1)
    throw DomainError("exp_of_negated: series has a constant or growing term");
  TailSeries result;
  result.add(0, 1.0);
  TailSeries term;
  term.add(0, 1.0);
  for (int i = 1; i <= TailSeries::kMaxPow + 1; ++i) {
    term = term * L;
    term *= -1.0 / i;
    if (term.zero()) break;
    result += term;
  }
  return result;
}

}  // namespace zetastar
