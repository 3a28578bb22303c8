#include <doctest.h>

#include <cmath>

#include "zetastar/errors.hpp"
#include "zetastar/kahan.hpp"
#include "zetastar/tail_series.hpp"

using namespace zetastar;

namespace {

// direct tail sum_{u=m}^{huge} u^-sigma
double direct_tail(int sigma, int m) {
  KahanAccumulator acc;
  for (int u = 4'000'000; u >= m; --u) acc.add(std::pow(static_cast<double>(u), -sigma));
  return acc;
}

}  // namespace

TEST_CASE("zeta tail expansion matches direct summation") {
  // sigma = 2 needs the analytic remainder of the direct sum itself
  const double direct2 = direct_tail(2, 32) + 1.0 / 4'000'000.5;
  CHECK(std::fabs(zeta_tail_from(2).eval(32) - direct2) < 1e-12);
  CHECK(std::fabs(zeta_tail_from(3).eval(32) - direct_tail(3, 32)) < 1e-13);
  CHECK(std::fabs(zeta_tail_from(5).eval(20) - direct_tail(5, 20)) < 1e-14);
}

TEST_CASE("suffix_sum composes tails") {
  TailSeries f;
  f.add(3, 1.0);
  f.add(5, 2.0);
  const TailSeries F = suffix_sum(f);
  const double expect = direct_tail(3, 50) + 2.0 * direct_tail(5, 50);
  CHECK(std::fabs(F.eval(50) - expect) < 1e-13);
}

TEST_CASE("suffix_sum rejects slowly decaying series") {
  TailSeries f;
  f.add(1, 1.0);
  CHECK_THROWS_AS(suffix_sum(f), DomainError);
}

TEST_CASE("exp_of_negated") {
  TailSeries L;
  L.add(1, 0.5);
  const TailSeries E = exp_of_negated(L);
  CHECK(std::fabs(E.eval(100.0) - std::exp(-0.005)) < 1e-15);
  CHECK(std::fabs(E.eval(7.0) - std::exp(-0.5 / 7.0)) < 1e-12);
}

TEST_CASE("series algebra") {
  TailSeries a, b;
  a.add(2, 1.0);
  b.add(-1, 3.0);  // 3m
  const TailSeries c = a * b;  // 3/m
  CHECK(c.coeff(1) == doctest::Approx(3.0));
  CHECK(a.shifted(4).coeff(6) == doctest::Approx(1.0));
  CHECK(a.lead_power() == 2);
  CHECK(TailSeries{}.zero());
}
