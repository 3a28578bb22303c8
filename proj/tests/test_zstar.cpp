#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "zetastar/errors.hpp"
#include "zetastar/index.hpp"
#include "zetastar/zstar.hpp"

using namespace zetastar;

namespace {
constexpr double kZeta2 = 1.6449340668482264;
constexpr double kEx2 = 1.2898681336964529;        // 2 zeta(2) - 2
constexpr double kDplusHalf = 1.2898681336964529;  // 1/2 + 2 (zeta(2) - 5/4)
constexpr double kDplusQuarter = 0.8082276126383771;
constexpr double kDminusQuarter = 1.7715086547545286;

double zs(const Dyadic& z) { return zstar(ZPoint::from_dyadic(z), {}).value; }
}  // namespace

TEST_CASE("ZPoint construction") {
  const ZPoint a = ZPoint::from_double(0.5);
  const ZPoint b = ZPoint::from_rational(1, 2);
  CHECK(DigitStream::lex_compare(a.digits(), b.digits()) == 0);
  REQUIRE(a.exact().has_value());
  CHECK(a.exact()->numerator() == 1);
  CHECK_THROWS_AS(ZPoint::from_double(0.0), DomainError);
  CHECK_THROWS_AS(ZPoint::from_double(1.5), DomainError);
  CHECK_THROWS_AS(ZPoint::from_rational(4, 3), DomainError);
}

TEST_CASE("zstar at the reference points") {
  CHECK(zstar(ZPoint::from_rational(1, 2)).value == doctest::Approx(kZeta2).epsilon(1e-10));
  CHECK(zstar(ZPoint::from_rational(1, 1)).divergent());
  // 1/3 has digits 0101...; the image is (3,{2}^inf)
  CHECK(zstar(ZPoint::from_rational(1, 3)).value == doctest::Approx(kEx2).epsilon(1e-9));
  // 2/3 has digits 1010...; the image is (2,{2}^inf) = ({2}^inf)
  CHECK(zstar(ZPoint::from_rational(2, 3)).value == doctest::Approx(2.0).epsilon(1e-9));
  const Evaluation e = zstar(ZPoint::from_rational(1, 3));
  CHECK(e.converged);
  CHECK(e.err_estimate < 1e-8);
}

TEST_CASE("zstar_via_index at the reference points") {
  CHECK(zstar_via_index(ZPoint::from_rational(1, 2)).value ==
        doctest::Approx(kZeta2).epsilon(1e-12));
  CHECK(zstar_via_index(ZPoint::from_rational(2, 3)).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(zstar_via_index(ZPoint::from_rational(1, 1)).divergent());
  const ZPoint z = ZPoint::from_dyadic(Dyadic::from_parts(3, 4));
  CHECK(std::fabs(zstar_via_index(z).value - zstar(z).value) < 1e-8);
}

TEST_CASE("digit series agrees with index dispatch") {
  for (unsigned n = 1; n <= 8; ++n)
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << n); a += 2) {
      const ZPoint z = ZPoint::from_dyadic(Dyadic::from_parts(a, n));
      const Evaluation s = zstar(z);
      const Evaluation v = zstar_via_index(z);
      CHECK(std::fabs(s.value - v.value) <= s.err_estimate + v.err_estimate + 1e-9);
    }
  for (auto [p, q] : {std::pair{1, 3}, {2, 3}, {1, 5}, {2, 5}}) {
    const ZPoint z = ZPoint::from_rational(p, q);
    CHECK(std::fabs(zstar(z).value - zstar_via_index(z).value) < 1e-8);
  }
}

TEST_CASE("digit series agrees with index dispatch on longer periods") {
  for (std::int64_t q : {5, 6, 7, 9, 10, 11, 12, 13, 15, 17, 20, 21})
    for (std::int64_t p = 1; p < q; ++p) {
      const ZPoint z = ZPoint::from_rational(p, q);
      const Evaluation a = zstar(z);
      const Evaluation b = zstar_via_index(z);
      CHECK(b.converged);
      CHECK(std::fabs(a.value - b.value) <= a.err_estimate + b.err_estimate + 1e-10);
    }
}

TEST_CASE("order reversal: lexicographically smaller index, larger value") {
  std::vector<Dyadic> pts;
  for (std::uint64_t a = 1; a < 64; ++a) pts.push_back(Dyadic::from_parts(a, 6));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Index ix = index_from_digits(DigitStream::from_dyadic(pts[i]));
    const Index iy = index_from_digits(DigitStream::from_dyadic(pts[i + 1]));
    REQUIRE(lex_compare(iy, ix) == Ordering::Less);
    const double vy = zstar_via_index(ZPoint::from_dyadic(pts[i + 1])).value;
    const double vx = zstar_via_index(ZPoint::from_dyadic(pts[i])).value;
    CHECK(vy > vx);
  }
}

TEST_CASE("strict monotonicity on a dyadic grid") {
  double prev = 1.0;
  for (std::uint64_t j = 1; j < 128; ++j) {
    const double v = zs(Dyadic::from_parts(j, 7));
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("right derivative") {
  CHECK(right_derivative(Dyadic(), {}).value == 0.5);  // z = 0
  CHECK(right_derivative(Dyadic::from_parts(1, 1), {}).value ==
        doctest::Approx(kDplusHalf).epsilon(1e-12));
  CHECK(right_derivative(Dyadic::from_parts(1, 2), {}).value ==
        doctest::Approx(kDplusQuarter).epsilon(1e-12));
  CHECK_THROWS_AS(right_derivative(Dyadic::from_parts(1, 0), {}), DomainError);
}

TEST_CASE("left derivative and its divergence set") {
  CHECK(left_derivative(Dyadic::from_parts(1, 2), {}).value ==
        doctest::Approx(kDminusQuarter).epsilon(1e-12));
  CHECK(left_derivative(Dyadic::from_parts(1, 1), {}).divergent());   // 1/2 = 1 - 2^-1
  CHECK(left_derivative(Dyadic::from_parts(3, 2), {}).divergent());   // 3/4
  CHECK(left_derivative(Dyadic::from_parts(7, 3), {}).divergent());   // 7/8
  CHECK(!left_derivative(Dyadic::from_parts(5, 3), {}).divergent());  // 5/8
  CHECK_THROWS_AS(left_derivative(Dyadic(), {}), DomainError);

  // the left derivative exceeds the right one wherever it is finite
  for (unsigned n = 2; n <= 6; ++n)
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << n); a += 2) {
      if (a == (std::uint64_t{1} << n) - 1) continue;  // 1 - 2^-n
      const Dyadic z = Dyadic::from_parts(a, n);
      CHECK(left_derivative(z, {}).value > right_derivative(z, {}).value);
    }
}

TEST_CASE("one-sided derivatives match finite differences") {
  for (const char* text : {"1/2^2", "3/2^3", "5/2^3"}) {
    const Dyadic z = Dyadic::parse(text);
    std::vector<double> right, left;
    for (unsigned q = 14; q <= 20; ++q) {
      const double scale = std::ldexp(1.0, static_cast<int>(q));
      right.push_back((zs(z.plus_pow2(q)) - zs(z)) * scale);
      left.push_back((zs(z) - zs(z.minus_pow2(q))) * scale);
    }
    const double dplus = right_derivative(z, {}).value;
    const double dminus = left_derivative(z, {}).value;
    CHECK(std::fabs(oracles::aitken_limit(right) - dplus) < 1e-3 * std::fabs(dplus));
    CHECK(std::fabs(oracles::aitken_limit(left) - dminus) < 1e-3 * std::fabs(dminus));
  }
}

TEST_CASE("two-sided derivative at non-dyadic rationals") {
  for (auto [p, q] : {std::pair{1, 3}, {2, 3}}) {
    const ZPoint z = ZPoint::from_rational(p, q);
    const DerivativeReport rep = derivative_nondyadic(z);
    // central difference with h = 2^-18
    const std::int64_t den = static_cast<std::int64_t>(q) << 18;
    const std::int64_t num = static_cast<std::int64_t>(p) * (den / q);
    const double plus = zstar(ZPoint::from_rational(num + q, den)).value;
    const double minus = zstar(ZPoint::from_rational(num - q, den)).value;
    const double fd = (plus - minus) * std::ldexp(1.0, 18) / 2.0;
    CHECK(std::fabs(rep.value - fd) < 1e-3 * std::fabs(rep.value));
    CHECK(rep.side == DerivativeSide::TwoSided);
  }
  CHECK_THROWS_AS(derivative_nondyadic(ZPoint::from_rational(1, 2)), HypothesisUnmetError);
}

TEST_CASE("two-sided derivative depth stability at 1/5") {
  TruncationParams loose, tight;
  loose.tol = 1e-6;
  tight.tol = 1e-12;
  const double a = derivative_nondyadic(ZPoint::from_rational(1, 5), loose).value;
  const double b = derivative_nondyadic(ZPoint::from_rational(1, 5), tight).value;
  CHECK(std::fabs(a - b) < 1e-8);
}

TEST_CASE("divergence ratio") {
  // p=1, q=3: (Z*(1/2) - Z*(3/8)) * 8 against direct evaluations
  const double direct = (zs(Dyadic::from_parts(1, 1)) - zs(Dyadic::from_parts(3, 3))) * 8.0;
  CHECK(divergence_ratio(1, 3) == doctest::Approx(direct).epsilon(1e-6));
  // smallest admissible gap stays finite and positive
  const double edge = divergence_ratio(2, 3);
  CHECK(edge > 0.0);
  CHECK(edge < 100.0);
  // strictly increasing in q (spot check)
  CHECK(divergence_ratio(1, 7) > divergence_ratio(1, 6));
  CHECK_THROWS_AS(divergence_ratio(2, 2), DomainError);
}

TEST_CASE("invert_zstar") {
  const ZPoint half = invert_zstar(kZeta2, {}, 30);
  CHECK(std::fabs(half.approx() - 0.5) < std::ldexp(1.0, -20));
  const ZPoint two = invert_zstar(2.0, {}, 48);
  CHECK(std::fabs(zstar(two).value - 2.0) < 1e-6);
  const ZPoint low = invert_zstar(1.0 + 1e-6, {}, 48);
  CHECK(low.approx() < 1e-4);  // long leading zero run
  CHECK_THROWS_AS(invert_zstar(1.0), DomainError);
  CHECK_THROWS_AS(invert_zstar(0.5), DomainError);
}

TEST_CASE("graph samples") {
  const auto rows = graph_samples(3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].z == Dyadic::from_parts(1, 2));
  CHECK(rows[1].z == Dyadic::from_parts(1, 1));
  CHECK(rows[2].z == Dyadic::from_parts(3, 2));
  CHECK(rows[1].value == doctest::Approx(kZeta2).epsilon(1e-9));
  double prev = 1.0;
  for (const auto& r : rows) {
    CHECK(r.value > prev);
    prev = r.value;
  }

  std::ostringstream os;
  write_graph_csv(os, rows);
  const std::string csv = os.str();
  CHECK(csv.rfind("z,zstar\n0.25,", 0) == 0);
  CHECK_THROWS_AS(graph_samples(1), DomainError);
}

TEST_CASE("right slope at the origin") {
  const double v = zstar(ZPoint::from_double(std::ldexp(1.0, -20))).value;
  CHECK((v - 1.0) * std::ldexp(1.0, 20) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("Z* at 1 - 2^-p equals p zeta(p+1)") {
  // digits are all ones except position p, so the image index is
  // (2,{1}^(p-2),2,{1}^inf) = (2,{1}^(p-1)) with value p zeta(p+1);
  // exercises the capped truncation path end to end
  for (unsigned p = 1; p <= 20; ++p) {
    const Dyadic z = Dyadic::from_parts((std::uint64_t{1} << p) - 1, p);
    const double got = zstar(ZPoint::from_dyadic(z), {}).value;
    CHECK(got == doctest::Approx(p * riemann_zeta(static_cast<int>(p) + 1)).epsilon(1e-10));
  }
  const Dyadic deep = Dyadic::from_parts((std::uint64_t{1} << 59) - 1, 59);
  CHECK(zstar(ZPoint::from_dyadic(deep), {}).value ==
        doctest::Approx(59.0 * riemann_zeta(60)).epsilon(1e-12));
}

TEST_CASE("one-sided continuity at dyadic points") {
  // difference quotients at h = 2^-20 approach the one-sided derivatives
  for (unsigned n = 1; n <= 6; ++n)
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << n); a += 2) {
      const Dyadic z = Dyadic::from_parts(a, n);
      const double h = std::ldexp(1.0, -20);
      const double dq_right = (zs(z.plus_pow2(20)) - zs(z)) / h;
      const double dplus = right_derivative(z, {}).value;
      CHECK(std::fabs(dq_right - dplus) < std::max(0.05, 0.05 * dplus));
      const DerivativeReport left = left_derivative(z, {});
      if (!left.divergent()) {
        const double dq_left = (zs(z) - zs(z.minus_pow2(20))) / h;
        CHECK(std::fabs(dq_left - left.value) < std::max(0.05, 0.05 * left.value));
      }
    }
}
