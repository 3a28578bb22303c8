#include <doctest.h>

#include <cmath>

#include "zetastar/errors.hpp"
#include "zetastar/index.hpp"

using namespace zetastar;

TEST_CASE("dyadic basics") {
  const Dyadic d = Dyadic::parse("3/2^4");
  CHECK(d.numerator() == 3);
  CHECK(d.exponent() == 4);
  CHECK(d.to_double() == doctest::Approx(0.1875));

  CHECK(Dyadic::from_parts(4, 4) == Dyadic::from_parts(1, 2));  // lowest terms
  CHECK(Dyadic::parse("1") == Dyadic::from_parts(1, 0));
  CHECK(Dyadic::parse("1/2") == Dyadic::from_parts(1, 1));
  CHECK(Dyadic::from_parts(1, 2) < Dyadic::from_parts(3, 3));

  const Dyadic q = Dyadic::from_parts(1, 2).plus_pow2(4);  // 1/4 + 1/16 = 5/16
  CHECK(q == Dyadic::from_parts(5, 4));
  CHECK(q.minus_pow2(4) == Dyadic::from_parts(1, 2));
  CHECK_THROWS_AS(Dyadic::from_parts(9, 3), DomainError);  // > 1

  // 5/8 = 0.101
  const Dyadic f = Dyadic::from_parts(5, 3);
  CHECK(f.terminating_digit(1) == 1);
  CHECK(f.terminating_digit(2) == 0);
  CHECK(f.terminating_digit(3) == 1);
  CHECK(f.terminating_digit(4) == 0);
}

TEST_CASE("canonical digit streams") {
  // 1 0 0 0 ... -> 0 1 1 1 ...
  const DigitStream a = canonicalize(DigitStream::raw({1}, DigitTail::Zeros));
  CHECK(a.canonical());
  CHECK(a.digit(1) == 0);
  CHECK(a.digit(2) == 1);
  CHECK(a.digit(5) == 1);
  CHECK(a.value_num() == 1);
  CHECK(a.value_den() == 2);

  // 1 1 0 0 0 ... -> 1 0 1 1 1 ...
  const DigitStream b = canonicalize(DigitStream::raw({1, 1}, DigitTail::Zeros));
  CHECK(DigitStream::lex_compare(b, DigitStream::raw({1, 0}, DigitTail::Ones)) == 0);
  CHECK(b.value_num() == 3);
  CHECK(b.value_den() == 4);

  // already canonical: idempotent
  const DigitStream c = DigitStream::raw({0}, DigitTail::Ones);
  CHECK(DigitStream::lex_compare(canonicalize(c), c) == 0);

  CHECK_THROWS_AS(canonicalize(DigitStream::raw({0, 0}, DigitTail::Zeros)), ZeroValueError);
}

TEST_CASE("rational digit extraction") {
  const DigitStream third = DigitStream::from_rational(1, 3);  // 0.010101...
  CHECK(third.canonical());
  CHECK(third.digit(1) == 0);
  CHECK(third.digit(2) == 1);
  CHECK(third.digit(3) == 0);
  CHECK(third.digit(4) == 1);
  CHECK(third.value_num() == 1);
  CHECK(third.value_den() == 3);
  CHECK(!third.as_dyadic().has_value());

  const DigitStream fifth = DigitStream::from_rational(1, 5);  // 0.(0011)
  for (int rep = 0; rep < 2; ++rep) {
    CHECK(fifth.digit(4 * rep + 1) == 0);
    CHECK(fifth.digit(4 * rep + 2) == 0);
    CHECK(fifth.digit(4 * rep + 3) == 1);
    CHECK(fifth.digit(4 * rep + 4) == 1);
  }

  const DigitStream half = DigitStream::from_rational(1, 2);
  CHECK(half.digit(1) == 0);
  CHECK(half.digit(2) == 1);
  CHECK(half.tail() == DigitTail::Ones);

  CHECK(DigitStream::from_rational(1, 3).first_zero() == 1);
  CHECK(DigitStream::from_rational(1, 3).second_zero() == 3);
  CHECK(DigitStream::from_rational(1, 2).first_zero() == 1);
  CHECK(DigitStream::from_rational(1, 2).second_zero() == -1);
  CHECK(DigitStream::from_rational(1, 1).first_zero() == -1);
}

TEST_CASE("index_from_digits on the reference streams") {
  // 0111... (1/2) -> (2,{1}^inf)
  const Index a = index_from_digits(DigitStream::from_rational(1, 2));
  CHECK(a.tail_kind() == TailKind::Constant);
  CHECK(a.constant() == 1);
  CHECK(a.prefix() == std::vector<int>{2});
  CHECK(a.is_divergent());

  // 111... (1) -> (1,1,1,...)
  const Index b = index_from_digits(DigitStream::from_rational(1, 1));
  CHECK(b.entry(1) == 1);
  CHECK(b.entry(7) == 1);

  // 101010... (2/3) -> (1,{2}^inf)
  const Index c = index_from_digits(DigitStream::from_rational(2, 3));
  CHECK(c.entry(1) == 1);
  CHECK(c.entry(2) == 2);
  CHECK(c.entry(9) == 2);

  CHECK_THROWS_AS(index_from_digits(DigitStream::raw({1}, DigitTail::Zeros)), NonCanonicalError);
  CHECK_THROWS_AS(index_from_digits(DigitStream::raw({}, DigitTail::Zeros)), ZeroValueError);
}

TEST_CASE("point_from_index") {
  // (2,{1}^inf) -> 1/2 exactly
  const PointValue a = point_from_index(Index::constant_tail({2}, 1));
  REQUIRE(a.exact.has_value());
  CHECK(*a.exact == Dyadic::from_parts(1, 1));

  // ({2}^inf) -> 1/3
  const PointValue b = point_from_index(Index::constant_tail({}, 2));
  CHECK(!b.exact.has_value());
  CHECK(std::fabs(b.value - 1.0 / 3.0) < 1e-16);

  // (3,1) finite -> 3/16
  const PointValue c = point_from_index(Index::finite({3, 1}));
  REQUIRE(c.exact.has_value());
  CHECK(*c.exact == Dyadic::from_parts(3, 4));

  // ({2,1}^inf): partial sums 2,3,5,6,... -> (1/4 + 1/8)/(1 - 1/8) = 3/7
  const PointValue d = point_from_index(Index::periodic_tail({}, {2, 1}));
  CHECK(std::fabs(d.value - 3.0 / 7.0) < 1e-15);
}

TEST_CASE("lex_compare") {
  const Index a = Index::constant_tail({2}, 1);       // (2,1,1,...)
  const Index b = Index::constant_tail({2, 2}, 1);    // (2,2,1,1,...)
  const Index c = Index::constant_tail({}, 2);        // (2,2,2,...)
  CHECK(lex_compare(a, b) == Ordering::Less);
  CHECK(lex_compare(b, b) == Ordering::Equal);
  CHECK(lex_compare(c, b) == Ordering::Greater);
  CHECK(lex_compare(Index::constant_tail({3, 1}, 1), Index::constant_tail({3, 1}, 1)) ==
        Ordering::Equal);
  CHECK_THROWS_AS(lex_compare(Index::finite({3}), a), DomainError);
}

TEST_CASE("index text round trip") {
  CHECK(Index::parse("2,1,1,({1})").to_string() == "2,1,1,(1)");
  CHECK(Index::parse("3,(2)").to_string() == "3,(2)");
  CHECK(Index::parse("4!").to_string() == "4!");
  CHECK(Index::parse("(2,1)").to_string() == "({2,1})");
  CHECK(Index::parse("( 2 , 1 )").tail_kind() == TailKind::Periodic);
  CHECK(Index::parse("2,(1)").is_divergent());
  CHECK(!Index::parse("(2,1)").is_divergent());
  CHECK_THROWS_AS(Index::parse(""), DomainError);
  CHECK_THROWS_AS(Index::parse("2,1"), DomainError);
  CHECK_THROWS_AS(Index::parse("0!"), DomainError);
  CHECK_THROWS_AS(Index::parse("bogus,,"), DomainError);

  const Index again = Index::parse(Index::parse("(3,1)").to_string());
  CHECK(again.block() == std::vector<int>{3, 1});
}

TEST_CASE("deep finite indices fall back to binary64 points") {
  const PointValue pv = point_from_index(Index::finite({30, 35}));
  CHECK(!pv.exact.has_value());
  CHECK(pv.value == doctest::Approx(std::ldexp(1.0, -30) + std::ldexp(1.0, -65)).epsilon(1e-15));
}

TEST_CASE("lex_compare across coprime block periods") {
  // entries 2,2,1,2,1,... vs 2,2,1,1,2,...: first difference at position 4
  const Index x = Index::periodic_tail({2}, {2, 1});
  const Index y = Index::periodic_tail({2}, {2, 1, 1});
  CHECK(lex_compare(x, y) == Ordering::Greater);
  CHECK(lex_compare(y, x) == Ordering::Less);
  CHECK(lex_compare(Index::parse("({2,1})"), Index::parse("2,1,({2,1})")) == Ordering::Equal);
}

TEST_CASE("canonicalize normalizes an all-ones block to the ones tail") {
  const DigitStream s = canonicalize(DigitStream::raw({1, 0}, DigitTail::Periodic, {1, 1}));
  CHECK(s.tail() == DigitTail::Ones);
  CHECK(s.canonical());
  CHECK(s.value_num() == 3);
  CHECK(s.value_den() == 4);
}

TEST_CASE("digit/index round trip on all dyadics up to depth 12") {
  for (unsigned n = 1; n <= 12; ++n) {
    for (std::uint64_t a = 1; a <= (std::uint64_t{1} << n); a += 2) {
      const Dyadic z = Dyadic::from_parts(a, n);
      const DigitStream d = DigitStream::from_dyadic(z);
      REQUIRE(d.canonical());
      const Index idx = index_from_digits(d);
      const PointValue back = point_from_index(idx);
      REQUIRE(back.exact.has_value());
      CHECK(*back.exact == z);
      const DigitStream d2 = canonicalize(DigitStream::from_dyadic(*back.exact));
      CHECK(DigitStream::lex_compare(d, d2) == 0);
    }
  }
}

TEST_CASE("digit order precheck: x < y iff streams compare lexicographically") {
  std::vector<Dyadic> pts;
  for (std::uint64_t a = 1; a < 64; ++a) pts.push_back(Dyadic::from_parts(a, 6));
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const DigitStream dx = DigitStream::from_dyadic(pts[i]);
    const DigitStream dy = DigitStream::from_dyadic(pts[i + 1]);
    CHECK(DigitStream::lex_compare(dx, dy) < 0);
    // larger point <-> lexicographically smaller raw index
    CHECK(lex_compare(index_from_digits(dx), index_from_digits(dy)) == Ordering::Greater);
  }
}
