#include "zetastar/dyadic.hpp"

#include <cmath>
#include <charconv>

#include "zetastar/errors.hpp"

namespace zetastar {

Dyadic Dyadic::from_parts(std::uint64_t numerator, unsigned exponent) {
  if (exponent > kMaxExponent) throw DomainError("dyadic exponent too large");
  if (numerator > (std::uint64_t{1} << exponent))
    throw DomainError("dyadic value exceeds 1");
  while (exponent > 0 && numerator % 2 == 0 && numerator != 0) {
    numerator /= 2;
    --exponent;
  }
  if (numerator == 0) exponent = 0;
  Dyadic d;
  d.num_ = numerator;
  d.exp_ = exponent;
  return d;
}

Dyadic Dyadic::parse(std::string_view text) {
  auto parse_u64 = [](std::string_view s) -> std::uint64_t {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw DomainError("bad dyadic literal");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    const std::uint64_t v = parse_u64(text);
    if (v > 1) throw DomainError("dyadic value exceeds 1");
    return from_parts(v, 0);
  }
  const std::uint64_t a = parse_u64(text.substr(0, slash));
  std::string_view den = text.substr(slash + 1);
  if (den.empty() || den[0] != '2') throw DomainError("dyadic denominator must be a power of two");
  den.remove_prefix(1);
  unsigned n = 1;
  if (!den.empty()) {
    if (den[0] != '^') throw DomainError("bad dyadic denominator");
    den.remove_prefix(1);
    n = static_cast<unsigned>(parse_u64(den));
  }
  return from_parts(a, n);
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -static_cast<int>(exp_)); }

Dyadic Dyadic::plus_pow2(unsigned q) const {
  const unsigned n = std::max(exp_, q);
  if (n > kMaxExponent) throw DomainError("dyadic exponent too large");
  const std::uint64_t a = (num_ << (n - exp_)) + (std::uint64_t{1} << (n - q));
  return from_parts(a, n);
}

Dyadic Dyadic::minus_pow2(unsigned q) const {
  const unsigned n = std::max(exp_, q);
  if (n > kMaxExponent) throw DomainError("dyadic exponent too large");
  const std::uint64_t sub = std::uint64_t{1} << (n - q);
  const std::uint64_t a = num_ << (n - exp_);
  if (a < sub) throw DomainError("dyadic difference below 0");
  return from_parts(a - sub, n);
}

int Dyadic::terminating_digit(unsigned j) const {
  if (j == 0 || j > exp_) return 0;
  return static_cast<int>((num_ >> (exp_ - j)) & 1u);
}

std::string Dyadic::to_string() const {
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
  const unsigned n = std::max(exp_, o.exp_);
  const std::uint64_t a = num_ << (n - exp_);
  const std::uint64_t b = o.num_ << (n - o.exp_);
  return a <=> b;
}

}  // namespace zetastar
