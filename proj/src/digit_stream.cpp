#include "zetastar/digit_stream.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "zetastar/errors.hpp"

namespace zetastar {

namespace {

constexpr std::int64_t kMaxDen = std::int64_t{1} << 61;

std::int64_t ipow2(unsigned e) { return std::int64_t{1} << e; }

}  // namespace

DigitStream DigitStream::from_dyadic(const Dyadic& d) {
  DigitStream s;
  if (d.is_zero()) {
    s.tail_ = DigitTail::Zeros;
    s.compute_value();
    s.classify();
    return s;
  }
  // Terminating bits b_1..b_n end in 1 (lowest terms); the canonical form
  // flips that final 1 to 0 and continues with ones.
  const unsigned n = d.exponent();
  s.prefix_.resize(n);
  for (unsigned j = 1; j <= n; ++j)
    s.prefix_[j - 1] = static_cast<std::uint8_t>(d.terminating_digit(j));
  if (n > 0) s.prefix_[n - 1] = 0;
  s.tail_ = DigitTail::Ones;
  s.compute_value();
  s.classify();
  return s;
}

DigitStream DigitStream::from_rational(std::int64_t p, std::int64_t q) {
  if (q <= 0 || p < 0 || p > q) throw DomainError("from_rational: need 0 <= p/q <= 1");
  if (p == 0) return raw({}, DigitTail::Zeros);
  const std::int64_t g = std::gcd(p, q);
  p /= g;
  q /= g;
  if ((q & (q - 1)) == 0) {
    unsigned e = 0;
    while ((std::int64_t{1} << e) < q) ++e;
    return from_dyadic(Dyadic::from_parts(static_cast<std::uint64_t>(p), e));
  }
  if (q > (std::int64_t{1} << 20))
    throw DomainError("from_rational: denominator too large for exact digit extraction");
  // Long division base 2; a repeated remainder closes the period.
  DigitStream s;
  std::unordered_map<std::int64_t, std::size_t> seen;
  std::vector<std::uint8_t> digits;
  std::int64_t r = p;
  for (;;) {
    auto it = seen.find(r);
    if (it != seen.end()) {
      const std::size_t start = it->second;
      s.prefix_.assign(digits.begin(), digits.begin() + start);
      s.block_.assign(digits.begin() + start, digits.end());
      s.tail_ = DigitTail::Periodic;
      break;
    }
    seen.emplace(r, digits.size());
    r *= 2;
    const std::uint8_t a = r >= q ? 1 : 0;
    if (a) r -= q;
    digits.push_back(a);
  }
  s.compute_value();
  s.classify();
  return s;
}

DigitStream DigitStream::raw(std::vector<std::uint8_t> prefix, DigitTail tail,
                             std::vector<std::uint8_t> block) {
  if (tail == DigitTail::Periodic && block.empty())
    throw DomainError("periodic digit tail needs a nonempty block");
  DigitStream s;
  s.prefix_ = std::move(prefix);
  s.tail_ = tail;
  s.block_ = std::move(block);
  s.compute_value();
  s.classify();
  return s;
}

void DigitStream::compute_value() {
  const std::size_t len = prefix_.size();
  if (len >= 61) throw DomainError("digit prefix too long for exact value");
  std::int64_t a = 0;
  for (std::uint8_t b : prefix_) a = (a << 1) | b;
  std::int64_t num = 0, den = 1;
  switch (tail_) {
    case DigitTail::Zeros:
      num = a;
      den = ipow2(len);
      break;
    case DigitTail::Ones:
      num = a + 1;
      den = ipow2(len);
      break;
    case DigitTail::Periodic: {
      const std::size_t P = block_.size();
      if (len + P >= 61) throw DomainError("digit presentation too long for exact value");
      std::int64_t b = 0;
      for (std::uint8_t bit : block_) b = (b << 1) | bit;
      const std::int64_t full = ipow2(P) - 1;
      num = a * full + b;
      den = ipow2(len) * full;
      break;
    }
  }
  if (den > kMaxDen) throw DomainError("digit stream denominator too large");
  if (num == 0) {
    num_ = 0;
    den_ = 1;
    return;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

void DigitStream::classify() {
  if (num_ == 0) {
    canonical_ = false;
    return;
  }
  switch (tail_) {
    case DigitTail::Zeros:
      canonical_ = false;
      break;
    case DigitTail::Ones:
      canonical_ = true;
      break;
    case DigitTail::Periodic: {
      const bool any_one = std::any_of(block_.begin(), block_.end(), [](std::uint8_t b) { return b != 0; });
      canonical_ = any_one;
      break;
    }
  }
}

int DigitStream::digit(std::size_t j) const {
  if (j == 0) throw DomainError("digit positions are 1-based");
  if (j <= prefix_.size()) return prefix_[j - 1];
  switch (tail_) {
    case DigitTail::Zeros:
      return 0;
    case DigitTail::Ones:
      return 1;
    case DigitTail::Periodic:
      return block_[(j - prefix_.size() - 1) % block_.size()];
  }
  return 0;
}

std::optional<Dyadic> DigitStream::as_dyadic() const {
  if ((den_ & (den_ - 1)) != 0) return std::nullopt;
  unsigned e = 0;
  while ((std::int64_t{1} << e) < den_) ++e;
  return Dyadic::from_parts(static_cast<std::uint64_t>(num_), e);
}

long DigitStream::first_zero() const {
  for (std::size_t j = 0; j < prefix_.size(); ++j)
    if (prefix_[j] == 0) return static_cast<long>(j + 1);
  const long base = static_cast<long>(prefix_.size());
  switch (tail_) {
    case DigitTail::Zeros:
      return base + 1;
    case DigitTail::Ones:
      return -1;
    case DigitTail::Periodic:
      for (std::size_t i = 0; i < block_.size(); ++i)
        if (block_[i] == 0) return base + static_cast<long>(i + 1);
      return -1;
  }
  return -1;
}

long DigitStream::second_zero() const {
  const long z1 = first_zero();
  if (z1 < 0) return -1;
  // scan a bounded window past the first zero; the tail structure guarantees
  // any further zero shows up within one more period
  const long limit = static_cast<long>(prefix_.size() + 2 * std::max<std::size_t>(block_.size(), 1) + 2);
  for (long j = z1 + 1; j <= limit; ++j)
    if (digit(static_cast<std::size_t>(j)) == 0) return j;
  return -1;
}

std::string DigitStream::to_string(std::size_t count) const {
  std::string out = "0.";
  for (std::size_t j = 1; j <= count; ++j) out += static_cast<char>('0' + digit(j));
  out += "...";
  return out;
}

int DigitStream::lex_compare(const DigitStream& a, const DigitStream& b) {
  const std::size_t pa = std::max<std::size_t>(a.block_.size(), 1);
  const std::size_t pb = std::max<std::size_t>(b.block_.size(), 1);
  const std::size_t bound =
      std::max(a.prefix_.size(), b.prefix_.size()) + std::lcm(pa, pb) + 1;
  for (std::size_t j = 1; j <= bound; ++j) {
    const int da = a.digit(j), db = b.digit(j);
    if (da != db) return da < db ? -1 : 1;
  }
  return 0;
}

DigitStream canonicalize(const DigitStream& d) {
  if (d.is_zero()) throw ZeroValueError("cannot canonicalize the zero stream");
  if (d.canonical()) {
    if (d.tail_ == DigitTail::Periodic &&
        std::all_of(d.block_.begin(), d.block_.end(), [](std::uint8_t b) { return b == 1; }))
      return DigitStream::raw(d.prefix_, DigitTail::Ones);
    return d;
  }
  // Terminating expansion: flip the last 1 to 0 and continue with ones.
  std::vector<std::uint8_t> bits = d.prefix_;
  if (d.tail_ == DigitTail::Periodic) {
    // all-zero block behaves like a Zeros tail
  }
  while (!bits.empty() && bits.back() == 0) bits.pop_back();
  if (bits.empty()) throw ZeroValueError("cannot canonicalize the zero stream");
  bits.back() = 0;
  return DigitStream::raw(std::move(bits), DigitTail::Ones);
}

}  // namespace zetastar
