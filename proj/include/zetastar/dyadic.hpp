#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace zetastar {

/// Exact dyadic rational a / 2^n in [0, 1], stored in lowest terms
/// (numerator odd or zero; the value 1 is stored as 1/2^0).
class Dyadic {
 public:
  Dyadic() = default;  // value 0

  /// Reduces to lowest terms.  Requires numerator <= 2^exponent and
  /// exponent <= kMaxExponent.
  static Dyadic from_parts(std::uint64_t numerator, unsigned exponent);

  /// Parses "a/2^n" (also accepts "a/2" for n = 1, and "0"/"1").
  static Dyadic parse(std::string_view text);

  std::uint64_t numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && exp_ == 0; }

  double to_double() const;

  /// Exact z + 2^(-q) (or z - 2^(-q)); result must stay in [0, 1].
  Dyadic plus_pow2(unsigned q) const;
  Dyadic minus_pow2(unsigned q) const;

  /// j-th binary digit (1-based) of the terminating expansion.
  int terminating_digit(unsigned j) const;

  std::string to_string() const;

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  std::strong_ordering operator<=>(const Dyadic& o) const;

  static constexpr unsigned kMaxExponent = 60;

 private:
  std::uint64_t num_ = 0;
  unsigned exp_ = 0;
};

}  // namespace zetastar
