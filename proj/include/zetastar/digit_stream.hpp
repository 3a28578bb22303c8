#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zetastar/dyadic.hpp"

namespace zetastar {

enum class DigitTail { Zeros, Ones, Periodic };

/// Binary digits a_j of a point z in [0, 1], finitely presented as an
/// explicit prefix plus an eventually-constant or eventually-periodic
/// continuation.  The canonical form never terminates in all zeros: a
/// terminating expansion ...1 0 0 0... is rewritten ...0 1 1 1..., so every
/// nonzero value has infinitely many ones.
class DigitStream {
 public:
  /// Canonical stream of an exact dyadic.
  static DigitStream from_dyadic(const Dyadic& d);

  /// Canonical stream of p/q with 0 <= p <= q, via exact long division
  /// (remainder-cycle detection for non-dyadic denominators).
  static DigitStream from_rational(std::int64_t p, std::int64_t q);

  /// Arbitrary presentation; may be non-canonical (used as canonicalize input).
  static DigitStream raw(std::vector<std::uint8_t> prefix, DigitTail tail,
                         std::vector<std::uint8_t> block = {});

  bool canonical() const { return canonical_; }
  bool is_zero() const { return num_ == 0; }

  int digit(std::size_t j) const;  // 1-based
  std::size_t prefix_length() const { return prefix_.size(); }
  DigitTail tail() const { return tail_; }
  const std::vector<std::uint8_t>& prefix_digits() const { return prefix_; }
  const std::vector<std::uint8_t>& block() const { return block_; }

  /// Exact value p/q (reduced).
  std::int64_t value_num() const { return num_; }
  std::int64_t value_den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::optional<Dyadic> as_dyadic() const;

  /// 1-based positions of the first/second zero digit, or -1 when the stream
  /// has fewer than one/two zeros.
  long first_zero() const;
  long second_zero() const;

  std::string to_string(std::size_t count = 24) const;

  /// Lexicographic comparison of the digit sequences: -1, 0 or +1.
  static int lex_compare(const DigitStream& a, const DigitStream& b);

 private:
  std::vector<std::uint8_t> prefix_;
  DigitTail tail_ = DigitTail::Zeros;
  std::vector<std::uint8_t> block_;
  std::int64_t num_ = 0, den_ = 1;
  bool canonical_ = false;

  void compute_value();
  void classify();
  friend DigitStream canonicalize(const DigitStream&);
};

/// Rewrites a stream into canonical form (value-preserving, idempotent).
/// Throws ZeroValueError for the all-zero stream.
DigitStream canonicalize(const DigitStream& d);

}  // namespace zetastar
