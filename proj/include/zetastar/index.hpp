#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zetastar/digit_stream.hpp"
#include "zetastar/dyadic.hpp"

namespace zetastar {

enum class TailKind { Finite, Constant, Periodic };

/// Exponent tuple (k_1, k_2, ...): a finite prefix plus an optional infinite
/// tail, either a constant repetition {l}^inf or a repeated block.
/// Entries are >= 1.  The divergent index (2,{1}^inf) is representable and
/// detected by is_divergent().
class Index {
 public:
  static Index finite(std::vector<int> entries);
  static Index constant_tail(std::vector<int> prefix, int l);
  static Index periodic_tail(std::vector<int> prefix, std::vector<int> block);

  /// Text forms: "2,1,1,({1})" (periodic block), "3,(2)" (constant tail),
  /// "4!" (finite), "(2,1)" (block with empty prefix).
  static Index parse(std::string_view text);
  std::string to_string() const;

  TailKind tail_kind() const { return kind_; }
  const std::vector<int>& prefix() const { return prefix_; }
  int constant() const { return constant_; }
  const std::vector<int>& block() const { return block_; }

  bool is_finite() const { return kind_ == TailKind::Finite; }
  std::size_t prefix_size() const { return prefix_.size(); }

  /// 1-based entry of the (possibly infinite) sequence.  For finite indices
  /// positions past the end throw DomainError.
  int entry(std::size_t j) const;

  /// Infinite length, or prefix length for finite indices.
  bool in_range(std::size_t j) const;

  bool admissible() const;     // entry(1) >= 2
  bool is_divergent() const;   // literally equal to (2,1,1,...)

  /// Index with 1 added to the first entry (the Z* evaluation convention).
  Index with_first_entry_bumped() const;

 private:
  std::vector<int> prefix_;
  TailKind kind_ = TailKind::Finite;
  int constant_ = 0;
  std::vector<int> block_;

  void validate() const;
};

enum class Ordering { Less, Equal, Greater };

/// Lexicographic comparison of the literal entry sequences.  Both indices
/// must be infinite (eventually-periodic presentations).
Ordering lex_compare(const Index& a, const Index& b);

struct PointValue {
  std::optional<Dyadic> exact;  // present for finite / eventually-all-ones indices
  double value = 0.0;
};

/// z = sum_j 2^-(k_1+...+k_j); exact dyadic when the index is finite or
/// eventually all ones, binary64 otherwise.
PointValue point_from_index(const Index& i);

/// Gaps between consecutive 1-digits of a canonical stream (the raw index;
/// the +1 evaluation convention is applied by the caller).
Index index_from_digits(const DigitStream& d);

}  // namespace zetastar
