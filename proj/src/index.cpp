#include "zetastar/index.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "zetastar/errors.hpp"
#include "zetastar/kahan.hpp"

namespace zetastar {

void Index::validate() const {
  for (int k : prefix_)
    if (k < 1) throw DomainError("index entries must be >= 1");
  if (kind_ == TailKind::Constant && constant_ < 1)
    throw DomainError("constant tail entry must be >= 1");
  if (kind_ == TailKind::Periodic) {
    if (block_.empty()) throw DomainError("periodic tail needs a nonempty block");
    for (int k : block_)
      if (k < 1) throw DomainError("index entries must be >= 1");
  }
}

Index Index::finite(std::vector<int> entries) {
  Index i;
  i.prefix_ = std::move(entries);
  i.kind_ = TailKind::Finite;
  i.validate();
  return i;
}

Index Index::constant_tail(std::vector<int> prefix, int l) {
  Index i;
  i.prefix_ = std::move(prefix);
  i.kind_ = TailKind::Constant;
  i.constant_ = l;
  i.validate();
  return i;
}

Index Index::periodic_tail(std::vector<int> prefix, std::vector<int> block) {
  if (block.size() == 1) return constant_tail(std::move(prefix), block[0]);
  Index i;
  i.prefix_ = std::move(prefix);
  i.kind_ = TailKind::Periodic;
  i.block_ = std::move(block);
  i.validate();
  return i;
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 1)
    throw DomainError("bad index entry '" + std::string(s) + "'");
  return v;
}

std::vector<int> parse_int_list(std::string_view s) {
  std::vector<int> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    out.push_back(parse_int(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Index Index::parse(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (c != ' ') compact += c;
  std::string_view s = compact;
  if (s.empty()) throw DomainError("empty index");
  if (s.back() == '!') {
    s.remove_suffix(1);
    return finite(parse_int_list(s));
  }
  const auto open = s.find('(');
  if (open == std::string_view::npos) {
    throw DomainError("index must end with '!' (finite) or a '(...)' tail");
  }
  if (s.back() != ')') throw DomainError("unterminated index tail");
  std::string_view head = s.substr(0, open);
  if (!head.empty()) {
    if (head.back() != ',') throw DomainError("expected ',' before index tail");
    head.remove_suffix(1);
  }
  std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  if (!inner.empty() && inner.front() == '{') {
    if (inner.back() != '}') throw DomainError("unterminated block braces");
    inner = inner.substr(1, inner.size() - 2);
  }
  std::vector<int> prefix = head.empty() ? std::vector<int>{} : parse_int_list(head);
  std::vector<int> block = parse_int_list(inner);
  if (block.empty()) throw DomainError("empty index tail");
  if (block.size() == 1) return constant_tail(std::move(prefix), block[0]);
  return periodic_tail(std::move(prefix), std::move(block));
}

std::string Index::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < prefix_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(prefix_[i]);
  }
  switch (kind_) {
    case TailKind::Finite:
      out += '!';
      break;
    case TailKind::Constant:
      if (!prefix_.empty()) out += ',';
      out += '(' + std::to_string(constant_) + ')';
      break;
    case TailKind::Periodic: {
      if (!prefix_.empty()) out += ',';
      out += "({";
      for (std::size_t i = 0; i < block_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(block_[i]);
      }
      out += "})";
      break;
    }
  }
  return out;
}

int Index::entry(std::size_t j) const {
  if (j == 0) throw DomainError("index entries are 1-based");
  if (j <= prefix_.size()) return prefix_[j - 1];
  switch (kind_) {
    case TailKind::Finite:
      throw DomainError("entry position past the end of a finite index");
    case TailKind::Constant:
      return constant_;
    case TailKind::Periodic:
      return block_[(j - prefix_.size() - 1) % block_.size()];
  }
  return 0;
}

bool Index::in_range(std::size_t j) const {
  return kind_ != TailKind::Finite || (j >= 1 && j <= prefix_.size());
}

bool Index::admissible() const {
  if (kind_ == TailKind::Finite && prefix_.empty()) return false;
  return entry(1) >= 2;
}

bool Index::is_divergent() const {
  if (kind_ == TailKind::Finite) return false;
  if (entry(1) != 2) return false;
  for (std::size_t j = 2; j <= prefix_.size(); ++j)
    if (prefix_[j - 1] != 1) return false;
  if (kind_ == TailKind::Constant) return constant_ == 1;
  return std::all_of(block_.begin(), block_.end(), [](int k) { return k == 1; });
}

Index Index::with_first_entry_bumped() const {
  if (!prefix_.empty()) {
    Index i = *this;
    i.prefix_[0] += 1;
    return i;
  }
  switch (kind_) {
    case TailKind::Finite:
      throw DomainError("cannot bump an empty finite index");
    case TailKind::Constant:
      return constant_tail({constant_ + 1}, constant_);
    case TailKind::Periodic: {
      std::vector<int> rotated(block_.begin() + 1, block_.end());
      rotated.push_back(block_[0]);
      return periodic_tail({block_[0] + 1}, std::move(rotated));
    }
  }
  throw DomainError("unreachable");
}

Ordering lex_compare(const Index& a, const Index& b) {
  if (a.is_finite() || b.is_finite())
    throw DomainError("lex_compare requires eventually-periodic presentations");
  const std::size_t pa = a.tail_kind() == TailKind::Periodic ? a.block().size() : 1;
  const std::size_t pb = b.tail_kind() == TailKind::Periodic ? b.block().size() : 1;
  const std::size_t bound = std::max(a.prefix_size(), b.prefix_size()) + std::lcm(pa, pb) + 1;
  for (std::size_t j = 1; j <= bound; ++j) {
    const int ea = a.entry(j), eb = b.entry(j);
    if (ea != eb) return ea < eb ? Ordering::Less : Ordering::Greater;
  }
  return Ordering::Equal;
}

PointValue point_from_index(const Index& i) {
  // Exact dyadic cases: finite index, or a tail of all ones (the remaining
  // ones sum to exactly 2^-K past the prefix).
  const bool ones_tail =
      (i.tail_kind() == TailKind::Constant && i.constant() == 1) ||
      (i.tail_kind() == TailKind::Periodic &&
       std::all_of(i.block().begin(), i.block().end(), [](int k) { return k == 1; }));

  long long K = 0;
  for (int k : i.prefix()) K += k;

  if (i.is_finite() || ones_tail) {
    if (K <= static_cast<long long>(Dyadic::kMaxExponent)) {
      std::uint64_t num = 0;
      long long partial = 0;
      for (int k : i.prefix()) {
        partial += k;
        num += std::uint64_t{1} << (K - partial);
      }
      if (ones_tail) num += 1;  // sum_{j>r} 2^-(K+j-r) = 2^-K
      return {Dyadic::from_parts(num, static_cast<unsigned>(K)),
              Dyadic::from_parts(num, static_cast<unsigned>(K)).to_double()};
    }
    // too deep for the exact type; fall through to binary64
  }

  KahanAccumulator acc;
  long long partial = 0;
  for (int k : i.prefix()) {
    partial += k;
    if (partial > 1074) break;
    acc.add(std::ldexp(1.0, -static_cast<int>(partial)));
  }
  switch (i.tail_kind()) {
    case TailKind::Finite:
      break;
    case TailKind::Constant: {
      if (i.constant() == 1) {
        acc.add(std::ldexp(1.0, -static_cast<int>(std::min<long long>(K, 1074))));
      } else if (K <= 1074) {
        // sum_j 2^-(K + j*l) = 2^-K / (2^l - 1)
        acc.add(std::ldexp(1.0, -static_cast<int>(K)) / (std::ldexp(1.0, i.constant()) - 1.0));
      }
      break;
    }
    case TailKind::Periodic: {
      if (K <= 1074) {
        long long B = 0;
        double f = 0.0;
        for (int k : i.block()) {
          B += k;
          if (B <= 1074) f += std::ldexp(1.0, -static_cast<int>(B));
        }
        acc.add(std::ldexp(1.0, -static_cast<int>(K)) * f / (1.0 - std::ldexp(1.0, -static_cast<int>(std::min<long long>(B, 1074)))));
      }
      break;
    }
  }
  return {std::nullopt, acc};
}

Index index_from_digits(const DigitStream& d) {
  if (d.is_zero()) throw ZeroValueError("index_from_digits: zero stream");
  if (!d.canonical()) throw NonCanonicalError("index_from_digits: stream not canonical");

  std::vector<int> gaps;
  std::size_t last_one = 0;
  for (std::size_t j = 1; j <= d.prefix_length(); ++j) {
    if (d.digit(j) == 1) {
      gaps.push_back(static_cast<int>(j - last_one));
      last_one = j;
    }
  }
  const std::size_t plen = d.prefix_length();
  if (d.tail() == DigitTail::Ones) {
    gaps.push_back(static_cast<int>(plen + 1 - last_one));
    return Index::constant_tail(std::move(gaps), 1);
  }
  // periodic tail with at least one 1 in the block (canonical)
  const auto& blk = d.block();
  const std::size_t P = blk.size();
  std::vector<std::size_t> ones;
  for (std::size_t i = 0; i < P; ++i)
    if (blk[i] == 1) ones.push_back(i + 1);
  gaps.push_back(static_cast<int>(plen + ones[0] - last_one));
  std::vector<int> cycle;
  for (std::size_t i = 1; i < ones.size(); ++i)
    cycle.push_back(static_cast<int>(ones[i] - ones[i - 1]));
  cycle.push_back(static_cast<int>(P - ones.back() + ones[0]));
  return Index::periodic_tail(std::move(gaps), std::move(cycle));
}

}  // namespace zetastar
