#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zetastar/index.hpp"
#include "zetastar/tail_series.hpp"

namespace zetastar {

struct TruncationParams {
  int m_cap = 1'000'000;    // upper bound on the outermost summation variable
  double tol = 1e-9;        // target absolute error
  int block_reps_cap = 24;  // max repetitions of a periodic block
  bool extrapolate = true;  // Aitken acceleration for periodic tails
};

struct Evaluation {
  double value = 0.0;
  double err_estimate = 0.0;
  std::int64_t terms_used = 0;
  bool converged = false;

  bool divergent() const;
};

/// Digit-weighted chain sum
///   sum_{m_1 >= ... >= m_d >= floor} a_1^(m_1-m_2) ... a_{d-1}^(m_{d-1}-m_d)
///                                    / (m_1^lead m_2 ... m_d)
/// with the convention 0^0 = 1, so a zero digit pins m_j = m_{j+1}.
struct ChainSpec {
  std::vector<int> digits;  // a_1 .. a_{d-1}
  int depth = 1;            // d = digits.size() + 1
  int floor = 3;
  int lead_exponent = 2;
};

/// One level of a nested weakly-decreasing sum: weight u^-exponent times an
/// optional extra factor given as a table (u <= switch point) plus a tail
/// expansion (u beyond it).
struct SumLevel {
  int exponent = 1;
  const std::vector<double>* extra = nullptr;
  const TailSeries* extra_series = nullptr;
};

/// sum over m_1 >= m_2 >= ... >= m_r >= floor of prod_j weight_j(m_j),
/// levels[0] outermost.  Exact tables up to switch_m, Euler-Maclaurin
/// closure beyond.  Throws DomainError when a level fails to converge.
double nested_decreasing_sum(std::span<const SumLevel> levels, int floor, int switch_m);

/// Incremental chain-sum evaluator: depth grows by one per pushed digit.
/// Holds the current f_depth table on [floor, switch_m] plus its tail
/// expansion; depth_sum() is S_depth for the digits pushed so far.
class ChainEvaluator {
 public:
  ChainEvaluator(int lead_exponent, int floor, int switch_m);

  int depth() const { return depth_; }
  void push_digit(int a);

  double depth_sum() const { return sum_; }

  /// sum f_depth(m) * (m - 2); +infinity when the chain carries no zero
  /// digit (the weighted sum then diverges).
  double weighted_sum() const;

 private:
  int floor_, switch_m_, depth_ = 1;
  std::vector<double> f_;
  std::vector<double> scratch_;
  std::vector<double> invm_;
  TailSeries fs_;
  double sum_ = 0.0;

  void recompute_sum();
};

double riemann_zeta(int s);

/// Limit of the running product prod_{s=2..inf} s^l / (s^l - 1), l >= 2.
double tail_product_limit(int l);

Evaluation eval_finite(std::span<const int> index, const TruncationParams& p = {});
Evaluation eval_tail_l(std::span<const int> prefix, int l, const TruncationParams& p = {});
Evaluation eval_periodic(std::span<const int> prefix, std::span<const int> block,
                         const TruncationParams& p = {});
Evaluation chain_sum(const ChainSpec& spec, const TruncationParams& p = {});

struct ChainBound {
  double upper = 0.0;
  std::optional<double> lower;  // absent: only existential constants are known
};

/// Explicit upper bound for sum_{m_1>=...>=m_s>=n} 1/(m_1^(r+1) m_2...m_s):
/// 1/((n-1)...(n-r) r^s) for n > r and s/(r! r^s) for n = r.
ChainBound bound_chain_sum(int r, int s, int n);

enum class EvalMethod { Finite, TailL, Periodic };
EvalMethod method_for(const Index& i);

/// Dispatches on the tail kind; +infinity for the divergent index (2,{1}^inf).
Evaluation eval_index(const Index& i, const TruncationParams& p = {});

}  // namespace zetastar
