#include "zetastar/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetastar/errors.hpp"
#include "zetastar/kahan.hpp"

namespace zetastar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_params(const TruncationParams& p) {
  if (p.m_cap < 4) throw DomainError("m_cap must be >= 4");
  if (!(p.tol > 0)) throw DomainError("tol must be positive");
  if (p.block_reps_cap < 2) throw DomainError("block_reps_cap must be >= 2");
}

double ipow_neg(double m, int k) {
  if (k > 40) return std::pow(m, -static_cast<double>(k));
  double r = 1.0;
  const double inv = 1.0 / m;
  for (int i = 0; i < k; ++i) r *= inv;
  return r;
}

Evaluation divergent_evaluation() { return {kInf, 0.0, 0, true}; }

int initial_switch(const TruncationParams& p) { return std::min(p.m_cap, 512); }

}  // namespace

bool Evaluation::divergent() const { return std::isinf(value); }

double nested_decreasing_sum(std::span<const SumLevel> levels, int floor, int switch_m) {
  const int M = switch_m;
  std::vector<double> w(static_cast<std::size_t>(M) + 2, 1.0);
  std::vector<double> next(static_cast<std::size_t>(M) + 2, 0.0);
  TailSeries ws;
  ws.add(0, 1.0);
  for (const SumLevel& lv : levels) {
    TailSeries g = lv.extra_series ? (ws * *lv.extra_series) : ws;
    g = g.shifted(lv.exponent);
    if (g.lead_power() < 2) throw DomainError("nested sum does not converge at this level");
    const TailSeries wn = suffix_sum(g);
    next[M + 1] = wn.eval(M + 1);
    for (int m = M; m >= floor; --m) {
      double f = ipow_neg(m, lv.exponent) * w[m];
      if (lv.extra) f *= (*lv.extra)[m];
      next[m] = f + next[m + 1];
    }
    std::swap(w, next);
    ws = wn;
  }
  return w[floor];
}

// ---------------------------------------------------------------------------
// ChainEvaluator

ChainEvaluator::ChainEvaluator(int lead_exponent, int floor, int switch_m)
    : floor_(floor), switch_m_(switch_m) {
  if (floor < 1) throw DomainError("chain floor must be >= 1");
  if (lead_exponent < 2) throw DomainError("chain lead exponent must be >= 2");
  f_.assign(static_cast<std::size_t>(switch_m_) + 2, 0.0);
  scratch_.assign(f_.size(), 0.0);
  invm_.assign(f_.size(), 0.0);
  for (int m = 1; m <= switch_m_ + 1; ++m) invm_[m] = 1.0 / m;
  for (int m = floor_; m <= switch_m_ + 1; ++m) f_[m] = ipow_neg(m, lead_exponent);
  fs_.add(lead_exponent, 1.0);
  recompute_sum();
}

void ChainEvaluator::push_digit(int a) {
  if (a == 1) {
    const TailSeries Fsuffix = suffix_sum(fs_);
    scratch_[switch_m_ + 1] = Fsuffix.eval(switch_m_ + 1);
    for (int m = switch_m_; m >= floor_; --m) scratch_[m] = f_[m] + scratch_[m + 1];
    for (int m = floor_; m <= switch_m_ + 1; ++m) f_[m] = scratch_[m] * invm_[m];
    fs_ = Fsuffix.shifted(1);
  } else {
    for (int m = floor_; m <= switch_m_ + 1; ++m) f_[m] *= invm_[m];
    fs_ = fs_.shifted(1);
  }
  ++depth_;
  recompute_sum();
}

void ChainEvaluator::recompute_sum() {
  KahanAccumulator acc;
  for (int m = floor_; m <= switch_m_; ++m) acc.add(f_[m]);
  acc.add(suffix_sum(fs_).eval(switch_m_ + 1));
  sum_ = acc;
}

double ChainEvaluator::weighted_sum() const {
  if (fs_.lead_power() < 3) return kInf;
  KahanAccumulator acc;
  for (int m = floor_; m <= switch_m_; ++m) acc.add(f_[m] * (m - 2));
  TailSeries g = fs_.shifted(-1);
  TailSeries minus2 = fs_;
  minus2 *= -2.0;
  g += minus2;
  acc.add(suffix_sum(g).eval(switch_m_ + 1));
  return acc;
}

// ---------------------------------------------------------------------------

double riemann_zeta(int s) {
  if (s < 2) throw DomainError("riemann_zeta requires s >= 2");
  constexpr int M = 256;
  KahanAccumulator acc;
  for (int m = M; m >= 1; --m) acc.add(ipow_neg(m, s));
  if (s <= TailSeries::kMaxPow + 1) acc.add(zeta_tail_from(s).eval(M + 1));
  return acc;
}

namespace {

// Expansion of sum_{u > m} sum_{k>=1} u^(-l k)/k = log(Pinf / P(m)).
TailSeries log_product_tail(int l) {
  TailSeries L;
  for (int k = 1; l * k <= TailSeries::kMaxPow + 1; ++k) {
    TailSeries t = zeta_tail_from(l * k);
    t.add(l * k, -1.0);  // strict tail: drop the u = m term
    t *= 1.0 / k;
    L += t;
  }
  return L;
}

}  // namespace

double tail_product_limit(int l) {
  if (l < 2) throw DomainError("tail_product_limit requires l >= 2");
  constexpr int M = 4096;
  KahanAccumulator logs;
  for (int s = 2; s <= M; ++s) {
    const double sl = std::pow(static_cast<double>(s), l);
    logs.add(-std::log1p(-1.0 / sl));
  }
  logs.add(log_product_tail(l).eval(M));
  return std::exp(logs);
}

// ---------------------------------------------------------------------------
// eval_finite

namespace {

void check_admissible(std::span<const int> index) {
  if (index.empty()) throw InadmissibleIndexError("empty index");
  if (index[0] < 2) throw InadmissibleIndexError("k1 must be >= 2");
  for (int k : index)
    if (k < 1) throw InadmissibleIndexError("index entries must be >= 1");
}

struct DoublingResult {
  double value = 0.0;
  double err = 0.0;
  int switch_m = 0;
  bool converged = false;
};

// Error floor at switch point M: rounding plus the first omitted
// Euler-Maclaurin term of the tail closure (~ 0.08 m^-11 per level).
double closure_floor(int M, double scale) {
  return std::max(64.0 * std::numeric_limits<double>::epsilon(),
                  0.5 * std::pow(M + 1.0, -11.0)) *
         scale;
}

// M-doubling control: evaluate, double the switch point until two successive
// values differ by less than tol/2, report the last difference.
template <typename F>
DoublingResult run_doubling(F&& evaluate, const TruncationParams& p, double scale_hint = 1.0) {
  DoublingResult r;
  int M = initial_switch(p);
  r.value = evaluate(M);
  r.switch_m = M;
  if (2 * M > p.m_cap) {
    r.err = closure_floor(M, scale_hint + std::fabs(r.value));
    r.converged = r.err <= p.tol;
    return r;
  }
  while (2 * M <= p.m_cap) {
    M *= 2;
    const double next = evaluate(M);
    r.err = std::max(std::fabs(next - r.value), closure_floor(M, scale_hint + std::fabs(next)));
    r.value = next;
    r.switch_m = M;
    if (r.err < p.tol / 2) {
      r.converged = true;
      return r;
    }
  }
  r.converged = false;
  return r;
}

}  // namespace

Evaluation eval_finite(std::span<const int> index, const TruncationParams& p) {
  validate_params(p);
  check_admissible(index);
  std::vector<SumLevel> levels(index.size());
  for (std::size_t j = 0; j < index.size(); ++j) levels[j].exponent = index[j];
  const DoublingResult r = run_doubling(
      [&](int M) { return nested_decreasing_sum(levels, 1, M); }, p);
  return {r.value, r.err, r.switch_m, r.converged};
}

// ---------------------------------------------------------------------------
// eval_tail_l

Evaluation eval_tail_l(std::span<const int> prefix, int l, const TruncationParams& p) {
  validate_params(p);
  if (l < 1) throw DomainError("tail entry l must be >= 1");

  if (l == 1) {
    // prod_{s=2..m} s/(s-1) = m folds the tail into the finite index:
    // trailing ones merge into the tail and the last entry drops by one.
    std::vector<int> reduced(prefix.begin(), prefix.end());
    while (!reduced.empty() && reduced.back() == 1) reduced.pop_back();
    if (reduced.empty())
      throw InadmissibleIndexError("(.{1}^inf) needs a leading entry >= 2");
    if (reduced[0] < 2) throw InadmissibleIndexError("k1 must be >= 2");
    if (reduced.size() == 1 && reduced[0] == 2) return divergent_evaluation();
    reduced.back() -= 1;
    return eval_finite(reduced, p);
  }

  if (prefix.empty()) {
    const double v = tail_product_limit(l);
    const double err = 8.0 * std::numeric_limits<double>::epsilon() * v;
    return {v, err, 4096, true};
  }
  check_admissible(prefix);

  const double pinf = tail_product_limit(l);
  TailSeries pseries = exp_of_negated(log_product_tail(l));
  pseries *= pinf;

  auto evaluate = [&](int M) {
    std::vector<double> ptable(static_cast<std::size_t>(M) + 2, 1.0);
    for (int m = 2; m <= M + 1; ++m) {
      const double ml = std::pow(static_cast<double>(m), l);
      ptable[m] = ptable[m - 1] * (ml / (ml - 1.0));
    }
    std::vector<SumLevel> levels(prefix.size());
    for (std::size_t j = 0; j < prefix.size(); ++j) levels[j].exponent = prefix[j];
    levels.back().extra = &ptable;
    levels.back().extra_series = &pseries;
    return nested_decreasing_sum(levels, 1, M);
  };
  const DoublingResult r = run_doubling(evaluate, p);
  return {r.value, r.err, r.switch_m, r.converged};
}

// ---------------------------------------------------------------------------
// eval_periodic

Evaluation eval_periodic(std::span<const int> prefix, std::span<const int> block,
                         const TruncationParams& p) {
  validate_params(p);
  if (block.empty()) throw DomainError("periodic tail needs a nonempty block");
  for (int k : block)
    if (k < 1) throw DomainError("index entries must be >= 1");
  if (std::all_of(block.begin(), block.end(), [](int k) { return k == 1; }))
    return eval_tail_l(prefix, 1, p);
  const int first = prefix.empty() ? block[0] : prefix[0];
  if (first < 2) throw InadmissibleIndexError("k1 must be >= 2");

  TruncationParams inner = p;
  inner.tol = std::min(p.tol * 1e-3, 1e-12);

  const int cap = p.block_reps_cap;
  std::vector<int> idx(prefix.begin(), prefix.end());
  std::vector<double> v;
  double accel = 0.0, accel_err = kInf;
  bool have_accel = false;
  for (int d = 1; d <= cap; ++d) {
    idx.insert(idx.end(), block.begin(), block.end());
    v.push_back(eval_finite(idx, inner).value);
    const std::size_t n = v.size();
    if (n >= 3) {
      const double d1 = v[n - 2] - v[n - 3];
      const double d2 = v[n - 1] - v[n - 2];
      const double denom = d2 - d1;
      const double a = std::fabs(denom) < 1e-305 ? v[n - 1] : v[n - 1] - d2 * d2 / denom;
      if (have_accel) accel_err = std::fabs(a - accel);
      accel = a;
      have_accel = true;
      const bool geometric = d1 == 0.0 || std::fabs(d2) < std::fabs(d1);
      if (geometric && d >= 4) {
        if (p.extrapolate && accel_err < p.tol) return {accel, std::max(accel_err, 0.0), d, true};
        if (!p.extrapolate) {
          const double ratio = d1 == 0.0 ? 0.0 : d2 / d1;
          const double tail =
              std::fabs(ratio < 1.0 && ratio >= 0.0 ? d2 * ratio / (1.0 - ratio) : d2);
          if (tail <= p.tol) return {v.back(), tail, d, true};
        }
      }
    }
  }
  // ran out of repetitions
  const double err = v.size() >= 2 ? std::fabs(v[v.size() - 1] - v[v.size() - 2]) : kInf;
  const double value = (p.extrapolate && have_accel) ? accel : v.back();
  return {value, err, cap, false};
}

// ---------------------------------------------------------------------------
// chain_sum and its explicit bound

Evaluation chain_sum(const ChainSpec& spec, const TruncationParams& p) {
  validate_params(p);
  if (spec.depth != static_cast<int>(spec.digits.size()) + 1)
    throw DomainError("chain depth must equal digits.size() + 1");
  if (spec.floor < 1) throw DomainError("chain floor must be >= 1");
  for (int a : spec.digits)
    if (a != 0 && a != 1) throw DomainError("chain digits must be 0 or 1");

  auto evaluate = [&](int M) {
    ChainEvaluator ev(spec.lead_exponent, spec.floor, M);
    for (int a : spec.digits) ev.push_digit(a);
    return ev.depth_sum();
  };
  const DoublingResult r = run_doubling(evaluate, p);
  return {r.value, r.err, r.switch_m, r.converged};
}

ChainBound bound_chain_sum(int r, int s, int n) {
  if (r < 1 || s < 1) throw DomainError("bound_chain_sum needs r, s >= 1");
  if (n < r) throw DomainError("bound_chain_sum needs n >= r");
  ChainBound b;
  if (n == r) {
    double fact = 1.0;
    for (int i = 2; i <= r; ++i) fact *= i;
    b.upper = s / (fact * std::pow(static_cast<double>(r), s));
  } else {
    double denom = 1.0;
    for (int i = 1; i <= r; ++i) denom *= (n - i);
    b.upper = 1.0 / (denom * std::pow(static_cast<double>(r), s));
  }
  return b;
}

// ---------------------------------------------------------------------------

EvalMethod method_for(const Index& i) {
  switch (i.tail_kind()) {
    case TailKind::Finite:
      return EvalMethod::Finite;
    case TailKind::Constant:
      return EvalMethod::TailL;
    case TailKind::Periodic:
      return EvalMethod::Periodic;
  }
  return EvalMethod::Finite;
}

Evaluation eval_index(const Index& i, const TruncationParams& p) {
  if (i.is_divergent()) return divergent_evaluation();
  switch (i.tail_kind()) {
    case TailKind::Finite:
      return eval_finite(i.prefix(), p);
    case TailKind::Constant:
      return eval_tail_l(i.prefix(), i.constant(), p);
    case TailKind::Periodic:
      return eval_periodic(i.prefix(), i.block(), p);
  }
  throw DomainError("unreachable");
}

}  // namespace zetastar
