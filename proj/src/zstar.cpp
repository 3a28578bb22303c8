#include "zetastar/zstar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "zetastar/errors.hpp"
#include "zetastar/index.hpp"
#include "zetastar/kahan.hpp"

namespace zetastar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int chain_switch(const TruncationParams& p) { return std::min(p.m_cap, 2048); }

// Depth x at which the remainder model 10 x / 3^x drops below tol.
int model_depth(double tol) {
  int x = 6;
  while (x < 64 && 10.0 * x * std::pow(3.0, -x) >= tol) ++x;
  return x;
}

struct DepthPlan {
  int depth = 0;
  long second_zero = -1;  // -1: capped path (z = 1 - 2^-p)
  double model_err = 0.0;
};

DepthPlan plan_depth(const DigitStream& s, double tol) {
  DepthPlan plan;
  const long z2 = s.second_zero();
  if (z2 > 0) {
    plan.second_zero = z2;
    plan.depth = static_cast<int>(z2) + model_depth(tol);
    plan.model_err = 10.0 * (plan.depth - z2) * std::pow(3.0, -(plan.depth - z2));
    return plan;
  }
  // at most one zero digit: z = 1 - 2^-p; remainder ~ (r-p) 2^(p-r)
  const long p1 = std::max(s.first_zero(), 1L);
  int r = static_cast<int>(p1) + 8;
  while (r < 1400 && 8.0 * (r - p1 + 2) * std::ldexp(1.0, static_cast<int>(p1) - r) >= tol) ++r;
  plan.depth = r;
  plan.model_err = 8.0 * (r - p1 + 2) * std::ldexp(1.0, static_cast<int>(p1) - r);
  return plan;
}

struct SeriesSum {
  double value = 0.0;
  double err = 0.0;
  int depth = 0;
  bool converged = false;
};

// Digit series 1 + z/2 + sum_d a_d S_d R_d with
// R_d = 2^d (z - sum_{i<d} a_i/2^i), tracked exactly through the integer
// long-division state w: R_d = 2 w_d / q, w_{d+1} = 2 w_d - a_d q.
SeriesSum zstar_series(const DigitStream& s, int depth, double model_err,
                       const TruncationParams& p) {
  const std::int64_t q = s.value_den();
  std::int64_t w = s.value_num();
  ChainEvaluator chain(2, 3, chain_switch(p));
  KahanAccumulator acc;
  acc.add(1.0);
  acc.add(0.5 * s.value());
  double last_term = 0.0;
  for (int d = 1; d <= depth; ++d) {
    const int a = s.digit(static_cast<std::size_t>(d));
    if (a == 1) {
      const double R = 2.0 * static_cast<double>(w) / static_cast<double>(q);
      last_term = chain.depth_sum() * R;
      acc.add(last_term);
    }
    w = 2 * w - a * q;
    if (d < depth) chain.push_digit(a);
  }
  SeriesSum out;
  out.value = acc;
  out.depth = depth;
  out.err = model_err + std::fabs(last_term) * 1e-12 +
            8.0 * std::numeric_limits<double>::epsilon() * std::fabs(out.value);
  out.converged = out.err <= std::max(p.tol, 1e-13 * std::fabs(out.value));
  return out;
}

SeriesSum zstar_core(const DigitStream& s, int depth_override, const TruncationParams& p) {
  if (s.value_num() == s.value_den()) return {kInf, 0.0, 0, true};  // z = 1
  DepthPlan plan = plan_depth(s, p.tol);
  if (depth_override > plan.depth) {
    const long z2 = plan.second_zero;
    plan.depth = depth_override;
    plan.model_err =
        z2 > 0 ? 10.0 * (plan.depth - z2) * std::pow(3.0, -(plan.depth - z2))
               : 8.0 * (plan.depth - std::max(s.first_zero(), 1L) + 2) *
                     std::ldexp(1.0, static_cast<int>(std::max(s.first_zero(), 1L)) - plan.depth);
  } else if (depth_override > 0) {
    plan.depth = depth_override;
  }
  return zstar_series(s, plan.depth, plan.model_err, p);
}

}  // namespace

// ---------------------------------------------------------------------------
// ZPoint

ZPoint ZPoint::from_dyadic(const Dyadic& d) {
  if (d.is_zero()) throw DomainError("Z* domain is (0, 1]");
  ZPoint z;
  z.digits_ = DigitStream::from_dyadic(d);
  z.exact_ = d;
  z.approx_ = d.to_double();
  return z;
}

ZPoint ZPoint::from_rational(std::int64_t p, std::int64_t q) {
  if (q <= 0 || p <= 0 || p > q) throw DomainError("Z* domain is (0, 1]");
  ZPoint z;
  z.digits_ = DigitStream::from_rational(p, q);
  z.exact_ = z.digits_.as_dyadic();
  z.approx_ = z.digits_.value();
  return z;
}

ZPoint ZPoint::from_double(double x) {
  if (!(x > 0.0) || x > 1.0) throw DomainError("Z* domain is (0, 1]");
  int e = 0;
  const double m = std::frexp(x, &e);  // x = m 2^e, m in [0.5, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
  int shift = 53 - e;  // x = mant / 2^shift
  std::uint64_t num = mant;
  while (shift > 0 && num % 2 == 0) {
    num /= 2;
    --shift;
  }
  if (shift < 0 || shift > static_cast<int>(Dyadic::kMaxExponent))
    throw DomainError("binary64 input too deep for the exact dyadic type");
  return from_dyadic(Dyadic::from_parts(num, static_cast<unsigned>(shift)));
}

// ---------------------------------------------------------------------------

Evaluation zstar(const ZPoint& z, const TruncationParams& p) {
  const SeriesSum r = zstar_core(z.digits(), -1, p);
  return {r.value, r.err, r.depth, r.converged};
}

Evaluation zstar_via_index(const ZPoint& z, const TruncationParams& p) {
  if (z.digits().value_num() == z.digits().value_den())
    return eval_index(Index::constant_tail({2}, 1), p);  // z = 1 -> (2,{1}^inf)
  const Index raw = index_from_digits(z.digits());
  return eval_index(raw.with_first_entry_bumped(), p);
}

// ---------------------------------------------------------------------------
// one-sided derivatives at dyadic points

bool DerivativeReport::divergent() const { return std::isinf(value); }

namespace {

// terminating digits b_1..b_n of a dyadic (b_n = 1), plus the partial sums
// of the finite derivative series; the chain evaluator is left at depth n
// for the left-derivative correction term.
struct DyadicSeries {
  double dplus = 0.0;
  int depth = 0;
  bool all_ones = true;
};

DyadicSeries dplus_series(const Dyadic& z, ChainEvaluator& chain) {
  DyadicSeries out;
  const unsigned n = z.exponent();
  KahanAccumulator acc;
  acc.add(0.5);
  for (unsigned d = 1; d <= n; ++d) {
    const int a = z.terminating_digit(d);
    if (a == 1)
      acc.add(chain.depth_sum() * std::ldexp(1.0, static_cast<int>(d)));
    else
      out.all_ones = false;
    if (d < n) chain.push_digit(a);
  }
  out.dplus = acc;
  out.depth = static_cast<int>(n);
  return out;
}

}  // namespace

DerivativeReport right_derivative(const Dyadic& z, const TruncationParams& p) {
  if (z.is_one() || !(z < Dyadic::from_parts(1, 0)))
    throw DomainError("right derivative needs 0 <= z < 1");
  DerivativeReport rep;
  rep.side = DerivativeSide::Right;
  if (z.is_zero()) {
    rep.value = 0.5;  // empty series
    return rep;
  }
  ChainEvaluator chain(2, 3, chain_switch(p));
  const DyadicSeries s = dplus_series(z, chain);
  rep.value = s.dplus;
  rep.truncation_depth = s.depth;
  rep.error_model = 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(rep.value);
  return rep;
}

DerivativeReport left_derivative(const Dyadic& z, const TruncationParams& p) {
  if (z.is_zero() || z.is_one()) throw DomainError("left derivative needs 0 < z < 1");
  DerivativeReport rep;
  rep.side = DerivativeSide::Left;
  ChainEvaluator chain(2, 3, chain_switch(p));
  const DyadicSeries s = dplus_series(z, chain);
  rep.truncation_depth = s.depth;
  if (s.all_ones) {
    // z = 1 - 2^-n: the correction sum diverges
    rep.value = kInf;
    return rep;
  }
  const double correction = chain.weighted_sum() * std::ldexp(1.0, s.depth);
  rep.value = s.dplus + correction;
  rep.error_model = 16.0 * std::numeric_limits<double>::epsilon() * std::fabs(rep.value);
  return rep;
}

DerivativeReport derivative_nondyadic(const ZPoint& z, const TruncationParams& p) {
  const DigitStream& s = z.digits();
  const bool periodic_mixed =
      s.tail() == DigitTail::Periodic &&
      std::any_of(s.block().begin(), s.block().end(), [](std::uint8_t b) { return b == 0; }) &&
      std::any_of(s.block().begin(), s.block().end(), [](std::uint8_t b) { return b == 1; });
  if (!periodic_mixed)
    throw HypothesisUnmetError(
        "two-sided derivative needs infinitely many zero and one digits; "
        "use the one-sided operations at dyadic points");

  const long t = s.second_zero();
  // derivative series terms decay like (d-t)(2/3)^(d-t) 2^t
  int extra = 8;
  const double scale = std::ldexp(10.0, static_cast<int>(t));
  while (extra < 400 &&
         scale * (extra) * std::pow(2.0 / 3.0, extra) >= p.tol)
    ++extra;
  const int depth = static_cast<int>(t) + extra;

  ChainEvaluator chain(2, 3, chain_switch(p));
  KahanAccumulator acc;
  acc.add(0.5);
  double at_checkpoint = 0.0;
  const int checkpoint = depth - 8;
  for (int d = 1; d <= depth; ++d) {
    const int a = s.digit(static_cast<std::size_t>(d));
    if (a == 1) acc.add(chain.depth_sum() * std::ldexp(1.0, d));
    if (d == checkpoint) at_checkpoint = acc;
    if (d < depth) chain.push_digit(a);
  }
  DerivativeReport rep;
  rep.side = DerivativeSide::TwoSided;
  rep.value = acc;
  rep.truncation_depth = depth;
  rep.error_model =
      std::max(scale * extra * std::pow(2.0 / 3.0, extra), std::fabs(rep.value - at_checkpoint));
  return rep;
}

// ---------------------------------------------------------------------------

double divergence_ratio(int p, int q, const TruncationParams& params) {
  if (p < 1 || q <= p) throw DomainError("divergence_ratio needs q > p >= 1");
  if (q > 58) throw DomainError("divergence_ratio: q too large for exact dyadics");
  const Dyadic z = Dyadic::from_parts((std::uint64_t{1} << p) - 1, static_cast<unsigned>(p));
  const Dyadic zh = z.minus_pow2(static_cast<unsigned>(q));

  // shared truncation depth; the 2^q quotient amplifies absolute error
  int depth = q + p + 28;
  const double amp = std::ldexp(1.0, q);
  while (depth < 1400 &&
         amp * 8.0 * (depth - p + 2) * std::ldexp(1.0, p - depth) >= params.tol)
    ++depth;

  const SeriesSum a = zstar_core(DigitStream::from_dyadic(z), depth, params);
  const SeriesSum b = zstar_core(DigitStream::from_dyadic(zh), depth, params);
  return (a.value - b.value) * amp;
}

ZPoint invert_zstar(double v, const TruncationParams& p, int digit_depth) {
  if (!(v > 1.0)) throw DomainError("invert_zstar: range of Z* is (1, inf]");
  if (!std::isfinite(v)) return ZPoint::from_dyadic(Dyadic::from_parts(1, 0));  // Z*(1) = inf
  const int depth = std::clamp(digit_depth, 1, static_cast<int>(Dyadic::kMaxExponent) - 1);
  std::uint64_t num = 0;
  for (int k = 1; k <= depth; ++k) {
    const std::uint64_t candidate = (num << 1) | 1u;
    const Dyadic mid = Dyadic::from_parts(candidate, static_cast<unsigned>(k));
    const double zm = zstar(ZPoint::from_dyadic(mid), p).value;
    num = (zm <= v) ? candidate : (num << 1);
  }
  if (num == 0) num = 1;  // v below Z*(2^-depth): return the smallest grid point
  return ZPoint::from_dyadic(Dyadic::from_parts(num, static_cast<unsigned>(depth)));
}

std::vector<GraphRow> graph_samples(int n, const TruncationParams& p) {
  if (n < 2) throw DomainError("graph_samples needs n >= 2");
  if (n > (1 << 22)) throw DomainError("graph_samples: grid too fine");
  unsigned level = 0;
  while ((std::uint64_t{1} << level) < static_cast<std::uint64_t>(n)) ++level;
  std::vector<GraphRow> rows;
  const std::uint64_t grid = std::uint64_t{1} << level;
  for (std::uint64_t j = 1; j <= std::min<std::uint64_t>(n, grid); ++j) {
    if (j == grid) continue;  // Z*(1) = inf
    const Dyadic z = Dyadic::from_parts(j, level);
    rows.push_back({z, zstar(ZPoint::from_dyadic(z), p).value});
  }
  return rows;
}

void write_graph_csv(std::ostream& os, const std::vector<GraphRow>& rows) {
  os << "z,zstar\n";
  char buf[64];
  for (const GraphRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", r.z.to_double(), r.value);
    os << buf;
  }
}

}  // namespace zetastar
