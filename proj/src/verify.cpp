#include "zetastar/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

#include "zetastar/closed_form.hpp"
#include "zetastar/kahan.hpp"
#include "zetastar/zstar.hpp"

namespace zetastar {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(const TruncationParams& base) : base_(base) {}

  VerifyReport take() { return std::move(report_); }

  void against(int criterion, std::string name, double expected, double computed, double tol) {
    VerifyCheck c;
    c.criterion = criterion;
    c.name = std::move(name);
    c.expected = expected;
    c.computed = computed;
    c.residual = std::fabs(computed - expected);
    c.tolerance = tol;
    c.pass = c.residual <= tol;
    report_.checks.push_back(std::move(c));
  }

  /// computed must stay below cap (runtime rows, bound ratios, count rows)
  void below(int criterion, std::string name, double computed, double cap) {
    VerifyCheck c;
    c.criterion = criterion;
    c.name = std::move(name);
    c.expected = cap;
    c.computed = computed;
    c.residual = computed - cap;
    c.tolerance = 0.0;
    c.pass = computed <= cap;
    report_.checks.push_back(std::move(c));
  }

  void above(int criterion, std::string name, double computed, double floor) {
    VerifyCheck c;
    c.criterion = criterion;
    c.name = std::move(name);
    c.expected = floor;
    c.computed = computed;
    c.residual = floor - computed;
    c.tolerance = 0.0;
    c.pass = computed >= floor;
    report_.checks.push_back(std::move(c));
  }

  const TruncationParams& params() const { return base_; }

 private:
  TruncationParams base_;
  VerifyReport report_;
};

// Rounded to 0.1 s so that the report stays byte-identical across runs.
double seconds_since(std::chrono::steady_clock::time_point t0) {
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::round(s * 10.0) / 10.0;
}

double aitken_limit(std::vector<double> v) {
  while (v.size() >= 3) {
    std::vector<double> nxt;
    for (std::size_t i = 0; i + 2 < v.size(); ++i) {
      const double d1 = v[i + 1] - v[i];
      const double d2 = v[i + 2] - v[i + 1];
      const double den = d2 - d1;
      nxt.push_back(std::fabs(den) < 1e-300 ? v[i + 2] : v[i + 2] - d2 * d2 / den);
    }
    v = std::move(nxt);
  }
  return v.back();
}

double zstar_at(const Dyadic& z, const TruncationParams& p) {
  return zstar(ZPoint::from_dyadic(z), p).value;
}

// Zhao-style weighted representation, truncated at M:
//   sum_{m_1 >= ... >= m_d >= 1} sign^(m_1+...+m_d) 2^{#distinct} / prod m_j^K
double zhao_rep(int d, int K, bool alternating, int M) {
  std::vector<double> T(static_cast<std::size_t>(M) + 1, 0.0);
  for (int m = 1; m <= M; ++m) {
    const double s = alternating && (m % 2 == 1) ? -1.0 : 1.0;
    T[m] = s * std::pow(static_cast<double>(m), -K);
  }
  const std::vector<double> weight = T;  // sign * m^-K
  for (int level = 1; level < d; ++level) {
    std::vector<double> next(T.size(), 0.0);
    double below = 0.0;  // sum_{m' < m} T(m')
    for (int m = 1; m <= M; ++m) {
      next[m] = weight[m] * (T[m] + 2.0 * below);
      below += T[m];
    }
    T = std::move(next);
  }
  KahanAccumulator acc;
  for (int m = 1; m <= M; ++m) acc.add(2.0 * T[m]);
  return acc;
}

std::vector<int> repeat_block(const std::vector<int>& block, int reps,
                              std::vector<int> tail = {}) {
  std::vector<int> idx;
  for (int i = 0; i < reps; ++i) idx.insert(idx.end(), block.begin(), block.end());
  idx.insert(idx.end(), tail.begin(), tail.end());
  return idx;
}

// sum_{m_1 >= ... >= m_s >= n} 1/(m_1^(r+1) m_2 ... m_s), machine accurate
double free_chain(int r, int s, int n) {
  std::vector<SumLevel> levels(static_cast<std::size_t>(s));
  levels[0].exponent = r + 1;
  for (int j = 1; j < s; ++j) levels[j].exponent = 1;
  return nested_decreasing_sum(levels, n, 2048);
}

void criterion_1(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  const double series = eval_tail_l({}, 2, suite.params()).value;
  const double closed = const_index_closed(2).gamma_form;
  const double elapsed = seconds_since(t0);
  suite.against(1, "const-tail l=2: series value = 2", 2.0, series, 1e-9);
  suite.against(1, "const-tail l=2: gamma product = 2", 2.0, closed, 1e-9);
  suite.below(1, "const-tail l=2: runtime seconds", elapsed, 1.0);
}

void criterion_2(Suite& suite) {
  const double exact = 8.0 * kPi / (std::exp(kPi) - std::exp(-kPi));
  const TwoChannel ch = const_index_closed(4);
  const double series = eval_tail_l({}, 4, suite.params()).value;
  suite.against(2, "const-tail l=4: series vs closed form", exact, series, 1e-9);
  suite.against(2, "const-tail l=4: series vs gamma product", ch.gamma_form, series, 1e-10);
  suite.against(2, "const-tail l=4: closed form vs gamma product", exact, ch.gamma_form, 1e-10);
}

void criterion_3(Suite& suite) {
  const double exact = 2.0 * riemann_zeta(2) - 2.0;
  const double series = eval_tail_l(std::vector<int>{3}, 2, suite.params()).value;
  const double reduced = tail2_reduction(std::vector<int>{3}, suite.params());
  suite.against(3, "(3,{2}^inf): series vs 2*zeta(2)-2", exact, series, 1e-8);
  suite.against(3, "(3,{2}^inf): reduction vs 2*zeta(2)-2", exact, reduced, 1e-8);
  suite.against(3, "(3,{2}^inf): series vs reduction", reduced, series, 1e-8);
}

void criterion_4(Suite& suite) {
  TruncationParams p = suite.params();
  p.block_reps_cap = 20;
  p.extrapolate = true;
  const double periodic = eval_periodic({}, std::vector<int>{2, 1}, p).value;
  suite.against(4, "({2,1}^inf): block limit = 3", 3.0, periodic, 1e-5);
  suite.against(4, "({2,1}^inf): closed form = 3", 3.0, two_n_one_closed(1).gamma_form, 1e-10);
}

void criterion_5(Suite& suite) {
  const double exact = 4.0 * (std::exp(kPi) + 1.0) / (kPi * (std::exp(kPi) - 1.0));
  const TwoChannel ch = hoffman_like_closed(0);
  TruncationParams p = suite.params();
  p.block_reps_cap = 20;
  const double periodic = eval_periodic({}, std::vector<int>{3, 1}, p).value;
  suite.against(5, "({3,1}^inf): closed form vs exact expression", exact, ch.gamma_form, 1e-10);
  suite.against(5, "({3,1}^inf): block limit vs exact expression", exact, periodic, 1e-5);
  suite.against(5, "({3,1}^inf): block limit vs closed form", ch.gamma_form, periodic, 1e-5);
}

void criterion_6(Suite& suite) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<int> block{2};
    block.insert(block.end(), static_cast<std::size_t>(n - 2), 1);
    const double v = eval_periodic({}, block, suite.params()).value;
    suite.against(6, "staircase ({2,{1}^" + std::to_string(n - 2) + "}^inf) = " + std::to_string(n),
                  staircase_closed(n), v, 1e-5);
  }
}

void criterion_7(Suite& suite) {
  double worst = 0.0;
  int count = 0;
  for (int r = 1; r <= 3; ++r) {
    std::vector<int> idx(static_cast<std::size_t>(r), 1);
    const auto enumerate = [&](auto&& self, int pos) -> void {
      if (pos == r) {
        std::vector<int> bumped = idx;
        bumped.back() += 1;
        const double lhs = eval_tail_l(bumped, 1, suite.params()).value;
        const double rhs = eval_finite(idx, suite.params()).value;
        worst = std::max(worst, std::fabs(lhs - rhs));
        ++count;
        return;
      }
      const int lo = pos == 0 ? 2 : 1;
      for (int k = lo; k <= 4; ++k) {
        idx[static_cast<std::size_t>(pos)] = k;
        self(self, pos + 1);
      }
    };
    enumerate(enumerate, 0);
  }
  suite.below(7, "tail-1 absorption over " + std::to_string(count) + " finite indices: max |diff|",
              worst, 1e-8);
}

void criterion_8(Suite& suite) {
  for (int n = 2; n <= 3; ++n) {
    for (int a = 1; a <= 2; ++a) {
      std::vector<int> block{2};
      block.insert(block.end(), static_cast<std::size_t>(n - 2), 1);
      const std::vector<int> idx = repeat_block(block, a, {1});
      const double lhs = eval_finite(idx, suite.params()).value;
      const double rhs = n * riemann_zeta(a * n + 1);
      suite.against(8, "({2,{1}^" + std::to_string(n - 2) + "}^" + std::to_string(a) +
                           ",1) = " + std::to_string(n) + " zeta(" + std::to_string(a * n + 1) + ")",
                    rhs, lhs, 1e-8);
    }
  }
}

void criterion_9(Suite& suite) {
  constexpr int M = 2000;
  for (int d = 1; d <= 2; ++d) {
    const std::vector<int> idx = repeat_block({2, 1}, d);
    const double star = eval_finite(idx, suite.params()).value;
    const double rep = zhao_rep(d, 3, false, M);
    suite.against(9, "doubled-weight form of ({2,1}^" + std::to_string(d) + ")", star, rep, 1e-6);
  }
  for (int d = 1; d <= 2; ++d) {
    const std::vector<int> idx = repeat_block({3, 1}, d);
    const double star = eval_finite(idx, suite.params()).value;
    const double rep = zhao_rep(2 * d, 2, true, M);
    suite.against(9, "signed-weight form of ({3,1}^" + std::to_string(d) + ")", star, rep, 1e-6);
  }
}

void criterion_10(Suite& suite) {
  const double z2 = riemann_zeta(2);
  const ZPoint half = ZPoint::from_rational(1, 2);
  const double direct = zstar(half, suite.params()).value;
  const double via = zstar_via_index(half, suite.params()).value;
  suite.against(10, "Z*(1/2) digit series = zeta(2)", z2, direct, 1e-8);
  suite.against(10, "Z*(1/2) index dispatch = zeta(2)", z2, via, 1e-8);
  suite.against(10, "Z*(1/2) mutual agreement", via, direct, 1e-9);
}

void criterion_11(Suite& suite) {
  int violations = 0;
  double prev = 1.0;  // Z* > 1 on (0,1]
  for (int j = 1; j < 1024; ++j) {
    const double v = zstar_at(Dyadic::from_parts(static_cast<std::uint64_t>(j), 10), suite.params());
    if (!(v > prev)) ++violations;
    prev = v;
  }
  suite.below(11, "Z* strict monotonicity violations on the 2^-10 grid", violations, 0.0);
}

void criterion_12(Suite& suite) {
  const double targets[] = {1.2, 1.5, riemann_zeta(2), 2.0, 3.0};
  for (const double v : targets) {
    const ZPoint z = invert_zstar(v, suite.params(), 48);
    const double back = zstar(z, suite.params()).value;
    char name[64];
    std::snprintf(name, sizeof name, "invert round trip at v = %.10g", v);
    suite.against(12, name, v, back, 1e-6);
  }
}

void criterion_13(Suite& suite) {
  const TruncationParams& p = suite.params();
  const Dyadic pts[] = {Dyadic::parse("1/2^2"), Dyadic::parse("3/2^3"), Dyadic::parse("5/2^3")};
  for (const Dyadic& z : pts) {
    std::vector<double> right, left;
    for (unsigned q = 14; q <= 20; ++q) {
      const double scale = std::ldexp(1.0, static_cast<int>(q));
      right.push_back((zstar_at(z.plus_pow2(q), p) - zstar_at(z, p)) * scale);
      left.push_back((zstar_at(z, p) - zstar_at(z.minus_pow2(q), p)) * scale);
    }
    const double dplus = right_derivative(z, p).value;
    const double dminus = left_derivative(z, p).value;
    const double fd_plus = aitken_limit(right);
    const double fd_minus = aitken_limit(left);
    suite.below(13, "right derivative vs finite differences at " + z.to_string(),
                std::fabs(fd_plus - dplus) / std::fabs(dplus), 1e-3);
    suite.below(13, "left derivative vs finite differences at " + z.to_string(),
                std::fabs(fd_minus - dminus) / std::fabs(dminus), 1e-3);
  }
  for (int n = 1; n <= 3; ++n) {
    const Dyadic z = Dyadic::from_parts((std::uint64_t{1} << n) - 1, static_cast<unsigned>(n));
    const bool diverges = left_derivative(z, p).divergent();
    suite.against(13, "left derivative divergence flag at " + z.to_string(), 1.0,
                  diverges ? 1.0 : 0.0, 0.0);
    const double lq = divergence_ratio(n, 16, p);
    const double rq = (zstar_at(z.plus_pow2(16), p) - zstar_at(z, p)) * std::ldexp(1.0, 16);
    suite.above(13, "left/right quotient ratio at " + z.to_string() + ", q=16", lq / rq, 10.0);
  }
}

void criterion_14(Suite& suite) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> ratio;
  for (int q = 6; q <= 16; ++q) ratio.push_back(divergence_ratio(1, q, suite.params()));
  int violations = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    if (i > 0 && !(ratio[i] > ratio[i - 1])) ++violations;
    const int q = 6 + static_cast<int>(i);
    const double scaled = ratio[i] / (q - 2);  // q - p - 1 with p = 1
    lo = std::min(lo, scaled);
    hi = std::max(hi, scaled);
  }
  suite.below(14, "difference quotient strictly increasing in q: violations", violations, 0.0);
  suite.below(14, "quotient/(q-p-1) bracket ratio over q=6..16", hi / lo, 4.0);
  suite.below(14, "divergence scan runtime seconds", seconds_since(t0), 30.0);
}

void criterion_15(Suite& suite) {
  double worst51 = 0.0;
  for (int r = 1; r <= 3; ++r)
    for (int s = 1; s <= 4; ++s)
      for (int n = r + 1; n <= 6; ++n)
        worst51 = std::max(worst51, free_chain(r, s, n) / bound_chain_sum(r, s, n).upper);
  suite.below(15, "chain tail bound (n > r), 36 instances: max sum/bound", worst51, 1.0);

  for (int r = 1; r <= 3; ++r) {
    double worst = 0.0;
    for (int s = 1; s <= 4; ++s)
      worst = std::max(worst, free_chain(r, s, r) / bound_chain_sum(r, s, r).upper);
    suite.below(15, "chain bound at n = r = " + std::to_string(r) + ": max sum/bound", worst, 1.0);
  }

  double worst31 = 0.0;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      for (int A = 2; A <= 4; ++A) {
        std::vector<int> ks(static_cast<std::size_t>(b), 1);
        const auto sweep = [&](auto&& self, int pos) -> void {
          if (pos == b) {
            std::vector<SumLevel> lhs(static_cast<std::size_t>(a + b));
            lhs[0].exponent = 2;
            for (int j = 1; j < a; ++j) lhs[static_cast<std::size_t>(j)].exponent = 1;
            for (int j = 0; j < b; ++j)
              lhs[static_cast<std::size_t>(a + j)].exponent = ks[static_cast<std::size_t>(j)];
            const double L = nested_decreasing_sum(lhs, A, 2048);

            std::vector<double> inv1(2048 + 2, 0.0);
            for (int m = 2; m <= 2049; ++m) inv1[static_cast<std::size_t>(m)] = 1.0 / (m - 1);
            TailSeries geom;
            for (int i = 1; i <= TailSeries::kMaxPow; ++i) geom.add(i, 1.0);
            std::vector<SumLevel> rhs(static_cast<std::size_t>(b));
            rhs[0].exponent = ks[0];
            rhs[0].extra = &inv1;
            rhs[0].extra_series = &geom;
            for (int j = 1; j < b; ++j)
              rhs[static_cast<std::size_t>(j)].exponent = ks[static_cast<std::size_t>(j)];
            const double R = nested_decreasing_sum(rhs, A, 2048);
            worst31 = std::max(worst31, L / R);
            return;
          }
          for (int k = 1; k <= 3; ++k) {
            ks[static_cast<std::size_t>(pos)] = k;
            self(self, pos + 1);
          }
        };
        sweep(sweep, 0);
      }
  suite.below(15, "head-absorption inequality, 108 instances: max lhs/rhs", worst31, 1.0);
}

void criterion_16(Suite& suite) {
  const double z = std::ldexp(1.0, -20);
  const double v = zstar(ZPoint::from_double(z), suite.params()).value;
  suite.against(16, "right slope at 0: (Z*(2^-20) - 1) 2^20", 0.5, (v - 1.0) * std::ldexp(1.0, 20),
                1e-3);
}

}  // namespace

bool VerifyReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.pass; });
}

VerifyReport run_verification(const TruncationParams& base, int criterion_filter) {
  Suite suite(base);
  void (*steps[])(Suite&) = {criterion_1,  criterion_2,  criterion_3,  criterion_4,
                             criterion_5,  criterion_6,  criterion_7,  criterion_8,
                             criterion_9,  criterion_10, criterion_11, criterion_12,
                             criterion_13, criterion_14, criterion_15, criterion_16};
  for (int i = 0; i < 16; ++i)
    if (criterion_filter == 0 || criterion_filter == i + 1) steps[i](suite);
  return suite.take();
}

std::string to_tsv(const VerifyReport& report) {
  std::string out = "criterion\tidentity\texpected\tcomputed\tresidual\tstatus\n";
  char buf[256];
  for (const VerifyCheck& c : report.checks) {
    std::snprintf(buf, sizeof buf, "%d\t%s\t%.15g\t%.15g\t%.3e\t%s\n", c.criterion, c.name.c_str(),
                  c.expected, c.computed, c.residual, c.pass ? "PASS" : "FAIL");
    out += buf;
  }
  return out;
}

}  // namespace zetastar
