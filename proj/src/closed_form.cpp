#include "zetastar/closed_form.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "zetastar/errors.hpp"
#include "zetastar/kahan.hpp"

namespace zetastar {

namespace {

using std::complex;
constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 607/128 (15 terms).
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

complex<double> lanczos_gamma(complex<double> z) {
  // valid for Re z >= 0.5
  complex<double> a = kLanczos[0];
  for (int k = 1; k < 15; ++k) a += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  const complex<double> t = z + (kLanczosG - 0.5);
  return std::sqrt(2.0 * kPi) * std::pow(t, z - 0.5) * std::exp(-t) * a;
}

complex<double> kth_root(int j, int k) {
  const double theta = 2.0 * kPi * j / k;
  return {std::cos(theta), std::sin(theta)};
}

complex<double> odd_root(int j, int k) {
  // c^k = -1: c = exp(i pi (2j+1)/k)
  const double theta = kPi * (2.0 * j + 1.0) / k;
  return {std::cos(theta), std::sin(theta)};
}

// Strict alternating tail sum_{m>M} (-1)^m m^-tau (Boole summation).
double alternating_tail(int tau, int M) {
  const double a = M + 1;
  const double f = std::pow(a, -tau);
  const double fp = -tau * std::pow(a, -tau - 1);
  const double sign = (M + 1) % 2 == 0 ? 1.0 : -1.0;
  return sign * (0.5 * f - 0.25 * fp);
}

}  // namespace

complex<double> complex_gamma(complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw DomainError("gamma pole at nonpositive integer");
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  }
  return lanczos_gamma(z);
}

TwoChannel const_index_closed(int k) {
  if (k < 2) throw DomainError("const_index_closed requires k >= 2");
  TwoChannel out;

  // Gamma channel: conjugate root pairs multiplied pairwise keep the
  // partial products real.
  double g = 1.0;  // j = 0: Gamma(1) = 1
  if (k % 2 == 0) g *= 2.0;  // c = -1: Gamma(3) = 2
  for (int j = 1; 2 * j < k; ++j)
    g *= std::norm(complex_gamma(2.0 - kth_root(j, k)));
  out.gamma_form = g;

  out.product_form = tail_product_limit(k);
  out.product_err = 16.0 * std::numeric_limits<double>::epsilon() * out.product_form;
  return out;
}

TwoChannel two_n_one_closed(int n) {
  if (n < 1) throw DomainError("two_n_one_closed requires n >= 1");
  const int K = 2 * n + 1;
  TwoChannel out;

  double g = 0.5;  // j = 0: Gamma(1)/Gamma(3) = 1/2
  for (int j = 1; 2 * j < K; ++j) {
    const complex<double> c = kth_root(j, K);
    g *= std::norm(complex_gamma(2.0 - c) / complex_gamma(2.0 + c));
  }
  out.gamma_form = 2.0 * g;

  // 2 prod (m^K+1)/(m^K-1); log term = 2 sum_{i odd} m^(-iK)/i
  constexpr int M = 4096;
  KahanAccumulator logs;
  for (int m = 2; m <= M; ++m) {
    const double mk = std::pow(static_cast<double>(m), K);
    logs.add(std::log1p(1.0 / mk) - std::log1p(-1.0 / mk));
  }
  for (int i = 1; i * K <= TailSeries::kMaxPow + 1; i += 2) {
    TailSeries t = zeta_tail_from(i * K);
    t.add(i * K, -1.0);  // strict tail
    logs.add((2.0 / i) * t.eval(M));
  }
  out.product_form = 2.0 * std::exp(logs);
  out.product_err = 16.0 * std::numeric_limits<double>::epsilon() * out.product_form;
  return out;
}

TwoChannel hoffman_like_closed(int n) {
  if (n < 0) throw DomainError("hoffman_like_closed requires n >= 0");
  const int K = 2 * n + 2;
  TwoChannel out;

  // roots of +1: c = 1 gives Gamma(1) Gamma(1/2)^-2 = 1/pi,
  //              c = -1 gives Gamma(3) Gamma(3/2)^-2 = 8/pi
  double plus = (1.0 / kPi) * (8.0 / kPi);
  for (int j = 1; 2 * j < K; ++j) {
    const complex<double> c = kth_root(j, K);
    const double nh = std::norm(complex_gamma(1.0 - c / 2.0));
    plus *= std::norm(complex_gamma(2.0 - c)) / (nh * nh);
  }
  // roots of -1 come in conjugate pairs (j, K-1-j), none real for even K
  double minus = 1.0;
  for (int j = 0; 2 * j < K - 1; ++j) {
    const complex<double> c = odd_root(j, K);
    const double nh = std::norm(complex_gamma(1.0 - c / 2.0));
    minus *= (nh * nh) / std::norm(complex_gamma(2.0 - c));
  }
  out.gamma_form = 2.0 * plus * minus;

  // 2 prod (m^K-(-1)^m)/(m^K+(-1)^m); log term = -2 sum_{i odd} (-1)^m/(i m^(iK))
  constexpr int M = 65536;
  KahanAccumulator logs;
  for (int m = 2; m <= M; ++m) {
    const double mk = std::pow(static_cast<double>(m), K);
    const double s = (m % 2 == 0) ? 1.0 : -1.0;
    logs.add(std::log1p(-s / mk) - std::log1p(s / mk));
  }
  for (int i = 1; i * K <= TailSeries::kMaxPow + 1; i += 2)
    logs.add((-2.0 / i) * alternating_tail(i * K, M));
  out.product_form = 2.0 * std::exp(logs);
  out.product_err = 32.0 * std::numeric_limits<double>::epsilon() * out.product_form;
  return out;
}

double staircase_closed(int n) {
  if (n < 2) throw DomainError("staircase_closed requires n >= 2");
  return static_cast<double>(n);
}

double tail2_reduction(std::span<const int> index, const TruncationParams& p) {
  if (index.empty()) throw InadmissibleIndexError("empty index");
  if (index[0] < 2) throw InadmissibleIndexError("k1 must be >= 2");
  for (int k : index)
    if (k < 1) throw InadmissibleIndexError("index entries must be >= 1");

  long long weight = 0;
  for (int k : index) weight += k;

  auto finite_star = [&](std::vector<int> idx) { return eval_finite(idx, p).value; };

  KahanAccumulator inner;
  long long head = 0;  // k_1 + ... + k_{s-1}
  for (std::size_t s = 0; s < index.size(); ++s) {
    const int ks = index[s];
    std::vector<int> base(index.begin(), index.begin() + s);
    if (ks > 2) {
      for (int j = 2; j <= ks - 1; ++j) {
        const double sign = ((head + j) % 2 == 0) ? 1.0 : -1.0;
        std::vector<int> idx = base;
        idx.push_back(j);
        inner.add(sign * finite_star(std::move(idx)));
      }
    } else if (ks == 1) {
      // descending range flips sign: -(the j = 1 term)
      const double sign = ((head + 1) % 2 == 0) ? 1.0 : -1.0;
      std::vector<int> idx = base;
      idx.push_back(1);
      inner.add(-sign * finite_star(std::move(idx)));
    }
    head += ks;
  }
  const double sign = (weight % 2 == 0) ? 1.0 : -1.0;
  return sign * (2.0 - 2.0 * inner);
}

}  // namespace zetastar
