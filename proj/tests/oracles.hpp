// Test-only oracles, independent of the library's evaluation paths:
// plain summation loops, Aitken/Richardson limits, and the product-limit
// definition of Gamma.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

inline double aitken_limit(std::vector<double> v) {
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

// sum_{m1 >= m2 >= 1, m1 <= M} 1/(m1^3 m2): running harmonic numbers,
// no shared code with the engine
inline double brute_zs31(std::int64_t M) {
  double sum = 0.0, harmonic = 0.0;
  for (std::int64_t m = 1; m <= M; ++m) {
    harmonic += 1.0 / static_cast<double>(m);
    sum += harmonic / (static_cast<double>(m) * m * m);
  }
  return sum;
}

// sum_{m1 >= m2 >= m3 >= floor, m1 <= M} 1/(m1^2 m2 m3): literal triple loop
// (a strict lower bound of the full chain sum)
inline double brute_triple_chain(int floor, int M) {
  double sum = 0.0;
  for (int m3 = floor; m3 <= M; ++m3)
    for (int m2 = m3; m2 <= M; ++m2) {
      double inner = 0.0;
      for (int m1 = m2; m1 <= M; ++m1) inner += 1.0 / (static_cast<double>(m1) * m1);
      sum += inner / (static_cast<double>(m2) * m3);
    }
  return sum;
}

// full chain sum_{m1 >= m2 >= m3 >= floor} 1/(m1^2 m2 m3) by plain suffix
// accumulation with midpoint-rule tail pads (every summand past M behaves
// like u^-2, so the pad 1/(M+1/2) leaves an O(log M / M^2) residual)
inline double padded_triple_chain(int floor, std::int64_t M) {
  const double pad = 1.0 / (static_cast<double>(M) + 0.5);
  std::vector<double> w(static_cast<std::size_t>(M) + 2, 0.0);
  w[M + 1] = pad;
  for (std::int64_t m = M; m >= floor; --m)
    w[m] = 1.0 / (static_cast<double>(m) * m) + w[m + 1];
  std::vector<double> w2(static_cast<std::size_t>(M) + 2, 0.0);
  w2[M + 1] = pad;
  for (std::int64_t m = M; m >= floor; --m) w2[m] = w[m] / static_cast<double>(m) + w2[m + 1];
  double sum = pad;
  for (std::int64_t m = M; m >= floor; --m) sum += w2[m] / static_cast<double>(m);
  return sum;
}

// Gamma via the product limit n^z n! / (z (z+1) ... (z+n)) in log space,
// Aitken-extrapolated over n = 2^{e0}, 2^{e0+1}, ...
inline std::complex<double> gamma_product_limit(std::complex<double> z) {
  std::vector<double> re, im;
  for (int e = 16; e <= 20; ++e) {
    const std::int64_t n = std::int64_t{1} << e;
    std::complex<double> logg = std::log(static_cast<double>(n)) * z;
    for (std::int64_t k = 0; k <= n; ++k) {
      if (k > 0) logg += std::log(static_cast<double>(k));
      logg -= std::log(z + static_cast<double>(k));
    }
    const std::complex<double> g = std::exp(logg);
    re.push_back(g.real());
    im.push_back(g.imag());
  }
  return {aitken_limit(re), aitken_limit(im)};
}

}  // namespace oracles
