#pragma once

#include <complex>
#include <span>

#include "zetastar/series.hpp"

namespace zetastar {

/// Gamma function on the complex plane (Lanczos approximation, reflection
/// for Re z < 0.5).  Throws DomainError at the poles (nonpositive integers).
std::complex<double> complex_gamma(std::complex<double> z);

/// A closed-form value computed two independent ways: via a Gamma product
/// over roots of unity and via the direct infinite product over integers.
struct TwoChannel {
  double gamma_form = 0.0;
  double product_form = 0.0;
  double product_err = 0.0;
};

/// zeta-star({k}^inf) = prod_{m>=2} m^k/(m^k-1) = prod_{c^k=1} Gamma(2-c).
TwoChannel const_index_closed(int k);

/// zeta-star({{2}^n,1}^inf) = 2 prod_{c^(2n+1)=1} Gamma(2-c)/Gamma(2+c)
///                          = 2 prod_{m>=2} (m^(2n+1)+1)/(m^(2n+1)-1).
TwoChannel two_n_one_closed(int n);

/// zeta-star({{2}^n,3,{2}^n,1}^inf)
///   = 2 prod_{s=+-1} prod_{c^(2n+2)=s} Gamma(2-c)^s Gamma(1-c/2)^(-2s)
///   = 2 prod_{m>=2} (m^(2n+2)-(-1)^m)/(m^(2n+2)+(-1)^m).
TwoChannel hoffman_like_closed(int n);

/// zeta-star({2,{1}^(n-2)}^inf) = n.
double staircase_closed(int n);

/// zeta-star(k_1..k_r,{2}^inf) by the alternating reduction to finite
/// zeta-star values, with the extended summation convention for descending
/// ranges (k_s = 1 contributes the negated j = 1 term).
double tail2_reduction(std::span<const int> index, const TruncationParams& p = {});

}  // namespace zetastar
