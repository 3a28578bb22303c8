#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "zetastar/digit_stream.hpp"
#include "zetastar/dyadic.hpp"
#include "zetastar/series.hpp"

namespace zetastar {

/// A point of (0, 1]: canonical digit stream, exact dyadic form when the
/// point is dyadic, and a binary64 shadow.
class ZPoint {
 public:
  static ZPoint from_dyadic(const Dyadic& d);
  static ZPoint from_rational(std::int64_t p, std::int64_t q);
  static ZPoint from_double(double x);  // binary64 values are exact dyadics

  const DigitStream& digits() const { return digits_; }
  const std::optional<Dyadic>& exact() const { return exact_; }
  double approx() const { return approx_; }

 private:
  DigitStream digits_ = DigitStream::raw({}, DigitTail::Ones);  // value 1
  std::optional<Dyadic> exact_;
  double approx_ = 1.0;
};

/// Z*(z) by the digit series 1 + z/2 + sum_d a_d S_d 2^d (z - partial sums),
/// S_d the depth-d chain sum with floor 3.  +infinity at z = 1.
Evaluation zstar(const ZPoint& z, const TruncationParams& p = {});

/// Z*(z) by decoding the digits into an index, bumping the first entry and
/// dispatching to the series engine.  Independent of the digit-series path.
Evaluation zstar_via_index(const ZPoint& z, const TruncationParams& p = {});

enum class DerivativeSide { Left, Right, TwoSided };

struct DerivativeReport {
  DerivativeSide side = DerivativeSide::Right;
  double value = 0.0;
  int truncation_depth = 0;
  double error_model = 0.0;

  bool divergent() const;
};

/// One-sided derivative of Z* from the right at a dyadic z in [0, 1).
DerivativeReport right_derivative(const Dyadic& z, const TruncationParams& p = {});

/// One-sided derivative from the left at a dyadic z in (0, 1); reports a
/// divergence marker at z = 1 - 2^-n.
DerivativeReport left_derivative(const Dyadic& z, const TruncationParams& p = {});

/// Two-sided derivative at a non-dyadic point whose digits contain
/// infinitely many zeros and ones.  Throws HypothesisUnmetError otherwise.
DerivativeReport derivative_nondyadic(const ZPoint& z, const TruncationParams& p = {});

/// (Z*(z) - Z*(z-h))/h for z = 1 - 2^-p, h = 2^-q, q > p >= 1, evaluated
/// with a shared truncation depth so common chain-sum error cancels.
double divergence_ratio(int p, int q, const TruncationParams& params = {});

/// Monotone bisection solving Z*(z) = v digit by digit, v > 1.
ZPoint invert_zstar(double v, const TruncationParams& p = {}, int digit_depth = 48);

struct GraphRow {
  Dyadic z;
  double value = 0.0;
};

/// Dyadic grid samples j/2^ceil(log2 n), j >= 1, excluding the divergent
/// endpoint z = 1.
std::vector<GraphRow> graph_samples(int n, const TruncationParams& p = {});

/// CSV with header "z,zstar", 15 significant digits.
void write_graph_csv(std::ostream& os, const std::vector<GraphRow>& rows);

}  // namespace zetastar
