#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "padicfit/padic.hpp"

namespace padicfit {

// One observation: x is the encoded singular, y the encoded plural. The
// source strings ride along for diagnostics and may be empty. Coordinates
// are signed big integers; corpus-derived points are always naturals, but
// the fitters accept anything integral.
struct DataPoint {
  BigInt x;
  BigInt y;
  std::string singular;
  std::string plural;
};

// Rational-coordinate variant, used where affine transforms move a dataset
// off the integers.
struct RationalPoint {
  Rational x;
  Rational y;
};

struct Line {
  Rational m;
  Rational b;

  friend bool operator==(const Line& a, const Line& b) {
    return a.m == b.m && a.b == b.b;
  }
};

struct FitResult {
  Line line;
  Rational residual_sum;
  std::pair<std::size_t, std::size_t> support;  // indices the line interpolates
  std::size_t tie_count = 1;  // distinct candidate lines attaining the minimum
};

enum class Variant {
  GlobalPadic,
  GlobalSiegel,
  LocalPadic,
  LocalSiegel,
  HybridSiegel,
};

std::string_view variant_label(Variant v);
Variant parse_variant(std::string_view label);  // DomainError on unknown label

enum class Metric { Padic, Euclidean };

// A fully-instantiated algorithm configuration: one of the five variants,
// the metric base, and (for local/hybrid variants) the neighbourhood size.
struct AlgorithmSpec {
  Variant variant = Variant::GlobalPadic;
  PadicPrime p{2};
  std::optional<unsigned> k;

  static constexpr unsigned kDefaultMinK = 3;
  static constexpr unsigned kDefaultMaxK = 20;

  static AlgorithmSpec global(Variant v, PadicPrime p = PadicPrime(2));
  static AlgorithmSpec local(Variant v, unsigned k, PadicPrime p = PadicPrime(2));

  bool is_local() const {
    return variant == Variant::LocalPadic || variant == Variant::LocalSiegel ||
           variant == Variant::HybridSiegel;
  }
  bool padic_regressor() const {
    return variant == Variant::GlobalPadic || variant == Variant::LocalPadic;
  }
  Metric neighbourhood_metric() const;  // per the variant table
  std::string label() const { return std::string(variant_label(variant)); }

  friend bool operator==(const AlgorithmSpec& a, const AlgorithmSpec& b) {
    return a.variant == b.variant && a.p == b.p && a.k == b.k;
  }
  // Orders by (variant, k, p); the record-sorting order used everywhere.
  friend bool operator<(const AlgorithmSpec& a, const AlgorithmSpec& b);
};

/// Sum over all points of |y_i - (m x_i + b)|_p, exactly. Empty input sums
/// to zero.
Rational residual_sum_padic(std::span<const DataPoint> points, const Line& line,
                            const PadicPrime& p);
Rational residual_sum_padic(std::span<const RationalPoint> points, const Line& line,
                            const PadicPrime& p);

/// Exact p-adic line of best fit by enumeration of every point pair with
/// distinct x (an optimal line must interpolate two data points). Among
/// tied minima the lexicographically smallest (m, b) wins, so the result is
/// independent of input order. Throws TooFewPointsError (< 2 points) or
/// DegenerateXError (all x equal).
FitResult fit_padic(std::span<const DataPoint> points, const PadicPrime& p);
FitResult fit_padic(std::span<const RationalPoint> points, const PadicPrime& p);

/// Siegel repeated-median line over exact rationals:
///   m = median_i median_{j != i, x_j != x_i} (y_j - y_i)/(x_j - x_i)
///   b = median_i (y_i - m x_i)
/// Medians of even counts are the mean of the middle pair.
Line fit_siegel(std::span<const DataPoint> points);

/// The min(k, |training|) points nearest to query_x. Ties are broken by
/// absolute Euclidean difference, then smaller x, then smaller y, making
/// the result deterministic and independent of input order.
std::vector<DataPoint> neighbors(const BigInt& query_x, std::span<const DataPoint> training,
                                 Metric metric, const PadicPrime& p, std::size_t k);

/// m x + b, exactly.
Rational predict(const Line& line, const BigInt& x);

/// Runs one algorithm configuration end to end: select the neighbourhood
/// (local variants), fit, evaluate at the encoded query, decode. Throws
/// FitFailedError when the regressor cannot fit (e.g. all-equal x in the
/// neighbourhood) and PredictionNotAWordError when the prediction is not a
/// non-negative integer that decodes; callers score both as incorrect.
std::string predict_word(const AlgorithmSpec& spec, std::span<const DataPoint> training,
                         std::string_view query);

}  // namespace padicfit
