#include "padicfit/regress.hpp"

#include <algorithm>
#include <map>

#include "padicfit/errors.hpp"
#include "padicfit/wordcode.hpp"

namespace padicfit {
namespace {

// Powers p^0, p^1, ..., grown on demand. Exponents are bounded by the bit
// length of the data, so the cache stays small.
class PowerCache {
 public:
  explicit PowerCache(const PadicPrime& p) : p_(p) { powers_.emplace_back(1); }

  const BigInt& get(long e) {
    while (static_cast<long>(powers_.size()) <= e) {
      powers_.push_back(powers_.back() * p_.big());
    }
    return powers_[static_cast<std::size_t>(e)];
  }

 private:
  const PadicPrime& p_;
  std::vector<BigInt> powers_;
};

struct LineLess {
  bool operator()(const Line& a, const Line& b) const {
    const int c = cmp(a.m, b.m);
    if (c != 0) return c < 0;
    return cmp(a.b, b.b) < 0;
  }
};

// Distinct candidate lines attaining the current minimal residual sum,
// keyed by (m, b) so the lexicographic tie-break and the tie count fall out
// of the map order. The mapped value is the first generating point pair.
using TieMap = std::map<Line, std::pair<std::size_t, std::size_t>, LineLess>;

Line line_through(const Rational& xa, const Rational& ya, const Rational& xj,
                  const Rational& yj) {
  Rational m(yj - ya);
  m /= Rational(xj - xa);
  Rational b(ya - m * xa);
  return Line{m, b};
}

FitResult finish_fit(const Rational& best_sum, const TieMap& ties) {
  const auto& [line, support] = *ties.begin();
  return FitResult{line, best_sum, support, ties.size()};
}

void require_fittable(std::size_t n, bool any_distinct_x, const char* who) {
  if (n < 2) {
    throw TooFewPointsError(std::string(who) + ": need at least 2 points, got " +
                            std::to_string(n));
  }
  if (!any_distinct_x) {
    throw DegenerateXError(std::string(who) + ": all x values equal");
  }
}

// Sorts in place; median of an even count is the exact mean of the middle pair.
Rational exact_median(std::vector<Rational>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return Rational((values[mid - 1] + values[mid]) / 2);
}

}  // namespace

std::string_view variant_label(Variant v) {
  switch (v) {
    case Variant::GlobalPadic: return "GLOBAL_PADIC";
    case Variant::GlobalSiegel: return "GLOBAL_SIEGEL";
    case Variant::LocalPadic: return "LOCAL_PADIC";
    case Variant::LocalSiegel: return "LOCAL_SIEGEL";
    case Variant::HybridSiegel: return "HYBRID_SIEGEL";
  }
  throw DomainError("unknown variant");
}

Variant parse_variant(std::string_view label) {
  for (Variant v : {Variant::GlobalPadic, Variant::GlobalSiegel, Variant::LocalPadic,
                    Variant::LocalSiegel, Variant::HybridSiegel}) {
    if (label == variant_label(v)) return v;
  }
  throw DomainError("unknown algorithm variant: " + std::string(label));
}

AlgorithmSpec AlgorithmSpec::global(Variant v, PadicPrime p) {
  if (v != Variant::GlobalPadic && v != Variant::GlobalSiegel) {
    throw DomainError("global() requires a global variant");
  }
  return AlgorithmSpec{v, p, std::nullopt};
}

AlgorithmSpec AlgorithmSpec::local(Variant v, unsigned k, PadicPrime p) {
  if (v != Variant::LocalPadic && v != Variant::LocalSiegel && v != Variant::HybridSiegel) {
    throw DomainError("local() requires a local or hybrid variant");
  }
  if (k < 1) {
    throw DomainError("neighbourhood size must be at least 1");
  }
  return AlgorithmSpec{v, p, k};
}

Metric AlgorithmSpec::neighbourhood_metric() const {
  switch (variant) {
    case Variant::LocalPadic: return Metric::Padic;
    case Variant::LocalSiegel: return Metric::Euclidean;
    case Variant::HybridSiegel: return Metric::Padic;
    default:
      throw DomainError("global variants have no neighbourhood metric");
  }
}

bool operator<(const AlgorithmSpec& a, const AlgorithmSpec& b) {
  const auto key = [](const AlgorithmSpec& s) {
    return std::make_tuple(static_cast<int>(s.variant), s.k.value_or(0), s.p.value());
  };
  return key(a) < key(b);
}

Rational residual_sum_padic(std::span<const DataPoint> points, const Line& line,
                            const PadicPrime& p) {
  Rational sum(0);
  for (const DataPoint& pt : points) {
    sum += padic_norm(Rational(Rational(pt.y) - (line.m * Rational(pt.x) + line.b)), p);
  }
  return sum;
}

Rational residual_sum_padic(std::span<const RationalPoint> points, const Line& line,
                            const PadicPrime& p) {
  Rational sum(0);
  for (const RationalPoint& pt : points) {
    sum += padic_norm(Rational(pt.y - (line.m * pt.x + line.b)), p);
  }
  return sum;
}

// The production fitter works in integers only: for the line through points
// a and j, the residual at k is |N_k / dx|_p with
//   N_k = (y_k - y_a) dx - dy (x_k - x_a),   dx = x_j - x_a, dy = y_j - y_a,
// so each term is p^(v_p(dx) - v_p(N_k)) and the candidate sum assembles
// from a shared power table without any rational arithmetic in the loop.
FitResult fit_padic(std::span<const DataPoint> points, const PadicPrime& p) {
  const std::size_t n = points.size();
  bool any_distinct = false;
  for (std::size_t i = 1; i < n && !any_distinct; ++i) {
    any_distinct = points[i].x != points[0].x;
  }
  require_fittable(n, any_distinct, "fit_padic");

  PowerCache powers(p);
  mpz_t dx, dy, t1, t2, nk;
  mpz_inits(dx, dy, t1, t2, nk, nullptr);
  std::vector<long> exps;
  exps.reserve(n);
  BigInt num;

  bool have_best = false;
  Rational best_sum;
  TieMap ties;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = a + 1; j < n; ++j) {
      mpz_sub(dx, points[j].x.get_mpz_t(), points[a].x.get_mpz_t());
      if (mpz_sgn(dx) == 0) continue;  // vertical: not a function x -> y
      mpz_sub(dy, points[j].y.get_mpz_t(), points[a].y.get_mpz_t());
      const long vdx = detail::int_valuation(dx, p);

      exps.clear();
      for (std::size_t kk = 0; kk < n; ++kk) {
        if (kk == a || kk == j) continue;  // interpolated by construction
        mpz_sub(t1, points[kk].y.get_mpz_t(), points[a].y.get_mpz_t());
        mpz_mul(t1, t1, dx);
        mpz_sub(t2, points[kk].x.get_mpz_t(), points[a].x.get_mpz_t());
        mpz_mul(t2, t2, dy);
        mpz_sub(nk, t1, t2);
        if (mpz_sgn(nk) == 0) continue;
        exps.push_back(detail::int_valuation(nk, p) - vdx);
      }

      Rational cand(0);
      if (!exps.empty()) {
        const long max_e = *std::max_element(exps.begin(), exps.end());
        const long scale = max_e > 0 ? max_e : 0;
        num = 0;
        for (long e : exps) num += powers.get(scale - e);
        cand = make_rational(num, powers.get(scale));
      }

      int rel = -1;
      if (have_best) rel = cmp(cand, best_sum);
      if (rel < 0) {
        have_best = true;
        best_sum = cand;
        ties.clear();
      } else if (rel != 0) {
        continue;
      }
      ties.try_emplace(line_through(Rational(points[a].x), Rational(points[a].y),
                                    Rational(points[j].x), Rational(points[j].y)),
                       std::make_pair(a, j));
    }
  }
  mpz_clears(dx, dy, t1, t2, nk, nullptr);
  return finish_fit(best_sum, ties);
}

// Rational-coordinate reference fitter: same enumeration and tie policy,
// residuals evaluated directly. Used by the transform suites and as a
// cross-check on the integer path.
FitResult fit_padic(std::span<const RationalPoint> points, const PadicPrime& p) {
  const std::size_t n = points.size();
  bool any_distinct = false;
  for (std::size_t i = 1; i < n && !any_distinct; ++i) {
    any_distinct = points[i].x != points[0].x;
  }
  require_fittable(n, any_distinct, "fit_padic");

  bool have_best = false;
  Rational best_sum;
  TieMap ties;

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = a + 1; j < n; ++j) {
      if (points[a].x == points[j].x) continue;
      const Line cand_line =
          line_through(points[a].x, points[a].y, points[j].x, points[j].y);
      const Rational cand = residual_sum_padic(points, cand_line, p);
      int rel = -1;
      if (have_best) rel = cmp(cand, best_sum);
      if (rel < 0) {
        have_best = true;
        best_sum = cand;
        ties.clear();
      } else if (rel != 0) {
        continue;
      }
      ties.try_emplace(cand_line, std::make_pair(a, j));
    }
  }
  return finish_fit(best_sum, ties);
}

Line fit_siegel(std::span<const DataPoint> points) {
  const std::size_t n = points.size();
  bool any_distinct = false;
  for (std::size_t i = 1; i < n && !any_distinct; ++i) {
    any_distinct = points[i].x != points[0].x;
  }
  require_fittable(n, any_distinct, "fit_siegel");

  std::vector<Rational> outer;
  outer.reserve(n);
  std::vector<Rational> slopes;
  slopes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    slopes.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || points[j].x == points[i].x) continue;
      slopes.push_back(make_rational(points[j].y - points[i].y, points[j].x - points[i].x));
    }
    if (slopes.empty()) continue;  // no valid partner: skipped from the outer median
    outer.push_back(exact_median(slopes));
  }
  const Rational m = exact_median(outer);

  std::vector<Rational> intercepts;
  intercepts.reserve(n);
  for (const DataPoint& pt : points) {
    intercepts.push_back(Rational(Rational(pt.y) - m * Rational(pt.x)));
  }
  const Rational b = exact_median(intercepts);
  return Line{m, b};
}

std::vector<DataPoint> neighbors(const BigInt& query_x, std::span<const DataPoint> training,
                                 Metric metric, const PadicPrime& p, std::size_t k) {
  if (k < 1) {
    throw DomainError("neighbourhood size must be at least 1");
  }
  struct Entry {
    Rational padic_dist;  // unused under the Euclidean metric
    BigInt abs_diff;
    const DataPoint* pt;
  };
  std::vector<Entry> entries;
  entries.reserve(training.size());
  for (const DataPoint& t : training) {
    BigInt diff(query_x - t.x);
    Rational pd(0);
    if (metric == Metric::Padic) pd = padic_norm(Rational(diff), p);
    entries.push_back(Entry{std::move(pd), abs(diff), &t});
  }
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (metric == Metric::Padic) {
      const int c = cmp(a.padic_dist, b.padic_dist);
      if (c != 0) return c < 0;
    }
    int c = cmp(a.abs_diff, b.abs_diff);
    if (c != 0) return c < 0;
    c = cmp(a.pt->x, b.pt->x);
    if (c != 0) return c < 0;
    return cmp(a.pt->y, b.pt->y) < 0;
  });
  const std::size_t take = std::min(k, entries.size());
  std::vector<DataPoint> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(*entries[i].pt);
  return out;
}

Rational predict(const Line& line, const BigInt& x) {
  return Rational(line.m * Rational(x) + line.b);
}

std::string predict_word(const AlgorithmSpec& spec, std::span<const DataPoint> training,
                         std::string_view query) {
  if (training.empty()) {
    throw TooFewPointsError("predict_word: empty training set");
  }
  const BigInt qx = encode(query);

  std::vector<DataPoint> hood;
  std::span<const DataPoint> pts = training;
  if (spec.is_local()) {
    if (!spec.k) {
      throw DomainError("local variant without a neighbourhood size");
    }
    hood = neighbors(qx, training, spec.neighbourhood_metric(), spec.p, *spec.k);
    pts = hood;
  }

  Line line;
  try {
    line = spec.padic_regressor() ? fit_padic(pts, spec.p).line : fit_siegel(pts);
  } catch (const TooFewPointsError& e) {
    throw FitFailedError(std::string("fit failed: ") + e.what());
  } catch (const DegenerateXError& e) {
    throw FitFailedError(std::string("fit failed: ") + e.what());
  }

  const Rational yhat = predict(line, qx);
  if (!is_integer(yhat) || yhat < 0) {
    throw PredictionNotAWordError("prediction is not a natural number");
  }
  try {
    return decode(yhat.get_num());
  } catch (const InvalidCodePointError& e) {
    throw PredictionNotAWordError(std::string("prediction does not decode: ") + e.what());
  }
}

}  // namespace padicfit
