#include <doctest.h>

#include <algorithm>

#include "padicfit/errors.hpp"
#include "padicfit/regress.hpp"
#include "padicfit/wordcode.hpp"
#include "testutil.hpp"

using namespace padicfit;

namespace {

std::vector<DataPoint> int_points(const std::vector<std::pair<long, long>>& coords) {
  std::vector<DataPoint> pts;
  for (const auto& [x, y] : coords) {
    pts.push_back(DataPoint{BigInt(x), BigInt(y), "", ""});
  }
  return pts;
}

std::vector<RationalPoint> to_rational(const std::vector<DataPoint>& pts) {
  std::vector<RationalPoint> out;
  for (const DataPoint& pt : pts) {
    out.push_back(RationalPoint{Rational(pt.x), Rational(pt.y)});
  }
  return out;
}

const std::vector<DataPoint> kTieFixture =
    int_points({{0, 0}, {1, 0}, {1, 1}, {1, 2}, {1, 3}});

std::vector<DataPoint> plural_points(const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<DataPoint> pts;
  for (const auto& [singular, plural] : pairs) {
    pts.push_back(DataPoint{encode(singular), encode(plural), singular, plural});
  }
  return pts;
}

}  // namespace

TEST_CASE("residual sum examples") {
  const PadicPrime two(2);
  CHECK(residual_sum_padic(kTieFixture, Line{Rational(0), Rational(0)}, two) ==
        make_rational(5, 2));
  // Non-uniqueness: y = x, y = 2x and y = 3x all reach 5/2 as well.
  for (long m : {1L, 2L, 3L}) {
    CHECK(residual_sum_padic(kTieFixture, Line{Rational(m), Rational(0)}, two) ==
          make_rational(5, 2));
  }

  const auto colinear = int_points({{0, 5}, {1, 7}, {2, 9}});
  CHECK(residual_sum_padic(colinear, Line{Rational(2), Rational(5)}, two) == 0);

  const auto single = int_points({{1, 3}});
  CHECK(residual_sum_padic(single, Line{Rational(1), Rational(0)}, two) ==
        make_rational(1, 2));

  CHECK(residual_sum_padic(std::span<const DataPoint>{}, Line{Rational(1), Rational(1)},
                           two) == 0);
}

TEST_CASE("fit_padic on the tie fixture") {
  const PadicPrime two(2);
  const FitResult fit = fit_padic(kTieFixture, two);
  CHECK(fit.residual_sum == make_rational(5, 2));
  CHECK(fit.tie_count == 4);
  // Lexicographically smallest (m, b) among y = 0, x, 2x, 3x.
  CHECK(fit.line.m == 0);
  CHECK(fit.line.b == 0);
  CHECK(fit.support == std::make_pair(std::size_t{0}, std::size_t{1}));
  CHECK(residual_sum_padic(kTieFixture, fit.line, two) == fit.residual_sum);
}

TEST_CASE("fit_padic on colinear points is exact for any p") {
  const auto pts = int_points({{0, 5}, {1, 7}, {2, 9}});
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const FitResult fit = fit_padic(pts, PadicPrime(p));
    CHECK(fit.line.m == 2);
    CHECK(fit.line.b == 5);
    CHECK(fit.residual_sum == 0);
    CHECK(fit.tie_count == 1);
  }
}

TEST_CASE("fit_padic recovers the pluralisation line") {
  const auto pts = plural_points({{"cat", "cats"}, {"dog", "dogs"}, {"eye", "eyes"}});
  const FitResult fit = fit_padic(pts, PadicPrime(2));
  BigInt two32;
  mpz_ui_pow_ui(two32.get_mpz_t(), 2, 32);
  CHECK(fit.residual_sum == 0);
  CHECK(fit.line.m == Rational(two32));
  CHECK(fit.line.b == 115);  // codepoint of 's'
}

TEST_CASE("fit_padic error cases") {
  const PadicPrime two(2);
  CHECK_THROWS_AS(fit_padic(int_points({{1, 1}}), two), TooFewPointsError);
  CHECK_THROWS_AS(fit_padic(int_points({}), two), TooFewPointsError);
  CHECK_THROWS_AS(fit_padic(int_points({{1, 1}, {1, 5}, {1, 9}}), two), DegenerateXError);
}

TEST_CASE("fit_padic tie-break picks the smallest (m, b)") {
  // Both candidate lines reach residual 1; m = -2 sorts before m = 1.
  const auto pts = int_points({{0, 0}, {0, 3}, {1, 1}});
  const FitResult fit = fit_padic(pts, PadicPrime(2));
  CHECK(fit.residual_sum == 1);
  CHECK(fit.tie_count == 2);
  CHECK(fit.line.m == -2);
  CHECK(fit.line.b == 3);
}

TEST_CASE("duplicate points contribute residuals multiply") {
  const PadicPrime two(2);
  const auto once = int_points({{0, 0}, {1, 0}, {3, 8}});
  const auto twice = int_points({{0, 0}, {1, 0}, {3, 8}, {3, 8}});
  const Line line{Rational(0), Rational(0)};
  CHECK(residual_sum_padic(twice, line, two) ==
        residual_sum_padic(once, line, two) + padic_norm(Rational(8), two));
}

TEST_CASE("integer and rational fitters agree") {
  testutil::Rng rng(2001);
  for (unsigned long p : {2UL, 3UL, 5UL}) {
    const PadicPrime prime(p);
    for (int iter = 0; iter < 60; ++iter) {
      const auto pts = testutil::random_integer_points(
          rng, static_cast<std::size_t>(rng.integer(2, 8)), -64, 64);
      if (!testutil::has_two_distinct_x(pts)) continue;
      const auto rpts = to_rational(pts);
      const FitResult a = fit_padic(pts, prime);
      const FitResult b = fit_padic(std::span<const RationalPoint>(rpts), prime);
      CHECK(a.residual_sum == b.residual_sum);
      CHECK(a.line == b.line);
      CHECK(a.tie_count == b.tie_count);
    }
  }
}

TEST_CASE("fit result is invariant under input permutation") {
  testutil::Rng rng(2002);
  const PadicPrime two(2);
  for (int iter = 0; iter < 40; ++iter) {
    auto pts = testutil::random_integer_points(
        rng, static_cast<std::size_t>(rng.integer(3, 8)), -32, 32);
    if (!testutil::has_two_distinct_x(pts)) continue;
    const FitResult before = fit_padic(pts, two);
    std::shuffle(pts.begin(), pts.end(), rng.engine());
    const FitResult after = fit_padic(pts, two);
    CHECK(before.residual_sum == after.residual_sum);
    CHECK(before.line == after.line);
    CHECK(before.tie_count == after.tie_count);
  }
}

TEST_CASE("two-point optimality against random lines") {
  testutil::Rng rng(2003);
  const unsigned long primes[] = {2, 3, 5};
  for (int iter = 0; iter < 150; ++iter) {
    const PadicPrime p(primes[static_cast<std::size_t>(rng.integer(0, 2))]);
    const auto pts = testutil::random_integer_points(
        rng, static_cast<std::size_t>(rng.integer(2, 8)), -64, 64);
    if (!testutil::has_two_distinct_x(pts)) continue;
    const FitResult fit = fit_padic(pts, p);

    // The returned line interpolates both support points.
    for (std::size_t idx : {fit.support.first, fit.support.second}) {
      CHECK(Rational(fit.line.m * Rational(pts[idx].x) + fit.line.b) ==
            Rational(pts[idx].y));
    }

    for (int probe = 0; probe < 200; ++probe) {
      const Line random_line{rng.rational(200, 16), rng.rational(200, 16)};
      CHECK(fit.residual_sum <= residual_sum_padic(pts, random_line, p));
    }
  }
}

TEST_CASE("perturbing a zero-interpolation line by its smallest residual never hurts") {
  testutil::Rng rng(2004);
  const PadicPrime two(2);
  int tested = 0;
  for (int iter = 0; iter < 400 && tested < 120; ++iter) {
    const auto pts = testutil::random_integer_points(
        rng, static_cast<std::size_t>(rng.integer(2, 8)), -64, 64);
    const Line line{rng.rational(60, 8), rng.rational(60, 8)};

    // The construction needs a line through no data point; find the point
    // with the p-adically smallest nonzero signed residual.
    bool touches = false;
    bool smallest_set = false;
    Rational smallest_signed;
    Rational smallest_norm;
    for (const DataPoint& pt : pts) {
      const Rational signed_residual(line.m * Rational(pt.x) + line.b - Rational(pt.y));
      if (signed_residual == 0) {
        touches = true;
        break;
      }
      const Rational norm = padic_norm(signed_residual, two);
      if (!smallest_set || norm < smallest_norm) {
        smallest_set = true;
        smallest_norm = norm;
        smallest_signed = signed_residual;
      }
    }
    if (touches || !smallest_set) continue;
    ++tested;

    const Line perturbed{line.m, Rational(line.b - smallest_signed)};
    CHECK(residual_sum_padic(pts, perturbed, two) <=
          residual_sum_padic(pts, line, two));
  }
  CHECK(tested >= 100);
}

TEST_CASE("scaling and translation identities") {
  testutil::Rng rng(2005);
  const PadicPrime two(2);
  for (int iter = 0; iter < 150; ++iter) {
    const auto pts = testutil::random_integer_points(
        rng, static_cast<std::size_t>(rng.integer(1, 8)), -64, 64);
    const auto rpts = to_rational(pts);
    const Line line{rng.rational(60, 8), rng.rational(60, 8)};
    const Rational base = residual_sum_padic(pts, line, two);

    const Rational alpha = rng.rational(40, 8, /*nonzero=*/true);

    // Scaling of y: {(x, a y)} with y = a m x + a b scales the sum by |a|_p.
    {
      std::vector<RationalPoint> scaled;
      for (const RationalPoint& pt : rpts) {
        scaled.push_back(RationalPoint{pt.x, Rational(alpha * pt.y)});
      }
      const Line scaled_line{Rational(alpha * line.m), Rational(alpha * line.b)};
      CHECK(residual_sum_padic(std::span<const RationalPoint>(scaled), scaled_line, two) ==
            padic_norm(alpha, two) * base);
    }

    // Scaling of x: {(a x, y)} with y = (m/a) x + b leaves the sum unchanged.
    {
      std::vector<RationalPoint> scaled;
      for (const RationalPoint& pt : rpts) {
        scaled.push_back(RationalPoint{Rational(alpha * pt.x), pt.y});
      }
      const Line scaled_line{Rational(line.m / alpha), line.b};
      CHECK(residual_sum_padic(std::span<const RationalPoint>(scaled), scaled_line, two) ==
            base);
    }

    // Translation: {(x + a, y + c)} with y = m x + (b + c - m a).
    {
      const Rational a = rng.rational(40, 8);
      const Rational c = rng.rational(40, 8);
      std::vector<RationalPoint> moved;
      for (const RationalPoint& pt : rpts) {
        moved.push_back(RationalPoint{Rational(pt.x + a), Rational(pt.y + c)});
      }
      const Line moved_line{line.m, Rational(line.b + c - line.m * a)};
      CHECK(residual_sum_padic(std::span<const RationalPoint>(moved), moved_line, two) ==
            base);
    }
  }
}

TEST_CASE("the optimum transforms with the dataset") {
  testutil::Rng rng(2006);
  const PadicPrime two(2);
  for (int iter = 0; iter < 40; ++iter) {
    const auto pts = testutil::random_integer_points(
        rng, static_cast<std::size_t>(rng.integer(2, 6)), -32, 32);
    if (!testutil::has_two_distinct_x(pts)) continue;
    const auto rpts = to_rational(pts);
    const Rational best = fit_padic(pts, two).residual_sum;
    const Rational alpha = rng.rational(20, 6, /*nonzero=*/true);

    std::vector<RationalPoint> scaled_y, scaled_x, moved;
    const Rational a = rng.rational(20, 6);
    const Rational c = rng.rational(20, 6);
    for (const RationalPoint& pt : rpts) {
      scaled_y.push_back(RationalPoint{pt.x, Rational(alpha * pt.y)});
      scaled_x.push_back(RationalPoint{Rational(alpha * pt.x), pt.y});
      moved.push_back(RationalPoint{Rational(pt.x + a), Rational(pt.y + c)});
    }
    CHECK(fit_padic(std::span<const RationalPoint>(scaled_y), two).residual_sum ==
          padic_norm(alpha, two) * best);
    CHECK(fit_padic(std::span<const RationalPoint>(scaled_x), two).residual_sum == best);
    CHECK(fit_padic(std::span<const RationalPoint>(moved), two).residual_sum == best);
  }
}

TEST_CASE("siegel examples") {
  SUBCASE("two points give the exact interpolating line") {
    const Line line = fit_siegel(int_points({{1, 3}, {4, 9}}));
    CHECK(line.m == 2);
    CHECK(line.b == 1);
  }
  SUBCASE("one outlier cannot move the repeated median") {
    const Line line = fit_siegel(int_points({{0, 0}, {1, 1}, {2, 2}, {3, 10}}));
    CHECK(line.m == 1);
    CHECK(line.b == 0);
  }
  SUBCASE("colinear data returns the interpolating line") {
    testutil::Rng rng(2007);
    for (int iter = 0; iter < 40; ++iter) {
      const Rational m = rng.rational(30, 6);
      const BigInt b = rng.bigint(-30, 30);
      std::vector<DataPoint> pts;
      for (int i = 0; i < 5; ++i) {
        // x a multiple of den(m) keeps every coordinate integral
        const BigInt x = rng.bigint(-50, 50) * m.get_den();
        const Rational y(m * Rational(x) + Rational(b));
        pts.push_back(DataPoint{x, y.get_num(), "", ""});
      }
      if (!testutil::has_two_distinct_x(pts)) continue;
      const Line line = fit_siegel(pts);
      CHECK(line.m == m);
      CHECK(line.b == Rational(b));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(fit_siegel(int_points({{1, 1}})), TooFewPointsError);
    CHECK_THROWS_AS(fit_siegel(int_points({{2, 1}, {2, 9}})), DegenerateXError);
  }
}

TEST_CASE("neighbors selects 2-adically close words") {
  const auto training =
      plural_points({{"sky", "skies"}, {"fry", "fries"}, {"dog", "dogs"}});
  const auto picked =
      neighbors(encode("butterfly"), training, Metric::Padic, PadicPrime(2), 2);
  REQUIRE(picked.size() == 2);
  // fry is 2^-33 away, sky 2^-32; dog differs in the last character.
  CHECK(picked[0].singular == "fry");
  CHECK(picked[1].singular == "sky");
}

TEST_CASE("neighbors euclidean examples") {
  const auto training = int_points({{1, 0}, {8, 0}, {100, 0}});
  const auto picked = neighbors(BigInt(10), training, Metric::Euclidean, PadicPrime(2), 2);
  REQUIRE(picked.size() == 2);
  CHECK(picked[0].x == 8);
  CHECK(picked[1].x == 1);

  // k saturates at the training size.
  CHECK(neighbors(BigInt(10), training, Metric::Euclidean, PadicPrime(2), 99).size() == 3);
  CHECK_THROWS_AS(neighbors(BigInt(10), training, Metric::Euclidean, PadicPrime(2), 0),
                  DomainError);
}

TEST_CASE("neighbors is deterministic under permutation") {
  testutil::Rng rng(2008);
  for (Metric metric : {Metric::Padic, Metric::Euclidean}) {
    for (int iter = 0; iter < 40; ++iter) {
      auto training = testutil::random_integer_points(rng, 12, 0, 40);  // duplicates likely
      const BigInt query = rng.bigint(0, 40);
      const std::size_t k = static_cast<std::size_t>(rng.integer(1, 12));
      const auto before = neighbors(query, training, metric, PadicPrime(2), k);
      std::shuffle(training.begin(), training.end(), rng.engine());
      const auto after = neighbors(query, training, metric, PadicPrime(2), k);
      REQUIRE(before.size() == after.size());
      for (std::size_t i = 0; i < before.size(); ++i) {
        CHECK(before[i].x == after[i].x);
        CHECK(before[i].y == after[i].y);
      }
    }
  }
}

TEST_CASE("predict examples") {
  BigInt two32;
  mpz_ui_pow_ui(two32.get_mpz_t(), 2, 32);
  const Line plural_line{Rational(two32), Rational(115)};
  CHECK(predict(plural_line, encode("cat")) == Rational(encode("cats")));
  CHECK(predict(Line{Rational(0), make_rational(7, 3)}, BigInt(12345)) ==
        make_rational(7, 3));
  CHECK(predict(Line{Rational(1), Rational(0)}, BigInt(42)) == 42);
}

TEST_CASE("predict_word end to end") {
  const auto training = plural_points({{"cat", "cats"}, {"dog", "dogs"}});
  const auto spec = AlgorithmSpec::global(Variant::GlobalPadic);
  CHECK(predict_word(spec, training, "eye") == "eyes");

  const auto colinear =
      plural_points({{"cat", "cats"}, {"dog", "dogs"}, {"eye", "eyes"}});
  CHECK(predict_word(AlgorithmSpec::global(Variant::GlobalSiegel), colinear, "dog") ==
        "dogs");
}

TEST_CASE("local p-adic prediction isolates the y-final declension") {
  const LanguageCorpus corpus = testutil::english_mix_corpus(15, 5);
  std::vector<DataPoint> training;
  for (const NounPair& pair : corpus.pairs) {
    if (pair.singular == "lady") continue;
    training.push_back(DataPoint{encode(pair.singular), encode(pair.plural),
                                 pair.singular, pair.plural});
  }
  const auto spec = AlgorithmSpec::local(Variant::LocalPadic, 3);
  CHECK(predict_word(spec, training, "lady") == "ladies");

  // Construction oracle: every y-final pair lies on y = 2^64 x + c with
  // c = encode("ies") - encode("y") * 2^64.
  BigInt two64;
  mpz_ui_pow_ui(two64.get_mpz_t(), 2, 64);
  const Rational c(BigInt(encode("ies") - encode("y") * two64));
  const Rational expected = predict(Line{Rational(two64), c}, encode("lady"));
  CHECK(Rational(encode("ladies")) == expected);
}

TEST_CASE("predict_word failure modes") {
  // Neighbourhood collapses onto a single x value: fit fails.
  const auto noisy =
      plural_points({{"cat", "cats"}, {"cat", "catz"}, {"dog", "dogs"}});
  CHECK_THROWS_AS(
      predict_word(AlgorithmSpec::local(Variant::LocalPadic, 2), noisy, "bat"),
      FitFailedError);

  // Slope 1/2 makes the prediction for an odd query non-integral.
  const auto halfline = plural_points({{"b", "d"}, {"d", "e"}});
  CHECK_THROWS_AS(
      predict_word(AlgorithmSpec::global(Variant::GlobalPadic), halfline, "c"),
      PredictionNotAWordError);

  // Steep negative slope drives the prediction below zero.
  const auto negative = plural_points({{"b", "d"}, {"c", "b"}});
  CHECK_THROWS_AS(
      predict_word(AlgorithmSpec::global(Variant::GlobalPadic), negative, "\xC3\xA9"),
      PredictionNotAWordError);

  // Extrapolation lands in the surrogate range and cannot decode.
  const std::string hangul_a = codepoints_to_utf8({0xD739});
  const std::string hangul_b = codepoints_to_utf8({0xD73A});
  std::vector<DataPoint> surrogate_bound =
      plural_points({{"a", hangul_a}, {"b", hangul_b}});
  CHECK_THROWS_AS(predict_word(AlgorithmSpec::global(Variant::GlobalPadic),
                               surrogate_bound, "\xC4\xAA"),
                  PredictionNotAWordError);

  CHECK_THROWS_AS(predict_word(AlgorithmSpec::global(Variant::GlobalPadic), {}, "cat"),
                  TooFewPointsError);
}

TEST_CASE("variant labels round-trip") {
  for (Variant v : {Variant::GlobalPadic, Variant::GlobalSiegel, Variant::LocalPadic,
                    Variant::LocalSiegel, Variant::HybridSiegel}) {
    CHECK(parse_variant(variant_label(v)) == v);
  }
  CHECK_THROWS_AS(parse_variant("LOCAL_RANSAC"), DomainError);
  CHECK_THROWS_AS(AlgorithmSpec::local(Variant::GlobalPadic, 3), DomainError);
  CHECK_THROWS_AS(AlgorithmSpec::global(Variant::LocalPadic), DomainError);
  CHECK(AlgorithmSpec::local(Variant::HybridSiegel, 5).neighbourhood_metric() ==
        Metric::Padic);
  CHECK(AlgorithmSpec::local(Variant::LocalSiegel, 5).neighbourhood_metric() ==
        Metric::Euclidean);
}
