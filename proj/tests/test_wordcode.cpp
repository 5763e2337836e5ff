#include <doctest.h>

#include "padicfit/errors.hpp"
#include "padicfit/padic.hpp"
#include "padicfit/wordcode.hpp"
#include "testutil.hpp"

using namespace padicfit;

namespace {

// Independent packing oracle: codepoint * 2^(32 * position) accumulated
// with explicit powers, no shifting shared with the implementation.
BigInt packing_oracle(const std::vector<unsigned long>& codepoints) {
  BigInt total = 0;
  const std::size_t n = codepoints.size();
  for (std::size_t i = 0; i < n; ++i) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), 2, 32 * static_cast<unsigned long>(n - 1 - i));
    total += power * codepoints[i];
  }
  return total;
}

}  // namespace

TEST_CASE("encode examples") {
  CHECK(encode("") == 0);
  CHECK(encode("t") == 116);
  // c = 99, a = 97, t = 116
  CHECK(encode("cat") == packing_oracle({99, 97, 116}));
}

TEST_CASE("encode rejects U+0000 and malformed UTF-8") {
  CHECK_THROWS_AS(encode(std::string_view("ca\0t", 4)), NulCharacterError);
  CHECK_THROWS_AS(encode(std::string_view("\0", 1)), NulCharacterError);
  CHECK_THROWS_AS(encode("\xFF"), EncodingError);
  CHECK_THROWS_AS(encode("\xC3"), EncodingError);          // truncated
  CHECK_THROWS_AS(encode("\xED\xA0\x80"), EncodingError);  // encoded surrogate
  CHECK_THROWS_AS(encode("\xC0\xAF"), EncodingError);      // overlong
}

TEST_CASE("decode examples") {
  CHECK(decode(BigInt(0)) == "");
  CHECK(decode(packing_oracle({99, 97, 116})) == "cat");
  CHECK_THROWS_AS(decode(BigInt(0xD800)), InvalidCodePointError);  // surrogate
  CHECK_THROWS_AS(decode(BigInt(0x110000)), InvalidCodePointError);
  CHECK_THROWS_AS(decode(BigInt(-5)), InvalidCodePointError);
  // 2^32: the least-significant chunk is zero.
  BigInt shifted(1);
  shifted <<= 32;
  CHECK_THROWS_AS(decode(shifted), InvalidCodePointError);
}

TEST_CASE("roundtrip over multilingual words") {
  testutil::Rng rng(1001);
  for (int i = 0; i < 300; ++i) {
    const std::string word = testutil::random_word(rng, 0, 12);
    CHECK(decode(encode(word)) == word);
  }
}

TEST_CASE("suffix agreement examples") {
  const auto agree = [](const char* a, const char* b) {
    return suffix_agreement(make_encoded_word(a), make_encoded_word(b));
  };
  CHECK(agree("sky", "fry") == 1);
  CHECK(agree("cats", "dogs") == 1);
  CHECK(agree("cat", "dot") == 1);
  CHECK(agree("butterfly", "sky") == 1);
  CHECK(agree("walrus", "octopus") == 2);
  CHECK(agree("dog", "bulldog") == 3);
  CHECK_THROWS_AS(agree("same", "same"), EqualWordsError);
}

TEST_CASE("shared suffixes bound the 2-adic distance") {
  testutil::Rng rng(1002);
  const PadicPrime two(2);
  for (int i = 0; i < 200; ++i) {
    const std::string suffix = testutil::random_word(rng, 1, 3);
    const std::string a = testutil::random_word(rng, 0, 5) + suffix;
    const std::string b = testutil::random_word(rng, 0, 5) + suffix;
    if (a == b) continue;
    const std::size_t shared = utf8_to_codepoints(suffix).size();
    const Rational bound = padic_power(two, -32 * static_cast<long>(shared));
    CHECK(padic_distance(Rational(encode(a)), Rational(encode(b)), two) <= bound);
  }
}

TEST_CASE("euclidean distance between suffix-sharing words is enormous") {
  BigInt bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), 2, 192);
  CHECK(abs(BigInt(encode("butterfly") - encode("sky"))) >= bound);
  CHECK(abs(BigInt(encode("butterfly") - encode("fry"))) >= bound);
}

TEST_CASE("appending a suffix is an affine map on encodings") {
  testutil::Rng rng(1003);
  BigInt two32;
  mpz_ui_pow_ui(two32.get_mpz_t(), 2, 32);
  for (int i = 0; i < 100; ++i) {
    const std::string word = testutil::random_word(rng, 1, 8);
    CHECK(encode(word + "s") == two32 * encode(word) + 115);

    const std::string suffix = testutil::random_word(rng, 1, 4);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2,
                  32 * static_cast<unsigned long>(utf8_to_codepoints(suffix).size()));
    CHECK(encode(word + suffix) == scale * encode(word) + encode(suffix));
  }
}
