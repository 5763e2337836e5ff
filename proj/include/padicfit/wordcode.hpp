#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "padicfit/rational.hpp"

namespace padicfit {

// A word and its packed code-unit value: 32 bits per codepoint, the last
// character in the least-significant bits, so words sharing a k-character
// suffix are 2-adically within 2^(-32k) of each other.
struct EncodedWord {
  std::string text;  // UTF-8
  BigInt value;

  friend bool operator==(const EncodedWord&, const EncodedWord&) = default;
};

/// Strict UTF-8 decoding (rejects overlong forms, surrogates, values past
/// U+10FFFF, truncated sequences). Throws EncodingError.
std::vector<char32_t> utf8_to_codepoints(std::string_view utf8);

/// Throws InvalidCodePointError for values outside the scalar range.
std::string codepoints_to_utf8(const std::vector<char32_t>& codepoints);

/// Packs a word into one natural number; empty string encodes to 0.
/// Throws NulCharacterError if any codepoint is U+0000.
BigInt encode(std::string_view utf8_word);

/// Inverse of encode: splits into 32-bit chunks from the least-significant
/// end. Throws InvalidCodePointError when a chunk is zero, a surrogate, or
/// past U+10FFFF -- i.e. when a regression output is not a word.
std::string decode(const BigInt& value);

EncodedWord make_encoded_word(std::string_view utf8_word);

/// Number of shared trailing 32-bit code units between two distinct words:
/// the largest k with v_2(a - b) >= 32k. Throws EqualWordsError when the
/// encodings coincide.
unsigned long suffix_agreement(const EncodedWord& a, const EncodedWord& b);

}  // namespace padicfit
