#include "padicfit/wordcode.hpp"

#include <algorithm>

#include "padicfit/errors.hpp"

namespace padicfit {
namespace {

constexpr char32_t kMaxScalar = 0x10FFFF;

bool is_surrogate(char32_t cp) {
  return cp >= 0xD800 && cp <= 0xDFFF;
}

}  // namespace

std::vector<char32_t> utf8_to_codepoints(std::string_view utf8) {
  std::vector<char32_t> out;
  out.reserve(utf8.size());
  std::size_t i = 0;
  while (i < utf8.size()) {
    const unsigned char b0 = static_cast<unsigned char>(utf8[i]);
    char32_t cp = 0;
    int len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + static_cast<std::size_t>(len) > utf8.size()) {
      throw EncodingError("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (int k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(utf8[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) {
        throw EncodingError("invalid UTF-8 continuation byte at offset " +
                            std::to_string(i + static_cast<std::size_t>(k)));
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr char32_t kMinForLen[] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[len]) {
      throw EncodingError("overlong UTF-8 sequence at offset " + std::to_string(i));
    }
    if (is_surrogate(cp) || cp > kMaxScalar) {
      throw EncodingError("UTF-8 sequence decodes outside scalar range at offset " +
                          std::to_string(i));
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

std::string codepoints_to_utf8(const std::vector<char32_t>& codepoints) {
  std::string out;
  out.reserve(codepoints.size() * 2);
  for (char32_t cp : codepoints) {
    if (is_surrogate(cp) || cp > kMaxScalar) {
      throw InvalidCodePointError("codepoint outside Unicode scalar range");
    }
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

BigInt encode(std::string_view utf8_word) {
  const std::vector<char32_t> cps = utf8_to_codepoints(utf8_word);
  BigInt value = 0;
  for (char32_t cp : cps) {
    if (cp == 0) {
      throw NulCharacterError("word contains U+0000");
    }
    value <<= 32;
    value += static_cast<unsigned long>(cp);
  }
  return value;
}

std::string decode(const BigInt& value) {
  if (value < 0) {
    throw InvalidCodePointError("negative value cannot decode to a word");
  }
  std::vector<char32_t> cps;
  BigInt rest = value;
  while (rest != 0) {
    BigInt chunk;
    mpz_fdiv_r_2exp(chunk.get_mpz_t(), rest.get_mpz_t(), 32);
    const unsigned long cp = chunk.get_ui();
    if (cp == 0) {
      throw InvalidCodePointError("zero 32-bit chunk");
    }
    if (cp > kMaxScalar || is_surrogate(static_cast<char32_t>(cp))) {
      throw InvalidCodePointError("chunk " + std::to_string(cp) +
                                  " outside Unicode scalar range");
    }
    cps.push_back(static_cast<char32_t>(cp));
    rest >>= 32;
  }
  std::reverse(cps.begin(), cps.end());
  return codepoints_to_utf8(cps);
}

EncodedWord make_encoded_word(std::string_view utf8_word) {
  return EncodedWord{std::string(utf8_word), encode(utf8_word)};
}

unsigned long suffix_agreement(const EncodedWord& a, const EncodedWord& b) {
  if (a.value == b.value) {
    throw EqualWordsError("suffix_agreement requires distinct encodings");
  }
  const BigInt diff = a.value - b.value;
  const unsigned long v = mpz_scan1(diff.get_mpz_t(), 0);
  return v / 32;
}

}  // namespace padicfit
