#include "padicfit/rational.hpp"

#include <cctype>
#include <cstdio>

#include "padicfit/errors.hpp"

namespace padicfit {

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) {
    throw DomainError("rational with zero denominator");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) {
  return r.get_den() == 1;
}

BigInt parse_bigint(std::string_view text) {
  if (text.empty()) {
    throw DomainError("empty integer literal");
  }
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) {
    throw DomainError("sign without digits");
  }
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) {
      throw DomainError("invalid integer literal: " + std::string(text));
    }
  }
  return BigInt(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_bigint(text));
  }
  BigInt num = parse_bigint(text.substr(0, slash));
  BigInt den = parse_bigint(text.substr(slash + 1));
  return make_rational(num, den);
}

std::string decimal_string(const Rational& r) {
  return decimal_string(r.get_d());
}

std::string decimal_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace padicfit
