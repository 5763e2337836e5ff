#include "padicfit/padic.hpp"

#include <cstdint>

#include "padicfit/errors.hpp"

namespace padicfit {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

constexpr u64 kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

namespace detail {

bool is_prime_u64(unsigned long n) {
  if (n < 2) return false;
  for (u64 q : kWitnesses) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

long int_valuation(const mpz_t x, const PadicPrime& p) {
  if (p.value() == 2) {
    return static_cast<long>(mpz_scan1(x, 0));
  }
  mpz_t stripped;
  mpz_init(stripped);
  const long v = static_cast<long>(mpz_remove(stripped, x, p.big().get_mpz_t()));
  mpz_clear(stripped);
  return v;
}

}  // namespace detail

PadicPrime::PadicPrime(unsigned long p) : p_(p), big_(0) {
  if (!detail::is_prime_u64(p)) {
    throw DomainError("p-adic base must be prime, got " + std::to_string(p));
  }
  big_ = static_cast<unsigned long>(p);
}

long Valuation::value() const {
  if (inf_) {
    throw DomainError("infinite valuation has no finite value");
  }
  return value_;
}

Valuation valuation(const BigInt& x, const PadicPrime& p) {
  if (x == 0) return Valuation::infinite();
  return Valuation::finite(detail::int_valuation(x.get_mpz_t(), p));
}

Valuation valuation(const Rational& x, const PadicPrime& p) {
  if (x == 0) return Valuation::infinite();
  const long vn = detail::int_valuation(x.get_num().get_mpz_t(), p);
  const long vd = detail::int_valuation(x.get_den().get_mpz_t(), p);
  return Valuation::finite(vn - vd);
}

Rational padic_power(const PadicPrime& p, long e) {
  BigInt pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), p.value(), static_cast<unsigned long>(e < 0 ? -e : e));
  Rational r;
  if (e >= 0) {
    r = Rational(pw);
  } else {
    r = Rational(1, pw);  // 1/p^|e| is already canonical
  }
  return r;
}

Rational padic_norm(const Rational& x, const PadicPrime& p) {
  if (x == 0) return Rational(0);
  return padic_power(p, -valuation(x, p).value());
}

Rational padic_distance(const Rational& a, const Rational& b, const PadicPrime& p) {
  return padic_norm(Rational(a - b), p);
}

}  // namespace padicfit
