#pragma once

#include "padicfit/rational.hpp"

namespace padicfit {

/// Prime base of a p-adic metric. Construction runs a deterministic
/// Miller-Rabin test (witnesses 2..37, exact for all 64-bit inputs) and
/// throws DomainError for composites or p < 2.
class PadicPrime {
 public:
  explicit PadicPrime(unsigned long p);

  unsigned long value() const { return p_; }
  const BigInt& big() const { return big_; }

  friend bool operator==(const PadicPrime& a, const PadicPrime& b) {
    return a.p_ == b.p_;
  }

 private:
  unsigned long p_;
  BigInt big_;
};

/// v_p(x): the exponent of p in x, with a single distinguished infinite
/// value arising exactly for x = 0.
class Valuation {
 public:
  static Valuation infinite() {
    Valuation v;
    v.inf_ = true;
    return v;
  }
  static Valuation finite(long value) {
    Valuation v;
    v.value_ = value;
    return v;
  }

  bool is_infinite() const { return inf_; }
  long value() const;  // DomainError when infinite

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }

 private:
  long value_ = 0;
  bool inf_ = false;
};

Valuation valuation(const BigInt& x, const PadicPrime& p);
Valuation valuation(const Rational& x, const PadicPrime& p);

/// |x|_p = p^(-v_p(x)) as an exact rational; |0|_p = 0.
Rational padic_norm(const Rational& x, const PadicPrime& p);

/// d_p(a, b) = |a - b|_p. Symmetric, zero iff a = b, and an ultrametric.
Rational padic_distance(const Rational& a, const Rational& b, const PadicPrime& p);

/// p^e as an exact rational; e may be negative.
Rational padic_power(const PadicPrime& p, long e);

namespace detail {

/// v_p of a nonzero integer. Fast path: for p = 2 this is the index of the
/// lowest set bit.
long int_valuation(const mpz_t x, const PadicPrime& p);

bool is_prime_u64(unsigned long n);

}  // namespace detail
}  // namespace padicfit
