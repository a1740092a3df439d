#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace monoflag {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  if (k > n) return r;  // zero
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Binomial with a possibly negative or small top; C(n,k) = 0 when n < k.
inline BigInt binomial_signed(long n, long k) {
  if (k < 0 || n < k) return BigInt(0);
  return binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k));
}

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// "p/q" (or "p" when the denominator is one).
inline std::string to_fraction_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Parses "p", "p/q" or a finite decimal such as "0.25" / "-1.5e-3" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_decimal_string(const Rational& q, int digits);

}  // namespace monoflag
