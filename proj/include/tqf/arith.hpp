#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tqf {

using Integer = mpz_class;
using Rational = mpq_class;

// Builds num/den in lowest terms; throws std::invalid_argument when den == 0.
Rational make_rational(const Integer& num, const Integer& den = 1);

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

Rational pow2(long e);
Rational rational_pow(const Rational& base, long e);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);

// ord_p of a nonzero integer or rational.
long valuation(const Integer& x, std::uint64_t p);
long valuation(const Rational& x, std::uint64_t p);

int legendre_symbol(const Integer& u, std::uint64_t p);
int kronecker_2(const Integer& u);

struct Place {
  std::uint64_t prime = 0;  // 0 stands for the real place

  static Place infinity() { return Place{0}; }
  static Place at(std::uint64_t p) { return Place{p}; }
  bool is_infinite() const { return prime == 0; }
};

int hilbert_symbol(const Rational& a, const Rational& b, Place v);

struct PadicSquareclass {
  std::uint64_t prime = 2;
  long valuation = 0;
  // odd p: Legendre character of the unit part; p = 2: unit part mod 8
  int unit_class = 1;

  bool operator==(const PadicSquareclass&) const = default;
};

PadicSquareclass squareclass_of(const Rational& x, std::uint64_t p);

}  // namespace tqf
