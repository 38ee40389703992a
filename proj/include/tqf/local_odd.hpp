#pragma once

#include "tqf/arith.hpp"
#include "tqf/dirichlet.hpp"

#include <cstdint>
#include <vector>

namespace tqf {

// Local genus u1 x^2 + p^a u2 y^2 + p^b u3 z^2 at an odd prime, with the units
// recorded by their Legendre characters.
struct OddLocalGenus {
  std::uint64_t p = 3;
  int a = 0, b = 0;
  int u1 = 1, u2 = 1, u3 = 1;

  // Residue field size; equal to p over the rationals.
  std::uint64_t q() const { return p; }
  int eps_prime() const;  // legendre(-1, p)
  bool is_valid() const;
  bool operator==(const OddLocalGenus&) const = default;
};

struct LocalGenusContribution {
  OddLocalGenus genus;
  int hasse = 1;
  Rational normalized_density;
};

std::vector<OddLocalGenus> enumerate_odd_local_genera(std::uint64_t p, const PadicSquareclass& S);
int hasse_odd(const OddLocalGenus& g);
Rational normalized_density_odd(const OddLocalGenus& g);
std::vector<LocalGenusContribution> odd_contributions(std::uint64_t p, const PadicSquareclass& S);

Rational A_star_odd(std::uint64_t p, const PadicSquareclass& S);
Rational B_star_odd(std::uint64_t p, const PadicSquareclass& S);

// Closed local factors in X = p^{-s}.
RationalFunction A_star_odd_factor(std::uint64_t p);
RationalFunction B_star_odd_factor(std::uint64_t p);

}  // namespace tqf
