#include "tqf/local_odd.hpp"

#include <map>
#include <stdexcept>

namespace tqf {

int OddLocalGenus::eps_prime() const { return legendre_symbol(Integer(-1), p); }

bool OddLocalGenus::is_valid() const {
  auto unit = [](int u) { return u == 1 || u == -1; };
  if (p == 2 || !is_prime(p) || a < 0 || a > b) return false;
  if (!unit(u1) || !unit(u2) || !unit(u3)) return false;
  if (a == 0 && b == 0) return u1 == 1 && u2 == 1;
  if (a == 0) return u1 == 1;
  if (a == b) return u2 == 1;
  return true;
}

std::vector<OddLocalGenus> enumerate_odd_local_genera(std::uint64_t p, const PadicSquareclass& S) {
  if (p == 2 || S.prime != p) throw std::invalid_argument("odd local genera need an odd prime matching the squareclass");
  std::vector<OddLocalGenus> out;
  for (int a = 0; 2 * a <= S.valuation; ++a) {
    int b = static_cast<int>(S.valuation) - a;
    for (int u1 : {1, -1})
      for (int u2 : {1, -1}) {
        OddLocalGenus g{p, a, b, u1, u2, u1 * u2 * S.unit_class};
        if (g.is_valid()) out.push_back(g);
      }
  }
  return out;
}

int hasse_odd(const OddLocalGenus& g) {
  auto pw = [](int e, long k) { return (k % 2 == 0) ? 1 : e; };
  return pw(g.u1, g.a + g.b) * pw(g.u2, g.b) * pw(g.u3, g.a) *
         pw(g.eps_prime(), static_cast<long>(g.a) * g.b);
}

Rational normalized_density_odd(const OddLocalGenus& g) {
  if (!g.is_valid()) throw std::invalid_argument("invalid odd local genus");
  Rational q(static_cast<unsigned long>(g.q()));
  // Jordan blocks: scale exponent -> unit characters.
  std::map<int, std::vector<int>> blocks;
  blocks[0].push_back(g.u1);
  blocks[g.a].push_back(g.u2);
  blocks[g.b].push_back(g.u3);

  Rational M = 1;
  for (auto& [alpha, units] : blocks) {
    (void)alpha;
    switch (units.size()) {
      case 1: M *= Rational(1, 2); break;
      case 2: {
        int chi = g.eps_prime() * units[0] * units[1];
        M *= 1 / (2 * (1 - chi / q));
        break;
      }
      case 3: M *= 1 / (2 * (1 - 1 / (q * q))); break;
    }
  }
  // prod_{i<j} q^{(alpha_j - alpha_i) n_i n_j / 2}, with the exponent doubled to stay integral
  long twice_cross = 0;
  for (auto i = blocks.begin(); i != blocks.end(); ++i)
    for (auto j = std::next(i); j != blocks.end(); ++j)
      twice_cross += static_cast<long>(j->first - i->first) * i->second.size() * j->second.size();
  if (twice_cross % 2) throw std::logic_error("odd cross exponent");
  long ord_det = g.a + g.b;
  Rational beta_inv = 2 * M * rational_pow(q, twice_cross / 2 - 2 * ord_det);
  return (1 - 1 / (q * q)) * beta_inv;
}

std::vector<LocalGenusContribution> odd_contributions(std::uint64_t p, const PadicSquareclass& S) {
  std::vector<LocalGenusContribution> out;
  for (auto& g : enumerate_odd_local_genera(p, S)) out.push_back({g, hasse_odd(g), normalized_density_odd(g)});
  return out;
}

Rational A_star_odd(std::uint64_t p, const PadicSquareclass& S) {
  Rational sum = 0;
  for (auto& c : odd_contributions(p, S)) sum += c.normalized_density;
  return sum;
}

Rational B_star_odd(std::uint64_t p, const PadicSquareclass& S) {
  Rational sum = 0;
  for (auto& c : odd_contributions(p, S)) sum += c.hasse * c.normalized_density;
  return sum;
}

RationalFunction A_star_odd_factor(std::uint64_t p) {
  Rational q(static_cast<unsigned long>(p));
  RationalFunction f;
  f.num = {1, 0, 0, -rational_pow(q, -6)};
  f.den = poly_mul({1, -1 / q}, {1, 0, -rational_pow(q, -3)});
  return f;
}

RationalFunction B_star_odd_factor(std::uint64_t p) {
  Rational q(static_cast<unsigned long>(p));
  int eps = legendre_symbol(Integer(-1), p);
  RationalFunction f;
  f.num = {1, eps * rational_pow(q, -2), rational_pow(q, -4)};
  f.den = {1, 0, -rational_pow(q, -2)};
  return f;
}

}  // namespace tqf
