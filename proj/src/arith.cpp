#include "tqf/arith.hpp"

#include <stdexcept>

namespace tqf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return make_rational(Integer(std::string(text)));
    return make_rational(Integer(std::string(text.substr(0, slash))),
                         Integer(std::string(text.substr(slash + 1))));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
}

Rational pow2(long e) { return rational_pow(Rational(2), e); }

Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return rational_pow(1 / base, -e);
  }
  Integer n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return make_rational(n, d);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

long valuation(const Integer& x, std::uint64_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  if (p < 2) throw std::invalid_argument("valuation needs a prime");
  Integer y = abs(x);
  long v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
    mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rational& x, std::uint64_t p) {
  if (x == 0) throw std::invalid_argument("valuation of zero");
  return valuation(x.get_num(), p) - valuation(x.get_den(), p);
}

int legendre_symbol(const Integer& u, std::uint64_t p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre symbol needs an odd prime");
  Integer pz(static_cast<unsigned long>(p));
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), u.get_mpz_t(), pz.get_mpz_t());
  if (r == 0) throw std::invalid_argument("legendre symbol of a multiple of p");
  return mpz_legendre(r.get_mpz_t(), pz.get_mpz_t());
}

int kronecker_2(const Integer& u) {
  if (mpz_even_p(u.get_mpz_t())) throw std::invalid_argument("kronecker_2 needs an odd argument");
  unsigned long r = mpz_fdiv_ui(u.get_mpz_t(), 8);
  return (r == 1 || r == 7) ? 1 : -1;
}

namespace {

// Splits a nonzero integer as p^v * unit.
std::pair<long, Integer> split(const Integer& x, std::uint64_t p) {
  long v = valuation(x, p);
  Integer u = x;
  for (long i = 0; i < v; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), p);
  return {v, u};
}

// Same squareclass as a: num * den differs from num / den by den^2.
Integer square_representative(const Rational& a) { return a.get_num() * a.get_den(); }

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, Place v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (v.is_infinite()) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
  std::uint64_t p = v.prime;
  if (!is_prime(p)) throw std::invalid_argument("hilbert symbol at a non-prime place");
  auto [alpha, u] = split(square_representative(a), p);
  auto [beta, w] = split(square_representative(b), p);
  if (p == 2) {
    auto mod8 = [](const Integer& z) { return static_cast<int>(mpz_fdiv_ui(z.get_mpz_t(), 8)); };
    int um = mod8(u), wm = mod8(w);
    int eps_u = ((um - 1) / 2) & 1, eps_w = ((wm - 1) / 2) & 1;
    int om_u = ((um * um - 1) / 8) & 1, om_w = ((wm * wm - 1) / 8) & 1;
    int e = eps_u * eps_w + (alpha & 1) * om_w + (beta & 1) * om_u;
    return (e & 1) ? -1 : 1;
  }
  int s = 1;
  if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
  if (beta & 1) s *= legendre_symbol(u, p);
  if (alpha & 1) s *= legendre_symbol(w, p);
  return s;
}

PadicSquareclass squareclass_of(const Rational& x, std::uint64_t p) {
  if (x == 0) throw std::invalid_argument("squareclass of zero");
  if (!is_prime(p)) throw std::invalid_argument("squareclass needs a prime");
  PadicSquareclass s;
  s.prime = p;
  s.valuation = valuation(x, p);
  auto [v, unit] = split(square_representative(x), p);
  (void)v;
  if (p == 2)
    s.unit_class = static_cast<int>(mpz_fdiv_ui(unit.get_mpz_t(), 8));
  else
    s.unit_class = legendre_symbol(unit, p);
  return s;
}

}  // namespace tqf
