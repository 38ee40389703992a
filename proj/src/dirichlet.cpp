#include "tqf/dirichlet.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tqf {

DirichletSeries::DirichletSeries(std::size_t bound) : coeffs_(bound + 1) {
  if (bound < 1) throw std::invalid_argument("dirichlet series bound must be >= 1");
}

DirichletSeries DirichletSeries::delta(std::size_t bound) {
  DirichletSeries d(bound);
  d[1] = 1;
  return d;
}

DirichletSeries DirichletSeries::operator+(const DirichletSeries& other) const {
  DirichletSeries out(std::min(bound(), other.bound()));
  for (std::size_t n = 1; n <= out.bound(); ++n) out[n] = (*this)[n] + other[n];
  return out;
}

DirichletSeries DirichletSeries::operator-(const DirichletSeries& other) const {
  DirichletSeries out(std::min(bound(), other.bound()));
  for (std::size_t n = 1; n <= out.bound(); ++n) out[n] = (*this)[n] - other[n];
  return out;
}

DirichletSeries DirichletSeries::scaled(const Rational& k) const {
  DirichletSeries out(bound());
  for (std::size_t n = 1; n <= bound(); ++n) out[n] = (*this)[n] * k;
  return out;
}

DirichletSeries convolve_serial(const DirichletSeries& a, const DirichletSeries& b) {
  std::size_t N = std::min(a.bound(), b.bound());
  DirichletSeries out(N);
  for (std::size_t d = 1; d <= N; ++d) {
    if (a[d] == 0) continue;
    for (std::size_t e = 1; d * e <= N; ++e)
      if (b[e] != 0) out[d * e] += a[d] * b[e];
  }
  return out;
}

DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b) {
  std::size_t N = std::min(a.bound(), b.bound());
  DirichletSeries out(N);
  const long long n_max = static_cast<long long>(N);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long n = 1; n <= n_max; ++n) {
    Rational acc = 0;
    for (long long d = 1; d * d <= n; ++d) {
      if (n % d) continue;
      long long e = n / d;
      acc += a[d] * b[e];
      if (e != d) acc += a[e] * b[d];
    }
    out[n] = acc;
  }
  return out;
}

DirichletSeries invert(const DirichletSeries& a) {
  if (a[1] == 0) throw std::domain_error("dirichlet series with zero leading coefficient is not invertible");
  std::size_t N = a.bound();
  DirichletSeries inv(N);
  Rational lead_inv = 1 / a[1];
  inv[1] = lead_inv;
  // Forward substitution; accumulate a[d] * inv[e] into index d*e for d > 1.
  std::vector<Rational> acc(N + 1);
  for (std::size_t e = 1; e <= N; ++e) {
    if (e > 1) inv[e] = -acc[e] * lead_inv;
    if (inv[e] == 0) continue;
    for (std::size_t d = 2; d * e <= N; ++d)
      if (a[d] != 0) acc[d * e] += a[d] * inv[e];
  }
  return inv;
}

DirichletSeries zeta_shift(unsigned a, long b, std::size_t bound) {
  if (a < 1) throw std::invalid_argument("zeta_shift needs a >= 1");
  DirichletSeries z(bound);
  for (std::uint64_t m = 1;; ++m) {
    Integer mz(static_cast<unsigned long>(m));
    Integer n;
    mpz_pow_ui(n.get_mpz_t(), mz.get_mpz_t(), a);
    if (n > static_cast<unsigned long>(bound)) break;
    z[n.get_ui()] = rational_pow(Rational(mz), -b);
  }
  return z;
}

DirichletSeries shift_2s(const DirichletSeries& a) {
  DirichletSeries out(a.bound());
  for (std::size_t n = 1; 2 * n <= a.bound(); ++n) out[2 * n] = a[n];
  return out;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<Rational> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Rational> RationalFunction::expand(int degree) const {
  if (den.empty() || den[0] == 0) throw std::domain_error("euler factor denominator has zero constant term");
  std::vector<Rational> out(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    Rational c = k < static_cast<int>(num.size()) ? num[k] : Rational(0);
    for (int j = 1; j <= k && j < static_cast<int>(den.size()); ++j) c -= den[j] * out[k - j];
    out[k] = c / den[0];
  }
  return out;
}

EulerFactorFn EulerFactorFn::rational(Untwisted f) {
  EulerFactorFn e;
  e.untwisted_ = std::move(f);
  return e;
}

EulerFactorFn EulerFactorFn::twisted(Twisted f) {
  EulerFactorFn e;
  e.twisted_ = std::move(f);
  return e;
}

EulerFactorFn EulerFactorFn::coefficients(Coefficients f) {
  EulerFactorFn e;
  e.coefficients_ = std::move(f);
  return e;
}

std::vector<Rational> EulerFactorFn::expansion(std::uint64_t p, int degree, std::uint64_t n) const {
  if (twisted_) return twisted_(p, n).expand(degree);
  if (untwisted_) return untwisted_(p).expand(degree);
  std::vector<Rational> out;
  for (int k = 0; k <= degree; ++k) out.push_back(coefficients_(p, k));
  return out;
}

namespace {

int max_exponent(std::uint64_t p, std::size_t bound) {
  int k = 0;
  for (std::uint64_t q = p; q <= bound; q *= p) ++k;
  return k;
}

}  // namespace

DirichletSeries euler_product(const EulerFactorFn& f, std::size_t bound) {
  if (f.is_twisted()) throw std::invalid_argument("euler_product needs an untwisted factor");
  auto primes = primes_up_to(bound);
  std::map<std::uint64_t, std::vector<Rational>> local;
  std::vector<std::uint64_t> nontrivial_constant;
  for (auto p : primes) {
    local[p] = f.expansion(p, max_exponent(p, bound));
    if (local[p][0] != 1) nontrivial_constant.push_back(p);
  }
  DirichletSeries out(bound);
  for (std::size_t n = 1; n <= bound; ++n) {
    Rational c = 1;
    auto fac = factorize(n);
    for (auto [p, e] : fac) c *= local[p][e];
    for (auto p : nontrivial_constant)
      if (n % p) c *= local[p][0];
    out[n] = c;
  }
  return out;
}

DirichletSeries twisted_coefficients(const EulerFactorFn& f, std::size_t bound) {
  if (!f.is_twisted()) return euler_product(f, bound);
  auto primes = primes_up_to(bound);
  std::vector<std::pair<std::uint64_t, Rational>> nontrivial_constant;
  for (auto p : primes) {
    Rational c0 = f.expansion(p, 0, 1)[0];
    if (c0 != 1) nontrivial_constant.emplace_back(p, c0);
  }
  DirichletSeries out(bound);
  for (std::size_t n = 1; n <= bound; ++n) {
    Rational c = 1;
    for (auto [p, e] : factorize(n)) c *= f.expansion(p, e, n)[e];
    for (auto& [p, c0] : nontrivial_constant)
      if (n % p) c *= c0;
    out[n] = c;
  }
  return out;
}

std::string dump(const DirichletSeries& a, bool omit_zero) {
  std::ostringstream os;
  for (std::size_t n = 1; n <= a.bound(); ++n) {
    if (omit_zero && a[n] == 0) continue;
    os << n << '\t' << to_string(a[n]) << '\n';
  }
  return os.str();
}

}  // namespace tqf
