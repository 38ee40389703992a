#pragma once

#include "tqf/arith.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tqf {

// Truncated formal Dirichlet series sum_{n=1}^{N} c(n) n^{-s}.
class DirichletSeries {
 public:
  explicit DirichletSeries(std::size_t bound);

  std::size_t bound() const { return coeffs_.size() - 1; }
  Rational& operator[](std::size_t n) { return coeffs_.at(n); }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }

  bool operator==(const DirichletSeries& other) const = default;

  DirichletSeries operator+(const DirichletSeries& other) const;
  DirichletSeries operator-(const DirichletSeries& other) const;
  DirichletSeries scaled(const Rational& k) const;

  static DirichletSeries delta(std::size_t bound);

 private:
  std::vector<Rational> coeffs_;  // index 0 unused
};

DirichletSeries convolve(const DirichletSeries& a, const DirichletSeries& b);
DirichletSeries convolve_serial(const DirichletSeries& a, const DirichletSeries& b);
DirichletSeries invert(const DirichletSeries& a);

// zeta(a s + b): coefficient m^{-b} at n = m^a.
DirichletSeries zeta_shift(unsigned a, long b, std::size_t bound);

// Multiplies by 2^{-s}.
DirichletSeries shift_2s(const DirichletSeries& a);

// Rational function in X with num[0] + num[1] X + ... over den[0] + den[1] X + ...
struct RationalFunction {
  std::vector<Rational> num;
  std::vector<Rational> den{Rational(1)};

  // Power-series coefficients of X^0..X^degree by exact long division.
  std::vector<Rational> expand(int degree) const;
};

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b);

// Local factor rule p -> f(p) in X = p^{-s}.  A twisted rule also sees the global
// index n whose p-part is being expanded.
class EulerFactorFn {
 public:
  using Untwisted = std::function<RationalFunction(std::uint64_t p)>;
  using Twisted = std::function<RationalFunction(std::uint64_t p, std::uint64_t n)>;
  using Coefficients = std::function<Rational(std::uint64_t p, int k)>;

  static EulerFactorFn rational(Untwisted f);
  static EulerFactorFn twisted(Twisted f);
  static EulerFactorFn coefficients(Coefficients f);

  bool is_twisted() const { return static_cast<bool>(twisted_); }
  // Coefficients of X^0..X^degree of the factor at p for global index n.
  std::vector<Rational> expansion(std::uint64_t p, int degree, std::uint64_t n = 1) const;

 private:
  Untwisted untwisted_;
  Twisted twisted_;
  Coefficients coefficients_;
};

DirichletSeries euler_product(const EulerFactorFn& f, std::size_t bound);

// Twisted factors must keep their constant term independent of the twist; it is
// read with n = 1 for the primes not dividing n.
DirichletSeries twisted_coefficients(const EulerFactorFn& f, std::size_t bound);

// One "n<TAB>num/den" line per index.
std::string dump(const DirichletSeries& a, bool omit_zero = true);

}  // namespace tqf
