#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tqf/arith.hpp"

#include <stdexcept>

using namespace tqf;

TEST_CASE("rationals stay in lowest terms") {
  Rational x = make_rational(6, -8);
  CHECK(x.get_num() == -3);
  CHECK(x.get_den() == 4);
  CHECK(to_string(x) == "-3/4");
  CHECK(to_string(make_rational(10, 5)) == "2");
  CHECK(parse_rational("12/-16") == make_rational(-3, 4));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
  CHECK(pow2(-3) == make_rational(1, 8));
  CHECK(rational_pow(make_rational(2, 3), -2) == make_rational(9, 4));
}

TEST_CASE("legendre symbol") {
  for (std::uint64_t p : {3, 5, 7, 11, 13}) CHECK(legendre_symbol(1, p) == 1);
  CHECK(legendre_symbol(2, 7) == 1);
  CHECK(legendre_symbol(3, 7) == -1);
  // squares mod 7 are {1, 2, 4}
  for (int u = 1; u < 7; ++u) CHECK(legendre_symbol(u, 7) == ((u == 1 || u == 2 || u == 4) ? 1 : -1));
  CHECK_THROWS(legendre_symbol(3, 2));
  CHECK_THROWS(legendre_symbol(14, 7));
  for (int u = 1; u < 11; ++u)
    for (int w = 1; w < 11; ++w)
      CHECK(legendre_symbol(u * w, 11) == legendre_symbol(u, 11) * legendre_symbol(w, 11));
}

TEST_CASE("kronecker symbol at 2") {
  CHECK(kronecker_2(1) == 1);
  CHECK(kronecker_2(3) == -1);
  CHECK(kronecker_2(5) == -1);
  CHECK(kronecker_2(7) == 1);
  CHECK(kronecker_2(-1) == 1);
  CHECK_THROWS(kronecker_2(6));
}

TEST_CASE("hilbert symbol values") {
  CHECK(hilbert_symbol(2, 2, Place::at(2)) == 1);
  CHECK(hilbert_symbol(-1, -1, Place::at(2)) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::at(3)) == 1);
  for (int b : {-7, -1, 2, 3, 10})
    for (auto v : {Place::infinity(), Place::at(2), Place::at(3), Place::at(5)}) CHECK(hilbert_symbol(1, b, v) == 1);
  // -1 is not a sum of two squares mod 8: x^2 + y^2 takes values {0,1,2,4,5} mod 8
  bool seven_hit = false;
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) seven_hit = seven_hit || (x * x + y * y) % 8 == 7;
  CHECK_FALSE(seven_hit);
}

TEST_CASE("hilbert symbol is symmetric, bimultiplicative and squareclass invariant") {
  const int vals[] = {-15, -6, -3, -2, -1, 2, 3, 5, 6, 7, 10, 12, 18};
  for (auto v : {Place::infinity(), Place::at(2), Place::at(3), Place::at(5), Place::at(7)})
    for (int a : vals)
      for (int b : vals) {
        CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
        CHECK(hilbert_symbol(Rational(a) * 49 / 4, b, v) == hilbert_symbol(a, b, v));
        for (int c : {-1, 2, 3})
          CHECK(hilbert_symbol(Rational(a) * c, b, v) == hilbert_symbol(a, b, v) * hilbert_symbol(c, b, v));
      }
}

TEST_CASE("squareclasses") {
  CHECK(squareclass_of(18, 3) == PadicSquareclass{3, 2, -1});
  CHECK(squareclass_of(5, 2) == PadicSquareclass{2, 0, 5});
  CHECK(squareclass_of(4, 2) == PadicSquareclass{2, 2, 1});
  CHECK(squareclass_of(make_rational(-3, 8), 2) == PadicSquareclass{2, -3, 5});
  CHECK(squareclass_of(make_rational(2, 9), 3) == PadicSquareclass{3, -2, -1});
  CHECK_THROWS(squareclass_of(0, 3));
}

TEST_CASE("primes and factorization") {
  CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  auto f = factorize(360);
  CHECK(f == std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(valuation(Integer(48), 2) == 4);
  CHECK(valuation(make_rational(5, 27), 3) == -3);
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(91));
}
