#include <doctest.h>

#include "adic/error.hpp"
#include "adic/valuation.hpp"
#include "oracle.hpp"

using namespace adic;

TEST_CASE("vp of rationals") {
  CHECK(vp(2, BigInt(12)) == ExtendedValuation(2));
  CHECK(vp(5, BigInt(0)).is_infinite());
  CHECK(vp(5, Rational(0)).to_string() == "INFINITY");
  CHECK(vp(3, Rational(7, 9)) == ExtendedValuation(-2));
  CHECK(vp(7, Rational(-98, 5)) == ExtendedValuation(2));
}

TEST_CASE("factorial valuation") {
  CHECK(factorial_valuation(3, 9) == 4);  // (9 - 1) / (3 - 1)
  CHECK(factorial_valuation(5, 4) == 0);
  CHECK(factorial_valuation(2, 10) == oracle::factorial_exponent(2, 10));
  CHECK(factorial_valuation(2, 10) == 8);
  CHECK(factorial_valuation(7, 0) == 0);
  for (std::int64_t p : {2, 3, 5}) {
    for (std::int64_t j = 0; j <= 120; ++j) {
      CHECK(factorial_valuation(p, j) == oracle::factorial_exponent(p, j));
    }
  }
}

TEST_CASE("magnitudes") {
  const Magnitude a{5, 1}, b{5, 2}, c{5, 3};
  CHECK(a * b == c);
  CHECK(max(a, c) == a);
  CHECK(Magnitude::zero(5) * a == Magnitude::zero(5));
  CHECK(c < a);
  CHECK(Magnitude::zero(5) < c);
  CHECK(a.to_string() == "5^-1");
  CHECK(Magnitude::zero(5).to_string() == "0");
  CHECK(a.inverse() == Magnitude(5, -1));
  CHECK_THROWS_AS((void)(Magnitude(3, 1) < Magnitude(5, 1)), Error);
}

TEST_CASE("extended valuation ordering") {
  const auto inf = ExtendedValuation::infinity();
  CHECK(ExtendedValuation(1000000) < inf);
  CHECK((inf + ExtendedValuation(-4)).is_infinite());
  CHECK(min(inf, ExtendedValuation(3)) == ExtendedValuation(3));
  CHECK_THROWS_AS((void)inf.value(), Error);
}
