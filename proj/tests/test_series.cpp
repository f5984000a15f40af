#include <doctest.h>

#include <random>

#include "adic/error.hpp"
#include "adic/format.hpp"
#include "adic/series.hpp"
#include "adic/special.hpp"
#include "oracle.hpp"

using namespace adic;

namespace {

TruncatedSeries poly(const FieldDescriptor& d, std::vector<Rational> c, std::int64_t prec = 20) {
  return TruncatedSeries::from_rationals(d, c, prec);
}

}  // namespace

TEST_CASE("sup_term") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto sq = poly(q5, {0, 0, 1});
  CHECK(sup_term(sq, 0, 1) == Magnitude::one(5));
  CHECK(sup_term(sq, 0, 2) == Magnitude::one(5));
  // j = 2 gives |1/2| = 1; j = 5 gives |1/120| 5^-3 = 5^-2; the rest are smaller.
  CHECK(sup_term(exp_series(5, 12), 1, 2) == Magnitude::one(5));
  CHECK(sup_term(exp_series(5, 12), 1, 0) == Magnitude::one(5));
  CHECK(sup_term(poly(q5, {0, 5, 0, 25}), 1, 1) == Magnitude(5, 1));
}

TEST_CASE("eval") {
  const auto q7 = FieldDescriptor::padic(7);
  CHECK(eval(poly(q7, {1, 1, 1}), Element::zero(q7, 10), 10) == Element::one(q7, 10));

  TruncatedSeries geom{q7, {}, TailProfile::geometric()};
  for (int j = 0; j < 12; ++j) geom.coeffs.push_back(Element::one(q7, 12));
  const Element x = Element::from_integer(q7, 14, 12);
  CHECK(eval(geom, x, 8) == invert_one_minus(x, 8));

  const Element r = eval(poly(q7, {-2, 0, 1}), Element::from_integer(q7, 3, 10), 10);
  CHECK(r.to_string() == "1*7 + O(7^10)");

  CHECK_THROWS_AS(eval(geom, x, 40), Error);
  CHECK_THROWS_AS(eval(geom, Element::one(q7, 12), 4), Error);
}

TEST_CASE("derivative") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto d = derivative(poly(q5, {0, 0, 1}));
  CHECK(d.coeffs.size() == 2);
  CHECK(d.coeffs[0].is_zero_to_precision());
  CHECK(d.coeffs[1] == Element::from_integer(q5, 2, 20));
  const auto c = derivative(poly(q5, {7}));
  CHECK(c.coeffs.size() == 1);
  CHECK(c.coeffs[0].is_zero_to_precision());

  const auto e = exp_series(5, 10);
  const auto de = derivative(e);
  for (std::size_t j = 0; j + 1 < e.coeffs.size(); ++j) {
    CHECK(de.coeffs[j].congruent(e.coeffs[j], 10 - factorial_valuation(5, j + 1)));
  }
  REQUIRE(de.tail.has_value());
}

TEST_CASE("cauchy product and sum") {
  const auto q3 = FieldDescriptor::padic(3);
  const auto p = cauchy_product(poly(q3, {1, 1}), poly(q3, {1, -1}));
  CHECK(p.coeffs.size() == 3);
  CHECK(p.coeffs[0] == Element::one(q3, 20));
  CHECK(p.coeffs[1].is_zero_to_precision());
  CHECK(p.coeffs[2] == Element::from_integer(q3, -1, 20));

  const auto f = poly(q3, {2, 0, 5, 1});
  const auto same = cauchy_product(f, poly(q3, {1}));
  for (std::size_t j = 0; j < f.coeffs.size(); ++j) CHECK(same.coeffs[j] == f.coeffs[j]);

  const auto s = series_sum(f, poly(q3, {1, 1}));
  CHECK(s.coeffs[0] == Element::from_integer(q3, 3, 20));

  // E(x)^2 against E(2x)
  const auto q5 = FieldDescriptor::padic(5);
  const auto e = exp_series(5, 14);
  const auto e2 = cauchy_product(e, e);
  REQUIRE(e2.tail.has_value());
  const Element x = parse_element(q5, "5 + 3*5^2 + 4*5^3", 14);
  const Element lhs = eval(e2, x, 8);
  const Element rhs = exp_eval(x + x, 8);
  CHECK(lhs.congruent(rhs, 8));
}

TEST_CASE("recenter") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto r = recenter(poly(q5, {0, 0, 1}), Element::one(q5, 20), 0);
  CHECK(r.coeffs[0] == Element::one(q5, 20));
  CHECK(r.coeffs[1] == Element::from_integer(q5, 2, 20));
  CHECK(r.coeffs[2] == Element::one(q5, 20));

  const auto k = recenter(poly(q5, {4}), Element::from_integer(q5, 3, 20), 0);
  CHECK(k.coeffs.size() == 1);
  CHECK(k.coeffs[0] == Element::from_integer(q5, 4, 20));

  const auto q3 = FieldDescriptor::padic(3);
  const auto f = poly(q3, {0, -1, 0, 1});
  const Element x0 = Element::one(q3, 20);
  const auto g = recenter(f, x0, 0);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 25; ++i) {
    const BigInt u = 3 * BigInt(rng() % 6561);
    const Element w = Element::from_integer(q3, u, 20);
    const Element a = eval(g, w, 6);
    CHECK(oracle::digits_value(a, 6) ==
          oracle::poly_mod({0, -1, 0, 1}, 1 + u, oracle::power(3, 6)));
  }
  CHECK_THROWS_AS(recenter(f, Element::one(q3, 20), 1), Error);
}

TEST_CASE("deflate") {
  const auto q7 = FieldDescriptor::padic(7);
  const auto g = deflate(poly(q7, {-4, 0, 1}), Element::from_integer(q7, 2, 20), 0);
  REQUIRE(g.coeffs.size() == 2);
  CHECK(g.coeffs[0] == Element::from_integer(q7, 2, 20));
  CHECK(g.coeffs[1] == Element::one(q7, 20));

  const auto lin = deflate(poly(q7, {5, 3}), Element::from_integer(q7, 6, 20), 0);
  REQUIRE(lin.coeffs.size() == 1);
  CHECK(lin.coeffs[0] == Element::from_integer(q7, 3, 20));

  const auto q5 = FieldDescriptor::padic(5);
  const auto h = deflate(poly(q5, {0, -1, 0, 1}), Element::one(q5, 20), 0);
  // (X^3 - X)/(X - 1) = X^2 + X by long division
  REQUIRE(h.coeffs.size() == 3);
  CHECK(h.coeffs[0].is_zero_to_precision());
  CHECK(h.coeffs[1] == Element::one(q5, 20));
  CHECK(h.coeffs[2] == Element::one(q5, 20));
  CHECK(eval(h, Element::one(q5, 20), 10) == Element::from_integer(q5, 2, 10));
}

TEST_CASE("convergence threshold") {
  CHECK(convergence_threshold(exp_series(5, 8)) == 1);
  CHECK(convergence_threshold(exp_series(2, 8)) == 2);
  CHECK(convergence_threshold(exp_series(3, 8)) == 1);
  CHECK_FALSE(convergence_threshold(poly(FieldDescriptor::padic(5), {1, 2})).has_value());
}

TEST_CASE("isometry criterion") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto q2 = FieldDescriptor::padic(2);
  const auto r5 = isometry_criterion(poly(q5, {0, 0, 1}), 0, Element::one(q5, 20), 1);
  CHECK(r5.certified);
  CHECK(r5.m2 == Magnitude::one(5));
  const auto r2 = isometry_criterion(poly(q2, {0, 0, 1}), 0, Element::one(q2, 20), 0);
  CHECK_FALSE(r2.certified);
  CHECK(r2.derivative == Magnitude(2, 1));

  const std::vector<BigInt> c{2, 3, 1, 4};
  const auto f = poly(q5, {2, 3, 1, 4});
  std::mt19937_64 rng(5);
  int certified = 0;
  for (int i = 0; i < 100; ++i) {
    const BigInt y = rng() % 15625;
    const BigInt u = 5 * BigInt(1 + rng() % 3124);
    const auto rep = isometry_criterion(f, 0, Element::from_integer(q5, y, 20), 1);
    if (!rep.certified) continue;
    ++certified;
    const BigInt m = oracle::power(5, 12);
    const BigInt diff = oracle::modulo(oracle::poly_mod(c, y + u, m) - oracle::poly_mod(c, y, m), m);
    const BigInt dfy = oracle::poly_mod({3, 2, 12}, y, m);
    CHECK(vp(5, diff) == vp(5, dfy) + vp(5, u));
  }
  CHECK(certified > 20);
}

TEST_CASE("series literals") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto f = parse_series(q5, "X^2 - 2*X + 1/2 + tail:geom", 6);
  REQUIRE(f.tail.has_value());
  CHECK(f.tail->name == "geom");
  CHECK(f.coeffs[0] == Element::from_rational(q5, Rational(1, 2), 6));
  CHECK(f.coeffs[1] == Element::from_integer(q5, -2, 6));
  const auto g = parse_series(q5, "(1 + X)^3", 6);
  CHECK(g.coeffs[2] == Element::from_integer(q5, 3, 6));
  const auto e = parse_series(q5, "exp", 6);
  CHECK(e.tail->name == "exp");
  CHECK_THROWS_AS(parse_series(q5, "1/X", 6), Error);
  CHECK_THROWS_AS(parse_series(q5, "X + tail:affine(1,2)", 6), Error);
}
