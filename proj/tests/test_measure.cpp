#include <doctest.h>

#include <set>

#include "adic/error.hpp"
#include "adic/format.hpp"
#include "adic/measure.hpp"
#include "oracle.hpp"

using namespace adic;

namespace {

BallSpec ball(const FieldDescriptor& d, BigInt c, std::int64_t j) {
  return BallSpec(Element::from_integer(d, c, j + 4), j);
}

}  // namespace

TEST_CASE("ball relations") {
  const auto q5 = FieldDescriptor::padic(5);
  CHECK(ball_relation(ball(q5, 0, 0), ball(q5, 1, 1)) == BallRelation::SecondInsideFirst);
  CHECK(ball_relation(ball(q5, 1, 1), ball(q5, 0, 0)) == BallRelation::FirstInsideSecond);
  CHECK(ball_relation(ball(q5, 0, 1), ball(q5, 1, 1)) == BallRelation::Disjoint);
  CHECK(ball_relation(ball(q5, 0, 0), ball(q5, 1, 0)) == BallRelation::Equal);
  CHECK(ball(q5, 0, 0) == ball(q5, 1, 0));
  CHECK(relation_name(BallRelation::SecondInsideFirst) == "SECOND_INSIDE_FIRST");
  CHECK(ball(q5, 26, 2).to_string() == "1@2");
  CHECK(BallSpec::open(Element::zero(q5, 5), 1) == ball(q5, 0, 2));
  CHECK(ball(q5, 7, 1).contains(Element::from_integer(q5, 12, 4)));
  CHECK_FALSE(ball(q5, 7, 1).contains(Element::from_integer(q5, 13, 4)));
  CHECK_THROWS_AS(BallSpec(Element::from_integer(q5, 1, 1), 3), Error);
}

TEST_CASE("maximal_disjointify") {
  const auto q3 = FieldDescriptor::padic(3);
  const BallFamily f{ball(q3, 0, 1), ball(q3, 0, 0), ball(q3, 1, 1)};
  CHECK(maximal_disjointify(f) == BallFamily{ball(q3, 0, 0)});
  const BallFamily g{ball(q3, 2, 1), ball(q3, 1, 1)};
  CHECK(maximal_disjointify(g) == BallFamily{ball(q3, 1, 1), ball(q3, 2, 1)});
  CHECK(maximal_disjointify({}).empty());
}

TEST_CASE("haar measure") {
  const auto q5 = FieldDescriptor::padic(5);
  CHECK(haar_union_measure({ball(q5, 0, 1), ball(q5, 1, 1)}) == Rational(2, 5));
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto d = FieldDescriptor::padic(p);
    BallFamily cover;
    for (std::int64_t r = 0; r < p; ++r) cover.push_back(ball(d, r, 1));
    CHECK(haar_union_measure(cover) == 1);
  }
  const auto q7 = FieldDescriptor::padic(7);
  CHECK(haar_union_measure({ball(q7, 0, 2)}) == Rational(1, 49));
  CHECK(haar_union_measure({}) == 0);

  // Counting residues mod 5^3 covered by the family.
  const BallFamily mixed{ball(q5, 3, 1), ball(q5, 8, 2), ball(q5, 4, 2), ball(q5, 29, 3)};
  std::set<BigInt> hit;
  const BigInt mod = 125;
  for (BigInt x = 0; x < mod; ++x) {
    for (const auto& b : mixed) {
      if (b.contains(Element::from_integer(q5, x, 3))) hit.insert(x);
    }
  }
  CHECK(haar_union_measure(mixed) == Rational(static_cast<long>(hit.size()), 125));
}

TEST_CASE("scale_family") {
  const auto q7 = FieldDescriptor::padic(7);
  const auto s = scale_family(Element::from_integer(q7, 7, 6), {ball(q7, 0, 0)});
  CHECK(s.family == BallFamily{ball(q7, 0, 1)});
  CHECK(s.ratio == Rational(1, 7));
  const auto u = scale_family(Element::from_integer(q7, 3, 6), {ball(q7, 2, 1), ball(q7, 1, 2)});
  CHECK(u.ratio == 1);
  CHECK(haar_union_measure(u.family) == haar_union_measure({ball(q7, 2, 1), ball(q7, 1, 2)}));
  const auto q5 = FieldDescriptor::padic(5);
  const auto v = scale_family(Element::from_rational(q5, Rational(1, 5), 6), {ball(q5, 0, 2)});
  CHECK(v.family == BallFamily{ball(q5, 0, 1)});
  CHECK(v.ratio == 5);
  CHECK_THROWS_AS(scale_family(Element::zero(q5, 4), {ball(q5, 0, 1)}), Error);
}

TEST_CASE("hausdorff alpha") {
  const auto q5 = FieldDescriptor::padic(5);
  CHECK(hausdorff_alpha(q5, 1).approx == doctest::Approx(1.0));
  CHECK(hausdorff_alpha(q5, 1).to_string() == "1");
  CHECK(hausdorff_alpha(q5, 2).approx == doctest::Approx(0.5));
  CHECK(hausdorff_alpha(FieldDescriptor::padic(5, 2), 1).approx == doctest::Approx(0.5));
  const auto d = hausdorff_alpha(q5, 2);
  CHECK(d.scale_base == d.count_base * d.count_base);  // log c / log c^2
  CHECK(d.to_string() == "1/2");
  CHECK(make_dimension(2, 3).to_string() == "log(2)/log(3)");
  CHECK(make_dimension(8, 4).to_string() == "3/2");
}

TEST_CASE("digit sets") {
  const auto all = digit_set_analysis(3, {0, 1, 2}, 4, Rational(1));
  CHECK(all.dimension.approx == doctest::Approx(1.0));
  for (std::int64_t n = 1; n <= 6; ++n) {
    CHECK(digit_set_analysis(5, {0, 1, 2, 3, 4}, n, Rational(1)).content.exact_value() == Rational(1));
  }
  const auto point = digit_set_analysis(7, {0}, 3, Rational(1));
  CHECK(point.dimension.approx == 0.0);
  CHECK(point.ball_count == 1);

  const auto cantor = digit_set_analysis(3, {0, 2}, 5, make_dimension(2, 3));
  CHECK(cantor.ball_count == 32);
  CHECK(cantor.dimension.approx == doctest::Approx(0.630930).epsilon(1e-6));
  // count the depth-5 classes by listing digit strings
  std::set<BigInt> classes;
  for (int mask = 0; mask < 32; ++mask) {
    BigInt v = 0, place = 1;
    for (int i = 0; i < 5; ++i) {
      v += place * ((mask >> i) & 1 ? 2 : 0);
      place *= 3;
    }
    classes.insert(v);
  }
  CHECK(classes.size() == 32);
  CHECK(cantor.content.exact_value() == Rational(1));
  const ContentEstimate a{32, 3, 5, Rational(1)}, b{31, 3, 5, Rational(1)};
  CHECK(compare(a, b) > 0);
  CHECK(compare(a, a) == 0);
}

TEST_CASE("admissible balls") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto sq = TruncatedSeries::from_rationals(q5, {0, 0, 1}, 20);
  const auto r = admissible_ball(sq, ball(q5, 1, 1));
  REQUIRE(r.certified);
  CHECK(*r.image == ball(q5, 1, 1));
  std::set<BigInt> squares;
  for (BigInt x = 1; x < 25; x += 5) squares.insert(oracle::modulo(x * x, 25));
  CHECK(squares == std::set<BigInt>{1, 6, 11, 16, 21});

  const auto affine = TruncatedSeries::from_rationals(q5, {4, 3}, 20);
  for (std::int64_t j : {0, 1, 3}) {
    const auto a = admissible_ball(affine, ball(q5, 2, j));
    REQUIRE(a.certified);
    CHECK(a.image->radius_exponent() == j);
  }

  const auto q2 = FieldDescriptor::padic(2);
  const auto bad = admissible_ball(TruncatedSeries::from_rationals(q2, {0, 0, 1}, 20), ball(q2, 1, 0));
  CHECK_FALSE(bad.certified);
  CHECK(bad.lhs == Magnitude::one(2));
  CHECK(bad.rhs < bad.lhs);
}

TEST_CASE("image measure") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto id = TruncatedSeries::from_rationals(q5, {0, 1}, 20);
  const BallFamily sub{ball(q5, 1, 2), ball(q5, 3, 3)};
  CHECK(image_measure(id, ball(q5, 0, 0), sub).measure == haar_union_measure(sub));

  const auto aff = TruncatedSeries::from_rationals(q5, {1, 5}, 20);
  CHECK(image_measure(aff, ball(q5, 0, 0), {ball(q5, 0, 0)}).measure == Rational(1, 5));

  const auto sq = TruncatedSeries::from_rationals(q5, {0, 0, 1}, 20);
  const auto m = image_measure(sq, ball(q5, 1, 1), {ball(q5, 1, 2)});
  CHECK(m.measure == Rational(1, 25));
  CHECK(haar_union_measure(m.image) == Rational(1, 25));

  const auto q2 = FieldDescriptor::padic(2);
  try {
    image_measure(TruncatedSeries::from_rationals(q2, {0, 0, 1}, 20), ball(q2, 1, 0), {});
    FAIL("expected a refusal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCertified);
    CHECK(e.name() == "NOT_CERTIFIED");
  }
  CHECK_THROWS_AS(image_measure(sq, ball(q5, 1, 1), {ball(q5, 2, 2)}), Error);
}
