#include <doctest.h>

#include <set>

#include "adic/error.hpp"
#include "adic/rootfind.hpp"
#include "oracle.hpp"

using namespace adic;

namespace {

TruncatedSeries poly(const FieldDescriptor& d, std::vector<Rational> c, std::int64_t prec = 30) {
  return TruncatedSeries::from_rationals(d, c, prec);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("hypotheses") {
  const auto q7 = FieldDescriptor::padic(7);
  HenselProblem pb{poly(q7, {0, 0, 1}), Element::from_integer(q7, 3, 30),
                   Element::from_integer(q7, 2, 30), 0, 3};
  const auto h = check_hypotheses(pb);
  CHECK(h.h_close);
  CHECK(h.h_quadratic);
  CHECK(h.h_single);
  CHECK(h.residual == Magnitude(7, 1));

  pb.x0 = Element::zero(q7, 30);
  pb.z = Element::one(q7, 30);
  CHECK(kind_of([&] { check_hypotheses(pb); }) == ErrorKind::DerivativeIndistinguishableFromZero);

  const auto q2 = FieldDescriptor::padic(2);
  HenselProblem p2{poly(q2, {0, 0, 1}), Element::one(q2, 30), Element::from_integer(q2, 2, 30), 0, 3};
  const auto h2 = check_hypotheses(p2);
  CHECK_FALSE(h2.h_close);
  CHECK(h2.derivative == Magnitude(2, 1));
}

TEST_CASE("hensel_solve") {
  const auto q7 = FieldDescriptor::padic(7);
  HenselProblem pb{poly(q7, {0, 0, 1}), Element::from_integer(q7, 3, 30),
                   Element::from_integer(q7, 2, 30), 0, 3};
  const auto c = hensel_solve(pb);
  CHECK(c.root.unit_digits() == std::vector<std::uint32_t>{3, 1, 2});
  CHECK(oracle::digits_value(c.root, 3) == 108);
  const auto roots = oracle::square_roots(2, 343);
  CHECK(std::find(roots.begin(), roots.end(), BigInt(108)) != roots.end());
  CHECK(c.derivative == Magnitude::one(7));
  for (std::size_t l = 1; l < c.b_trace.size(); ++l) {
    CHECK(c.b_trace[l] <= c.b_trace[l - 1] * c.b_trace[l - 1]);
  }

  const auto fx = fixed_point_solve(pb);
  CHECK(fx.root == c.root);

  const auto q5 = FieldDescriptor::padic(5);
  HenselProblem lin{poly(q5, {0, 1}), Element::zero(q5, 30), Element::from_integer(q5, 17, 30), 0, 6};
  const auto l1 = hensel_solve(lin);
  CHECK(l1.root == Element::from_integer(q5, 17, 6));
  CHECK(l1.iterations == 1);
  const auto l2 = fixed_point_solve(lin);
  CHECK(l2.root == Element::from_integer(q5, 17, 6));
  CHECK(l2.iterations == 1);

  HenselProblem exact{poly(q5, {0, -1, 1}), Element::from_integer(q5, 1 + 125, 30),
                      Element::zero(q5, 30), 0, 8};
  const auto ex = hensel_solve(exact);
  CHECK(ex.root == Element::one(q5, 8));
  CHECK(ex.residual_prec >= 8);
  CHECK(ex.uniqueness_exponent == 3);

  // t = 1, M2 = 1, |f'(x0)| = 1: t M2 < |f'| fails.
  HenselProblem bad{poly(q5, {0, 0, 1}), Element::one(q5, 30), Element::from_integer(q5, 3, 30), 0, 4};
  CHECK(kind_of([&] { fixed_point_solve(bad); }) == ErrorKind::ContractionFails);
  CHECK(kind_of([&] { hensel_solve(bad); }) == ErrorKind::HypothesesFail);

  HenselProblem thin{poly(q7, {0, 0, 1}, 4), Element::from_integer(q7, 3, 4),
                     Element::from_integer(q7, 2, 4), 0, 6};
  CHECK(kind_of([&] { hensel_solve(thin); }) == ErrorKind::PrecisionExhausted);
}

TEST_CASE("strassmann_bound") {
  const auto q5 = FieldDescriptor::padic(5);
  const auto r = strassmann_bound(poly(q5, {0, -1, 1}), 0);
  CHECK(r.bound_N == 2);
  CHECK(r.attaining_index == 2);
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto d = FieldDescriptor::padic(p);
    CHECK(strassmann_bound(poly(d, {1, p}), 0).bound_N == 0);
  }

  const auto q3 = FieldDescriptor::padic(3);
  CHECK(strassmann_bound(poly(q3, {0, -1, 0, 1}), 0).bound_N == 3);
  std::set<BigInt> lifted;
  const BigInt mod = oracle::power(3, 4);
  for (BigInt x = 0; x < mod; ++x) {
    if (oracle::poly_mod({0, -1, 0, 1}, x, mod) == 0) lifted.insert(x);
  }
  CHECK(lifted == std::set<BigInt>{0, 1, 80});

  CHECK(kind_of([&] { strassmann_bound(poly(q5, {0, 0}), 0); }) ==
        ErrorKind::AllCoefficientsIndistinguishableFromZero);
  TruncatedSeries loose{q5, {Element::one(q5, 10)}, TailProfile::affine(1, -1, 1)};
  CHECK(kind_of([&] { strassmann_bound(loose, 0); }) == ErrorKind::TailInconclusive);
}

TEST_CASE("enumerate_roots") {
  const auto q7 = FieldDescriptor::padic(7);
  const auto two = enumerate_roots(poly(q7, {-2, 0, 1}), 0, 3, 6);
  REQUIRE(two.size() == 2);
  CHECK((two[0].root + two[1].root).congruent(Element::zero(q7, 6), 6));
  const auto mod = oracle::power(7, 6);
  const auto sq = oracle::square_roots(2, mod);
  CHECK(sq.size() == 2);
  for (const auto& c : two) {
    CHECK(std::find(sq.begin(), sq.end(), oracle::digits_value(c.root, 6)) != sq.end());
  }

  const auto q5 = FieldDescriptor::padic(5);
  CHECK(enumerate_roots(poly(q5, {-3, 0, 1}), 0, 3, 6).empty());
  CHECK(oracle::square_roots(3, 5).empty());
  CHECK(kind_of([&] { enumerate_roots(poly(q5, {0, 0, 1}), 0, 3, 6); }) ==
        ErrorKind::UndecidedMultipleRoot);

  const auto q3 = FieldDescriptor::padic(3);
  const auto cubic = enumerate_roots(poly(q3, {0, -1, 0, 1}), 0, 3, 4);
  REQUIRE(cubic.size() == 3);
  CHECK(oracle::digits_value(cubic[0].root, 4) == 0);
  CHECK(oracle::digits_value(cubic[1].root, 4) == 1);
  CHECK(oracle::digits_value(cubic[2].root, 4) == 80);
}
