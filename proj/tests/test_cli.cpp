#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "adic/cli.hpp"
#include "adic/error.hpp"
#include "adic/format.hpp"

using namespace adic;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("element literals round trip") {
  const auto q7 = FieldDescriptor::padic(7);
  for (const char* text : {"3 + 1*7 + 2*7^2 + O(7^3)", "7^-2 * (1 + 3*7 + O(7^4))", "O(7^3)",
                           "1*7 + O(7^5)", "6 + 6*7 + O(7^2)"}) {
    const Element x = parse_element(q7, text, 10);
    CHECK(x.to_string() == text);
    CHECK(parse_element(q7, x.to_string(), 10) == x);
  }
  CHECK(parse_element(q7, "-1/6", 3) == Element::from_rational(q7, Rational(-1, 6), 3));
  CHECK(parse_element(q7, "p^2 + 3", 4).to_string() == "3 + 1*7^2 + O(7^4)");
  const auto f3 = FieldDescriptor::laurent(3);
  const Element t = parse_element(f3, "T^-1 * (2 + T + O(T^3))", 5);
  CHECK(t.valuation() == ExtendedValuation(-1));
  CHECK(parse_element(f3, t.to_string(), 5) == t);
  try {
    parse_element(q7, "3 + * 7", 4);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("rationals") {
  CHECK(parse_rational("7/9") == Rational(7, 9));
  CHECK(parse_rational("-4/6") == Rational(-2, 3));
  CHECK(rational_to_string(Rational(2, 5)) == "2/5");
  CHECK(rational_to_string(Rational(3)) == "3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
}

TEST_CASE("cli text output") {
  CHECK(cli({"val", "-p", "3", "7/9"}).out == "-2\n");
  CHECK(cli({"val", "-p", "5", "0"}).out == "INFINITY\n");
  CHECK(cli({"factval", "-p", "2", "10"}).out == "8\n");
  CHECK(cli({"hensel", "-p", "7", "-N", "3", "--f", "X^2-2", "--x0", "3", "--z", "0"}).out ==
        "3 + 1*7 + 2*7^2 + O(7^3)\n");
  CHECK(cli({"hensel", "-p", "7", "-N", "3", "--f", "X^2", "--x0", "3", "--z", "2", "--method",
             "fixed"}).out == "3 + 1*7 + 2*7^2 + O(7^3)\n");
  CHECK(cli({"measure", "union", "-p", "5", "0@1", "1@1"}).out == "2/5\n");
  CHECK(cli({"measure", "relation", "-p", "5", "0@0", "1@1"}).out == "SECOND_INSIDE_FIRST\n");
  CHECK(cli({"strassmann", "-p", "3", "--f", "X^3-X"}).out == "3\n");
  CHECK(cli({"elem", "-p", "5", "-N", "3", "div", "1", "2"}).out == "3 + 2*5 + 2*5^2 + O(5^3)\n");
  CHECK(cli({"elem", "-p", "5", "-N", "3", "reduce", "1/2", "2"}).out == "13\n");
  CHECK(cli({"inv1m", "-p", "7", "-N", "3", "7"}).out == "1 + 1*7 + 1*7^2 + O(7^3)\n");
  CHECK(cli({"exp", "-p", "5", "-N", "3", "5"}).out == "1 + 1*5 + 3*5^2 + O(5^3)\n");
  CHECK(cli({"dim", "alpha", "-p", "5", "--a", "2"}).out == "1/2\n");
  CHECK(cli({"elem", "--laurent", "-p", "5", "-N", "3", "inv", "2 + T"}).out ==
        "3 + 1*T + 2*T^2 + O(T^3)\n");
  const auto roots = cli({"roots", "-p", "3", "-N", "4", "--f", "X^3 - X"});
  CHECK(roots.code == 0);
  CHECK(std::count(roots.out.begin(), roots.out.end(), '\n') == 3);
}

TEST_CASE("cli errors") {
  const auto div = cli({"hensel", "-p", "5", "--f", "X^2", "--x0", "0", "--z", "1"});
  CHECK(div.code == 2);
  CHECK(div.err.find("DerivativeIndistinguishableFromZero") != std::string::npos);
  const auto dom = cli({"exp", "-p", "2", "2"});
  CHECK(dom.code == 2);
  CHECK(dom.err.find("DomainError") != std::string::npos);
  const auto parse = cli({"elem", "-p", "5", "show", "1 + * 2"});
  CHECK(parse.code == 1);
  CHECK(parse.err.find("position") != std::string::npos);
  CHECK(cli({"val", "-p", "4", "3"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"roots", "-p", "5", "--f", "X^2"}).err.find("UndecidedMultipleRoot") != std::string::npos);
  CHECK(cli({"measure", "image", "-p", "2", "--f", "X^2", "--ball", "1@0"}).err.find("NOT_CERTIFIED") !=
        std::string::npos);
}

TEST_CASE("cli json output") {
  const auto r = cli({"--json", "elem", "-p", "7", "-N", "3", "show", "108"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["valuation"] == 0);
  CHECK(j["abs_precision"] == 3);
  CHECK(j["unit_digits"] == nlohmann::json::array({3, 1, 2}));
  CHECK(parse_element(FieldDescriptor::padic(7), j["text"].get<std::string>(), 3).unit_digits() ==
        std::vector<std::uint32_t>{3, 1, 2});
  const auto v = nlohmann::json::parse(cli({"--json", "val", "-p", "5", "0"}).out);
  CHECK(v["valuation"] == "INFINITY");
  const auto m = nlohmann::json::parse(cli({"--json", "measure", "union", "-p", "5", "0@1", "1@1"}).out);
  CHECK(m["measure"]["numerator"] == 2);
  CHECK(m["measure"]["denominator"] == 5);
  const auto e = nlohmann::json::parse(cli({"--json", "exp", "-p", "2", "2"}).out);
  CHECK(e["error"] == "DomainError");
}
