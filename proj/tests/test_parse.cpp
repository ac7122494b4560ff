#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pkit/errors.hpp"
#include "pkit/parse.hpp"

using namespace pkit;

TEST_CASE("grammar") {
  PuiseuxPoly f = parse_expression("y^2 - 2*x^2*y + x^4");
  CHECK(f.size() == 3);
  CHECK(f.coefficient(2, 1) == Coeff(-2));
  CHECK(parse_expression("2x y") == parse_expression("2*x*y"));
  CHECK(parse_expression("-(x - y)^2") == parse_expression("-x^2 + 2*x*y - y^2"));
  CHECK(parse_expression("3/4*x") .coefficient(1, 0) == Coeff(make_rat(3, 4)));
  CHECK(parse_expression("x^(3/2)").coefficient(make_rat(3, 2), 0) == Coeff(1));
  CHECK(parse_expression("  y  ") == parse_expression("y"));
}

TEST_CASE("parse errors carry a position") {
  auto position = [](const char* s) -> long {
    try {
      parse_expression(s);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position("x + ") == 4);
  CHECK(position("x $ y") == 2);
  CHECK(position("(x + y") == 6);
  CHECK(position("x^-1") >= 2);
  CHECK(position("x / 0") >= 0);
  CHECK(position("") == 0);
  CHECK(position("(x + y)^(1/2)") >= 0);
}

TEST_CASE("canonical text round-trips") {
  CHECK(to_expression(parse_expression("x^4 + y^2 - 2*y*x^2")) == "y^2 - 2*x^2*y + x^4");
  CHECK(to_expression(parse_expression("x^(3/2)")) == "x^(3/2)");
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    PuiseuxPoly f = oracle::random_poly(rng, 8, 6);
    if (f.is_zero()) continue;
    CHECK(parse_expression(to_expression(f)) == f);
  }
}
