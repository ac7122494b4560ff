#include "doctest.h"
#include "oracles.hpp"
#include "pkit/parse.hpp"
#include "pkit/poly.hpp"

using namespace pkit;

namespace {
PuiseuxPoly P(const char* s) { return parse_expression(s); }
}

TEST_CASE("arithmetic and normalization") {
  PuiseuxPoly f = P("(y - x)^2") - P("y^2 + x^2");
  CHECK(f == P("-2*x*y"));
  CHECK((f - f).is_zero());
  CHECK(P("x^(1/2)") * P("x^(1/2)") == P("x"));
  CHECK(P("x^(1/2)*y").ramification() == 2);
}

TEST_CASE("transpose and flips") {
  PuiseuxPoly f = P("y^3 + 2*x*y - x^5");
  CHECK(f.transposed() == P("x^3 + 2*x*y - y^5"));
  CHECK(f.transposed().transposed() == f);
  CHECK(f.flipped_y() == P("-y^3 - 2*x*y - x^5"));
  CHECK(f.flipped_x() == P("y^3 - 2*x*y + x^5"));
}

TEST_CASE("shift round-trip") {
  PuiseuxPoly f = P("y^3 - 3*x^2*y + x^7 + x*y^2");
  Series1 a = Series1::monomial(1, make_rat(2, 3), 20) + Series1::monomial(3, -1, 20);
  PuiseuxPoly g = shift_y(f, a, 20);
  PuiseuxPoly back = shift_y(g, -a, 20);
  CHECK(back == f.truncated(20));
}

TEST_CASE("shift matches substitution at a point") {
  PuiseuxPoly f = P("y^2 - x^3 + x*y");
  Series1 a = Series1::monomial(make_rat(3, 2), 1, 10);
  PuiseuxPoly g = shift_y(f, a, 10);
  Real x("0.01");
  Complex y(Real("0.3"), Real("-0.2"));
  Complex lhs = g.evaluate(x, y);
  Complex rhs = f.evaluate(x, y + a.evaluate(x));
  CHECK(abs(lhs - rhs) < Real("1e-80"));
}

TEST_CASE("truncation drops high x powers") {
  PuiseuxPoly f = P("y + x^3 + x^12 + x^13*y");
  CHECK(f.truncated(12) == P("y + x^3"));
}

TEST_CASE("partial derivative in y") {
  CHECK(partial_y(P("y^3 + x*y^2 + x^4"), 1) == P("3*y^2 + 2*x*y"));
  CHECK(partial_y(P("y^3 + x*y^2 + x^4"), 2) == P("6*y + 2*x"));
}

TEST_CASE("divided by monomial") {
  CHECK(P("x^2*y^3 + x^4*y").divided_by_monomial(2, 1) == P("y^2 + x^2"));
}
