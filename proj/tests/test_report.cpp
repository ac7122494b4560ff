#include <algorithm>

#include "doctest.h"
#include "pkit/parse.hpp"
#include "pkit/report.hpp"

using namespace pkit;

namespace {
PuiseuxPoly P(const char* s) { return parse_expression(s); }
}

TEST_CASE("polynomial and series JSON round-trip") {
  PuiseuxPoly f = P("y^2 - 3/7*x^(5/2)*y + x^4");
  CHECK(poly_from_json(poly_to_json(f)) == f);
  Series1 s = Series1::monomial(make_rat(3, 2), Coeff(GaussRat(1, -2)), 12);
  CHECK(series_from_json(series_to_json(s)) == s);
  Coeff a = Coeff::approx(Complex(sqrt(Real(2)), Real(0)));
  Coeff b = coeff_from_json(coeff_to_json(a));
  CHECK_FALSE(b.is_exact());
  CHECK(abs(b.value() - a.value()) < Real("1e-95"));
}

TEST_CASE("polygon report round-trip") {
  PolygonReport r = polygon_report(P("y^3 - x^2*y + x^7"));
  json j = to_json(r);
  PolygonReport back = polygon_report_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(j["d"] == "3/2");
}

TEST_CASE("factorization report round-trip") {
  FactorizationReport r = puiseux_branches(P("(y^2 - x^3)^2 - x^7"));
  json j = to_json(r);
  CHECK(to_json(factorization_from_json(j)) == j);
}

TEST_CASE("adapt report round-trip") {
  AdaptReport r = adapt(P("y^2 - 2*x^2*y + x^4"));
  json j = to_json(r);
  CHECK(j["epsilon"] == "1/2");
  CHECK(j["change"]["psi"] == "x^2");
  CHECK(to_json(adapt_report_from_json(j)) == j);
}

TEST_CASE("integrability report round-trip") {
  IntegrabilityEstimate e = estimate_integrability(P("x^2 + y^2"));
  json j = to_json(e);
  CHECK(to_json(integrability_from_json(j)) == j);
}

TEST_CASE("csv exports") {
  std::string poly = polygon_csv(polygon_report(P("x^3 + y^3")));
  CHECK(poly.rfind("kind,x,y\n", 0) == 0);
  CHECK(poly.find("diagonal,") != std::string::npos);
  std::string br = branch_csv(puiseux_branches(P("y^2 - x^3")), 0.1, 5);
  CHECK(br.rfind("branch_id,x,re,im\n", 0) == 0);
  CHECK(std::count(br.begin(), br.end(), '\n') == 11);
}
