#include "doctest.h"
#include "oracles.hpp"
#include "pkit/errors.hpp"
#include "pkit/parse.hpp"
#include "pkit/puiseux.hpp"

using namespace pkit;

namespace {

PuiseuxPoly P(const char* s) { return parse_expression(s); }

int total_multiplicity(const FactorizationReport& r) {
  int n = 0;
  for (const auto& b : r.branches) n += b.multiplicity;
  return n;
}

std::vector<Complex> branch_values(const FactorizationReport& r, const Real& x) {
  std::vector<Complex> v;
  for (const auto& b : r.branches)
    for (int k = 0; k < b.multiplicity; ++k) v.push_back(b.series.evaluate(x));
  return v;
}

double oracle_mismatch(const PuiseuxPoly& f, const FactorizationReport& r, const Real& x) {
  PuiseuxPoly g = f.divided_by_monomial(r.c, 0);
  auto mine = branch_values(r, x);
  return oracle::multiset_mismatch(mine, oracle::small_roots(g, x, mine.size()), pow(x, Real(12)));
}

}  // namespace

TEST_CASE("cusp") {
  auto r = puiseux_branches(P("y^2 - x^3"));
  CHECK(r.e == 2);
  REQUIRE(r.branches.size() == 2);
  for (const auto& b : r.branches) {
    CHECK(b.ramification() == 2);
    CHECK(b.series.valuation() == make_rat(3, 2));
    CHECK_FALSE(b.numeric);
  }
}

TEST_CASE("node with exact coefficients") {
  auto r = puiseux_branches(P("y^2 - x^2 - x^3"));
  REQUIRE(r.branches.size() == 2);
  bool found = false;
  for (const auto& b : r.branches)
    if (b.series.coefficient(1) == Coeff(1)) {
      found = true;
      CHECK(b.series.coefficient(2) == Coeff(make_rat(1, 2)));
      CHECK(b.series.coefficient(3) == Coeff(make_rat(-1, 8)));
      CHECK(b.series.coefficient(4) == Coeff(make_rat(1, 16)));
      CHECK(b.series.coefficient(5) == Coeff(make_rat(-5, 128)));
    }
  CHECK(found);
  CHECK(oracle_mismatch(P("y^2 - x^2 - x^3"), r, Real("0.01")) < 1e-6);
}

TEST_CASE("monomial factor in x") {
  auto r = puiseux_branches(P("x^2*y - x^5"));
  CHECK(r.c == 2);
  CHECK(r.e == 1);
  REQUIRE(r.branches.size() == 1);
  CHECK(r.branches[0].series.coefficient(3) == Coeff(1));
}

TEST_CASE("branches with equal leading terms") {
  PuiseuxPoly f = P("(y^2 - x^3)^2 - x^7");
  auto r = puiseux_branches(f);
  CHECK(total_multiplicity(r) == 4);
  for (const auto& b : r.branches) CHECK(b.ramification() == 2);
  CHECK(oracle_mismatch(f, r, Real("0.001")) < 1e-6);
}

TEST_CASE("cube roots need numeric coefficients") {
  PuiseuxPoly f = P("y^3 - x^2");
  auto r = puiseux_branches(f);
  CHECK(total_multiplicity(r) == 3);
  CHECK(r.numeric);
  CHECK(oracle_mismatch(f, r, Real("0.01")) < 1e-6);
}

TEST_CASE("repeated factors are reported with multiplicity") {
  auto r = puiseux_branches(P("(y - x)^2*(y + x^2)"));
  CHECK(total_multiplicity(r) == 3);
  bool doubled = false;
  for (const auto& b : r.branches) doubled = doubled || b.multiplicity == 2;
  CHECK(doubled);
}

TEST_CASE("residual order reaches the truncation") {
  PuiseuxPoly f = P("y^2 - x^2 - x^3");
  auto r = puiseux_branches(f, 8);
  for (const auto& b : r.branches) {
    auto ord = residual_order(f, b.series);
    CHECK((!ord || *ord >= 8));
  }
}

TEST_CASE("the y-free polynomial has no branches") {
  auto r = puiseux_branches(P("x^3"));
  CHECK(r.e == 0);
  CHECK(r.branches.empty());
}

TEST_CASE("preconditions") {
  CHECK_THROWS_AS(puiseux_branches(PuiseuxPoly()), PreconditionError);
  CHECK_THROWS_AS(puiseux_branches(P("y^(1/2) + x")), PreconditionError);
}

TEST_CASE("determinism") {
  PuiseuxPoly f = P("(y^2 - x^3)^2 - x^7 + x^5*y");
  auto a = puiseux_branches(f);
  auto b = puiseux_branches(f);
  REQUIRE(a.branches.size() == b.branches.size());
  for (std::size_t i = 0; i < a.branches.size(); ++i) CHECK(a.branches[i].series == b.branches[i].series);
}
