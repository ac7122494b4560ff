#include "doctest.h"
#include "pkit/errors.hpp"
#include "pkit/number.hpp"

using namespace pkit;

TEST_CASE("rational strings") {
  CHECK(to_string(make_rat(6, 4)) == "3/2");
  CHECK(to_string(make_rat(-4, 2)) == "-2");
  CHECK(rat_from_string("-7/21") == make_rat(-1, 3));
  CHECK(rat_from_string("12") == 12);
  CHECK_THROWS_AS(rat_from_string("1/0"), PreconditionError);
  CHECK_THROWS_AS(rat_from_string("x"), PreconditionError);
  CHECK(floor_rat(make_rat(-1, 2)) == -1);
  CHECK(floor_rat(make_rat(7, 3)) == 2);
  CHECK(is_integer(make_rat(8, 4)));
}

TEST_CASE("gaussian rationals stay exact") {
  Coeff i(GaussRat(0, 1));
  Coeff c = i * i + Coeff(1);
  CHECK(c.is_exact());
  CHECK(c.is_zero());
  Coeff q = Coeff(GaussRat(1, 1)) / Coeff(GaussRat(1, -1));
  CHECK(q == i);
}

TEST_CASE("approximate values below the threshold count as zero") {
  Coeff a = Coeff::approx(Complex(Real("1e-60")));
  CHECK(a.is_zero());
  Coeff b = Coeff::approx(Complex(Real("1e-40")));
  CHECK_FALSE(b.is_zero());
  Coeff mixed = Coeff(make_rat(1, 3)) + b;
  CHECK_FALSE(mixed.is_exact());
}

TEST_CASE("decimal strings round-trip at full precision") {
  Real v = sqrt(Real(2));
  Real back(to_decimal_string(v));
  CHECK(abs(back - v) < Real("1e-95"));
}
