#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pkit/parse.hpp"
#include "pkit/polygon.hpp"

using namespace pkit;

namespace {
PuiseuxPoly P(const char* s) { return parse_expression(s); }
Rat distance(const char* s) { return newton_distance(build_polygon(P(s))); }
}

TEST_CASE("distances of small examples") {
  CHECK(distance("x^2 + y^2") == 1);
  CHECK(distance("x^3 + y^3") == make_rat(3, 2));
  CHECK(distance("y^2 - 2*x^2*y + x^4") == make_rat(4, 3));
  CHECK(distance("x^2*y^2") == 2);
  CHECK(distance("x*y + x^5") == 1);
  CHECK(distance("y^2 - x^3") == make_rat(6, 5));
}

TEST_CASE("diagonal hit kinds") {
  CHECK(diagonal_intersection(build_polygon(P("x^2*y^2 + x^5 + y^7"))).kind == HitKind::Vertex);
  CHECK(diagonal_intersection(build_polygon(P("x^3 + y^3"))).kind == HitKind::EdgeInterior);
  DiagonalHit ray = diagonal_intersection(build_polygon(P("x*y^3")));
  CHECK(ray.kind == HitKind::RayInterior);
  CHECK(ray.d == 3);
  CHECK(ray.vertical_ray == false);
  DiagonalHit up = diagonal_intersection(build_polygon(P("x^3*y")));
  CHECK(up.kind == HitKind::RayInterior);
  CHECK(up.vertical_ray);
}

TEST_CASE("fractional exponents") {
  NewtonPolygon n = build_polygon(P("y^2 + x^(3/2)"));
  REQUIRE(n.edges.size() == 1);
  CHECK(n.edges[0].m == make_rat(3, 4));
  CHECK(newton_distance(n) == make_rat(6, 7));
  EdgePolynomial ep = edge_polynomial(P("y^2 + x^(3/2)"), n.edges[0]);
  CHECK_FALSE(ep.q_minus.has_value());
}

TEST_CASE("edge polynomial restrictions") {
  PuiseuxPoly f = P("y^2 - 2*x^2*y + x^4 + x^7");
  NewtonPolygon n = build_polygon(f);
  REQUIRE(n.edges.size() == 1);
  EdgePolynomial ep = edge_polynomial(f, n.edges[0]);
  CHECK(ep.s_e == P("y^2 - 2*x^2*y + x^4"));
  CHECK(ep.q_plus == UPoly::from_ints({1, -2, 1}));
  REQUIRE(ep.q_minus.has_value());
  CHECK(*ep.q_minus == UPoly::from_ints({1, -2, 1}));
}

TEST_CASE("random supports against the brute-force oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    PuiseuxPoly f = oracle::random_poly(rng, 9, 6);
    if (f.is_zero()) continue;
    NewtonPolygon n = build_polygon(f);
    CHECK(newton_distance(n) == oracle::brute_force_distance(oracle::support_of(f)));
    for (std::size_t i = 1; i < n.edges.size(); ++i) CHECK(n.edges[i - 1].m < n.edges[i].m);
    for (const auto& e : n.edges)
      for (const auto& [a, b] : oracle::support_of(f)) CHECK(a + e.m * b >= e.alpha);
    NewtonPolygon tn = build_polygon(f.transposed());
    REQUIRE(tn.vertices.size() == n.vertices.size());
    for (std::size_t i = 0; i < n.vertices.size(); ++i) {
      const Point& p = n.vertices[i];
      const Point& q = tn.vertices[n.vertices.size() - 1 - i];
      CHECK(p.x == q.y);
      CHECK(p.y == q.x);
    }
  }
}
