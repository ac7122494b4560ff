#include "pkit/polygon.hpp"

#include <algorithm>

#include "pkit/errors.hpp"

namespace pkit {

namespace {

// Cross product of (b - a) x (c - b).
Rat turn(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - b.y) - (b.y - a.y) * (c.x - b.x);
}

}  // namespace

NewtonPolygon build_polygon(const PuiseuxPoly& f) {
  if (f.is_zero()) throw PreconditionError("Newton polygon of the zero polynomial");
  std::vector<Point> pts;
  for (const auto& [k, c] : f.terms()) pts.push_back({f.x_exp(k), f.y_exp(k)});
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });

  // Staircase: keep points strictly lower than everything to their left.
  std::vector<Point> stair;
  for (const auto& p : pts)
    if (stair.empty() || p.y < stair.back().y) stair.push_back(p);

  // Lower convex chain; collinear points are absorbed into edges.
  std::vector<Point> hull;
  for (const auto& p : stair) {
    while (hull.size() >= 2 && sgn(turn(hull[hull.size() - 2], hull.back(), p)) <= 0) hull.pop_back();
    hull.push_back(p);
  }

  NewtonPolygon out;
  out.vertices = hull;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Point& up = hull[i];
    const Point& lo = hull[i + 1];
    Rat m = (lo.x - up.x) / (up.y - lo.y);
    out.edges.push_back({up, lo, m, up.x + m * up.y});
  }
  return out;
}

DiagonalHit diagonal_intersection(const NewtonPolygon& n) {
  PKIT_ASSERT(!n.vertices.empty(), "empty polygon");
  for (std::size_t i = 0; i < n.vertices.size(); ++i)
    if (n.vertices[i].x == n.vertices[i].y) return {HitKind::Vertex, n.vertices[i].x, i, false};
  const Point& first = n.vertices.front();
  if (first.x > first.y) return {HitKind::RayInterior, first.x, 0, true};
  const Point& last = n.vertices.back();
  if (last.y > last.x) return {HitKind::RayInterior, last.y, 0, false};
  for (std::size_t i = 0; i < n.edges.size(); ++i) {
    const Edge& e = n.edges[i];
    if (e.upper.y > e.upper.x && e.lower.y < e.lower.x)
      return {HitKind::EdgeInterior, e.alpha / (1 + e.m), i, false};
  }
  throw InternalError("diagonal misses the Newton polygon");
}

Rat newton_distance(const NewtonPolygon& n) { return diagonal_intersection(n).d; }

const UPoly& EdgePolynomial::minus() const {
  if (!q_minus) throw PreconditionError("S_e(-1, y) is undefined for fractional x exponents");
  return *q_minus;
}

EdgePolynomial edge_polynomial(const PuiseuxPoly& f, const Edge& e) {
  if (!(e.upper.y > e.lower.y) || sgn(e.m) <= 0)
    throw PreconditionError("not a compact edge: endpoints must differ in height");
  if (e.upper.x + e.m * e.upper.y != e.alpha || e.lower.x + e.m * e.lower.y != e.alpha)
    throw PreconditionError("edge endpoints are not on the line x + m y = alpha");
  if (f.coefficient(e.upper.x, e.upper.y).is_zero() || f.coefficient(e.lower.x, e.lower.y).is_zero())
    throw PreconditionError("edge endpoints are not in the support");

  EdgePolynomial out;
  std::vector<Coeff> pc;
  std::vector<Coeff> mc;
  bool integral_x = true;
  for (const auto& [k, c] : f.terms()) {
    Rat a = f.x_exp(k), b = f.y_exp(k);
    Rat level = a + e.m * b;
    if (level < e.alpha) throw PreconditionError("edge line is not a supporting line of f");
    if (level != e.alpha) continue;
    out.s_e.add_term(a, b, c);
    if (!is_integer(b)) throw PreconditionError("edge polynomial needs integer y exponents");
    std::size_t deg = b.get_num().get_ui();
    if (pc.size() <= deg) {
      pc.resize(deg + 1);
      mc.resize(deg + 1);
    }
    pc[deg] += c;
    if (!is_integer(a)) {
      integral_x = false;
      continue;
    }
    bool odd = mpz_odd_p(a.get_num_mpz_t()) != 0;
    mc[deg] += odd ? -c : c;
  }
  out.p = UPoly(pc);
  out.q_plus = out.p;
  if (integral_x) out.q_minus = UPoly(mc);
  return out;
}

}  // namespace pkit
