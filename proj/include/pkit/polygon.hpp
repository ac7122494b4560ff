#pragma once

#include <optional>
#include <vector>

#include "pkit/poly.hpp"
#include "pkit/upoly.hpp"

namespace pkit {

struct Point {
  Rat x;
  Rat y;
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Compact edge on the line x + m*y = alpha; `upper` has the larger y.
struct Edge {
  Point upper;
  Point lower;
  Rat m;
  Rat alpha;
};

/// Boundary of the convex hull of the quadrants [a, inf) x [b, inf) over the
/// support. Vertices run top-left to bottom-right; a vertical ray rises from
/// the first vertex and a horizontal ray leaves the last one.
struct NewtonPolygon {
  std::vector<Point> vertices;
  std::vector<Edge> edges;  // edges[i] joins vertices[i] and vertices[i + 1]
};

enum class HitKind { Vertex, EdgeInterior, RayInterior };

/// Where the diagonal y = x meets the polygon boundary.
struct DiagonalHit {
  HitKind kind;
  Rat d;
  std::size_t index = 0;       // vertex index (Vertex) or edge index (EdgeInterior)
  bool vertical_ray = false;   // RayInterior: vertical (true) or horizontal ray
};

NewtonPolygon build_polygon(const PuiseuxPoly& f);
Rat newton_distance(const NewtonPolygon& n);
DiagonalHit diagonal_intersection(const NewtonPolygon& n);

/// Edge part S_e and its one-variable restrictions.
struct EdgePolynomial {
  PuiseuxPoly s_e;
  /// S_e(1, z), with z standing for y / x^m.
  UPoly p;
  /// S_e(1, y); the same coefficients as p.
  UPoly q_plus;
  /// S_e(-1, y); absent when an x exponent on the edge is fractional.
  std::optional<UPoly> q_minus;

  /// Throws PreconditionError when S_e(-1, y) is undefined.
  const UPoly& minus() const;
};

/// `e` must be a compact edge of build_polygon(f); f needs integer y
/// exponents on the edge.
EdgePolynomial edge_polynomial(const PuiseuxPoly& f, const Edge& e);

}  // namespace pkit
