#include "pkit/adapt.hpp"

#include <algorithm>

#include "pkit/errors.hpp"

namespace pkit {

namespace {

int as_int(const Rat& r) {
  PKIT_ASSERT(is_integer(r), "expected an integer exponent");
  return static_cast<int>(r.get_num().get_si());
}

void check_input(const PuiseuxPoly& s) {
  if (s.is_zero()) throw PreconditionError("adaptedness of the zero polynomial");
  if (!s.has_integer_exponents()) throw PreconditionError("adapted coordinates need integer exponents");
  if (!s.has_real_coefficients()) throw PreconditionError("adapted coordinates need real coefficients");
  if (!s.coefficient(0, 0).is_zero()) throw PreconditionError("S(0, 0) must vanish");
}

Rat x_degree(const PuiseuxPoly& s) {
  Rat best = 0;
  for (const auto& [k, c] : s.terms()) best = std::max(best, s.x_exp(k));
  return best;
}

void require_truncation(const Rat& needed, const Rat& have) {
  if (have < needed)
    throw PreconditionError("truncation order " + to_string(have) + " is too small; need at least " +
                            to_string(needed));
}

// Q(y) / y^v, v the order of Q at 0.
UPoly strip_zero_root(const UPoly& p) {
  const auto& c = p.coeffs();
  std::size_t v = 0;
  while (v < c.size() && c[v].is_zero()) ++v;
  return UPoly(std::vector<Coeff>(c.begin() + static_cast<std::ptrdiff_t>(v), c.end()));
}

std::vector<FatRoot> fat_roots(const UPoly& p, const Edge& e, const Rat& d, bool minus) {
  std::vector<FatRoot> out;
  UPoly r = strip_zero_root(p);
  if (r.degree() < 1) return out;
  for (const auto& root : real_roots_with_multiplicity(r))
    if (Rat(root.multiplicity) >= d) out.push_back({e, root.value, root.lo, root.hi, root.multiplicity, minus});
  return out;
}

Rat magnitude(const FatRoot& f) { return abs((f.lo + f.hi) / 2); }

UPoly reflect(const UPoly& p) {
  std::vector<Coeff> c = p.coeffs();
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return UPoly(std::move(c));
}

// For integer m, S_e(-1, y) = +-S_e(1, y) when m is even and +-S_e(1, -y)
// when m is odd.
void check_sign_symmetry(const EdgePolynomial& ep, const Rat& m) {
  if (!is_integer(m) || !ep.q_minus || !ep.q_plus.is_exact()) return;
  bool even = mpz_even_p(m.get_num_mpz_t()) != 0;
  UPoly target = even ? ep.q_plus : reflect(ep.q_plus);
  PKIT_ASSERT(*ep.q_minus == target || *ep.q_minus == UPoly() - target,
              "edge polynomial lacks the sign symmetry of an integer slope");
}

// Coefficientwise agreement; exact inputs must match exactly.
bool same_poly(const PuiseuxPoly& a, const PuiseuxPoly& b) {
  if (a.is_exact() && b.is_exact()) return a == b;
  PuiseuxPoly diff = a - b;
  const Real tol("1e-40");
  for (const auto& [k, c] : diff.terms()) {
    Real scale = 1 + abs(a.coefficient(diff.x_exp(k), diff.y_exp(k)).value());
    if (abs(c.value()) > tol * scale) return false;
  }
  return true;
}

}  // namespace

const char* to_string(AdaptedCase c) {
  switch (c) {
    case AdaptedCase::EdgeNoFatRoot: return "edge";
    case AdaptedCase::Vertex: return "vertex";
    case AdaptedCase::Ray: return "ray";
  }
  return "?";
}

Classification classify_adapted(const PuiseuxPoly& s) {
  check_input(s);
  Classification c;
  NewtonPolygon poly = build_polygon(s);
  c.hit = diagonal_intersection(poly);
  c.d = c.hit.d;
  if (c.hit.kind == HitKind::Vertex || c.hit.kind == HitKind::RayInterior) {
    c.adapted = true;
    c.kind = c.hit.kind == HitKind::Vertex ? AdaptedCase::Vertex : AdaptedCase::Ray;
    return c;
  }
  const Edge& e = poly.edges[c.hit.index];
  EdgePolynomial ep = edge_polynomial(s, e);
  auto cands = fat_roots(ep.q_plus, e, c.d, false);
  if (cands.empty() && ep.q_minus) cands = fat_roots(*ep.q_minus, e, c.d, true);
  if (cands.empty()) {
    c.adapted = true;
    c.kind = AdaptedCase::EdgeNoFatRoot;
    return c;
  }
  c.fat = *std::max_element(cands.begin(), cands.end(), [](const FatRoot& a, const FatRoot& b) {
    if (a.order != b.order) return a.order < b.order;
    return magnitude(a) < magnitude(b);
  });
  return c;
}

PuiseuxPoly CoordChange::apply(const PuiseuxPoly& s, const Rat& bound) const {
  PuiseuxPoly t = axis_swapped ? s.transposed() : s;
  if (flip_x) t = t.flipped_x();
  if (flip_y) t = t.flipped_y();
  t = shift_y(t, shear, bound);
  return axis_swapped ? t.transposed() : t;
}

AdaptReport adapt(const PuiseuxPoly& s, const Rat& truncation) {
  check_input(s);
  if (sgn(truncation) <= 0) throw PreconditionError("truncation order must be positive");

  AdaptReport rep;
  rep.truncation = truncation;
  Classification cls = classify_adapted(s);
  rep.d_initial = cls.d;
  PuiseuxPoly cur = s;

  // Keep the diagonal edge at slope m >= 1 by exchanging the axes.
  if (!cls.adapted && cls.fat->edge.m < 1) {
    rep.change.axis_swapped = true;
    cur = s.transposed();
    cls = classify_adapted(cur);
    PKIT_ASSERT(cls.d == rep.d_initial, "transposition changed the Newton distance");
    PKIT_ASSERT(!cls.adapted && cls.fat->edge.m > 1, "transposition did not mirror the diagonal edge");
  }
  if (!cls.adapted) {
    require_truncation(x_degree(cur) + 1, truncation);
    require_truncation(floor_rat(cls.d) + 1, truncation);
  }

  Series1 psi(truncation);
  rep.q0 = cls.adapted ? 0 : as_int(cls.fat->edge.upper.y);
  int q_level = rep.q0;
  bool after_implicit = false;
  const int cap = 2 * rep.q0 + 2;
  int shears = 0;

  while (!cls.adapted) {
    if (++shears > cap) throw InternalError("adapted-coordinate loop exceeded its iteration cap");
    const FatRoot fr = *cls.fat;
    const Edge& e = fr.edge;
    PKIT_ASSERT(e.m >= 1, "diagonal edge has slope below one");
    PKIT_ASSERT(is_integer(e.m), "fat root on an edge of non-integer slope");
    PKIT_ASSERT(!fr.from_minus, "fat root of S_e(-1, y) without one of S_e(1, y)");
    check_sign_symmetry(edge_polynomial(cur, e), e.m);

    const int q = as_int(e.upper.y);
    if (after_implicit)
      PKIT_ASSERT(fr.order < q, "single root of full order after an implicit-series step");

    IterationStep step;
    step.m = e.m;
    step.alpha = e.alpha;
    step.root = fr.root;
    step.order = fr.order;
    step.q_before = q;
    if (fr.order < q) {
      step.kind = StepKind::RootShift;
      step.shift = Series1::monomial(e.m, fr.root, truncation);
    } else {
      step.kind = StepKind::ImplicitSeries;
      PuiseuxPoly hp = scale_substitute(cur, e.m, e.alpha);
      step.shift = implicit_series_root(hp, q, fr.root, truncation - e.m).times_x_power(e.m);
    }

    PuiseuxPoly next = shift_y(cur, step.shift, truncation);
    int on_line = 0;
    for (const auto& [k, c] : next.terms()) {
      Rat level = next.x_exp(k) + e.m * next.y_exp(k);
      PKIT_ASSERT(level >= e.alpha, "edge line stopped supporting the polygon after a shear");
      if (level == e.alpha) ++on_line;
      if (step.kind == StepKind::ImplicitSeries && next.y_exp(k) == q - 1)
        PKIT_ASSERT(c.is_zero(), "y^(q-1) coefficient survived an implicit-series step");
    }
    if (step.kind == StepKind::ImplicitSeries)
      PKIT_ASSERT(on_line == 1 && !next.coefficient(e.upper.x, e.upper.y).is_zero(),
                  "edge line meets the new polygon beyond its upper vertex");

    psi = psi + step.shift;
    cur = std::move(next);
    Classification after = classify_adapted(cur);
    PKIT_ASSERT(after.d >= cls.d, "Newton distance decreased along the iteration");
    if (!after.adapted) {
      PKIT_ASSERT(after.fat->edge.m > e.m, "slope failed to increase along the iteration");
      require_truncation(floor_rat(after.d) + 1, truncation);
    }

    step.q_after = after.adapted ? 0 : as_int(after.fat->edge.upper.y);
    step.d_after = after.d;
    if (after.adapted || step.q_after < q_level) {
      ++rep.descents;
      q_level = step.q_after;
      after_implicit = false;
    } else {
      PKIT_ASSERT(step.kind == StepKind::ImplicitSeries && step.q_after == q,
                  "upper vertex failed to descend after a root shift");
      after_implicit = true;
    }
    PKIT_ASSERT(rep.descents <= rep.q0, "more descending iterations than the initial height");
    rep.iterations.push_back(std::move(step));
    cls = std::move(after);
  }

  rep.change.shear = psi;
  rep.final_case = cls.kind;
  rep.d_final = cls.d;
  rep.epsilon = 1 / cls.d;
  rep.transformed = rep.change.axis_swapped ? cur.transposed() : cur;
  rep.numeric = !psi.is_exact() || !rep.transformed.is_exact();

  PKIT_ASSERT(same_poly(rep.change.apply(s, truncation), rep.transformed) || rep.change.is_identity(),
              "coordinate change does not reproduce the transformed polynomial");
  Classification check = classify_adapted(rep.transformed);
  PKIT_ASSERT(check.adapted && check.d == rep.d_final, "transformed polynomial failed re-classification");
  PKIT_ASSERT(rep.d_final >= rep.d_initial, "Newton distance decreased");
  return rep;
}

}  // namespace pkit
