#include "pkit/puiseux.hpp"

#include <algorithm>

#include "pkit/errors.hpp"
#include "pkit/polygon.hpp"
#include "pkit/upoly.hpp"

namespace pkit {

namespace {

Series1 to_series(const PuiseuxPoly& p, const Rat& order) {
  Series1 s(order);
  for (const auto& [k, c] : p.terms()) s.add_term(p.x_exp(k), c);
  return s;
}

// 1 / s for a series with nonzero constant term.
Series1 series_inverse(const Series1& s) {
  Coeff c0 = s.constant_term();
  if (c0.is_zero()) throw PreconditionError("series inverse needs a nonzero constant term");
  std::int64_t n = s.ramification();
  Rat scaled = s.order() * n;
  mpz_class len_z;
  mpz_cdiv_q(len_z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  auto len = static_cast<std::size_t>(len_z.get_si());
  std::vector<Coeff> dense(len);
  for (const auto& [k, c] : s.terms())
    if (static_cast<std::size_t>(k) < len) dense[k] = c;
  std::vector<Coeff> inv(len);
  inv[0] = Coeff(1) / c0;
  for (std::size_t i = 1; i < len; ++i) {
    Coeff acc;
    for (std::size_t j = 1; j <= i; ++j)
      if (!dense[j].is_zero()) acc += dense[j] * inv[i - j];
    inv[i] = -(acc / c0);
  }
  Series1 out(s.order());
  for (std::size_t i = 0; i < len; ++i)
    if (!inv[i].is_zero()) out.add_term(make_rat(static_cast<long>(i), n), inv[i]);
  return out;
}

// h(0, y) as a univariate polynomial; h needs integer y exponents.
UPoly slice_at_x0(const PuiseuxPoly& h) {
  std::vector<Coeff> c;
  for (const auto& [k, v] : h.terms()) {
    if (k.first != 0) continue;
    std::size_t b = static_cast<std::size_t>(h.y_exp(k).get_num().get_si());
    if (c.size() <= b) c.resize(b + 1);
    c[b] = v;
  }
  return UPoly(std::move(c));
}

Coeff evaluate_coeff(const UPoly& p, const Coeff& z) {
  if (p.is_exact() && z.is_exact()) return Coeff(p.evaluate_exact(z.exact()));
  return Coeff::approx(p.evaluate(z.value()));
}

int as_int(const Rat& r) {
  PKIT_ASSERT(is_integer(r), "expected an integer exponent");
  return static_cast<int>(r.get_num().get_si());
}

class Engine {
 public:
  Engine(Rat user_order, Rat work_order) : user_(std::move(user_order)), work_(std::move(work_order)) {}

  std::vector<Branch> take() { return std::move(out_); }

  void solve(PuiseuxPoly h, const Series1& prefix, const Rat& min_slope, int budget,
             int implicit_q, std::vector<BranchStep> trace, int shifts) {
    h = h.truncated(work_);
    if (h.is_zero()) {
      emit(prefix, budget, trace, shifts);
      return;
    }
    int b0 = as_int(h.min_y_exponent());
    if (b0 > 0) {
      // y^b0 divides h: the current prefix is itself a root of order b0.
      int mult = std::min(b0, budget);
      emit(prefix, mult, trace, shifts);
      budget -= mult;
      if (budget <= 0) return;
      h = h.divided_by_monomial(0, b0);
    }

    NewtonPolygon poly = build_polygon(h);
    int covered = 0;
    for (const Edge& e : poly.edges) {
      if (e.upper.y > budget) continue;
      PKIT_ASSERT(e.m > min_slope, "edge slope failed to increase along the branch");
      covered += as_int(e.upper.y - e.lower.y);
      process_edge(h, e, prefix, implicit_q, trace, shifts);
    }
    PKIT_ASSERT(covered == budget, "edges below the branch vertex do not account for its height");
  }

 private:
  void process_edge(const PuiseuxPoly& h, const Edge& e, const Series1& prefix, int implicit_q,
                    const std::vector<BranchStep>& trace, int shifts) {
    EdgePolynomial ep = edge_polynomial(h, e);
    std::vector<Root> roots;
    for (auto& r : complex_roots_with_multiplicity(ep.p))
      if (!(r.exact && r.value.is_zero()) && !r.value.is_zero()) roots.push_back(r);
    std::stable_sort(roots.begin(), roots.end(),
                     [](const Root& a, const Root& b) { return a.multiplicity < b.multiplicity; });

    const int q = as_int(e.upper.y);
    int total = 0;
    for (const auto& r : roots) total += r.multiplicity;
    PKIT_ASSERT(total == as_int(e.upper.y - e.lower.y), "edge root multiplicities do not sum to its height");

    for (const auto& r : roots) {
      if (implicit_q > 0 && q == implicit_q)
        PKIT_ASSERT(r.multiplicity < q, "edge after an implicit-series step has a single root of full order");
      if (r.multiplicity == q) {
        implicit_step(h, e, r, prefix, trace, shifts);
      } else {
        Series1 a = Series1::monomial(e.m, r.value, work_);
        BranchStep step{StepKind::RootShift, e.m, e.alpha, r.value, r.multiplicity, q, r.multiplicity, a};
        PKIT_ASSERT(r.multiplicity < q, "root-shift failed to descend");
        auto next = trace;
        next.push_back(step);
        solve(shift_y(h, a, work_), prefix + a, e.m, r.multiplicity, 0, std::move(next), shifts + 1);
      }
    }
  }

  void implicit_step(const PuiseuxPoly& h, const Edge& e, const Root& r, const Series1& prefix,
                     const std::vector<BranchStep>& trace, int shifts) {
    const int q = as_int(e.upper.y);
    PuiseuxPoly hp = scale_substitute(h, e.m, e.alpha);
    Series1 k = implicit_series_root(hp, q, r.value, work_ - e.m);
    Series1 a = k.times_x_power(e.m);
    PuiseuxPoly shifted = shift_y(h, a, work_);
    // Approximate coefficients carry absolute rounding error near the
    // zero threshold, scaled by the size of the series coefficients.
    Real tol = 0;
    if (!shifted.is_exact()) {
      Real scale = 1;
      for (const auto& [key, c] : shifted.terms()) scale = std::max(scale, Real(abs(c.value())));
      tol = Real("1e-40") * scale;
    }
    std::vector<std::pair<Rat, Coeff>> noise;
    for (const auto& [key, c] : shifted.terms())
      if (shifted.y_exp(key) == q - 1 && !c.is_zero()) {
        PKIT_ASSERT(!c.is_exact() && abs(c.value()) <= tol, "y^(q-1) coefficient survived an implicit-series step");
        noise.emplace_back(shifted.x_exp(key), c);
      }
    for (const auto& [x, c] : noise) shifted.add_term(x, q - 1, -c);
    BranchStep step{StepKind::ImplicitSeries, e.m, e.alpha, r.value, q, q, q, a};
    auto next = trace;
    next.push_back(step);
    solve(shifted, prefix + a, e.m, q, q, std::move(next), shifts);
  }

  void emit(const Series1& prefix, int mult, const std::vector<BranchStep>& trace, int shifts) {
    Branch b;
    b.series = prefix.truncated(user_);
    b.multiplicity = mult;
    b.numeric = !prefix.is_exact();
    for (const auto& s : trace)
      if (!s.root.is_exact()) b.numeric = true;
    b.trace = trace;
    b.root_shifts = shifts;
    out_.push_back(std::move(b));
  }

  Rat user_;
  Rat work_;
  std::vector<Branch> out_;
};

std::string sort_key(const Series1& s) {
  std::string key;
  for (const auto& [k, c] : s.terms()) key += to_string(s.exponent(k)) + ":" + c.to_string() + ";";
  return key;
}

}  // namespace

Series1 implicit_series_root(const PuiseuxPoly& hprime, int q, const Coeff& r, const Rat& truncation) {
  if (q < 1) throw PreconditionError("implicit_series_root needs q >= 1");
  PuiseuxPoly d = partial_y(hprime, q - 1);
  PuiseuxPoly dy = partial_y(d, 1);
  if (!evaluate_coeff(slice_at_x0(d), r).is_zero())
    throw PreconditionError("derivative of order q-1 does not vanish at (0, r)");
  Coeff pivot = evaluate_coeff(slice_at_x0(dy), r);
  if (pivot.is_zero()) throw PreconditionError("zero pivot: y-derivative vanishes at (0, r)");
  if (sgn(truncation) <= 0) return Series1(truncation);

  // Newton lifting; each pass at least doubles the number of settled orders,
  // and every settled coefficient is the solution of the linear equation
  // whose pivot is the y-derivative at (0, r).
  Series1 k = Series1::monomial(0, r, truncation);
  for (int iter = 0; iter < 128; ++iter) {
    Series1 residual = to_series(substitute_y(d, k, truncation), truncation);
    if (residual.is_zero()) return k;
    Series1 slope = to_series(substitute_y(dy, k, truncation), truncation);
    Series1 correction = residual * series_inverse(slope);
    if (correction.is_zero()) return k;
    k = k - correction;
  }
  throw InternalError("implicit series iteration did not settle");
}

std::optional<Rat> residual_order(const PuiseuxPoly& f, const Series1& g) {
  PuiseuxPoly r = substitute_y(f, g);
  if (r.is_zero()) return std::nullopt;
  return r.min_x_exponent();
}

FactorizationReport puiseux_branches(const PuiseuxPoly& f, const Rat& truncation) {
  if (f.is_zero()) throw PreconditionError("Puiseux expansion of the zero polynomial");
  if (!f.has_integer_y_exponents()) throw PreconditionError("Puiseux expansion needs integer y exponents");
  if (sgn(truncation) <= 0) throw PreconditionError("truncation order must be positive");

  FactorizationReport rep;
  rep.truncation = truncation;
  rep.c = f.min_x_exponent();
  PuiseuxPoly g = f.divided_by_monomial(rep.c, 0);
  int e = -1;
  for (const auto& [k, c] : g.terms())
    if (k.first == 0) {
      int b = as_int(g.y_exp(k));
      e = e < 0 ? b : std::min(e, b);
    }
  PKIT_ASSERT(e >= 0, "x^c was not the full x-content");
  rep.e = e;
  if (e == 0) return rep;

  // Below x^K a root of multiplicity k only sees the input to order k*K, so
  // the working order scales with e.
  Rat work = truncation * e + 1;
  Engine engine(truncation, work);
  engine.solve(g, Series1(work), 0, e, 0, {}, 0);
  rep.branches = engine.take();

  int total = 0;
  for (const auto& b : rep.branches) {
    total += b.multiplicity;
    PKIT_ASSERT(b.series.constant_term().is_zero(), "branch has nonzero constant term");
    PKIT_ASSERT(b.root_shifts <= e, "more descending steps than the initial height");
    if (b.numeric) rep.numeric = true;
  }
  PKIT_ASSERT(total == e, "branch multiplicities do not sum to e");

  std::stable_sort(rep.branches.begin(), rep.branches.end(), [](const Branch& a, const Branch& b) {
    auto va = a.series.valuation(), vb = b.series.valuation();
    if (va.has_value() != vb.has_value()) return va.has_value();
    if (va && *va != *vb) return *va < *vb;
    return sort_key(a.series) < sort_key(b.series);
  });
  return rep;
}

}  // namespace pkit
