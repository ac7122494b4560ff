// Runs every acceptance criterion and prints one PASS/FAIL line for each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pkit/adapt.hpp"
#include "pkit/errors.hpp"
#include "pkit/parse.hpp"
#include "pkit/polygon.hpp"
#include "pkit/puiseux.hpp"
#include "pkit/validate.hpp"

using namespace pkit;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "y^2 - x^3",
      "y^2 - x^2 - x^3",
      "(y^2 - x^3)^2 - x^7",
      "y^3 - x^2",
      "y^2 - 2*x^2*y + x^4",
      "(y - x - x^2)^2",
      "x^2 + y^2",
      "x^3 + y^3",
      "x*y",
      "x^2*y - x^5",
      "y^3 - x^5",
      "y^4 - x^3",
      "(y - x)*(y + x^2)*(y - 2*x^3)",
      "(y - x^2)^2*(y + x)",
      "(y - x - x^3)*(y - x + x^2)",
      "(y^2 - x^3)*(y - x^2)",
      "(y - x^2 - x^3)^3 - x^11",
      "y^5 - x^3 + x^4*y",
      "(1 + x)*y^2 - 2*x*y + x^2 + x^5",
      "y^2 - 2*x^2",
      "(y^2 - 2*x^2)^2 + x^7",
      "y^3 - 3*x^2*y + x^7",
      "x^2*y^2 + x^5 + y^5",
      "(y - x)^2 - x^5",
      "x^2 - 2*x*y^2 + y^4",
  };
  return c;
}

// y-order at the origin of f / x^c, computed from the support alone.
int oracle_y_order(const PuiseuxPoly& f) {
  Rat c = f.min_x_exponent();
  Rat best = -1;
  for (const auto& [k, v] : f.terms())
    if (f.x_exp(k) == c && (best < 0 || f.y_exp(k) < best)) best = f.y_exp(k);
  return static_cast<int>(best.get_num().get_si());
}

int upper_height(const PuiseuxPoly& f) {
  NewtonPolygon n = build_polygon(f);
  DiagonalHit h = diagonal_intersection(n);
  if (h.kind != HitKind::EdgeInterior) return 0;
  return static_cast<int>(n.edges[h.index].upper.y.get_num().get_si());
}

void fail(Outcome& o, const std::string& what) {
  if (o.pass) o.detail = what;
  o.pass = false;
}

std::vector<PuiseuxPoly> random_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PuiseuxPoly> out;
  while (out.size() < count) {
    PuiseuxPoly f = oracle::random_poly(rng, 8, 7);
    if (!f.is_zero() && f.y_degree() > 0) out.push_back(f);
  }
  return out;
}

// Criteria 3 and 4 share the K = 6 factorizations of the same inputs.
const FactorizationReport& factor_k6(const PuiseuxPoly& f) {
  static std::map<std::string, FactorizationReport> cache;
  std::string key = to_expression(f);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, puiseux_branches(f, 6)).first;
  return it->second;
}

}  // namespace

namespace {

Outcome criterion1() {
  Outcome o;
  auto t0 = Clock::now();
  int checked = 0;
  for (const auto& text : corpus()) {
    PuiseuxPoly f = parse_expression(text);
    FactorizationReport r = puiseux_branches(f, 12);
    PuiseuxPoly g = f.divided_by_monomial(r.c, 0);
    for (const char* xs : {"0.01", "0.001"}) {
      Real x(xs);
      std::vector<Complex> mine;
      for (const auto& b : r.branches)
        for (int k = 0; k < b.multiplicity; ++k) mine.push_back(b.series.evaluate(x));
      double err = oracle::multiset_mismatch(mine, oracle::small_roots(g, x, mine.size()), pow(x, Real(12)));
      if (!(err < 1e-6)) fail(o, text + " at x=" + xs + " rel err " + std::to_string(err));
      ++checked;
    }
  }
  double t = seconds_since(t0);
  if (t >= 10) fail(o, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " comparisons, " + std::to_string(t) + " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (const auto& text : corpus()) {
    PuiseuxPoly f = parse_expression(text);
    FactorizationReport r = puiseux_branches(f, 12);
    int total = 0;
    for (const auto& b : r.branches) total += b.multiplicity;
    int e = oracle_y_order(f);
    if (total != e || r.e != e) fail(o, text + ": " + std::to_string(total) + " branches, e = " + std::to_string(e));
  }
  if (o.pass) o.detail = std::to_string(corpus().size()) + " inputs";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::vector<PuiseuxPoly> inputs;
  for (const auto& text : corpus()) inputs.push_back(parse_expression(text));
  for (auto& f : random_corpus(200, 2024)) inputs.push_back(std::move(f));
  int puiseux_runs = 0, adapt_runs = 0;
  for (const auto& f : inputs) {
    std::string text = to_expression(f);
    try {
      const FactorizationReport& r = factor_k6(f);
      int q0 = oracle_y_order(f);
      for (const auto& b : r.branches)
        if (b.root_shifts > q0) fail(o, text + ": branch took " + std::to_string(b.root_shifts) + " root shifts");
      ++puiseux_runs;
      AdaptReport a = adapt(f, 12);
      int q0a = upper_height(a.change.axis_swapped ? f.transposed() : f);
      if (!a.iterations.empty() && a.q0 != q0a) fail(o, text + ": reported q0 differs from the polygon");
      if (a.descents > q0a) fail(o, text + ": " + std::to_string(a.descents) + " descents");
      ++adapt_runs;
    } catch (const PreconditionError& e) {
      if (!f.coefficient(0, 0).is_zero()) continue;
      fail(o, text + ": " + e.what());
    } catch (const std::exception& e) {
      fail(o, text + ": " + e.what());
    }
  }
  if (o.pass)
    o.detail = std::to_string(puiseux_runs) + " factorizations, " + std::to_string(adapt_runs) + " adapt runs";
  return o;
}

// Replays each adapt run and inspects the y^(q-1) coefficients after every
// implicit-series shear.
Outcome criterion4() {
  Outcome o;
  std::vector<PuiseuxPoly> inputs;
  for (const auto& text : corpus()) inputs.push_back(parse_expression(text));
  for (auto& f : random_corpus(200, 2024)) inputs.push_back(std::move(f));
  int steps = 0;
  for (const auto& f : inputs) {
    AdaptReport a;
    try {
      a = adapt(f, 12);
    } catch (const std::exception&) {
      continue;  // counted under criterion 3
    }
    PuiseuxPoly cur = a.change.axis_swapped ? f.transposed() : f;
    for (const auto& s : a.iterations) {
      cur = shift_y(cur, s.shift, a.truncation);
      if (s.kind != StepKind::ImplicitSeries) continue;
      ++steps;
      for (const auto& [k, c] : cur.terms())
        if (cur.y_exp(k) == s.q_before - 1 && !c.is_zero())
          fail(o, to_expression(f) + ": y^" + std::to_string(s.q_before - 1) + " term survived");
    }
  }
  int branch_steps = 0;
  for (const auto& f : inputs) {
    FactorizationReport r;
    try {
      r = factor_k6(f);
    } catch (const std::exception&) {
      continue;
    }
    Rat work = r.truncation * r.e + 1;
    for (const auto& b : r.branches) {
      PuiseuxPoly cur = f.divided_by_monomial(r.c, 0);
      for (const auto& s : b.trace) {
        Rat low = cur.truncated(work).min_y_exponent();
        if (low > 0) cur = cur.divided_by_monomial(0, low);
        cur = shift_y(cur, s.shift, work);
        if (s.kind != StepKind::ImplicitSeries) continue;
        ++branch_steps;
        Real scale = 1;
        for (const auto& [k, c] : cur.terms()) scale = std::max(scale, Real(abs(c.value())));
        for (const auto& [k, c] : cur.terms()) {
          if (cur.y_exp(k) != s.q_before - 1 || c.is_zero()) continue;
          if (c.is_exact() || abs(c.value()) > Real("1e-40") * scale)
            fail(o, to_expression(f) + ": branch keeps a y^" + std::to_string(s.q_before - 1) + " term");
        }
      }
    }
  }
  if (o.pass)
    o.detail = std::to_string(steps) + " adapt steps, " + std::to_string(branch_steps) + " branch steps";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::vector<PuiseuxPoly> inputs;
  for (const auto& text : corpus()) inputs.push_back(parse_expression(text));
  for (auto& f : random_corpus(200, 2024)) inputs.push_back(std::move(f));
  int runs = 0;
  for (const auto& f : inputs) {
    AdaptReport a;
    try {
      a = adapt(f, 12);
    } catch (const std::exception&) {
      continue;
    }
    ++runs;
    Classification c = classify_adapted(a.transformed);
    Rat d = oracle::brute_force_distance(oracle::support_of(a.transformed));
    if (!c.adapted || c.d != a.d_final || d != a.d_final || a.d_final < a.d_initial)
      fail(o, to_expression(f) + ": transformed polynomial failed re-classification");
  }
  if (o.pass) o.detail = std::to_string(runs) + " adapt runs";
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto t0 = Clock::now();
  AdaptReport a = adapt(parse_expression("y^2 - 2*x^2*y + x^4"));
  if (!(a.change.shear.as_poly() == parse_expression("x^2")) || a.d_initial != make_rat(4, 3) || a.d_final != 2 ||
      a.epsilon != make_rat(1, 2))
    fail(o, "y^2 - 2*x^2*y + x^4 gave psi = " + to_expression(a.change.shear.as_poly()));
  AdaptReport b = adapt(parse_expression("(y - x - x^2)^2"));
  if (!(b.change.shear.as_poly() == parse_expression("x + x^2")) || b.d_initial != 1 || b.d_final != 2)
    fail(o, "(y - x - x^2)^2 gave psi = " + to_expression(b.change.shear.as_poly()));
  double t = seconds_since(t0);
  if (t >= 1) fail(o, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "psi = x^2 and x + x^2, " + std::to_string(t) + " s";
  return o;
}

}  // namespace

namespace {

struct Phase {
  const char* text;
  Rat epsilon;
};

const std::vector<Phase>& phases() {
  static const std::vector<Phase> p = {
      {"x^2 + y^2", 1}, {"x^3 + y^3", make_rat(2, 3)}, {"y^2 - 2*x^2*y + x^4", make_rat(1, 2)}};
  return p;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream detail;
  DecayOptions opt;
  for (int k = 8; k <= 22; ++k) opt.lambdas.push_back(std::ldexp(1.0, k));
  for (const auto& ph : phases()) {
    auto t0 = Clock::now();
    std::string got;
    try {
      DecayEstimate e = estimate_decay(parse_expression(ph.text), opt);
      double t = seconds_since(t0);
      double err = std::fabs(e.epsilon_hat - to_double(ph.epsilon));
      got = std::to_string(e.epsilon_hat);
      if (err > 0.05) fail(o, std::string(ph.text) + ": fitted " + got + ", expected " + to_string(ph.epsilon));
      if (t >= 60) fail(o, std::string(ph.text) + ": runtime " + std::to_string(t) + " s");
      detail << ph.text << " -> " << got << " (" << static_cast<int>(t + 0.5) << " s); ";
    } catch (const std::exception& e) {
      fail(o, std::string(ph.text) + ": " + e.what());
    }
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream detail;
  const double step = 0.05;
  for (const auto& ph : phases()) {
    auto t0 = Clock::now();
    PuiseuxPoly f = parse_expression(ph.text);
    double eps0 = to_double(1 / adapt(f).d_final);
    IntegrabilityEstimate e = estimate_integrability(f);
    double t = seconds_since(t0);
    double lo = e.bracket_lo.value_or(0);
    double hi = e.bracket_hi.value_or(1e300);
    bool ok = lo <= eps0 + 1e-9 && eps0 <= hi + 1e-9 && hi - lo <= step + 1e-9 && e.stable;
    std::ostringstream b;
    b << "[" << lo << ", " << hi << "]";
    if (!ok) fail(o, std::string(ph.text) + ": bracket " + b.str() + " misses " + std::to_string(eps0));
    if (t >= 60) fail(o, std::string(ph.text) + ": runtime " + std::to_string(t) + " s");
    detail << ph.text << " " << b.str() << "; ";
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

PuiseuxPoly random_support(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(1, 7);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> num(0, 24);
  std::uniform_int_distribution<int> coef(-5, 5);
  PuiseuxPoly f;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int c = coef(rng);
    if (c == 0) c = 1;
    int dx = den(rng);
    f.add_term(make_rat(num(rng), dx), num(rng) / 3, Coeff(static_cast<long>(c)));
  }
  return f;
}

Outcome criterion9() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 1000) {
    PuiseuxPoly f = random_support(rng);
    if (f.is_zero()) continue;
    ++done;
    auto support = oracle::support_of(f);
    NewtonPolygon n = build_polygon(f);
    std::string text = to_expression(f);
    if (newton_distance(n) != oracle::brute_force_distance(support)) fail(o, text + ": distance mismatch");
    for (std::size_t i = 1; i < n.edges.size(); ++i)
      if (!(n.edges[i - 1].m < n.edges[i].m)) fail(o, text + ": polygon not convex");
    for (const auto& e : n.edges) {
      for (const auto& [a, b] : support)
        if (a + e.m * b < e.alpha) fail(o, text + ": edge line cuts the support");
      EdgePolynomial ep = edge_polynomial(f, e);
      for (const auto& [k, c] : ep.s_e.terms())
        if (ep.s_e.x_exp(k) + e.m * ep.s_e.y_exp(k) != e.alpha) fail(o, text + ": edge part not quasi-homogeneous");
      if (ep.s_e.coefficient(e.upper.x, e.upper.y).is_zero() || ep.s_e.coefficient(e.lower.x, e.lower.y).is_zero())
        fail(o, text + ": edge part misses an endpoint");
    }
    NewtonPolygon t = build_polygon(f.transposed());
    if (t.vertices.size() != n.vertices.size()) {
      fail(o, text + ": transpose changed the vertex count");
      continue;
    }
    for (std::size_t i = 0; i < n.vertices.size(); ++i) {
      const Point& p = n.vertices[i];
      const Point& q = t.vertices[n.vertices.size() - 1 - i];
      if (p.x != q.y || p.y != q.x) fail(o, text + ": transpose is not a mirror image");
    }
    if (newton_distance(t) != newton_distance(n)) fail(o, text + ": transpose changed the distance");
  }
  double t = seconds_since(t0);
  if (t >= 5) fail(o, "runtime " + std::to_string(t) + " s");
  if (o.pass) o.detail = "1000 supports, " + std::to_string(t) + " s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3,
                                                           criterion4, criterion5, criterion6,
                                                           criterion7, criterion8, criterion9};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = Clock::now();
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    std::fprintf(stderr, "  (%.1f s)\n", seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
