#include "pkit/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "pkit/errors.hpp"
#include "pkit/parse.hpp"

namespace pkit {

namespace {

const char* to_string(StepKind k) { return k == StepKind::RootShift ? "root_shift" : "implicit_series"; }

StepKind step_kind_from(const std::string& s) {
  if (s == "root_shift") return StepKind::RootShift;
  if (s == "implicit_series") return StepKind::ImplicitSeries;
  throw PreconditionError("unknown step kind '" + s + "'");
}

const char* to_string(HitKind k) {
  switch (k) {
    case HitKind::Vertex: return "vertex";
    case HitKind::EdgeInterior: return "edge_interior";
    case HitKind::RayInterior: return "ray_interior";
  }
  return "?";
}

HitKind hit_kind_from(const std::string& s) {
  if (s == "vertex") return HitKind::Vertex;
  if (s == "edge_interior") return HitKind::EdgeInterior;
  if (s == "ray_interior") return HitKind::RayInterior;
  throw PreconditionError("unknown diagonal hit kind '" + s + "'");
}

AdaptedCase case_from(const std::string& s) {
  for (auto c : {AdaptedCase::EdgeNoFatRoot, AdaptedCase::Vertex, AdaptedCase::Ray})
    if (s == pkit::to_string(c)) return c;
  throw PreconditionError("unknown adapted case '" + s + "'");
}

json point_to_json(const Point& p) { return json::array({rat_to_json(p.x), rat_to_json(p.y)}); }
Point point_from_json(const json& j) { return {rat_from_json(j.at(0)), rat_from_json(j.at(1))}; }

json edge_to_json(const Edge& e) {
  return {{"upper", point_to_json(e.upper)},
          {"lower", point_to_json(e.lower)},
          {"m", rat_to_json(e.m)},
          {"alpha", rat_to_json(e.alpha)}};
}

Edge edge_from_json(const json& j) {
  return {point_from_json(j.at("upper")), point_from_json(j.at("lower")), rat_from_json(j.at("m")),
          rat_from_json(j.at("alpha"))};
}

json step_to_json(const BranchStep& s) {
  return {{"kind", to_string(s.kind)},       {"m", rat_to_json(s.m)},
          {"alpha", rat_to_json(s.alpha)},   {"root", coeff_to_json(s.root)},
          {"order", s.order},                {"q_before", s.q_before},
          {"q_after", s.q_after},            {"shift", series_to_json(s.shift)}};
}

BranchStep step_from_json(const json& j) {
  return {step_kind_from(j.at("kind")), rat_from_json(j.at("m")), rat_from_json(j.at("alpha")),
          coeff_from_json(j.at("root")), j.at("order"), j.at("q_before"), j.at("q_after"),
          series_from_json(j.at("shift"))};
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_or(const json& j, double fallback) { return j.is_null() ? fallback : j.get<double>(); }

std::string decimal(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

json rat_to_json(const Rat& r) { return to_string(r); }

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw PreconditionError("expected a rational string");
  return rat_from_string(j.get<std::string>());
}

json coeff_to_json(const Coeff& c) {
  if (c.is_exact()) {
    const GaussRat& g = c.exact();
    if (g.is_real()) return rat_to_json(g.re);
    return {{"re", rat_to_json(g.re)}, {"im", rat_to_json(g.im)}};
  }
  Complex v = c.value();
  return {{"re", to_decimal_string(v.real())}, {"im", to_decimal_string(v.imag())}, {"approx", true}};
}

Coeff coeff_from_json(const json& j) {
  if (!j.is_object()) return Coeff(rat_from_json(j));
  if (j.value("approx", false))
    return Coeff::approx(Complex(Real(j.at("re").get<std::string>()), Real(j.at("im").get<std::string>())));
  return Coeff(GaussRat(rat_from_json(j.at("re")), rat_from_json(j.at("im"))));
}

json poly_to_json(const PuiseuxPoly& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms())
    terms.push_back({{"x", rat_to_json(f.x_exp(k))}, {"y", rat_to_json(f.y_exp(k))}, {"coeff", coeff_to_json(c)}});
  return {{"ramification", f.ramification()}, {"text", to_expression(f)}, {"terms", terms}};
}

PuiseuxPoly poly_from_json(const json& j) {
  PuiseuxPoly f;
  for (const auto& t : j.at("terms"))
    f.add_term(rat_from_json(t.at("x")), rat_from_json(t.at("y")), coeff_from_json(t.at("coeff")));
  return f;
}

json series_to_json(const Series1& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({{"exp", rat_to_json(s.exponent(k))}, {"coeff", coeff_to_json(c)}});
  return {{"ramification", s.ramification()}, {"order", rat_to_json(s.order())}, {"terms", terms}};
}

Series1 series_from_json(const json& j) {
  Series1 s(rat_from_json(j.at("order")));
  for (const auto& t : j.at("terms")) s.add_term(rat_from_json(t.at("exp")), coeff_from_json(t.at("coeff")));
  return s;
}

PolygonReport polygon_report(const PuiseuxPoly& f) {
  PolygonReport r;
  r.polygon = build_polygon(f);
  r.hit = diagonal_intersection(r.polygon);
  return r;
}

json to_json(const PolygonReport& r) {
  json vertices = json::array(), edges = json::array();
  for (const auto& v : r.polygon.vertices) vertices.push_back(point_to_json(v));
  for (const auto& e : r.polygon.edges) edges.push_back(edge_to_json(e));
  return {{"vertices", vertices},
          {"edges", edges},
          {"d", rat_to_json(r.hit.d)},
          {"diagonal",
           {{"kind", to_string(r.hit.kind)}, {"index", r.hit.index}, {"vertical_ray", r.hit.vertical_ray}}}};
}

PolygonReport polygon_report_from_json(const json& j) {
  PolygonReport r;
  for (const auto& v : j.at("vertices")) r.polygon.vertices.push_back(point_from_json(v));
  for (const auto& e : j.at("edges")) r.polygon.edges.push_back(edge_from_json(e));
  const json& d = j.at("diagonal");
  r.hit = {hit_kind_from(d.at("kind")), rat_from_json(j.at("d")), d.at("index").get<std::size_t>(),
           d.at("vertical_ray").get<bool>()};
  return r;
}

json to_json(const FactorizationReport& r) {
  json branches = json::array();
  for (const auto& b : r.branches) {
    json trace = json::array();
    for (const auto& s : b.trace) trace.push_back(step_to_json(s));
    branches.push_back({{"series", series_to_json(b.series)},
                        {"ramification", b.ramification()},
                        {"multiplicity", b.multiplicity},
                        {"numeric", b.numeric},
                        {"root_shifts", b.root_shifts},
                        {"trace", trace}});
  }
  return {{"c", rat_to_json(r.c)},
          {"e", r.e},
          {"truncation", rat_to_json(r.truncation)},
          {"numeric", r.numeric},
          {"branches", branches}};
}

FactorizationReport factorization_from_json(const json& j) {
  FactorizationReport r;
  r.c = rat_from_json(j.at("c"));
  r.e = j.at("e");
  r.truncation = rat_from_json(j.at("truncation"));
  r.numeric = j.at("numeric");
  for (const auto& b : j.at("branches")) {
    Branch br;
    br.series = series_from_json(b.at("series"));
    br.multiplicity = b.at("multiplicity");
    br.numeric = b.at("numeric");
    br.root_shifts = b.at("root_shifts");
    for (const auto& s : b.at("trace")) br.trace.push_back(step_from_json(s));
    r.branches.push_back(std::move(br));
  }
  return r;
}

json to_json(const AdaptReport& r) {
  json iterations = json::array();
  for (const auto& s : r.iterations)
    iterations.push_back({{"kind", to_string(s.kind)},
                          {"m", rat_to_json(s.m)},
                          {"alpha", rat_to_json(s.alpha)},
                          {"root", coeff_to_json(s.root)},
                          {"order", s.order},
                          {"q_before", s.q_before},
                          {"q_after", s.q_after},
                          {"shift", series_to_json(s.shift)},
                          {"d_after", rat_to_json(s.d_after)}});
  PuiseuxPoly psi = r.change.shear.as_poly();
  if (r.change.axis_swapped) psi = psi.transposed();
  return {{"change",
           {{"axis_swapped", r.change.axis_swapped},
            {"flip_x", r.change.flip_x},
            {"flip_y", r.change.flip_y},
            {"shear", series_to_json(r.change.shear)},
            {"psi", to_expression(psi)}}},
          {"final_case", to_string(r.final_case)},
          {"d_initial", rat_to_json(r.d_initial)},
          {"d_final", rat_to_json(r.d_final)},
          {"epsilon", rat_to_json(r.epsilon)},
          {"truncation", rat_to_json(r.truncation)},
          {"q0", r.q0},
          {"descents", r.descents},
          {"numeric", r.numeric},
          {"iterations", iterations},
          {"transformed", poly_to_json(r.transformed)}};
}

AdaptReport adapt_report_from_json(const json& j) {
  AdaptReport r;
  const json& c = j.at("change");
  r.change.axis_swapped = c.at("axis_swapped");
  r.change.flip_x = c.at("flip_x");
  r.change.flip_y = c.at("flip_y");
  r.change.shear = series_from_json(c.at("shear"));
  r.final_case = case_from(j.at("final_case"));
  r.d_initial = rat_from_json(j.at("d_initial"));
  r.d_final = rat_from_json(j.at("d_final"));
  r.epsilon = rat_from_json(j.at("epsilon"));
  r.truncation = rat_from_json(j.at("truncation"));
  r.q0 = j.at("q0");
  r.descents = j.at("descents");
  r.numeric = j.at("numeric");
  for (const auto& s : j.at("iterations")) {
    IterationStep st;
    st.kind = step_kind_from(s.at("kind"));
    st.m = rat_from_json(s.at("m"));
    st.alpha = rat_from_json(s.at("alpha"));
    st.root = coeff_from_json(s.at("root"));
    st.order = s.at("order");
    st.q_before = s.at("q_before");
    st.q_after = s.at("q_after");
    st.shift = series_from_json(s.at("shift"));
    st.d_after = rat_from_json(s.at("d_after"));
    r.iterations.push_back(std::move(st));
  }
  r.transformed = poly_from_json(j.at("transformed"));
  return r;
}

json to_json(const DecayEstimate& r) {
  json samples = json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"lambda", s.lambda},
                       {"re", s.re},
                       {"im", s.im},
                       {"magnitude", s.magnitude},
                       {"error", s.error},
                       {"converged", s.converged},
                       {"cells", s.cells}});
  return {{"approx", true},
          {"rho", r.rho},
          {"bump", kBumpDescription},
          {"samples", samples},
          {"fit", {{"lambda_lo", r.fit_lo}, {"lambda_hi", r.fit_hi}, {"points", r.fit_points}}},
          {"epsilon_hat", r.epsilon_hat},
          {"residual", r.residual},
          {"predicted", r.predicted ? rat_to_json(*r.predicted) : json(nullptr)}};
}

DecayEstimate decay_from_json(const json& j) {
  DecayEstimate r;
  r.rho = j.at("rho");
  for (const auto& s : j.at("samples"))
    r.samples.push_back({s.at("lambda"), s.at("re"), s.at("im"), s.at("magnitude"), s.at("error"),
                         s.at("converged"), s.at("cells")});
  r.fit_lo = j.at("fit").at("lambda_lo");
  r.fit_hi = j.at("fit").at("lambda_hi");
  r.fit_points = j.at("fit").at("points");
  r.epsilon_hat = j.at("epsilon_hat");
  r.residual = j.at("residual");
  if (!j.at("predicted").is_null()) r.predicted = rat_from_json(j.at("predicted"));
  return r;
}

json to_json(const IntegrabilityEstimate& r) {
  return {{"approx", true},
          {"rho", r.rho},
          {"grid", r.grid},
          {"divergent", r.divergent},
          {"ratios", r.ratios},
          {"layer_measure", r.layer_measure},
          {"critical", finite_or_null(r.critical)},
          {"bracket", {r.bracket_lo ? json(*r.bracket_lo) : json(nullptr),
                       r.bracket_hi ? json(*r.bracket_hi) : json(nullptr)}},
          {"stable", r.stable},
          {"seed", r.seed},
          {"samples", r.samples}};
}

IntegrabilityEstimate integrability_from_json(const json& j) {
  IntegrabilityEstimate r;
  r.rho = j.at("rho");
  r.grid = j.at("grid").get<std::vector<double>>();
  r.divergent = j.at("divergent").get<std::vector<bool>>();
  r.ratios = j.at("ratios").get<std::vector<double>>();
  r.layer_measure = j.at("layer_measure").get<std::vector<double>>();
  r.critical = number_or(j.at("critical"), std::numeric_limits<double>::infinity());
  if (!j.at("bracket").at(0).is_null()) r.bracket_lo = j.at("bracket").at(0).get<double>();
  if (!j.at("bracket").at(1).is_null()) r.bracket_hi = j.at("bracket").at(1).get<double>();
  r.stable = j.at("stable");
  r.seed = j.at("seed");
  r.samples = j.at("samples");
  return r;
}

std::string polygon_csv(const PolygonReport& r) {
  std::ostringstream os;
  os << "kind,x,y\n";
  for (const auto& v : r.polygon.vertices) os << "vertex," << decimal(to_double(v.x)) << "," << decimal(to_double(v.y)) << "\n";
  const std::string d = decimal(to_double(r.hit.d));
  os << "diagonal," << d << "," << d << "\n";
  return os.str();
}

std::string branch_csv(const FactorizationReport& r, double x_max, int count) {
  std::ostringstream os;
  os << "branch_id,x,re,im\n";
  for (std::size_t b = 0; b < r.branches.size(); ++b)
    for (int i = 1; i <= count; ++i) {
      double x = x_max * i / count;
      Complex v = r.branches[b].series.evaluate(Real(x));
      os << b << "," << decimal(x) << "," << decimal(static_cast<double>(v.real())) << ","
         << decimal(static_cast<double>(v.imag())) << "\n";
    }
  return os.str();
}

}  // namespace pkit
