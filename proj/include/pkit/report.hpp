#pragma once

#include <string>

#include "json.hpp"
#include "pkit/adapt.hpp"
#include "pkit/polygon.hpp"
#include "pkit/puiseux.hpp"
#include "pkit/validate.hpp"

namespace pkit {

using json = nlohmann::json;

inline constexpr const char* kSchema = "puiseux-kit/1";

// Exact rationals travel as "p/q" strings. Exact coefficients are a string
// (real) or {"re", "im"}; approximations are {"re", "im", "approx": true}
// with full-precision decimal strings.
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);
json coeff_to_json(const Coeff& c);
Coeff coeff_from_json(const json& j);
json poly_to_json(const PuiseuxPoly& f);
PuiseuxPoly poly_from_json(const json& j);
json series_to_json(const Series1& s);
Series1 series_from_json(const json& j);

struct PolygonReport {
  NewtonPolygon polygon;
  DiagonalHit hit;
};

PolygonReport polygon_report(const PuiseuxPoly& f);

json to_json(const PolygonReport& r);
PolygonReport polygon_report_from_json(const json& j);
json to_json(const FactorizationReport& r);
FactorizationReport factorization_from_json(const json& j);
json to_json(const AdaptReport& r);
AdaptReport adapt_report_from_json(const json& j);
json to_json(const DecayEstimate& r);
DecayEstimate decay_from_json(const json& j);
json to_json(const IntegrabilityEstimate& r);
IntegrabilityEstimate integrability_from_json(const json& j);

/// Columns kind,x,y: one row per vertex and one for the diagonal point.
std::string polygon_csv(const PolygonReport& r);

/// Columns branch_id,x,re,im: each branch sampled at `count` points of
/// (0, x_max].
std::string branch_csv(const FactorizationReport& r, double x_max = 0.1, int count = 50);

}  // namespace pkit
