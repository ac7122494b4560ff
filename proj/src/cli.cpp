#include "pkit/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "pkit/adapt.hpp"
#include "pkit/errors.hpp"
#include "pkit/parse.hpp"
#include "pkit/puiseux.hpp"
#include "pkit/report.hpp"
#include "pkit/validate.hpp"

namespace pkit {

namespace {

struct Options {
  std::string input;
  std::string truncation = "12";
  bool json_out = false;
  bool csv_out = false;
  std::uint64_t seed = 1;
  double lambda_min = 256;
  double lambda_max = 4194304;
  double rho = kDefaultRho;
  std::string mode = "both";
  int samples = 32;
  double tolerance = 0.05;
  std::size_t max_cells = 400000;
};

std::string read_input(const std::string& arg) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(arg, ec)) return arg;
  std::ifstream in(arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json envelope(const std::string& command, const PuiseuxPoly& f) {
  return {{"schema", kSchema}, {"command", command}, {"input", to_expression(f)}};
}

std::string error_json(const std::string& kind, const std::string& message,
                       std::optional<std::size_t> position = std::nullopt) {
  json e = {{"kind", kind}, {"message", message}};
  if (position) e["position"] = *position;
  return json{{"schema", kSchema}, {"error", e}}.dump() + "\n";
}

std::vector<double> lambda_grid(double lo, double hi) {
  if (!(lo > 0) || !(hi > lo)) throw PreconditionError("need 0 < lambda-min < lambda-max");
  std::vector<double> grid;
  for (double l = lo; l <= hi * (1 + 1e-12); l *= 2) grid.push_back(l);
  return grid;
}

CommandResult run_polygon(const Options& o, const PuiseuxPoly& f) {
  PolygonReport r = polygon_report(f);
  if (o.csv_out) return {kExitOk, polygon_csv(r), ""};
  json j = envelope("polygon", f);
  j["result"] = to_json(r);
  return {kExitOk, j.dump(2) + "\n", ""};
}

CommandResult run_puiseux(const Options& o, const PuiseuxPoly& f) {
  FactorizationReport r = puiseux_branches(f, rat_from_string(o.truncation));
  if (o.csv_out) return {kExitOk, branch_csv(r), ""};
  json j = envelope("puiseux", f);
  j["result"] = to_json(r);
  return {kExitOk, j.dump(2) + "\n", ""};
}

CommandResult run_adapt(const Options& o, const PuiseuxPoly& f) {
  if (o.csv_out) throw PreconditionError("csv output is available for polygon and puiseux only");
  AdaptReport r = adapt(f, rat_from_string(o.truncation));
  json j = envelope("adapt", f);
  j["result"] = to_json(r);
  return {kExitOk, j.dump(2) + "\n", ""};
}

CommandResult run_validate(const Options& o, const PuiseuxPoly& f) {
  if (o.csv_out) throw PreconditionError("csv output is available for polygon and puiseux only");
  if (o.mode != "decay" && o.mode != "integrability" && o.mode != "both")
    throw PreconditionError("mode must be decay, integrability or both");
  if (!f.has_integer_exponents()) throw PreconditionError("validate needs integer exponents");

  std::optional<Rat> predicted;
  if (f.has_real_coefficients() && f.coefficient(0, 0).is_zero())
    predicted = adapt(f, rat_from_string(o.truncation)).epsilon;

  json j = envelope("validate", f);
  j["result"] = json::object();
  j["result"]["predicted_epsilon"] = predicted ? rat_to_json(*predicted) : json(nullptr);
  bool agrees = true;
  if (o.mode != "integrability") {
    DecayOptions d;
    d.rho = o.rho;
    d.lambdas = lambda_grid(o.lambda_min, o.lambda_max);
    d.max_cells = o.max_cells;
    DecayEstimate e = estimate_decay(f, d);
    e.predicted = predicted;
    json dj = to_json(e);
    if (predicted) {
      bool ok = std::fabs(e.epsilon_hat - to_double(*predicted)) <= o.tolerance;
      dj["agrees"] = ok;
      agrees = agrees && ok;
    }
    j["result"]["decay"] = dj;
  }
  if (o.mode != "decay") {
    IntegrabilityOptions io;
    io.rho = o.rho;
    io.seed = o.seed;
    io.samples_per_stratum = o.samples;
    IntegrabilityEstimate e = estimate_integrability(f, io);
    json ij = to_json(e);
    if (predicted) {
      double p = to_double(*predicted);
      bool ok = e.stable && e.bracket_hi && *e.bracket_hi >= p - 1e-12 &&
                (!e.bracket_lo || *e.bracket_lo <= p + 1e-12);
      ij["agrees"] = ok;
      agrees = agrees && ok;
    }
    j["result"]["integrability"] = ij;
  }
  j["result"]["agrees"] = agrees;
  CommandResult r{kExitOk, j.dump(2) + "\n", ""};
  if (!agrees) {
    r.status = kExitNumeric;
    r.err = error_json("numeric", "numeric estimate disagrees with the predicted exponent");
  }
  return r;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"Newton polygons, Puiseux branches and adapted coordinates", "puiseux-kit"};
  app.require_subcommand(1);
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-i,--input", o.input, "expression, or a file containing one")->required();
    auto* j = sub->add_flag("--json", o.json_out, "JSON output (default)");
    auto* c = sub->add_flag("--csv", o.csv_out, "CSV output for plotting");
    j->excludes(c);
  };
  auto* polygon = app.add_subcommand("polygon", "Newton polygon, distance and diagonal hit");
  auto* puiseux = app.add_subcommand("puiseux", "truncated Puiseux branches");
  auto* adapt_cmd = app.add_subcommand("adapt", "adapted coordinates");
  auto* validate = app.add_subcommand("validate", "numeric decay and integrability estimates");
  for (auto* sub : {polygon, puiseux, adapt_cmd, validate}) add_common(sub);
  for (auto* sub : {puiseux, adapt_cmd, validate})
    sub->add_option("-K,--truncation", o.truncation, "truncation order in x (rational)");
  validate->add_option("--seed", o.seed, "random seed for the integrability estimate");
  validate->add_option("--lambda-min", o.lambda_min, "smallest lambda");
  validate->add_option("--lambda-max", o.lambda_max, "largest lambda");
  validate->add_option("--rho", o.rho, "cutoff radius");
  validate->add_option("--mode", o.mode, "decay, integrability or both");
  validate->add_option("--samples", o.samples, "samples per stratum");
  validate->add_option("--max-cells", o.max_cells, "quadrature cell budget per lambda");
  validate->add_option("--tolerance", o.tolerance, "allowed gap between fitted and predicted exponent");

  std::vector<std::string> storage{"puiseux-kit"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kExitParse, "", error_json("usage", e.what())};
  }

  try {
    PuiseuxPoly f = parse_expression(read_input(o.input));
    if (*polygon) return run_polygon(o, f);
    if (*puiseux) return run_puiseux(o, f);
    if (*adapt_cmd) return run_adapt(o, f);
    return run_validate(o, f);
  } catch (const ParseError& e) {
    return {kExitParse, "", error_json("parse", e.what(), e.position())};
  } catch (const PreconditionError& e) {
    return {kExitPrecondition, "", error_json("precondition", e.what())};
  } catch (const NumericError& e) {
    return {kExitNumeric, "", error_json("numeric", e.what())};
  } catch (const InternalError& e) {
    return {kExitInternal, "", error_json("internal", e.what())};
  }
}

}  // namespace pkit
