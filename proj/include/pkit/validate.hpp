#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pkit/poly.hpp"

namespace pkit {

/// Cutoff used by the decay estimate:
///   phi(x, y) = exp(1 - 1 / (1 - (x^2 + y^2) / rho^2)) for x^2 + y^2 < rho^2,
///   phi(x, y) = 0 otherwise.
inline constexpr double kDefaultRho = 0.5;
inline constexpr const char* kBumpDescription = "exp(1 - 1/(1 - (x^2+y^2)/rho^2)) on x^2+y^2 < rho^2";

struct DecayOptions {
  double rho = kDefaultRho;
  std::vector<double> lambdas;  // empty: 2^k for k = 8..22
  double rel_tol = 1e-6;
  std::size_t max_cells = 400000;
};

struct DecaySample {
  double lambda;
  double re;
  double im;
  double magnitude;
  double error;     // quadrature error estimate
  bool converged;   // false: dropped from the fit
  std::size_t cells;
};

struct DecayEstimate {
  double rho;
  std::vector<DecaySample> samples;
  double fit_lo;     // fit window [fit_lo, fit_hi] in lambda
  double fit_hi;
  int fit_points;
  double epsilon_hat;
  double residual;   // RMS residual of the log-log fit
  std::optional<Rat> predicted;  // 1/d in adapted coordinates, when known
};

/// J(lambda) = integral of exp(i lambda S) phi over the plane, with the
/// slope of -log|J| against log lambda fitted over the top decade of the
/// grid. S needs real coefficients and integer exponents.
DecayEstimate estimate_decay(const PuiseuxPoly& s, const DecayOptions& opt = {});

/// J(lambda) alone; exposed for tests.
DecaySample decay_integral(const PuiseuxPoly& s, double lambda, const DecayOptions& opt = {});

struct IntegrabilityOptions {
  double rho = kDefaultRho;
  std::vector<double> grid;  // empty: 0.05, 0.10, ..., 2.00
  int samples_per_stratum = 32;
  int strata = 60;         // dyadic x strata on each side of 0
  int layers = 40;         // value layers |f| in (2^-(j+1), 2^-j], j < layers
  int tail = 8;            // layers in the ratio test
  std::uint64_t seed = 1;
};

struct IntegrabilityEstimate {
  double rho;
  std::vector<double> grid;
  std::vector<bool> divergent;  // per grid point
  std::vector<double> ratios;   // tail ratio per grid point; >= 1 means divergent
  std::vector<double> layer_measure;  // measure of each value layer
  double critical;              // exponent where the tail ratio crosses 1
  std::optional<double> bracket_lo;  // largest finite grid point
  std::optional<double> bracket_hi;  // smallest divergent grid point
  bool stable = true;  // the two half-samples agree to within one grid step
  std::uint64_t seed;
  int samples;
};

/// Decides finiteness of the integral of |f|^-eps over [-rho, rho]^2 on a
/// grid of eps from the measures of the sets {2^-(j+1) < |f| <= 2^-j}.
IntegrabilityEstimate estimate_integrability(const PuiseuxPoly& f, const IntegrabilityOptions& opt = {});

}  // namespace pkit
