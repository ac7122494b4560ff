#pragma once

#include <optional>
#include <vector>

#include "pkit/polygon.hpp"
#include "pkit/puiseux.hpp"

namespace pkit {

enum class AdaptedCase {
  EdgeNoFatRoot,  // diagonal crosses an edge whose restrictions have no real root of order >= d
  Vertex,         // diagonal passes through a vertex (d, d)
  Ray,            // diagonal meets one of the unbounded rays
};

const char* to_string(AdaptedCase c);

/// A real root r != 0 of S_e(1, y) or S_e(-1, y) of order k >= d.
struct FatRoot {
  Edge edge;
  Coeff root;
  Rat lo;  // isolating interval of the root
  Rat hi;
  int order = 0;
  bool from_minus = false;  // found on S_e(-1, y) only
};

struct Classification {
  bool adapted = false;
  AdaptedCase kind = AdaptedCase::EdgeNoFatRoot;  // valid when adapted
  Rat d;
  DiagonalHit hit;
  std::optional<FatRoot> fat;  // set when not adapted
};

/// S must be nonzero with integer exponents, real coefficients and
/// S(0, 0) = 0. Among several fat roots the one of largest order wins, then
/// the one of largest |r|.
Classification classify_adapted(const PuiseuxPoly& s);

/// (x, y) -> (x, y - psi(x)) after optional sign flips, or with the roles of
/// x and y exchanged when `axis_swapped` is set.
struct CoordChange {
  bool axis_swapped = false;
  bool flip_x = false;
  bool flip_y = false;
  Series1 shear;

  bool is_identity() const { return !axis_swapped && !flip_x && !flip_y && shear.is_zero(); }
  /// S expressed in the new coordinates, with terms of order >= `bound` in
  /// the shear variable dropped.
  PuiseuxPoly apply(const PuiseuxPoly& s, const Rat& bound) const;
};

struct IterationStep {
  StepKind kind;
  Rat m;
  Rat alpha;
  Coeff root;
  int order = 0;
  int q_before = 0;
  int q_after = 0;  // upper vertex height of the next diagonal edge, 0 once adapted
  Series1 shift;
  Rat d_after;
};

struct AdaptReport {
  CoordChange change;
  AdaptedCase final_case = AdaptedCase::EdgeNoFatRoot;
  Rat d_initial;
  Rat d_final;
  Rat epsilon;
  Rat truncation;
  int q0 = 0;
  int descents = 0;  // iterations ending in a lower q or in adapted coordinates
  std::vector<IterationStep> iterations;
  bool numeric = false;
  PuiseuxPoly transformed;  // in the original variable names
};

AdaptReport adapt(const PuiseuxPoly& s, const Rat& truncation = kDefaultTruncation);

}  // namespace pkit
