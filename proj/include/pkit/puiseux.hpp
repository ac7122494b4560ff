#pragma once

#include <optional>
#include <vector>

#include "pkit/poly.hpp"

namespace pkit {

enum class StepKind {
  RootShift,       // y -> y + r x^m for an edge root of order below the edge height
  ImplicitSeries,  // y -> y + x^m k(x), k solving d^(q-1)h'/dy^(q-1) = 0
};

struct BranchStep {
  StepKind kind;
  Rat m;
  Rat alpha;
  Coeff root;
  int order;     // multiplicity of `root` in the edge polynomial
  int q_before;  // edge height before the step
  int q_after;   // height budget handed to the next stage
  Series1 shift; // a(x) applied in this step
};

/// One factor y - g(x) of the factorization, repeated `multiplicity` times.
struct Branch {
  Series1 series;
  int multiplicity = 1;
  bool numeric = false;
  std::vector<BranchStep> trace;
  int root_shifts = 0;  // descending steps taken on the way to this branch

  std::int64_t ramification() const { return series.ramification(); }
};

struct FactorizationReport {
  Rat c;  // f = x^c g(x, y)
  int e = 0;  // order of g(0, y) at y = 0
  Rat truncation;
  std::vector<Branch> branches;
  bool numeric = false;
};

/// All branches y = g(x), g(0) = 0, of f, each accurate below x^K.
/// f must be nonzero with integer y exponents.
FactorizationReport puiseux_branches(const PuiseuxPoly& f, const Rat& truncation = kDefaultTruncation);

/// k(x), k(0) = r, with d^(q-1)h'/dy^(q-1) (x, k(x)) = 0 through x^K.
/// Throws PreconditionError if the derivative does not vanish at (0, r) or
/// its y-derivative there is zero.
Series1 implicit_series_root(const PuiseuxPoly& hprime, int q, const Coeff& r, const Rat& truncation);

/// Order in x of f(x, g(x)); nullopt when the substitution vanishes
/// identically. g is used as the polynomial formed by its retained terms.
std::optional<Rat> residual_order(const PuiseuxPoly& f, const Series1& g);

}  // namespace pkit
