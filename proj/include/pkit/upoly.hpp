#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pkit/number.hpp"

namespace pkit {

/// Dense univariate polynomial, coefficients from degree 0 upward.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Coeff> coeffs);
  static UPoly from_ints(std::initializer_list<long> coeffs);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Coeff>& coeffs() const { return c_; }
  Coeff coeff(int i) const { return i >= 0 && i <= degree() ? c_[i] : Coeff(); }
  const Coeff& leading() const { return c_.back(); }

  bool is_exact() const;
  /// All coefficients real (exactly, or within the negligible threshold).
  bool is_real() const;

  Complex evaluate(const Complex& z) const;
  GaussRat evaluate_exact(const GaussRat& z) const;
  UPoly derivative() const;
  UPoly monic() const;

  /// Real and imaginary coefficient parts; exact polynomials only.
  UPoly real_part() const;
  UPoly imag_part() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<Coeff> c_;
};

/// Exact polynomial long division; returns (quotient, remainder).
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
/// Monic gcd of exact polynomials.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Yun's algorithm: P = lc * prod F_i^i with each F_i square-free and
/// pairwise coprime. Returns the nonconstant (F_i, i) pairs.
std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& p);

struct Root {
  Coeff value;       // exact when `exact` is set, otherwise an approximation
  int multiplicity;  // exact for exact-coefficient input
  bool exact;
};

struct RealRoot {
  Rat lo;  // isolating interval [lo, hi] (lo == hi for exact rational roots)
  Rat hi;
  Coeff value;
  int multiplicity;
  bool exact;
};

struct RootOptions {
  /// Width of the isolating interval for real roots.
  Rat interval_width = Rat(mpz_class(1), mpz_class("1000000000000000000000000000000"));
  /// Relative distance below which approximate roots are merged into one
  /// multiple root (approximate-coefficient input only).
  double cluster_tolerance = 1e-8;
};

/// All complex roots with multiplicity, ordered by (re, im).
std::vector<Root> complex_roots_with_multiplicity(const UPoly& p, const RootOptions& opt = {});

/// Real roots with multiplicity in increasing order. Exact-coefficient input
/// is isolated with Sturm sequences in exact arithmetic.
std::vector<RealRoot> real_roots_with_multiplicity(const UPoly& p, const RootOptions& opt = {});

/// Simplest rational in [lo, hi].
Rat simplest_rational_between(const Rat& lo, const Rat& hi);

}  // namespace pkit
