#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pkit/number.hpp"

namespace pkit {

/// Sparse bivariate polynomial in x^(1/N) and y^(1/N).
///
/// Exponents are stored as integer numerators over the common ramification
/// N, so the key (A, B) stands for x^(A/N) y^(B/N). N is kept minimal after
/// every operation, which makes structural equality a canonical comparison.
class PuiseuxPoly {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;
  using TermMap = std::map<Key, Coeff>;

  PuiseuxPoly() = default;

  static PuiseuxPoly monomial(const Rat& a, const Rat& b, const Coeff& c);
  static PuiseuxPoly constant(const Coeff& c) { return monomial(0, 0, c); }
  /// Builds from keys over ramification n; zero entries are dropped.
  static PuiseuxPoly from_terms(std::int64_t n, TermMap terms);

  /// Adds c x^a y^b. Rejects negative exponents.
  void add_term(const Rat& a, const Rat& b, const Coeff& c);

  std::int64_t ramification() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rat x_exp(const Key& k) const { return make_rat(k.first, n_); }
  Rat y_exp(const Key& k) const { return make_rat(k.second, n_); }
  Coeff coefficient(const Rat& a, const Rat& b) const;

  bool is_exact() const;
  bool has_real_coefficients() const;
  bool has_integer_exponents() const;
  bool has_integer_y_exponents() const;

  /// Largest y exponent; requires a nonzero polynomial.
  Rat y_degree() const;
  Rat min_x_exponent() const;
  Rat min_y_exponent() const;

  /// Re-expresses the exponents over a multiple of the current ramification.
  PuiseuxPoly with_ramification(std::int64_t n) const;
  /// Drops every term with x exponent >= bound.
  PuiseuxPoly truncated(const Rat& bound) const;
  /// Swaps the roles of x and y.
  PuiseuxPoly transposed() const;
  /// f(-x, y); integer x exponents only.
  PuiseuxPoly flipped_x() const;
  /// f(x, -y); integer y exponents only.
  PuiseuxPoly flipped_y() const;
  /// f / (x^a y^b); every term must stay nonnegative.
  PuiseuxPoly divided_by_monomial(const Rat& a, const Rat& b) const;

  /// f(x, y) for x > 0 (principal real powers) and complex y.
  Complex evaluate(const Real& x, const Complex& y) const;

  PuiseuxPoly operator-() const;
  friend PuiseuxPoly operator+(const PuiseuxPoly& f, const PuiseuxPoly& g);
  friend PuiseuxPoly operator-(const PuiseuxPoly& f, const PuiseuxPoly& g);
  friend PuiseuxPoly operator*(const PuiseuxPoly& f, const PuiseuxPoly& g);
  friend PuiseuxPoly operator*(const Coeff& c, const PuiseuxPoly& f);
  friend bool operator==(const PuiseuxPoly& f, const PuiseuxPoly& g) {
    return f.n_ == g.n_ && f.terms_ == g.terms_;
  }

 private:
  void normalize();

  std::int64_t n_ = 1;
  TermMap terms_;
};

/// Truncated series sum c_a x^a over a in (1/N)Z, 0 <= a < order.
class Series1 {
 public:
  using TermMap = std::map<std::int64_t, Coeff>;

  Series1() = default;
  explicit Series1(Rat order) : order_(std::move(order)) {}

  static Series1 monomial(const Rat& a, const Coeff& c, const Rat& order);

  /// Adds c x^a; terms at or beyond the truncation order are discarded.
  void add_term(const Rat& a, const Coeff& c);

  std::int64_t ramification() const { return n_; }
  const Rat& order() const { return order_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rat exponent(std::int64_t key) const { return make_rat(key, n_); }
  Coeff coefficient(const Rat& a) const;
  Coeff constant_term() const { return coefficient(0); }
  /// Smallest exponent with a nonzero coefficient.
  std::optional<Rat> valuation() const;
  bool is_exact() const;

  Series1 with_ramification(std::int64_t n) const;
  Series1 truncated(const Rat& order) const;
  /// x^m * s, with the truncation order moved along.
  Series1 times_x_power(const Rat& m) const;
  PuiseuxPoly as_poly() const;

  Complex evaluate(const Real& x) const;

  Series1 operator-() const;
  friend Series1 operator+(const Series1& a, const Series1& b);
  friend Series1 operator-(const Series1& a, const Series1& b);
  /// Truncated at the order both factors jointly determine.
  friend Series1 operator*(const Series1& a, const Series1& b);
  friend Series1 operator*(const Coeff& c, const Series1& a);
  friend bool operator==(const Series1& a, const Series1& b) {
    return a.n_ == b.n_ && a.order_ == b.order_ && a.terms_ == b.terms_;
  }

 private:
  void normalize();

  std::int64_t n_ = 1;
  Rat order_ = 12;
  TermMap terms_;
};

/// Default truncation order for series computations.
inline const Rat kDefaultTruncation = 12;

/// Least common multiple of two ramification indices, with an overflow cap.
std::int64_t common_ramification(std::int64_t a, std::int64_t b);

/// f(x, y + a(x)) with every term of x exponent >= bound discarded. The
/// retained terms of `a` are used as an exact polynomial.
PuiseuxPoly shift_y(const PuiseuxPoly& f, const Series1& a, const Rat& bound);

/// h(x, x^m y) / x^alpha. Every term must satisfy a + m b >= alpha.
PuiseuxPoly scale_substitute(const PuiseuxPoly& h, const Rat& m, const Rat& alpha);

/// Formal d^order/dy^order. Integer y exponents only.
PuiseuxPoly partial_y(const PuiseuxPoly& f, int order);

/// f(x, g(x)) as a polynomial in x alone (stored with y exponent 0). When
/// `bound` is given, terms of x exponent >= bound are discarded.
PuiseuxPoly substitute_y(const PuiseuxPoly& f, const Series1& g,
                         const std::optional<Rat>& bound = std::nullopt);

}  // namespace pkit
