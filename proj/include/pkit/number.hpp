#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <string>
#include <string_view>
#include <variant>

namespace pkit {

/// Exact rational. gmpxx keeps values canonical after every operation.
using Rat = mpq_class;
/// Working precision for non-rational values (about 100 decimal digits).
using Real = boost::multiprecision::cpp_bin_float_100;
using Complex = boost::multiprecision::cpp_complex_100;

Rat make_rat(long num, long den = 1);
/// "p" for integers, otherwise "p/q".
std::string to_string(const Rat& r);
/// Accepts "p", "-p", "p/q". Throws PreconditionError on anything else.
Rat rat_from_string(std::string_view s);
bool is_integer(const Rat& r);
Rat floor_rat(const Rat& r);
Real to_real(const Rat& r);
double to_double(const Rat& r);
mpz_class lcm(const mpz_class& a, const mpz_class& b);

/// Magnitude below which an approximate coefficient counts as zero.
const Real& negligible();

/// Exact element of Q(i).
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Complex to_complex() const { return Complex(to_real(re), to_real(im)); }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b);
  GaussRat operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// A polynomial coefficient: exact in Q(i) when it can be, otherwise an
/// approximation at working precision. Arithmetic stays exact as long as
/// both operands are exact.
class Coeff {
 public:
  Coeff() = default;
  Coeff(long v) : value_(GaussRat(Rat(v))) {}            // NOLINT
  Coeff(Rat v) : value_(GaussRat(std::move(v))) {}       // NOLINT
  Coeff(GaussRat v) : value_(std::move(v)) {}            // NOLINT
  static Coeff approx(Complex v);

  bool is_exact() const { return std::holds_alternative<GaussRat>(value_); }
  bool is_zero() const;
  bool is_real() const;
  /// Only valid when is_exact().
  const GaussRat& exact() const;
  Complex value() const;

  Coeff operator-() const;
  friend Coeff operator+(const Coeff& a, const Coeff& b);
  friend Coeff operator-(const Coeff& a, const Coeff& b);
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend Coeff operator/(const Coeff& a, const Coeff& b);
  Coeff& operator+=(const Coeff& o) { return *this = *this + o; }
  Coeff& operator-=(const Coeff& o) { return *this = *this - o; }
  Coeff& operator*=(const Coeff& o) { return *this = *this * o; }

  /// Structural equality: exact values compare exactly, approximations
  /// compare bitwise. Mixed pairs are never equal.
  friend bool operator==(const Coeff& a, const Coeff& b);

  /// Human-readable form, e.g. "3/2", "(1/2+3/4*i)", "1.4142...".
  std::string to_string() const;

 private:
  std::variant<GaussRat, Complex> value_;
};

/// Full-precision decimal rendering that round-trips through Real's parser.
std::string to_decimal_string(const Real& v);

}  // namespace pkit
