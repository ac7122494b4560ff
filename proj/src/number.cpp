#include "pkit/number.hpp"

#include <cctype>
#include <sstream>

#include "pkit/errors.hpp"

namespace pkit {

Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_from_string(std::string_view s) {
  std::string text(s);
  auto valid_int = [](std::string_view t, bool allow_sign) {
    if (!t.empty() && allow_sign && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw PreconditionError("not a rational literal: '" + text + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw PreconditionError("zero denominator in '" + text + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

Rat floor_rat(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return Rat(q);
}

Real to_real(const Rat& r) {
  return Real(r.get_num().get_str()) / Real(r.get_den().get_str());
}

double to_double(const Rat& r) { return r.get_d(); }

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

const Real& negligible() {
  static const Real tol("1e-50");
  return tol;
}

GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  Rat norm = b.re * b.re + b.im * b.im;
  if (sgn(norm) == 0) throw PreconditionError("division by exact zero");
  return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
}

Coeff Coeff::approx(Complex v) {
  Coeff c;
  c.value_ = std::move(v);
  return c;
}

bool Coeff::is_zero() const {
  if (auto* g = std::get_if<GaussRat>(&value_)) return g->is_zero();
  const Complex& v = std::get<Complex>(value_);
  const Real& tol = negligible();
  // |v| < tol without the square root.
  if (abs(v.real()) >= tol || abs(v.imag()) >= tol) return false;
  static const Real tol2 = tol * tol;
  return v.real() * v.real() + v.imag() * v.imag() < tol2;
}

bool Coeff::is_real() const {
  if (auto* g = std::get_if<GaussRat>(&value_)) return g->is_real();
  return abs(std::get<Complex>(value_).imag()) < negligible();
}

const GaussRat& Coeff::exact() const {
  if (auto* g = std::get_if<GaussRat>(&value_)) return *g;
  throw InternalError("exact() on approximate coefficient");
}

Complex Coeff::value() const {
  if (auto* g = std::get_if<GaussRat>(&value_)) return g->to_complex();
  return std::get<Complex>(value_);
}

Coeff Coeff::operator-() const {
  if (is_exact()) return Coeff(-exact());
  return approx(-std::get<Complex>(value_));
}

Coeff operator+(const Coeff& a, const Coeff& b) {
  if (a.is_exact() && b.is_exact()) return Coeff(a.exact() + b.exact());
  return Coeff::approx(a.value() + b.value());
}

Coeff operator-(const Coeff& a, const Coeff& b) {
  if (a.is_exact() && b.is_exact()) return Coeff(a.exact() - b.exact());
  return Coeff::approx(a.value() - b.value());
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  if (a.is_exact() && b.is_exact()) return Coeff(a.exact() * b.exact());
  // An exact zero annihilates regardless of the other operand.
  if ((a.is_exact() && a.exact().is_zero()) || (b.is_exact() && b.exact().is_zero()))
    return Coeff();
  return Coeff::approx(a.value() * b.value());
}

Coeff operator/(const Coeff& a, const Coeff& b) {
  if (b.is_zero()) throw PreconditionError("division by zero coefficient");
  if (a.is_exact() && b.is_exact()) return Coeff(a.exact() / b.exact());
  return Coeff::approx(a.value() / b.value());
}

bool operator==(const Coeff& a, const Coeff& b) {
  if (a.is_exact() != b.is_exact()) return false;
  if (a.is_exact()) return a.exact() == b.exact();
  return a.value() == b.value();
}

std::string to_decimal_string(const Real& v) {
  std::ostringstream os;
  os.precision(std::numeric_limits<Real>::max_digits10);
  os << v;
  return os.str();
}

std::string Coeff::to_string() const {
  if (is_exact()) {
    const auto& g = exact();
    if (g.is_real()) return pkit::to_string(g.re);
    if (sgn(g.re) == 0) return pkit::to_string(g.im) + "*i";
    return "(" + pkit::to_string(g.re) + (sgn(g.im) > 0 ? "+" : "") +
           pkit::to_string(g.im) + "*i)";
  }
  std::ostringstream os;
  os.precision(20);
  Complex v = value();
  os << "(" << v.real() << (v.imag() < 0 ? "" : "+") << v.imag() << "*i)~";
  return os.str();
}

}  // namespace pkit
