#include "pkit/parse.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pkit/errors.hpp"

namespace pkit {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  PuiseuxPoly parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    PuiseuxPoly out = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_), pos_);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == 'x' || c == 'y' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  PuiseuxPoly expr() {
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    PuiseuxPoly acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  PuiseuxPoly term() {
    if (!at_atom()) fail("expected a term");
    PuiseuxPoly acc = factor();
    while (true) {
      if (accept('*')) {
        if (!at_atom()) fail("expected a factor after '*'");
        acc = acc * factor();
      } else if (at_atom()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  PuiseuxPoly factor() {
    std::size_t start = pos_;
    PuiseuxPoly base = atom();
    if (!accept('^')) return base;
    std::size_t at = pos_;
    Rat e = exponent();
    if (is_integer(e)) {
      if (e > 4096) {
        pos_ = at;
        fail("exponent too large");
      }
      PuiseuxPoly out = PuiseuxPoly::constant(1);
      for (long i = 0; i < e.get_num().get_si(); ++i) out = out * base;
      return out;
    }
    if (base.size() != 1 || !(base.terms().begin()->second == Coeff(1))) {
      pos_ = start;
      fail("fractional exponent needs a bare monomial base");
    }
    const auto& [k, c] = *base.terms().begin();
    return PuiseuxPoly::monomial(base.x_exp(k) * e, base.y_exp(k) * e, 1);
  }

  PuiseuxPoly atom() {
    skip();
    if (accept('x')) return PuiseuxPoly::monomial(1, 0, 1);
    if (accept('y')) return PuiseuxPoly::monomial(0, 1, 1);
    if (accept('(')) {
      PuiseuxPoly inner = expr();
      expect(')');
      return inner;
    }
    return PuiseuxPoly::constant(rational());
  }

  mpz_class integer() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    return mpz_class(std::string(s_.substr(start, pos_ - start)));
  }

  Rat rational() {
    mpz_class num = integer();
    if (!peek('/')) return Rat(num);
    ++pos_;
    std::size_t at = pos_;
    mpz_class den = integer();
    if (den == 0) {
      pos_ = at;
      fail("division by zero");
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  Rat exponent() {
    skip();
    if (peek('-')) fail("negative exponents are not allowed");
    if (!accept('(')) return Rat(integer());
    if (peek('-')) fail("negative exponents are not allowed");
    mpz_class num = integer();
    expect('/');
    if (peek('-')) fail("negative exponents are not allowed");
    std::size_t at = pos_;
    mpz_class den = integer();
    if (den == 0) {
      pos_ = at;
      fail("division by zero");
    }
    expect(')');
    Rat r(num, den);
    r.canonicalize();
    return r;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string power(const char* var, const Rat& e) {
  if (sgn(e) == 0) return "";
  if (e == 1) return var;
  if (is_integer(e)) return std::string(var) + "^" + to_string(e);
  return std::string(var) + "^(" + to_string(e) + ")";
}

}  // namespace

PuiseuxPoly parse_expression(std::string_view text) { return Parser(text).parse(); }

std::string to_expression(const PuiseuxPoly& f) {
  if (f.is_zero()) return "0";
  std::vector<PuiseuxPoly::Key> keys;
  for (const auto& [k, c] : f.terms()) keys.push_back(k);
  std::sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& k : keys) {
    const Coeff& c = f.terms().at(k);
    std::string mono;
    for (const auto& part : {power("x", f.x_exp(k)), power("y", f.y_exp(k))}) {
      if (part.empty()) continue;
      if (!mono.empty()) mono += "*";
      mono += part;
    }
    std::string coeff;
    bool negative = false;
    if (c.is_exact() && c.exact().is_real()) {
      Rat v = c.exact().re;
      negative = sgn(v) < 0;
      if (negative) v = -v;
      if (v != 1 || mono.empty()) coeff = to_string(v);
    } else {
      coeff = c.to_string();
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    os << coeff;
    if (!coeff.empty() && !mono.empty()) os << "*";
    os << mono;
  }
  return os.str();
}

}  // namespace pkit
