#include "pkit/upoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pkit/errors.hpp"

namespace pkit {

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::from_ints(std::initializer_list<long> coeffs) {
  std::vector<Coeff> c;
  for (long v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool UPoly::is_exact() const {
  return std::all_of(c_.begin(), c_.end(), [](const Coeff& c) { return c.is_exact(); });
}

bool UPoly::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](const Coeff& c) { return c.is_real(); });
}

Complex UPoly::evaluate(const Complex& z) const {
  Complex acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->value();
  return acc;
}

GaussRat UPoly::evaluate_exact(const GaussRat& z) const {
  GaussRat acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + it->exact();
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Coeff> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(Coeff(static_cast<long>(i)) * c_[i]);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Coeff> c;
  for (const auto& v : c_) c.push_back(v / leading());
  return UPoly(std::move(c));
}

UPoly UPoly::real_part() const {
  std::vector<Coeff> c;
  for (const auto& v : c_) c.emplace_back(v.exact().re);
  return UPoly(std::move(c));
}

UPoly UPoly::imag_part() const {
  std::vector<Coeff> c;
  for (const auto& v : c_) c.emplace_back(v.exact().im);
  return UPoly(std::move(c));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Coeff> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Coeff> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Coeff> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(c));
}

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[i].to_string();
    if (i > 0) os << "*" << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  if (!a.is_exact() || !b.is_exact()) throw PreconditionError("divmod needs exact coefficients");
  std::vector<Coeff> rem = a.coeffs();
  int db = b.degree();
  std::vector<Coeff> quot(std::max(0, a.degree() - db + 1));
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i].is_zero()) continue;
    Coeff q = rem[i] / b.leading();
    quot[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeffs()[j];
  }
  rem.resize(std::max(0, db));
  return {UPoly(std::move(quot)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& p) {
  if (p.is_zero()) throw PreconditionError("square-free decomposition of zero");
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() == 0) return out;
  UPoly dp = p.derivative();
  UPoly a = gcd(p, dp);
  UPoly b = divmod(p, a).first;
  UPoly c = divmod(dp, a).first;
  UPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    UPoly g = gcd(b, d);
    b = divmod(b, g).first;
    c = divmod(d, g).first;
    d = c - b.derivative();
    if (g.degree() > 0) out.emplace_back(g.monic(), i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numeric roots

namespace {

// Aberth-Ehrlich simultaneous iteration. coeffs low -> high, leading nonzero.
std::vector<Complex> aberth(const std::vector<Complex>& coeffs) {
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n <= 0) return {};
  if (n == 1) return {-coeffs[0] / coeffs[1]};

  Real radius = 0;
  for (int i = 0; i < n; ++i) {
    Real ratio = abs(coeffs[i] / coeffs[n]);
    if (ratio > 0) radius = std::max<Real>(radius, pow(ratio, Real(1) / Real(n - i)));
  }
  radius = 2 * radius + Real("1e-3");

  std::vector<Complex> z(n);
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  for (int k = 0; k < n; ++k) {
    Real theta = two_pi * k / n + Real("0.4");
    z[k] = Complex(radius * cos(theta), radius * sin(theta));
  }

  auto eval = [&](const Complex& x, Complex& p, Complex& dp) {
    p = coeffs[n];
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + coeffs[i];
    }
  };

  const Real stop("1e-95");
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < 5000; ++iter) {
    bool all_done = true;
    for (int k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      eval(z[k], p, dp);
      if (p == Complex(0)) {
        done[k] = true;
        continue;
      }
      Complex ratio = p / dp;
      Complex sum(0);
      for (int j = 0; j < n; ++j)
        if (j != k && z[k] != z[j]) sum += Complex(1) / (z[k] - z[j]);
      Complex step = ratio / (Complex(1) - ratio * sum);
      z[k] -= step;
      if (abs(step) <= stop * std::max<Real>(Real(1), abs(z[k])))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) break;
  }
  return z;
}

Real floor_real(const Real& x) { return floor(x); }

mpz_class to_mpz(const Real& integral) {
  std::string s = integral.str(0, std::ios_base::fixed);
  auto dot = s.find('.');
  if (dot != std::string::npos) s.erase(dot);
  return mpz_class(s);
}

// Best rational approximation with denominator <= 10^15, if it lies within
// 1e-60 of x.
std::optional<Rat> reconstruct_rational(const Real& x) {
  const mpz_class max_den("1000000000000000");
  mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  Real r = x;
  for (int iter = 0; iter < 80; ++iter) {
    Real fl = floor_real(r);
    mpz_class a = to_mpz(fl);
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    Rat cand(h1, k1);
    cand.canonicalize();
    if (abs(to_real(cand) - x) < Real("1e-60")) return cand;
    Real frac = r - fl;
    if (frac == 0) break;
    r = 1 / frac;
  }
  return std::nullopt;
}

std::vector<Complex> complex_coeffs(const UPoly& p) {
  std::vector<Complex> c;
  for (const auto& v : p.coeffs()) c.push_back(v.value());
  return c;
}

bool less_complex(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Strips the factor z^k; returns k.
int strip_zero_roots(UPoly& p) {
  int k = 0;
  while (k <= p.degree() && p.coeffs()[k].is_zero()) ++k;
  if (k > 0) p = UPoly(std::vector<Coeff>(p.coeffs().begin() + k, p.coeffs().end()));
  return k;
}

// --- Sturm sequences over Q -------------------------------------------------

using RatPoly = std::vector<Rat>;  // low -> high, trimmed

void trim(RatPoly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

RatPoly to_rat_poly(const UPoly& p) {
  RatPoly r;
  for (const auto& c : p.coeffs()) r.push_back(c.exact().re);
  trim(r);
  return r;
}

RatPoly rat_derivative(const RatPoly& p) {
  RatPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

RatPoly rat_rem(RatPoly a, const RatPoly& b) {
  while (a.size() >= b.size() && !a.empty()) {
    Rat q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= q * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

Rat rat_eval(const RatPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

struct Sturm {
  std::vector<RatPoly> seq;

  explicit Sturm(const RatPoly& p) {
    seq.push_back(p);
    seq.push_back(rat_derivative(p));
    while (!seq.back().empty()) {
      RatPoly r = rat_rem(seq[seq.size() - 2], seq.back());
      for (auto& c : r) c = -c;
      if (r.empty()) break;
      seq.push_back(std::move(r));
    }
    if (seq.back().empty()) seq.pop_back();
  }

  int variations(const Rat& x) const {
    int count = 0, last = 0;
    for (const auto& p : seq) {
      int s = sgn(rat_eval(p, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  // Distinct roots in (lo, hi].
  int count(const Rat& lo, const Rat& hi) const { return variations(lo) - variations(hi); }
};

Rat cauchy_bound(const RatPoly& p) {
  Rat best = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) best = std::max(best, Rat(abs(p[i] / p.back())));
  return best + 1;
}

void isolate(const Sturm& s, const RatPoly& p, Rat lo, Rat hi, const Rat& width, int mult,
             std::vector<RealRoot>& out) {
  int n = s.count(lo, hi);
  if (n == 0) return;
  if (n > 1) {
    Rat mid = (lo + hi) / 2;
    isolate(s, p, lo, mid, width, mult, out);
    isolate(s, p, mid, hi, width, mult, out);
    return;
  }
  while (true) {
    if (sgn(rat_eval(p, hi)) == 0) {
      out.push_back({hi, hi, Coeff(hi), mult, true});
      return;
    }
    if (hi - lo <= width) break;
    Rat mid = (lo + hi) / 2;
    if (s.count(lo, mid) == 1)
      hi = mid;
    else
      lo = mid;
  }
  Rat q = simplest_rational_between(lo, hi);
  if (sgn(rat_eval(p, q)) == 0) {
    out.push_back({q, q, Coeff(q), mult, true});
    return;
  }
  // Polish to working precision; the isolating interval keeps Newton on the
  // simple root of this square-free factor.
  Real x = to_real((lo + hi) / 2);
  const Real rlo = to_real(lo), rhi = to_real(hi);
  for (int iter = 0; iter < 8; ++iter) {
    Real v = 0, dv = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
      dv = dv * x + v;
      v = v * x + to_real(*it);
    }
    if (v == 0 || dv == 0) break;
    Real next = x - v / dv;
    if (next < rlo || next > rhi) break;
    x = next;
  }
  out.push_back({lo, hi, Coeff::approx(Complex(x)), mult, false});
}

void real_roots_exact_rational(const RatPoly& f, int mult, const Rat& width,
                               std::vector<RealRoot>& out) {
  if (f.size() < 2) return;
  Sturm s(f);
  Rat b = cauchy_bound(f);
  isolate(s, f, -b, b, width, mult, out);
}

Rat rat_from_real(const Real& v) {
  // Exact binary value of v as a rational.
  std::string s = v.str(0, std::ios_base::scientific);
  auto e = s.find('e');
  std::string mant = s.substr(0, e);
  long exp10 = std::stol(s.substr(e + 1));
  auto dot = mant.find('.');
  long frac_digits = 0;
  if (dot != std::string::npos) {
    frac_digits = static_cast<long>(mant.size() - dot - 1);
    mant.erase(dot, 1);
  }
  mpz_class num(mant);
  long shift = exp10 - frac_digits;
  mpz_class ten = 10, pw;
  mpz_pow_ui(pw.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(shift)));
  Rat r = shift >= 0 ? Rat(num * pw) : Rat(num, pw);
  r.canonicalize();
  return r;
}

}  // namespace

Rat simplest_rational_between(const Rat& lo_in, const Rat& hi_in) {
  Rat lo = lo_in, hi = hi_in;
  if (lo > hi) std::swap(lo, hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return 0;
  bool neg = sgn(hi) < 0;
  if (neg) {
    Rat t = -lo;
    lo = -hi;
    hi = t;
  }
  // Stern-Brocot descent via continued fractions.
  std::vector<mpz_class> cf;
  Rat a = lo, b = hi;
  while (true) {
    Rat fa = floor_rat(a);
    if (fa == a) {  // a integer and in range
      cf.push_back(fa.get_num());
      break;
    }
    Rat fb = floor_rat(b);
    if (fa < fb) {
      cf.push_back(fa.get_num() + 1);
      break;
    }
    cf.push_back(fa.get_num());
    Rat na = 1 / (b - fb), nb = 1 / (a - fa);
    a = na;
    b = nb;
  }
  Rat r = cf.back();
  for (int i = static_cast<int>(cf.size()) - 2; i >= 0; --i) r = Rat(cf[i]) + 1 / r;
  r.canonicalize();
  return neg ? Rat(-r) : r;
}

std::vector<Root> complex_roots_with_multiplicity(const UPoly& p_in, const RootOptions& opt) {
  if (p_in.is_zero()) throw PreconditionError("roots of the zero polynomial");
  UPoly p = p_in;
  std::vector<Root> out;
  int zeros = strip_zero_roots(p);
  if (zeros > 0) out.push_back({Coeff(), zeros, true});

  if (p.is_exact()) {
    for (auto& [factor, mult] : square_free_decomposition(p)) {
      for (const auto& z : aberth(complex_coeffs(factor))) {
        auto re = reconstruct_rational(z.real());
        auto im = reconstruct_rational(z.imag());
        if (re && im) {
          GaussRat g(*re, *im);
          if (factor.evaluate_exact(g).is_zero()) {
            out.push_back({Coeff(g), mult, true});
            continue;
          }
        }
        out.push_back({Coeff::approx(z), mult, false});
      }
    }
  } else {
    auto z = aberth(complex_coeffs(p));
    std::vector<int> cluster(z.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (cluster[i] >= 0) continue;
      cluster[i] = next;
      // Grow the cluster transitively.
      for (bool grew = true; grew;) {
        grew = false;
        for (std::size_t j = 0; j < z.size(); ++j) {
          if (cluster[j] >= 0) continue;
          for (std::size_t k = 0; k < z.size(); ++k) {
            if (cluster[k] != next) continue;
            Real scale = std::max<Real>(Real(1), abs(z[k]));
            if (abs(z[j] - z[k]) <= Real(opt.cluster_tolerance) * scale) {
              cluster[j] = next;
              grew = true;
              break;
            }
          }
        }
      }
      ++next;
    }
    for (int c = 0; c < next; ++c) {
      Complex sum(0);
      int count = 0;
      for (std::size_t i = 0; i < z.size(); ++i)
        if (cluster[i] == c) {
          sum += z[i];
          ++count;
        }
      out.push_back({Coeff::approx(sum / Complex(count)), count, false});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Root& a, const Root& b) { return less_complex(a.value.value(), b.value.value()); });
  return out;
}

std::vector<RealRoot> real_roots_with_multiplicity(const UPoly& p_in, const RootOptions& opt) {
  if (p_in.is_zero()) throw PreconditionError("roots of the zero polynomial");
  std::vector<RealRoot> out;
  if (p_in.is_exact()) {
    for (auto& [factor, mult] : square_free_decomposition(p_in)) {
      UPoly real_factor = factor;
      bool real_coeffs = std::all_of(factor.coeffs().begin(), factor.coeffs().end(),
                                     [](const Coeff& c) { return c.exact().is_real(); });
      // A real root of a Gaussian polynomial is a root of gcd(Re F, Im F).
      if (!real_coeffs) real_factor = gcd(factor.real_part(), factor.imag_part());
      if (real_factor.degree() < 1) continue;
      real_roots_exact_rational(to_rat_poly(real_factor), mult, opt.interval_width, out);
    }
  } else {
    const Real real_tol("1e-20");
    for (const auto& r : complex_roots_with_multiplicity(p_in, opt)) {
      Complex z = r.value.value();
      if (abs(z.imag()) > real_tol * std::max<Real>(Real(1), abs(z))) continue;
      Rat center = rat_from_real(z.real());
      Rat half = opt.interval_width / 2;
      out.push_back({center - half, center + half, Coeff::approx(Complex(z.real())),
                     r.multiplicity, r.exact});
    }
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& a, const RealRoot& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace pkit
