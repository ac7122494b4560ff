#include "pkit/poly.hpp"

#include <limits>
#include <numeric>

#include "pkit/errors.hpp"

namespace pkit {

namespace {

constexpr std::int64_t kMaxRamification = std::int64_t{1} << 62;

// Numerator of r over the grid 1/n; r must lie on the grid.
std::int64_t on_grid(const Rat& r, std::int64_t n) {
  Rat scaled = r * n;
  PKIT_ASSERT(is_integer(scaled), "exponent off the ramification grid");
  if (!scaled.get_num().fits_slong_p())
    throw PreconditionError("exponent too large");
  return scaled.get_num().get_si();
}

std::int64_t den_of(const Rat& r) {
  if (!r.get_den().fits_slong_p()) throw PreconditionError("ramification too large");
  return r.get_den().get_si();
}

// Number of grid points k/n with k/n < bound (bound > 0).
std::int64_t grid_length(const Rat& bound, std::int64_t n) {
  if (sgn(bound) <= 0) return 0;
  Rat scaled = bound * n;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  if (!c.fits_slong_p()) throw PreconditionError("truncation order too large");
  return c.get_si();
}

using Dense = std::vector<Coeff>;

std::vector<std::size_t> nonzero_indices(const Dense& d) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) idx.push_back(i);
  return idx;
}

// Product truncated to `len` entries.
Dense dense_mul(const Dense& a, const Dense& b, std::size_t len) {
  Dense out(len);
  auto ia = nonzero_indices(a);
  auto ib = nonzero_indices(b);
  for (std::size_t i : ia) {
    if (i >= len) break;
    for (std::size_t j : ib) {
      if (i + j >= len) break;
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Complex complex_pow(const Complex& y, const Rat& b) {
  if (is_integer(b)) {
    Complex acc(1);
    long e = b.get_num().get_si();
    for (long i = 0; i < e; ++i) acc *= y;
    return acc;
  }
  if (y == Complex(0)) return Complex(0);
  return exp(log(y) * Complex(to_real(b)));
}

}  // namespace

std::int64_t common_ramification(std::int64_t a, std::int64_t b) {
  std::int64_t g = std::gcd(a, b);
  std::int64_t q = a / g;
  if (q != 0 && b > kMaxRamification / q)
    throw PreconditionError("ramification index exceeds 2^62");
  return q * b;
}

// ---------------------------------------------------------------------------
// PuiseuxPoly

PuiseuxPoly PuiseuxPoly::monomial(const Rat& a, const Rat& b, const Coeff& c) {
  PuiseuxPoly p;
  p.add_term(a, b, c);
  return p;
}

PuiseuxPoly PuiseuxPoly::from_terms(std::int64_t n, TermMap terms) {
  PuiseuxPoly p;
  p.n_ = n;
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void PuiseuxPoly::add_term(const Rat& a, const Rat& b, const Coeff& c) {
  if (sgn(a) < 0 || sgn(b) < 0) throw PreconditionError("negative exponent");
  if (c.is_zero()) return;
  std::int64_t n = common_ramification(common_ramification(n_, den_of(a)), den_of(b));
  if (n != n_) *this = with_ramification(n);
  Key key{on_grid(a, n_), on_grid(b, n_)};
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  normalize();
}

void PuiseuxPoly::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  if (terms_.empty()) {
    n_ = 1;
    return;
  }
  std::int64_t g = n_;
  for (const auto& [k, c] : terms_) g = std::gcd(g, std::gcd(k.first, k.second));
  if (g <= 1) return;
  TermMap reduced;
  for (auto& [k, c] : terms_) reduced.emplace(Key{k.first / g, k.second / g}, std::move(c));
  terms_ = std::move(reduced);
  n_ /= g;
}

Coeff PuiseuxPoly::coefficient(const Rat& a, const Rat& b) const {
  Rat sa = a * n_, sb = b * n_;
  if (!is_integer(sa) || !is_integer(sb)) return Coeff();
  auto it = terms_.find(Key{sa.get_num().get_si(), sb.get_num().get_si()});
  return it == terms_.end() ? Coeff() : it->second;
}

bool PuiseuxPoly::is_exact() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_exact()) return false;
  return true;
}

bool PuiseuxPoly::has_real_coefficients() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_real()) return false;
  return true;
}

bool PuiseuxPoly::has_integer_exponents() const { return n_ == 1; }

bool PuiseuxPoly::has_integer_y_exponents() const {
  for (const auto& [k, c] : terms_)
    if (k.second % n_ != 0) return false;
  return true;
}

Rat PuiseuxPoly::y_degree() const {
  PKIT_ASSERT(!terms_.empty(), "y_degree of zero polynomial");
  std::int64_t best = 0;
  for (const auto& [k, c] : terms_) best = std::max(best, k.second);
  return make_rat(best, n_);
}

Rat PuiseuxPoly::min_x_exponent() const {
  PKIT_ASSERT(!terms_.empty(), "min_x_exponent of zero polynomial");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [k, c] : terms_) best = std::min(best, k.first);
  return make_rat(best, n_);
}

Rat PuiseuxPoly::min_y_exponent() const {
  PKIT_ASSERT(!terms_.empty(), "min_y_exponent of zero polynomial");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& [k, c] : terms_) best = std::min(best, k.second);
  return make_rat(best, n_);
}

PuiseuxPoly PuiseuxPoly::with_ramification(std::int64_t n) const {
  PKIT_ASSERT(n % n_ == 0, "ramification must be a multiple of the current one");
  PuiseuxPoly out;
  out.n_ = n;
  std::int64_t s = n / n_;
  for (const auto& [k, c] : terms_) out.terms_.emplace(Key{k.first * s, k.second * s}, c);
  return out;
}

PuiseuxPoly PuiseuxPoly::truncated(const Rat& bound) const {
  PuiseuxPoly out;
  out.n_ = n_;
  for (const auto& [k, c] : terms_)
    if (x_exp(k) < bound) out.terms_.emplace(k, c);
  out.normalize();
  return out;
}

PuiseuxPoly PuiseuxPoly::transposed() const {
  PuiseuxPoly out;
  out.n_ = n_;
  for (const auto& [k, c] : terms_) out.terms_.emplace(Key{k.second, k.first}, c);
  return out;
}

PuiseuxPoly PuiseuxPoly::flipped_x() const {
  if (!transposed().has_integer_y_exponents())
    throw PreconditionError("x -> -x needs integer x exponents");
  PuiseuxPoly out = *this;
  for (auto& [k, c] : out.terms_)
    if ((k.first / n_) % 2 != 0) c = -c;
  return out;
}

PuiseuxPoly PuiseuxPoly::flipped_y() const {
  if (!has_integer_y_exponents()) throw PreconditionError("y -> -y needs integer y exponents");
  PuiseuxPoly out = *this;
  for (auto& [k, c] : out.terms_)
    if ((k.second / n_) % 2 != 0) c = -c;
  return out;
}

PuiseuxPoly PuiseuxPoly::divided_by_monomial(const Rat& a, const Rat& b) const {
  std::int64_t n = common_ramification(common_ramification(n_, den_of(a)), den_of(b));
  TermMap out;
  for (const auto& [k, c] : terms_) {
    Rat na = x_exp(k) - a, nb = y_exp(k) - b;
    if (sgn(na) < 0 || sgn(nb) < 0) throw PreconditionError("monomial does not divide polynomial");
    out.emplace(Key{on_grid(na, n), on_grid(nb, n)}, c);
  }
  return from_terms(n, std::move(out));
}

Complex PuiseuxPoly::evaluate(const Real& x, const Complex& y) const {
  Complex acc(0);
  for (const auto& [k, c] : terms_) {
    Real xa = k.first == 0 ? Real(1) : pow(x, to_real(x_exp(k)));
    acc += c.value() * Complex(xa) * complex_pow(y, y_exp(k));
  }
  return acc;
}

PuiseuxPoly PuiseuxPoly::operator-() const {
  PuiseuxPoly out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

PuiseuxPoly operator+(const PuiseuxPoly& f, const PuiseuxPoly& g) {
  std::int64_t n = common_ramification(f.n_, g.n_);
  PuiseuxPoly out = f.with_ramification(n);
  PuiseuxPoly gg = g.with_ramification(n);
  for (const auto& [k, c] : gg.terms_) {
    auto [it, inserted] = out.terms_.try_emplace(k, c);
    if (!inserted) it->second += c;
  }
  out.normalize();
  return out;
}

PuiseuxPoly operator-(const PuiseuxPoly& f, const PuiseuxPoly& g) { return f + (-g); }

PuiseuxPoly operator*(const PuiseuxPoly& f, const PuiseuxPoly& g) {
  std::int64_t n = common_ramification(f.n_, g.n_);
  PuiseuxPoly ff = f.with_ramification(n);
  PuiseuxPoly gg = g.with_ramification(n);
  PuiseuxPoly out;
  out.n_ = n;
  for (const auto& [k1, c1] : ff.terms_)
    for (const auto& [k2, c2] : gg.terms_) {
      PuiseuxPoly::Key k{k1.first + k2.first, k1.second + k2.second};
      auto [it, inserted] = out.terms_.try_emplace(k, c1 * c2);
      if (!inserted) it->second += c1 * c2;
    }
  out.normalize();
  return out;
}

PuiseuxPoly operator*(const Coeff& c, const PuiseuxPoly& f) {
  PuiseuxPoly out = f;
  for (auto& [k, v] : out.terms_) v = c * v;
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Series1

Series1 Series1::monomial(const Rat& a, const Coeff& c, const Rat& order) {
  Series1 s(order);
  s.add_term(a, c);
  return s;
}

void Series1::add_term(const Rat& a, const Coeff& c) {
  if (sgn(a) < 0) throw PreconditionError("negative exponent in series");
  if (a >= order_ || c.is_zero()) return;
  std::int64_t n = common_ramification(n_, den_of(a));
  if (n != n_) *this = with_ramification(n);
  auto key = on_grid(a, n_);
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) it->second += c;
  normalize();
}

void Series1::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.is_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
  if (terms_.empty()) {
    n_ = 1;
    return;
  }
  std::int64_t g = n_;
  for (const auto& [k, c] : terms_) g = std::gcd(g, k);
  if (g <= 1) return;
  TermMap reduced;
  for (auto& [k, c] : terms_) reduced.emplace(k / g, std::move(c));
  terms_ = std::move(reduced);
  n_ /= g;
}

Coeff Series1::coefficient(const Rat& a) const {
  Rat s = a * n_;
  if (!is_integer(s)) return Coeff();
  auto it = terms_.find(s.get_num().get_si());
  return it == terms_.end() ? Coeff() : it->second;
}

std::optional<Rat> Series1::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return exponent(terms_.begin()->first);
}

bool Series1::is_exact() const {
  for (const auto& [k, c] : terms_)
    if (!c.is_exact()) return false;
  return true;
}

Series1 Series1::with_ramification(std::int64_t n) const {
  PKIT_ASSERT(n % n_ == 0, "ramification must be a multiple of the current one");
  Series1 out(order_);
  out.n_ = n;
  std::int64_t s = n / n_;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k * s, c);
  return out;
}

Series1 Series1::truncated(const Rat& order) const {
  Series1 out(order);
  for (const auto& [k, c] : terms_) out.add_term(exponent(k), c);
  return out;
}

Series1 Series1::times_x_power(const Rat& m) const {
  Series1 out(order_ + m);
  for (const auto& [k, c] : terms_) out.add_term(exponent(k) + m, c);
  return out;
}

PuiseuxPoly Series1::as_poly() const {
  PuiseuxPoly p;
  for (const auto& [k, c] : terms_) p.add_term(exponent(k), 0, c);
  return p;
}

Complex Series1::evaluate(const Real& x) const {
  Complex acc(0);
  for (const auto& [k, c] : terms_) {
    Real xa = k == 0 ? Real(1) : pow(x, to_real(exponent(k)));
    acc += c.value() * Complex(xa);
  }
  return acc;
}

Series1 Series1::operator-() const {
  Series1 out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

Series1 operator+(const Series1& a, const Series1& b) {
  Series1 out(a.order_ < b.order_ ? a.order_ : b.order_);
  for (const auto& [k, c] : a.terms_) out.add_term(a.exponent(k), c);
  for (const auto& [k, c] : b.terms_) out.add_term(b.exponent(k), c);
  return out;
}

Series1 operator-(const Series1& a, const Series1& b) { return a + (-b); }

Series1 operator*(const Series1& a, const Series1& b) {
  Rat va = a.valuation().value_or(a.order_);
  Rat vb = b.valuation().value_or(b.order_);
  Rat order = a.order_ + vb;
  if (b.order_ + va < order) order = b.order_ + va;
  std::int64_t n = common_ramification(a.n_, b.n_);
  std::int64_t len = grid_length(order, n);
  Series1 aa = a.with_ramification(n), bb = b.with_ramification(n);
  std::map<std::int64_t, Coeff> acc;
  for (const auto& [i, ci] : aa.terms_)
    for (const auto& [j, cj] : bb.terms_) {
      if (i + j >= len) break;
      auto [it, inserted] = acc.try_emplace(i + j, ci * cj);
      if (!inserted) it->second += ci * cj;
    }
  Series1 out(order);
  out.n_ = n;
  out.terms_ = std::move(acc);
  out.normalize();
  return out;
}

Series1 operator*(const Coeff& c, const Series1& a) {
  Series1 out = a;
  for (auto& [k, v] : out.terms_) v = c * v;
  out.normalize();
  return out;
}

// ---------------------------------------------------------------------------
// Substitutions

PuiseuxPoly shift_y(const PuiseuxPoly& f, const Series1& a, const Rat& bound) {
  if (!f.has_integer_y_exponents())
    throw PreconditionError("shift_y needs integer y exponents");
  if (f.is_zero()) return f;
  std::int64_t n = common_ramification(f.ramification(), a.ramification());
  std::int64_t len = grid_length(bound, n);
  if (len == 0) return PuiseuxPoly();
  PuiseuxPoly ff = f.with_ramification(n);
  long deg = f.y_degree().get_num().get_si();

  // Columns of f by y degree, and a as a dense vector on the common grid.
  std::vector<Dense> cols(deg + 1, Dense(len));
  for (const auto& [k, c] : ff.terms())
    if (k.first < len) cols[k.second / n][k.first] = c;
  Dense av(len);
  Series1 an = a.with_ramification(n);
  for (const auto& [k, c] : an.terms())
    if (k < len) av[k] = c;

  std::vector<Dense> powers{Dense(len)};
  powers[0][0] = Coeff(1);
  for (long j = 1; j <= deg; ++j) powers.push_back(dense_mul(powers.back(), av, len));

  // (y + a)^b = sum_j C(b, j) y^j a^(b - j)
  std::vector<Dense> out(deg + 1, Dense(len));
  for (long b = 0; b <= deg; ++b) {
    auto nz = nonzero_indices(cols[b]);
    if (nz.empty()) continue;
    mpz_class binom = 1;
    for (long j = b; j >= 0; --j) {
      // binom == C(b, j) here
      Coeff scale{Rat(binom)};
      const Dense& pw = powers[b - j];
      for (std::size_t i : nz) {
        Coeff ci = scale * cols[b][i];
        for (std::size_t t = 0; i + t < static_cast<std::size_t>(len); ++t) {
          if (pw[t].is_zero()) continue;
          out[j][i + t] += ci * pw[t];
        }
      }
      if (j > 0) binom = binom * j / (b - j + 1);
    }
  }

  PuiseuxPoly::TermMap result;
  for (long j = 0; j <= deg; ++j)
    for (std::int64_t i = 0; i < len; ++i)
      if (!out[j][i].is_zero()) result.emplace(PuiseuxPoly::Key{i, j * n}, std::move(out[j][i]));
  return PuiseuxPoly::from_terms(n, std::move(result));
}

PuiseuxPoly scale_substitute(const PuiseuxPoly& h, const Rat& m, const Rat& alpha) {
  // m*b lives on the grid 1/(N * den(m)).
  std::int64_t n = common_ramification(h.ramification() * den_of(m), den_of(alpha));
  PuiseuxPoly::TermMap out;
  for (const auto& [k, c] : h.terms()) {
    Rat a = h.x_exp(k), b = h.y_exp(k);
    Rat shifted = a + m * b - alpha;
    if (sgn(shifted) < 0)
      throw PreconditionError("x + " + to_string(m) + "y = " + to_string(alpha) +
                              " is not a supporting line: term x^" + to_string(a) +
                              " y^" + to_string(b) + " lies below it");
    out.emplace(PuiseuxPoly::Key{on_grid(shifted, n), on_grid(b, n)}, c);
  }
  return PuiseuxPoly::from_terms(n, std::move(out));
}

PuiseuxPoly partial_y(const PuiseuxPoly& f, int order) {
  if (order < 0) throw PreconditionError("negative derivative order");
  if (!f.has_integer_y_exponents())
    throw PreconditionError("partial_y needs integer y exponents");
  if (order == 0) return f;
  std::int64_t n = f.ramification();
  PuiseuxPoly::TermMap out;
  for (const auto& [k, c] : f.terms()) {
    long b = f.y_exp(k).get_num().get_si();
    if (b < order) continue;
    mpz_class falling = 1;
    for (long i = 0; i < order; ++i) falling *= (b - i);
    out.emplace(PuiseuxPoly::Key{k.first, (b - order) * n}, Coeff(Rat(falling)) * c);
  }
  return PuiseuxPoly::from_terms(n, std::move(out));
}

PuiseuxPoly substitute_y(const PuiseuxPoly& f, const Series1& g,
                         const std::optional<Rat>& bound) {
  if (!f.has_integer_y_exponents())
    throw PreconditionError("substitute_y needs integer y exponents");
  if (f.is_zero()) return f;
  // Treat g as an exact polynomial: lift its truncation order far enough
  // that products never discard anything below `bound`.
  Rat big = 0;
  for (const auto& [k, c] : g.terms()) big = std::max(big, g.exponent(k));
  long deg = f.y_degree().get_num().get_si();
  Rat fmax = 0;
  for (const auto& [k, c] : f.terms()) fmax = std::max(fmax, f.x_exp(k));
  Rat order = bound.value_or(fmax + big * deg + 1);
  Series1 gp(order);
  for (const auto& [k, c] : g.terms()) gp.add_term(g.exponent(k), c);

  std::vector<Series1> powers{Series1::monomial(0, Coeff(1), order)};
  for (long j = 1; j <= deg; ++j) powers.push_back(powers.back() * gp);

  std::int64_t n = common_ramification(f.ramification(), gp.ramification());
  std::map<std::int64_t, Coeff> acc;
  for (const auto& [k, c] : f.terms()) {
    long b = f.y_exp(k).get_num().get_si();
    Rat a = f.x_exp(k);
    for (const auto& [t, ct] : powers[b].terms()) {
      Rat e = a + powers[b].exponent(t);
      if (bound && e >= *bound) continue;
      auto [it, inserted] = acc.try_emplace(on_grid(e, n), c * ct);
      if (!inserted) it->second += c * ct;
    }
  }
  PuiseuxPoly::TermMap out;
  for (auto& [e, c] : acc) out.emplace(PuiseuxPoly::Key{e, 0}, std::move(c));
  return PuiseuxPoly::from_terms(n, std::move(out));
}

}  // namespace pkit
