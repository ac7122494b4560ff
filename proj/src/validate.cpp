#include "pkit/validate.hpp"

#include <algorithm>
#include <atomic>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <thread>

#include "pkit/errors.hpp"

namespace pkit {

namespace {

using cd = std::complex<double>;

struct Term {
  int a;
  int b;
  double c;
};

std::vector<Term> real_terms(const PuiseuxPoly& s) {
  if (s.is_zero()) throw PreconditionError("numeric validation of the zero polynomial");
  if (!s.has_integer_exponents()) throw PreconditionError("numeric validation needs integer exponents");
  if (!s.has_real_coefficients()) throw PreconditionError("numeric validation needs real coefficients");
  std::vector<Term> out;
  for (const auto& [k, c] : s.terms())
    out.push_back({static_cast<int>(k.first / s.ramification()), static_cast<int>(k.second / s.ramification()),
                   static_cast<double>(c.value().real())});
  return out;
}

struct Iv {
  double lo;
  double hi;
};

Iv operator+(Iv a, Iv b) { return {a.lo + b.lo, a.hi + b.hi}; }

Iv operator*(Iv a, Iv b) {
  double p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

Iv scale(double c, Iv a) { return c >= 0 ? Iv{c * a.lo, c * a.hi} : Iv{c * a.hi, c * a.lo}; }

Iv ipow(Iv a, int n) {
  if (n == 0) return {1, 1};
  double l = std::pow(a.lo, n), h = std::pow(a.hi, n);
  if (n % 2 == 1) return {l, h};
  if (a.lo <= 0 && a.hi >= 0) return {0, std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

double min_square(Iv a) {
  if (a.lo <= 0 && a.hi >= 0) return 0;
  return std::min(a.lo * a.lo, a.hi * a.hi);
}

double max_square(Iv a) { return std::max(a.lo * a.lo, a.hi * a.hi); }

// S with its first and second derivatives.
class Phase {
 public:
  explicit Phase(std::vector<Term> terms) : t_(std::move(terms)) {
    for (const auto& t : t_) {
      dx_ = std::max(dx_, t.a);
      dy_ = std::max(dy_, t.b);
    }
  }

  // s, (sx, sy), (sxx, sxy, syy)
  void jet(double x, double y, double& s, double g[2], double h[3]) const {
    double px[kMaxDeg + 1], py[kMaxDeg + 1];
    powers(x, dx_, px);
    powers(y, dy_, py);
    s = g[0] = g[1] = h[0] = h[1] = h[2] = 0;
    for (const auto& t : t_) {
      const int a = t.a, b = t.b;
      s += t.c * px[a] * py[b];
      if (a >= 1) g[0] += t.c * a * px[a - 1] * py[b];
      if (b >= 1) g[1] += t.c * b * px[a] * py[b - 1];
      if (a >= 2) h[0] += t.c * a * (a - 1) * px[a - 2] * py[b];
      if (a >= 1 && b >= 1) h[1] += t.c * a * b * px[a - 1] * py[b - 1];
      if (b >= 2) h[2] += t.c * b * (b - 1) * px[a] * py[b - 2];
    }
  }

  cd value(cd x, cd y) const {
    cd px[kMaxDeg + 1], py[kMaxDeg + 1];
    px[0] = py[0] = 1;
    for (int i = 1; i <= dx_; ++i) px[i] = px[i - 1] * x;
    for (int i = 1; i <= dy_; ++i) py[i] = py[i - 1] * y;
    cd s = 0;
    for (const auto& t : t_) s += t.c * px[t.a] * py[t.b];
    return s;
  }

  void grad_bounds(Iv x, Iv y, Iv& gx, Iv& gy) const {
    gx = gy = {0, 0};
    for (const auto& t : t_) {
      if (t.a >= 1) gx = gx + scale(t.c * t.a, ipow(x, t.a - 1) * ipow(y, t.b));
      if (t.b >= 1) gy = gy + scale(t.c * t.b, ipow(x, t.a) * ipow(y, t.b - 1));
    }
  }

  static constexpr int kMaxDeg = 64;

 private:
  static void powers(double v, int n, double* out) {
    out[0] = 1;
    for (int i = 1; i <= n; ++i) out[i] = out[i - 1] * v;
  }

  std::vector<Term> t_;
  int dx_ = 0;
  int dy_ = 0;
};

void check_degree(const std::vector<Term>& terms) {
  for (const auto& t : terms)
    if (t.a > Phase::kMaxDeg || t.b > Phase::kMaxDeg)
      throw PreconditionError("numeric validation supports degrees up to 64");
}

// exp(i lambda S) phi on the chain X -> X + i eta(X), eta = tau psi grad S,
// psi = (1 - r^2/rho^2)^2. The integrand is holomorphic in the support and
// eta vanishes on its boundary, so the integral is unchanged while
// Im S >= 0 damps everything away from the critical set of S.
class DeformedIntegrand {
 public:
  DeformedIntegrand(const Phase& s, double lambda, double rho, double tau)
      : s_(s), lambda_(lambda), rho2_(rho * rho), tau_(tau) {}

  cd operator()(double x, double y) const {
    const double r2 = x * x + y * y;
    if (r2 >= rho2_) return 0;
    const double u = 1 - r2 / rho2_;
    const double psi = u * u;
    const double dpsi[2] = {-4 * u * x / rho2_, -4 * u * y / rho2_};
    double sv, g[2], h[3];
    s_.jet(x, y, sv, g, h);
    const double eta[2] = {tau_ * psi * g[0], tau_ * psi * g[1]};
    const double d11 = tau_ * (dpsi[0] * g[0] + psi * h[0]);
    const double d12 = tau_ * (dpsi[1] * g[0] + psi * h[1]);
    const double d21 = tau_ * (dpsi[0] * g[1] + psi * h[1]);
    const double d22 = tau_ * (dpsi[1] * g[1] + psi * h[2]);
    const cd det = cd(1 - d11 * d22 + d12 * d21, d11 + d22);
    const cd z1(x, eta[0]), z2(y, eta[1]);
    const cd w = (z1 * z1 + z2 * z2) / rho2_;
    const cd bump = std::exp(1.0 - 1.0 / (1.0 - w));
    const cd phase = std::exp(cd(0, lambda_) * s_.value(z1, z2));
    return phase * bump * det;
  }

  // Bounds on the damping exponent lambda tau psi |grad S|^2 over a box.
  void damping_bounds(double cx, double cy, double h, double& lo, double& hi) const {
    Iv xi{cx - h, cx + h}, yi{cy - h, cy + h};
    Iv gx, gy;
    s_.grad_bounds(xi, yi, gx, gy);
    const double near2 = min_square(xi) + min_square(yi);
    const double far2 = max_square(xi) + max_square(yi);
    auto psi_at = [&](double r2) {
      double u = std::max(0.0, 1 - r2 / rho2_);
      return u * u;
    };
    lo = lambda_ * tau_ * psi_at(far2) * (min_square(gx) + min_square(gy));
    hi = lambda_ * tau_ * psi_at(near2) * (max_square(gx) + max_square(gy));
  }

  bool outside(double cx, double cy, double h) const {
    Iv xi{cx - h, cx + h}, yi{cy - h, cy + h};
    return min_square(xi) + min_square(yi) >= rho2_;
  }

 private:
  const Phase& s_;
  double lambda_;
  double rho2_;
  double tau_;
};

struct Cell {
  double cx;
  double cy;
  double h;
  cd kronrod;
  double error;
  friend bool operator<(const Cell& a, const Cell& b) { return a.error < b.error; }
};

// Tensor Gauss-Kronrod 7/15 on a square cell.
void evaluate_cell(const DeformedIntegrand& f, Cell& c) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  static const auto nodes = [] {
    std::vector<std::pair<double, double>> n;  // (abscissa, kronrod weight)
    const auto& a = GK::abscissa();
    const auto& w = GK::weights();
    for (std::size_t i = a.size(); i-- > 1;) n.emplace_back(-a[i], w[i]);
    for (std::size_t i = 0; i < a.size(); ++i) n.emplace_back(a[i], w[i]);
    return n;
  }();
  // Gauss-Legendre 7 weights at the Kronrod nodes with even index from 0.
  static const double gauss_w[4] = {0.4179591836734694, 0.38183005050511892, 0.27970539148927664,
                                    0.1294849661688697};
  auto gauss_weight = [](std::size_t i) {
    int k = static_cast<int>(i) - 7;
    int a = std::abs(k);
    return a % 2 == 0 ? gauss_w[a / 2] : 0.0;
  };
  cd k = 0, g = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = c.cx + c.h * nodes[i].first;
    const double gi = gauss_weight(i);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const cd v = f(x, c.cy + c.h * nodes[j].first);
      k += nodes[i].second * nodes[j].second * v;
      const double gj = gauss_weight(j);
      if (gi != 0 && gj != 0) g += gi * gj * v;
    }
  }
  c.kronrod = k * c.h * c.h;
  c.error = std::abs(k - g) * c.h * c.h;
}

double max_gradient(const Phase& s, double rho) {
  double best = 0;
  const int n = 64;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      double x = rho * (2.0 * i / n - 1), y = rho * (2.0 * j / n - 1);
      if (x * x + y * y > rho * rho) continue;
      double sv, g[2], h[3];
      s.jet(x, y, sv, g, h);
      best = std::max(best, std::hypot(g[0], g[1]));
    }
  return best;
}

DecaySample integrate(const Phase& s, double lambda, const DecayOptions& opt) {
  const double gmax = max_gradient(s, opt.rho);
  const double tau = gmax > 0 ? 0.1 * opt.rho / gmax : 0.0;
  DeformedIntegrand f(s, lambda, opt.rho, tau);
  // Cells where the damping exponent provably exceeds this are dropped;
  // leaves must have a damping range of at most kSpread.
  constexpr double kNegligible = 40;
  constexpr double kSpread = 24;

  DecaySample out{lambda, 0, 0, 0, 0, true, 0};
  std::vector<Cell> stack{{0, 0, opt.rho, 0, 0}};
  std::vector<Cell> leaves;
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    if (f.outside(c.cx, c.cy, c.h)) continue;
    double lo, hi;
    f.damping_bounds(c.cx, c.cy, c.h, lo, hi);
    if (lo > kNegligible) continue;
    if (hi - lo > kSpread && c.h > 1e-9) {
      const double q = c.h / 2;
      for (int dx : {-1, 1})
        for (int dy : {-1, 1}) stack.push_back({c.cx + dx * q, c.cy + dy * q, q, 0, 0});
      if (stack.size() + leaves.size() > opt.max_cells) {
        out.converged = false;
        return out;
      }
      continue;
    }
    leaves.push_back(c);
  }

  std::priority_queue<Cell> queue;
  cd total = 0;
  double err = 0;
  for (auto& c : leaves) {
    evaluate_cell(f, c);
    total += c.kronrod;
    err += c.error;
    queue.push(c);
  }
  std::size_t cells = leaves.size();
  while (!queue.empty() && err > opt.rel_tol * std::abs(total)) {
    if (cells + 3 > opt.max_cells) {
      out.converged = false;
      break;
    }
    Cell c = queue.top();
    queue.pop();
    total -= c.kronrod;
    err -= c.error;
    const double q = c.h / 2;
    for (int dx : {-1, 1})
      for (int dy : {-1, 1}) {
        Cell child{c.cx + dx * q, c.cy + dy * q, q, 0, 0};
        evaluate_cell(f, child);
        total += child.kronrod;
        err += child.error;
        queue.push(child);
      }
    cells += 3;
  }
  // Re-sum in a fixed order to shed the drift of the running totals.
  std::vector<Cell> final_cells;
  while (!queue.empty()) {
    final_cells.push_back(queue.top());
    queue.pop();
  }
  std::sort(final_cells.begin(), final_cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.cx, a.cy, a.h) < std::tie(b.cx, b.cy, b.h);
  });
  total = 0;
  err = 0;
  for (const auto& c : final_cells) {
    total += c.kronrod;
    err += c.error;
  }
  out.re = total.real();
  out.im = total.imag();
  out.magnitude = std::abs(total);
  out.error = err;
  out.cells = cells;
  if (!(out.magnitude > 0) || !std::isfinite(out.magnitude)) out.converged = false;
  return out;
}

using ld = long double;
using cld = std::complex<long double>;

// Roots of a polynomial (low -> high) by Aberth iteration.
std::vector<cld> roots_of(std::vector<ld> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  ld radius = 0;
  for (int i = 0; i < n; ++i)
    if (c[i] != 0) radius = std::max(radius, std::pow(std::fabs(c[i] / c[n]), 1.0L / (n - i)));
  radius = 2 * radius + 1e-3L;
  std::vector<cld> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(radius, 2 * 3.14159265358979323846L * k / n + 0.4L);
  for (int iter = 0; iter < 500; ++iter) {
    ld worst = 0;
    for (int k = 0; k < n; ++k) {
      cld p = c[n], dp = 0;
      for (int i = n - 1; i >= 0; --i) {
        dp = dp * z[k] + p;
        p = p * z[k] + c[i];
      }
      if (p == cld(0)) continue;
      cld ratio = p / dp, sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k && z[k] != z[j]) sum += 1.0L / (z[k] - z[j]);
      cld step = ratio / (1.0L - ratio * sum);
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

// f(x, .) on [-rho, rho], cut into pieces on which it is monotone.
class Slice {
 public:
  Slice(const std::vector<Term>& f, ld x, ld rho) {
    int deg = 0;
    for (const auto& t : f) deg = std::max(deg, t.b);
    c_.assign(deg + 1, 0);
    for (const auto& t : f) c_[t.b] += static_cast<ld>(t.c) * std::pow(x, static_cast<ld>(t.a));
    std::vector<ld> d;
    for (int i = 1; i <= deg; ++i) d.push_back(c_[i] * i);
    // Real parts of all critical points; spurious extra cuts are harmless.
    cuts_ = {-rho, rho};
    for (const auto& r : roots_of(d))
      if (r.real() > -rho && r.real() < rho) cuts_.push_back(r.real());
    std::sort(cuts_.begin(), cuts_.end());
  }

  ld operator()(ld y) const {
    ld v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * y + *it;
    return v;
  }

  // Measure of {y : |f(x, y)| < delta} for each delta (decreasing).
  void measures(const std::vector<ld>& deltas, std::vector<ld>& out) const {
    std::fill(out.begin(), out.end(), 0.0L);
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
      ld a = cuts_[i], b = cuts_[i + 1];
      if (!(b > a)) continue;
      ld fa = (*this)(a), fb = (*this)(b);
      const ld sign = fb >= fa ? 1 : -1;
      fa *= sign;
      fb *= sign;
      for (std::size_t j = 0; j < deltas.size(); ++j) {
        const ld dl = deltas[j];
        if (fa >= dl || fb <= -dl) continue;
        ld lo = fa >= -dl ? a : solve(a, b, -dl, sign);
        ld hi = fb <= dl ? b : solve(a, b, dl, sign);
        if (hi > lo) out[j] += hi - lo;
      }
    }
  }

 private:
  // sign * f = target on [a, b], where sign * f increases.
  ld solve(ld a, ld b, ld target, ld sign) const {
    ld lo = a, hi = b;
    for (int iter = 0; iter < 200 && hi - lo > 1e-19L * std::max(1.0L, std::fabs(lo)); ++iter) {
      ld mid = (lo + hi) / 2;
      if (sign * (*this)(mid) < target)
        lo = mid;
      else
        hi = mid;
    }
    return (lo + hi) / 2;
  }

  std::vector<ld> c_;
  std::vector<ld> cuts_;
};

double slope(const std::vector<double>& x, const std::vector<double>& y, double* rms = nullptr) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double b = sxy / sxx;
  if (rms) {
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - (my + b * (x[i] - mx));
      ss += r * r;
    }
    *rms = std::sqrt(ss / n);
  }
  return b;
}

}  // namespace

DecaySample decay_integral(const PuiseuxPoly& s, double lambda, const DecayOptions& opt) {
  auto terms = real_terms(s);
  check_degree(terms);
  if (!(lambda > 0)) throw PreconditionError("lambda must be positive");
  if (!(opt.rho > 0)) throw PreconditionError("cutoff radius must be positive");
  Phase phase(std::move(terms));
  return integrate(phase, lambda, opt);
}

DecayEstimate estimate_decay(const PuiseuxPoly& s, const DecayOptions& opt) {
  auto terms = real_terms(s);
  check_degree(terms);
  if (!(opt.rho > 0)) throw PreconditionError("cutoff radius must be positive");
  std::vector<double> grid = opt.lambdas;
  if (grid.empty())
    for (int k = 8; k <= 22; ++k) grid.push_back(std::ldexp(1.0, k));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0)) throw PreconditionError("lambda grid must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw PreconditionError("lambda grid must be strictly increasing");
  }
  if (grid.size() < 2 || grid.back() / grid.front() < 1e3)
    throw PreconditionError("lambda grid must span at least three decades");

  Phase phase(std::move(terms));
  DecayEstimate out;
  out.rho = opt.rho;
  out.samples.resize(grid.size());
  // Each lambda is independent; results land at fixed indices.
  std::vector<std::thread> workers;
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
  std::atomic<std::size_t> next{0};
  for (unsigned t = 0; t < threads; ++t)
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < grid.size(); i = next++) out.samples[i] = integrate(phase, grid[i], opt);
    });
  for (auto& w : workers) w.join();

  out.fit_hi = grid.back();
  out.fit_lo = grid.back() / 10;
  std::vector<double> lx, ly;
  for (const auto& smp : out.samples)
    if (smp.converged && smp.lambda >= out.fit_lo * (1 - 1e-12)) {
      lx.push_back(std::log(smp.lambda));
      ly.push_back(-std::log(smp.magnitude));
    }
  out.fit_points = static_cast<int>(lx.size());
  if (lx.size() < 4) throw NumericError("fewer than 4 usable lambda points in the top decade");
  out.epsilon_hat = slope(lx, ly, &out.residual);
  return out;
}

IntegrabilityEstimate estimate_integrability(const PuiseuxPoly& f, const IntegrabilityOptions& opt) {
  auto terms = real_terms(f);
  if (!(opt.rho > 0)) throw PreconditionError("box radius must be positive");
  if (opt.samples_per_stratum < 2 || opt.strata < 1 || opt.tail < 3 || opt.layers <= opt.tail)
    throw PreconditionError("integrability options out of range");

  IntegrabilityEstimate out;
  out.rho = opt.rho;
  out.seed = opt.seed;
  out.grid = opt.grid;
  if (out.grid.empty())
    for (int k = 1; k <= 40; ++k) out.grid.push_back(0.05 * k);
  for (std::size_t i = 1; i < out.grid.size(); ++i)
    if (!(out.grid[i] > out.grid[i - 1])) throw PreconditionError("exponent grid must be strictly increasing");

  std::vector<ld> deltas(opt.layers + 1);
  for (int j = 0; j <= opt.layers; ++j) deltas[j] = std::ldexp(1.0L, -j);

  // Strata: [rho 2^-(i+1), rho 2^-i] on both sides, plus the core around 0.
  struct Stratum {
    ld lo;
    ld hi;
  };
  std::vector<Stratum> strata;
  const ld rho = opt.rho;
  for (int i = 0; i < opt.strata; ++i) {
    ld hi = std::ldexp(rho, -i), lo = std::ldexp(rho, -i - 1);
    strata.push_back({lo, hi});
    strata.push_back({-hi, -lo});
  }
  const ld core = std::ldexp(rho, -opt.strata);
  strata.push_back({-core, core});

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = opt.samples_per_stratum;
  std::vector<ld> volume_all(deltas.size(), 0), volume_half[2] = {volume_all, volume_all};
  std::vector<ld> m(deltas.size());
  for (const auto& st : strata) {
    const ld w = (st.hi - st.lo) / n;
    for (int k = 0; k < n; ++k) {
      const ld x = st.lo + (k + static_cast<ld>(unit(rng))) * w;
      Slice slice(terms, x, rho);
      slice.measures(deltas, m);
      for (std::size_t j = 0; j < m.size(); ++j) {
        volume_all[j] += m[j] * w;
        volume_half[k % 2][j] += m[j] * w * 2;
      }
    }
  }
  out.samples = n * static_cast<int>(strata.size());

  // log2 of the layer measures over the tail; the tail ratio at eps is
  // 2^(eps + slope), so eps >= -slope diverges.
  auto tail_slope = [&](const std::vector<ld>& v, bool& empty) {
    std::vector<double> xs, ys;
    empty = true;
    for (int j = opt.layers - opt.tail; j < opt.layers; ++j) {
      ld layer = v[j] - v[j + 1];
      if (layer > 0) {
        empty = false;
        xs.push_back(j);
        ys.push_back(static_cast<double>(std::log2(layer)));
      }
    }
    if (empty) return -std::numeric_limits<double>::infinity();
    if (xs.size() < 3) throw NumericError("too few nonempty value layers for the ratio test");
    return slope(xs, ys);
  };

  for (int j = 0; j < opt.layers; ++j) out.layer_measure.push_back(static_cast<double>(volume_all[j] - volume_all[j + 1]));
  bool empty = false, empty_a = false, empty_b = false;
  const double s_all = tail_slope(volume_all, empty);
  const double s_a = tail_slope(volume_half[0], empty_a);
  const double s_b = tail_slope(volume_half[1], empty_b);
  out.critical = -s_all;
  const double step = out.grid.size() > 1 ? out.grid[1] - out.grid[0] : 0.05;
  out.stable = (empty && empty_a && empty_b) || (!empty && !empty_a && !empty_b && std::fabs(s_a - s_b) < step);

  for (double eps : out.grid) {
    double ratio = empty ? 0.0 : std::exp2(eps + s_all);
    out.ratios.push_back(ratio);
    out.divergent.push_back(ratio >= 1);
  }
  for (std::size_t i = 1; i < out.divergent.size(); ++i)
    PKIT_ASSERT(!out.divergent[i - 1] || out.divergent[i], "integrability verdicts are not monotone");
  for (std::size_t i = 0; i < out.grid.size(); ++i) {
    if (out.divergent[i]) {
      out.bracket_hi = out.grid[i];
      break;
    }
    out.bracket_lo = out.grid[i];
  }
  return out;
}

}  // namespace pkit
