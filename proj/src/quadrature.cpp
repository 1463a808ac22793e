// Copyright 2026 The s3q Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "s3q/quadrature.hpp"

#include <algorithm>
#include <queue>

#include "s3q/specfun.hpp"

namespace s3q {

namespace {

constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980160031, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct Panel {
  double a, b;
  cplx value;
  double err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk21(const ComplexFn& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = kWgk[10] * fc, g = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double dx = h * kXgk[i];
    const cplx s = f(c - dx) + f(c + dx);
    k += kWgk[i] * s;
    if (i % 2 == 1) g += kWg[i / 2] * s;
  }
  k *= h;
  g *= h;
  const cplx v = k;
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw ConvergenceError("integrate_1d: non-finite integrand value", 0.0, INFINITY);
  return {a, b, v, std::abs(k - g)};
}

}  // namespace

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) { p1 = x; p0 = 1.0; }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    r.w[i] = r.w[n - 1 - i] = w;
  }
  if (n == 1) { r.x[0] = 0.0; r.w[0] = 2.0; }
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    r.x[i] = c + h * r.x[i];
    r.w[i] *= h;
  }
  return r;
}

QuadResult integrate_1d(const ComplexFn& f, const std::vector<double>& breaks, double tol,
                        int max_panels) {
  if (breaks.size() < 2 || !(tol > 0.0)) throw DomainError("integrate_1d: need a < b and tol > 0");
  std::priority_queue<Panel> heap;
  cplx total = 0.0;
  double err = 0.0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) throw DomainError("integrate_1d: breakpoints must increase");
    Panel p = gk21(f, breaks[i], breaks[i + 1]);
    total += p.value;
    err += p.err;
    heap.push(p);
  }
  int used = static_cast<int>(heap.size());
  while (err > tol) {
    if (used >= max_panels) throw ConvergenceError("integrate_1d: panel budget exhausted", total, err);
    Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) throw ConvergenceError("integrate_1d: panel underflow", total, err);
    Panel l = gk21(f, p.a, mid), r = gk21(f, mid, p.b);
    total += l.value + r.value - p.value;
    err += l.err + r.err - p.err;
    heap.push(l);
    heap.push(r);
    ++used;
  }
  // re-sum to remove drift from incremental updates
  cplx sum = 0.0;
  double esum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    esum += heap.top().err;
    heap.pop();
  }
  return {sum, esum, used};
}

QuadResult integrate_1d(const ComplexFn& f, double a, double b, double tol, int max_panels) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_1d: need finite a < b");
  return integrate_1d(f, std::vector<double>{a, b}, tol, max_panels);
}

namespace {

double djdx(double nu, double x) { return nu / x * bessel_j(nu, x) - bessel_j(nu + 1.0, x); }

// Safeguarded Newton on a sign-change bracket [lo, hi] of J_nu.
double refine_zero(double nu, double lo, double hi) {
  double flo = bessel_j(nu, lo);
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double fx = bessel_j(nu, x);
    if (fx == 0.0) return x;
    if ((fx < 0) == (flo < 0)) { lo = x; flo = fx; } else { hi = x; }
    double xn = x - fx / djdx(nu, x);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) < 1e-15 * x) return xn;
    x = xn;
  }
  return x;
}

// Zeros j_{nu,1..count}: McMahon guess for the spacing, bracketed by a sign scan.
std::vector<double> bessel_zeros(double nu, int count) {
  std::vector<double> z;
  z.reserve(count);
  double x = std::max(nu, 0.5);
  const double step = 0.25;
  double fx = bessel_j(nu, x);
  while (static_cast<int>(z.size()) < count) {
    double xn = x + (z.empty() ? step : std::min(step * 4.0, 1.0));
    if (!z.empty()) {
      // McMahon: spacing tends to pi; step ahead conservatively
      const double mu = 4.0 * nu * nu;
      const double beta = (z.size() + 1 + 0.5 * nu - 0.25) * kPi;
      const double guess = beta - (mu - 1.0) / (8.0 * beta);
      if (guess > x + 0.5 && z.size() > 3) xn = std::min(guess - 0.4, x + kPi);
    }
    const double fn = bessel_j(nu, xn);
    if ((fn < 0) != (fx < 0) || fn == 0.0) {
      z.push_back(refine_zero(nu, x, xn));
      x = z.back() + 1e-9 * z.back();
      fx = bessel_j(nu, x);
    } else {
      x = xn;
      fx = fn;
    }
  }
  return z;
}

}  // namespace

double bessel_zero(double nu, int k) {
  if (k < 1) throw DomainError("bessel_zero: k must be >= 1");
  return bessel_zeros(nu, k).back();
}

QuadResult integrate_oscillatory_bessel(const RealFn& f, double nu, double c, double tol, int max_panels) {
  if (!(c > 0.0) || !(tol > 0.0)) throw DomainError("integrate_oscillatory_bessel: need c > 0, tol > 0");
  const ComplexFn g = [&](double x) { return cplx(f(x) * bessel_j(nu, c * x), 0.0); };
  std::vector<double> zeros = bessel_zeros(nu, 64);
  std::vector<double> partial;
  double prev = 0.0;
  cplx sum = 0.0;
  int used = 0;
  double last_est = 0.0, last_delta = INFINITY;
  for (int k = 0; k < max_panels; ++k) {
    if (k >= static_cast<int>(zeros.size())) zeros = bessel_zeros(nu, 2 * static_cast<int>(zeros.size()));
    const double b = zeros[k] / c;
    const QuadResult q = integrate_1d(g, prev, b, 0.05 * tol);
    used += q.panels_used;
    sum += q.value;
    partial.push_back(sum.real());
    prev = b;
    const int n = static_cast<int>(partial.size());
    if (n < 8) continue;
    // iterated pairwise averaging of the tail of the partial-sum sequence
    const int depth = std::min(n - 1, 60);
    std::vector<double> t(partial.end() - (depth + 1), partial.end());
    for (int d = 0; d < depth; ++d)
      for (int i = 0; i + 1 < static_cast<int>(t.size()) - d; ++i) t[i] = 0.5 * (t[i] + t[i + 1]);
    const double est = t[0];
    const double delta = std::abs(est - last_est);
    if (delta < tol && last_delta < tol) return {est, std::max(delta, last_delta), used};
    last_delta = delta;
    last_est = est;
  }
  throw ConvergenceError("integrate_oscillatory_bessel: acceleration did not stabilize", last_est, last_delta);
}

namespace {

}  // namespace

cplx hankel_amplitude(int sigma, double nu, cplx z) {
  const double mu4 = 4.0 * nu * nu;
  const cplx isg(0.0, sigma);
  cplx t = 1.0, sum = 1.0;
  double prev = 2.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    t *= isg * (mu4 - odd * odd) / (8.0 * k * z);
    const double at = std::abs(t);
    if (at > prev) break;
    sum += t;
    if (at < 1e-17 * std::abs(sum)) break;
    prev = at;
  }
  const double w0 = (0.5 * nu + 0.25);
  return std::sqrt(2.0 / (kPi * z)) * std::polar(1.0, -sigma * kPi * w0) * sum;
}

QuadResult integrate_exp_tail(const std::function<cplx(cplx)>& amp, double omega, double X, double tol) {
  if (omega == 0.0) {
    const ComplexFn g = [&](double u) { return amp(cplx(X / u, 0.0)) * (X / (u * u)); };
    return integrate_1d(g, 0.0, 1.0, tol, 20000);
  }
  const double sg = omega > 0 ? 1.0 : -1.0, ao = std::abs(omega);
  const cplx phase = std::polar(1.0, omega * X) * cplx(0.0, sg) / ao;
  const ComplexFn g = [&](double u) { return amp(cplx(X, sg * u / ao)) * std::exp(-u); };
  std::vector<double> ub{0.0};
  const double q0 = ao * X;
  for (double f : {1e-3, 1e-2, 1e-1, 1.0})
    if (q0 * f < 0.5) ub.push_back(q0 * f);
  for (double u : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 50.0}) ub.push_back(u);
  QuadResult q = integrate_1d(g, ub, tol / std::abs(phase), 20000);
  return {phase * q.value, std::abs(phase) * q.error_estimate, q.panels_used};
}

namespace {

// Amplitude of the tau-exponential part of W(y) with e^{i tau y} removed.
cplx wave_amp(int tau, const Wave& w, cplx y) {
  switch (w.kind) {
    case WaveKind::Sin: return cplx(0.0, -0.5 * tau);  // sin = (e^{iy} - e^{-iy}) / 2i
    case WaveKind::Cos: return 0.5;
    case WaveKind::SphBessel: {
      // j_l = (h1 + h2)/2, h^{(tau)}(y) = (-i tau)^{l+1} e^{i tau y}/y sum_k (i tau)^k (l+k)!/(k!(l-k)!(2y)^k)
      const cplx it(0.0, tau);
      cplx s = 0.0, term = 1.0;
      for (int k = 0; k <= w.l; ++k) {
        if (k > 0) term *= it * double((w.l + k) * (w.l - k + 1)) / (double(k) * 2.0 * y);
        s += term;
      }
      return 0.5 * std::pow(-it, w.l + 1) * s / y;
    }
  }
  return 0.0;
}

double wave_value(const Wave& w, double y) {
  switch (w.kind) {
    case WaveKind::Sin: return std::sin(y);
    case WaveKind::Cos: return std::cos(y);
    case WaveKind::SphBessel: return sph_bessel_j(w.l, y);
  }
  return 0.0;
}

}  // namespace

QuadResult integrate_bessel_wave(double s, const Wave& w, double nu, double c, double tol) {
  if (!(c > 0.0) || !(w.a > 0.0) || !(tol > 0.0)) throw DomainError("integrate_bessel_wave: need a, c, tol > 0");
  const double X = (40.0 + nu * nu) / c;
  const double fmax = std::max(w.a, c);
  const int npan = std::max(4, static_cast<int>(std::ceil(X * fmax / kPi)));
  std::vector<double> br(npan + 1);
  for (int i = 0; i <= npan; ++i) br[i] = X * i / npan;
  const ComplexFn fin = [&](double x) {
    return cplx(std::pow(x, s) * wave_value(w, w.a * x) * bessel_j(nu, c * x), 0.0);
  };
  QuadResult head = integrate_1d(fin, br, 0.5 * tol, 20000);
  cplx tail = 0.0;
  double terr = 0.0;
  int used = head.panels_used;
  for (int sigma : {1, -1}) {
    for (int tau : {1, -1}) {
      double om = sigma * c + tau * w.a;
      if (std::abs(om) < 1e-12 * fmax) om = 0.0;
      const auto amp = [&](cplx x) {
        return 0.5 * std::pow(x, s) * hankel_amplitude(sigma, nu, c * x) * wave_amp(tau, w, w.a * x);
      };
      const QuadResult q = integrate_exp_tail(amp, om, X, 0.125 * tol);
      tail += q.value;
      terr += q.error_estimate;
      used += q.panels_used;
    }
  }
  return {head.value + tail, head.error_estimate + terr, used};
}

namespace {
void check_divergence(const ComplexFn& f, double chi_end) {
  double prev = 0.0;
  bool growing = true;
  for (int k = 4; k <= 10; k += 2) {
    const double h = std::pow(10.0, -k);
    const double v = std::abs(f(chi_end - h)) * h;
    if (k > 4 && v < 0.5 * prev) growing = false;
    prev = v;
  }
  if (growing && prev > 0.0) throw DomainError("integrate_ball_radial: integrand diverges near r = R");
}
}  // namespace

QuadResult integrate_ball_radial(const ComplexFn& g, double R, BallWeight weight, double tol) {
  if (!(R > 0.0)) throw DomainError("integrate_ball_radial: R must be positive");
  const ComplexFn f = [&](double chi) -> cplx {
    const double s = std::sin(chi), c = std::cos(chi);
    const cplx v = g(R * s);
    switch (weight) {
      case BallWeight::None: return 4.0 * kPi * R * R * R * s * s * c * v;
      case BallWeight::InvEps4: return 4.0 * kPi * R * R * s * s * v;
      case BallWeight::Eps4: return 4.0 * kPi * R * R * R * R * s * s * c * c * v;
    }
    return 0.0;
  };
  try {
    return integrate_1d(f, 0.0, 0.5 * kPi, tol);
  } catch (const ConvergenceError&) {
    check_divergence(f, 0.5 * kPi);
    throw;
  }
}

QuadResult integrate_ball_radial_naive(const ComplexFn& g, double R, BallWeight weight, double tol) {
  if (!(R > 0.0)) throw DomainError("integrate_ball_radial_naive: R must be positive");
  // distance s = R - r to the rim as variable, so interior nodes never round onto it
  const ComplexFn f = [&](double s) -> cplx {
    const double r = R - s, e4 = std::sqrt(s * (2.0 * R - s));
    const cplx v = 4.0 * kPi * r * r * g(r);
    switch (weight) {
      case BallWeight::None: return v;
      case BallWeight::InvEps4: return v / e4;
      case BallWeight::Eps4: return v * e4;
    }
    return 0.0;
  };
  return integrate_1d(f, 0.0, R, tol, 20000);
}

std::vector<std::pair<Vec3, double>> ball_rule(const Vec3& c, double rho, int nr, int nt, int nphi) {
  if (!(rho > 0) || nr < 1 || nt < 1 || nphi < 1) throw DomainError("ball_rule: invalid parameters");
  const GaussRule gr = gauss_legendre(nr, 0.0, rho), gt = gauss_legendre(nt, -1.0, 1.0);
  std::vector<std::pair<Vec3, double>> out;
  out.reserve(static_cast<size_t>(nr) * nt * nphi);
  const double dphi = 2.0 * kPi / nphi;
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nt; ++j) {
      const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]), r = gr.x[i];
      for (int k = 0; k < nphi; ++k) {
        const double ph = (k + 0.5) * dphi;
        out.push_back({{c[0] + r * st * std::cos(ph), c[1] + r * st * std::sin(ph), c[2] + r * gt.x[j]},
                       r * r * gr.w[i] * gt.w[j] * dphi});
      }
    }
  return out;
}

}  // namespace s3q
