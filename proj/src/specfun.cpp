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

#include "s3q/specfun.hpp"

#include <algorithm>
#include <limits>

namespace s3q {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kMaxOrder = 60.0;
constexpr double kMaxArg = 1.0e4;

// Hankel large-argument expansion: J = A (P cos w - Q sin w), Y = A (P sin w + Q cos w).
void hankel_pq(double nu, double x, double& p, double& q) {
  const double mu4 = 4.0 * nu * nu;
  double t = 1.0, prev = 2.0;
  p = 1.0;
  q = 0.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    t *= (mu4 - odd * odd) / (8.0 * k * x);
    const double at = std::abs(t);
    if (at > prev) break;  // asymptotic series started to diverge
    switch (k % 4) {
      case 0: p += t; break;
      case 1: q += t; break;
      case 2: p -= t; break;
      case 3: q -= t; break;
    }
    if (at < 1e-17) break;
    prev = at;
  }
}

void hankel_jy(double nu, double x, double* j, double* y) {
  double p, q;
  hankel_pq(nu, x, p, q);
  // w = x - pi (nu/2 + 1/4), trigonometric factors split for exact reduction
  const double s = 0.5 * nu + 0.25;
  const double cs = cospi(s), ss = sinpi(s), cx = std::cos(x), sx = std::sin(x);
  const double cw = cx * cs + sx * ss;
  const double sw = sx * cs - cx * ss;
  const double a = std::sqrt(2.0 / (kPi * x));
  if (j) *j = a * (p * cw - q * sw);
  if (y) *y = a * (p * sw + q * cw);
}

bool use_asymptotic(double nu, double x) { return x >= 30.0 && x >= nu * nu; }

double bessel_j_series(double nu, double x) {
  const double h = 0.5 * x, h2 = -h * h;
  double term = std::exp(nu * std::log(h)) * rgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= h2 / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Backward (Miller) recurrence for J_{mu+k}, k = 0..count-1, normalized with
// (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x). Carried in long double:
// rounding accumulated over the oscillatory range k < x otherwise costs
// relative accuracy near the zeros of J.
std::vector<double> miller(double mu_d, int count, double x) {
  using ld = long double;
  const ld mu = mu_d;
  const double top = std::max<double>(count, x);
  int n = static_cast<int>(top + 20.0 + std::sqrt(60.0 * top));
  if (n % 2) ++n;
  std::vector<ld> j(std::max(count, 1), 0.0L);
  ld jp1 = 0.0L, jk = 1e-280L, sum = 0.0L;
  const ld lx = x;
  const ld lg0 = std::lgamma(mu + 1.0L);
  auto coef = [&](int kk) -> ld {
    if (kk == 0) return std::exp(lg0);
    return (mu + 2.0L * kk) * std::exp(std::lgamma(mu + kk) - std::lgamma(kk + 1.0L));
  };
  for (int k = n; k >= 0; --k) {
    if (k < count) j[k] = jk;
    if (k % 2 == 0) sum += coef(k / 2) * jk;
    if (k == 0) break;
    const ld jm1 = 2.0L * (mu + k) / lx * jk - jp1;
    jp1 = jk;
    jk = jm1;
    if (std::abs(jk) > 1e250L) {
      jk *= 1e-250L;
      jp1 *= 1e-250L;
      sum *= 1e-250L;
      for (int i = k; i < count; ++i) j[i] *= 1e-250L;
    }
  }
  const ld scale = std::exp(mu * std::log(0.5L * lx)) / sum;
  std::vector<double> out(j.size());
  for (size_t i = 0; i < j.size(); ++i) out[i] = static_cast<double>(j[i] * scale);
  return out;
}

double bessel_j_unchecked(double nu, double x) {
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (0.25 * x * x < 0.5 * (nu + 1.0) + 1.0) return bessel_j_series(nu, x);
  if (use_asymptotic(nu, x)) {
    double j;
    hankel_jy(nu, x, &j, nullptr);
    return j;
  }
  const double fl = std::floor(nu);
  const int idx = static_cast<int>(fl);
  return miller(nu - fl, idx + 1, x)[idx];
}

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::remainder(x, 2.0);  // exact, in [-1, 1]
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(kPi * r);
}

double cospi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  const double a = std::abs(std::remainder(x, 2.0));
  if (a < 0.25) return std::cos(kPi * a);
  if (a <= 0.5) return std::sin(kPi * (0.5 - a));
  return -std::sin(kPi * (a - 0.5));
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x < 0.5) return sinpi(x) * std::tgamma(1.0 - x) / kPi;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  return 1.0 / std::tgamma(x);
}

std::vector<double> bessel_j_sequence(double mu, int count, double x) {
  if (!(mu >= 0.0 && mu < 1.0) || count < 1 || !(x > 0.0))
    throw DomainError("bessel_j_sequence: need mu in [0,1), count >= 1, x > 0");
  return miller(mu, count, x);
}

double bessel_j(double order, double x) {
  if (!(order >= 0.0 && order <= kMaxOrder) || !(x >= 0.0 && x <= kMaxArg))
    throw DomainError("bessel_j: order must lie in [0,60] and x in [0,1e4]");
  return bessel_j_unchecked(order, x);
}

double bessel_y(int order, double x) {
  if (order < 0 || order > kMaxOrder) throw DomainError("bessel_y: order must lie in [0,60]");
  if (!(x > 0.0) || x > kMaxArg) throw DomainError("bessel_y: x must lie in (0,1e4]");
  if (x < 1e-300) return -std::numeric_limits<double>::infinity();
  double y0, y1;
  if (x >= 30.0) {
    hankel_jy(0.0, x, nullptr, &y0);
    hankel_jy(1.0, x, nullptr, &y1);
  } else {
    const double top = std::max(x, 2.0);
    const int n = static_cast<int>(top + 30.0 + std::sqrt(60.0 * top));
    const std::vector<double> j = miller(0.0, n + 2, x);
    const double lg = std::log(0.5 * x) + kEulerGamma;
    double s0 = 0.0, s1 = 0.0;
    for (int k = 1; 2 * k + 1 < n + 2; ++k) {
      const double sg = (k % 2) ? -1.0 : 1.0;
      s0 += sg * j[2 * k] / k;
      s1 += sg * (j[2 * k - 1] - j[2 * k + 1]) / k;
    }
    y0 = (2.0 / kPi) * (lg * j[0] - 2.0 * s0);
    y1 = -(2.0 / kPi) * (j[0] / x - lg * j[1]) + (2.0 / kPi) * s1;
  }
  if (order == 0) return y0;
  for (int k = 1; k < order; ++k) {
    const double y2 = 2.0 * k / x * y1 - y0;
    y0 = y1;
    y1 = y2;
    if (std::isinf(y1)) return y1;
  }
  return y1;
}

double sph_bessel_j(int k, double x) {
  if (k < 0 || k > 60) throw DomainError("sph_bessel_j: k must lie in [0,60]");
  if (!(x >= 0.0 && x <= kMaxArg)) throw DomainError("sph_bessel_j: x must lie in [0,1e4]");
  if (x == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::sqrt(kPi / (2.0 * x)) * bessel_j_unchecked(k + 0.5, x);
}

double gegenbauer(int degree, double lambda, double x) {
  if (degree < 0 || degree > 200) throw DomainError("gegenbauer: degree must lie in [0,200]");
  if (degree == 0) return 1.0;
  double c0 = 1.0, c1 = 2.0 * lambda * x;
  for (int n = 2; n <= degree; ++n) {
    const double c2 = (2.0 * x * (n + lambda - 1.0) * c1 - (n + 2.0 * lambda - 2.0) * c0) / n;
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

cplx sph_harm(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw DomainError("sph_harm: require |m| <= l");
  const int am = std::abs(m);
  const double x = std::cos(theta), s = std::sin(theta);
  // normalized P_m^m with Condon-Shortley phase
  double pmm = std::sqrt(1.0 / (4.0 * kPi));
  for (int i = 1; i <= am; ++i) pmm *= -std::sqrt((2.0 * i + 1.0) / (2.0 * i)) * s;
  double p = pmm;
  if (l > am) {
    double pm1 = pmm, pl = x * std::sqrt(2.0 * am + 3.0) * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) / (double(ll) * ll - double(am) * am));
      const double b = std::sqrt(((ll - 1.0) * (ll - 1.0) - double(am) * am) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double pn = a * (x * pl - b * pm1);
      pm1 = pl;
      pl = pn;
    }
    p = pl;
  }
  cplx y = p * std::polar(1.0, am * phi);
  if (m < 0) y = ((am % 2) ? -1.0 : 1.0) * std::conj(y);
  return y;
}

namespace {
// Complex value with its (real-coordinate) gradient.
struct Dual {
  cplx v;
  CVec3 g;
};
Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, {a.v * b.g[0] + a.g[0] * b.v, a.v * b.g[1] + a.g[1] * b.v, a.v * b.g[2] + a.g[2] * b.v}};
}
Dual operator*(double s, const Dual& a) { return {s * a.v, {s * a.g[0], s * a.g[1], s * a.g[2]}}; }
Dual operator-(const Dual& a, const Dual& b) {
  return {a.v - b.v, {a.g[0] - b.g[0], a.g[1] - b.g[1], a.g[2] - b.g[2]}};
}
}  // namespace

SolidHarmonics::SolidHarmonics(int lmax, const Vec3& v) : lmax_(lmax) {
  if (lmax < 0) throw DomainError("SolidHarmonics: lmax must be >= 0");
  const int size = (lmax + 1) * (lmax + 1);
  val_.assign(size, 0.0);
  grad_.assign(size, CVec3{0.0, 0.0, 0.0});
  const Dual z{v[2], {0.0, 0.0, 1.0}};
  const Dual r2{norm2(v), {2.0 * v[0], 2.0 * v[1], 2.0 * v[2]}};
  const Dual w{cplx(v[0], v[1]), {1.0, cplx(0.0, 1.0), 0.0}};
  Dual wm{1.0, {0.0, 0.0, 0.0}};
  double cm = std::sqrt(1.0 / (4.0 * kPi));
  for (int m = 0; m <= lmax; ++m) {
    if (m > 0) {
      wm = wm * w;
      cm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    }
    Dual sm2 = cm * wm;  // S_{m,m}
    auto store = [&](int l, const Dual& d) {
      val_[idx(l, m)] = d.v;
      grad_[idx(l, m)] = d.g;
      if (m > 0) {
        const double sg = (m % 2) ? -1.0 : 1.0;
        val_[idx(l, -m)] = sg * std::conj(d.v);
        grad_[idx(l, -m)] = {sg * std::conj(d.g[0]), sg * std::conj(d.g[1]), sg * std::conj(d.g[2])};
      }
    };
    store(m, sm2);
    if (m == lmax) break;
    Dual sm1 = std::sqrt(2.0 * m + 3.0) * (z * sm2);
    store(m + 1, sm1);
    for (int l = m + 2; l <= lmax; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
      const double b = std::sqrt(((l - 1.0) * (l - 1.0) - double(m) * m) / (4.0 * (l - 1.0) * (l - 1.0) - 1.0));
      Dual sn = a * ((z * sm1) - b * (r2 * sm2));
      store(l, sn);
      sm2 = sm1;
      sm1 = sn;
    }
  }
}

double n_alpha(double alpha) {
  if (!(alpha > -1.0)) throw DomainError("n_alpha: alpha must exceed -1");
  return std::exp(-alpha * std::log(2.0)) * rgamma(alpha + 1.0);
}

}  // namespace s3q
