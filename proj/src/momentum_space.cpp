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
#include "s3q/momentum_space.hpp"

#include <json.hpp>

#include "s3q/kernels.hpp"
#include "s3q/specfun.hpp"

namespace s3q {

namespace {

const cplx I1(0.0, 1.0);

cplx expipi(double x) { return {cospi(x), sinpi(x)}; }

cplx i_pow(int l) {
  static const cplx t[4] = {1.0, I1, -1.0, -I1};
  return t[((l % 4) + 4) % 4];
}

double fact(int k) { return std::tgamma(k + 1.0); }

// Closed forms at real n; the integer-n values are removable limits.
cplx closed_Kc(double n, int l) {
  return -std::pow(kPi, 1.5) * std::pow(2.0, l - n - 1.0) * fact(l) * expipi(0.5 * (l - n)) *
         (expipi(n) / sinpi(0.5 * (l + n)) + I1 / cospi(0.5 * (l - n))) * rgamma(l - n) *
         rgamma(0.5 * (n - l + 1.0)) * rgamma(0.5 * (n + l + 2.0));
}

cplx closed_Kb(double n, int l) {
  return std::pow(kPi, 1.5) * std::pow(2.0, l - n - 2.0) * fact(l) * expipi(0.5 * (l - n)) *
         (1.0 / sinpi(0.5 * (l - n)) + I1 * expipi(n) / cospi(0.5 * (l + n))) * rgamma(l - n) *
         rgamma(0.5 * (n - l + 2.0)) * rgamma(0.5 * (n + l + 3.0));
}

cplx closed_M(double n, int l, bool even) {
  const cplx head = std::pow(2.0, l + 1.0) * fact(l) * expipi(0.5 * (n - l)) / sinpi(l - n);
  const double tail = std::sqrt(2.0 * (n + 1.0) * rgamma(n + l + 2.0));
  if (even) return I1 * head / (1.0 + I1 * expipi(n) * cospi(0.5 * (l - n)) / sinpi(0.5 * (n + l))) * tail;
  return -head / (1.0 + I1 * expipi(n) * sinpi(0.5 * (l - n)) / cospi(0.5 * (n + l))) * tail;
}

// f(n) as the limit of f(n + delta): linear extrapolation from two shifts,
// using the representable offsets fl(n + delta) - n.
template <class F>
cplx pole_limit(F f, int n, const char* what) {
  const double x1 = n + 1e-5, x2 = n + 5e-6;
  const double d1 = x1 - n, d2 = x2 - n;
  const cplx f1 = f(x1), f2 = f(x2);
  const cplx v = (d1 * f2 - d2 * f1) / (d1 - d2);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw ConvergenceError(std::string("pole limit did not cancel: ") + what, v, std::abs(f1 - f2));
  return v;
}

double gegen0(int k, double lam) { return k < 0 ? 0.0 : gegenbauer(k, lam, 0.0); }

// C^{l+1}_{n-l}(1) = Gamma(n+l+2) / (Gamma(2l+2) (n-l)!)
double gegen1(int n, int l) { return std::exp(std::lgamma(n + l + 2.0) - std::lgamma(2.0 * l + 2.0) - std::lgamma(n - l + 1.0)); }

double dfact_odd(int l) { return std::exp(std::lgamma(2.0 * l + 2.0) - l * std::log(2.0) - std::lgamma(l + 1.0)); }

void check_nl(int n, int l, const char* who) {
  if (!(n >= l && l >= 0)) throw DomainError(std::string(who) + ": require n >= l >= 0");
}

// Per-(n, l) amplitude of the data of phi_nlm: a or b equals amp * R^{-l} S_lm(eps) C^{l+1}_{n-l}(|eps4|/R).
cplx data_amp(int n, int l, const PhysicalParams& p) {
  const double k = p.kappa(), M = norm_const_M_exact(n, l, p);
  const cplx P = 4.0 * kPi * i_pow(l) / std::pow(2.0 * kPi * p.hbar, 1.5);
  if ((n - l) % 2 == 0) return p.R * P * M * gegen0(n - l, l + 1.0) * hankel_K_exact(n, l, 0) / (k * k);
  return P * M * 2.0 * (l + 1.0) * gegen0(n - l - 1, l + 2.0) * hankel_K_exact(n, l, 1) / k;
}

struct MomBasis {
  int nmax;
  std::vector<cplx> amp;  // indexed like basis_list
  explicit MomBasis(int nm, const PhysicalParams& p) : nmax(nm) {
    for (const QuantumNumbers& q : basis_list(nm)) amp.push_back(data_amp(q.n, q.l, p));
  }
};

int qn_index(const QuantumNumbers& q) { return q.n * (q.n + 1) * (2 * q.n + 1) / 6 + q.l * q.l + q.m + q.l; }

// (a, b) of every phi_nlm, n <= nmax, at eps.
void basis_data_all(const MomBasis& mb, const Vec3& eps, const PhysicalParams& p, std::vector<cplx>& a,
                    std::vector<cplx>& b) {
  const double c = abs_eps4(eps, p.R) / p.R;
  const SolidHarmonics sh(mb.nmax, eps);
  const size_t cnt = mb.amp.size();
  a.assign(cnt, 0.0);
  b.assign(cnt, 0.0);
  for (int l = 0; l <= mb.nmax; ++l) {
    const double rl = std::pow(p.R, -l);
    for (int n = l; n <= mb.nmax; ++n) {
      const double G = gegenbauer(n - l, l + 1.0, c) * rl;
      const bool even = (n - l) % 2 == 0;
      for (int m = -l; m <= l; ++m) {
        const int i = qn_index(QuantumNumbers(n, l, m));
        const cplx v = mb.amp[i] * G * sh.value(l, m);
        (even ? a : b)[i] = v;
      }
    }
  }
}

int spectral_nmax(const SpectralState& s) {
  int nm = 0;
  for (const auto& [q, c] : s) nm = std::max(nm, q.n);
  return nm;
}

int spectral_lmax(const SpectralState& s) {
  int lm = 0;
  for (const auto& [q, c] : s) lm = std::max(lm, q.l);
  return lm;
}

}  // namespace

MomentumPoint MomentumPoint::from_hyperspherical(double r, double chi, double theta, double phi) {
  if (!(r >= 0.0)) throw DomainError("MomentumPoint: r must be >= 0");
  MomentumPoint p;
  const double s = r * std::sin(chi);
  p.pi = {s * std::sin(theta) * std::cos(phi), s * std::sin(theta) * std::sin(phi), s * std::cos(theta)};
  p.pi4 = r * std::cos(chi);
  return p;
}

std::array<double, 4> MomentumPoint::hyperspherical() const {
  const double rp = norm(pi);
  return {std::hypot(rp, pi4), std::atan2(rp, pi4), std::atan2(std::hypot(pi[0], pi[1]), pi[2]),
          std::atan2(pi[1], pi[0])};
}

cplx CauchyData::fhat0(const Vec3& e) const { return a(e) / abs_eps4(e, params.R); }

CauchyData make_cauchy(Sampler reg0, Sampler fhat1, const PhysicalParams& p) {
  CauchyData d;
  d.params = p;
  d.reg0 = std::move(reg0);
  d.fhat1 = std::move(fhat1);
  return d;
}

double hankel_K(int n, int l, int kind) {
  check_nl(n, l, "hankel_K");
  if (kind != 0 && kind != 1) throw DomainError("hankel_K: kind must be 0 (circ) or 1 (bullet)");
  const cplx v = kind == 0 ? pole_limit([l](double x) { return closed_Kc(x, l); }, n, "K circ")
                           : pole_limit([l](double x) { return closed_Kb(x, l); }, n, "K bullet");
  return v.real();
}

double hankel_K_exact(int n, int l, int kind) {
  check_nl(n, l, "hankel_K_exact");
  const double den = dfact_odd(l) * gegen1(n, l);
  if (kind == 0)
    return std::ldexp(1.0, l + 1) * std::exp(std::lgamma(0.5 * (n + l + 3.0)) - std::lgamma(0.5 * (n - l + 1.0))) / den;
  if (kind == 1)
    return std::ldexp(1.0, l) * std::exp(std::lgamma(0.5 * (n + l + 2.0)) - std::lgamma(0.5 * (n - l + 2.0))) / den;
  throw DomainError("hankel_K_exact: kind must be 0 (circ) or 1 (bullet)");
}

double hankel_K_numeric(int n, int l, int kind, double a, const PhysicalParams& p, double tol) {
  check_nl(n, l, "hankel_K_numeric");
  if (!(a > 0.0 && a < p.R)) throw DomainError("hankel_K_numeric: a must lie in (0, R)");
  const double k = p.kappa(), x = a / p.R, c = std::sqrt(1.0 - x * x);
  const RealFn f = [=](double q) { return std::pow(q, 1.0 - kind) * sph_bessel_j(l, k * x * q); };
  const QuadResult r = integrate_oscillatory_bessel(f, n + 1.0, k, tol);
  double prof = std::pow(x, l) * gegenbauer(n - l, l + 1.0, c);
  prof /= kind == 0 ? k * k * c : k;
  return r.value.real() / prof;
}

double norm_const_M(int n, int l, int m, const PhysicalParams& p) {
  check_nl(n, l, "norm_const_M");
  if (std::abs(m) > l) throw DomainError("norm_const_M: require |m| <= l");
  const bool even = (n - l) % 2 == 0;
  const cplx v = pole_limit([l, even](double x) { return closed_M(x, l, even); }, n, "M");
  const double c0 = even ? gegen0(n - l, l + 1.0) : gegen0(n - l - 1, l + 2.0);
  return (c0 < 0 ? -1.0 : 1.0) * std::abs(v.real()) / std::sqrt(p.hbar);
}

double norm_const_M_exact(int n, int l, const PhysicalParams& p) {
  check_nl(n, l, "norm_const_M_exact");
  const double lf = fact(l), base = std::ldexp(1.0, 2 * l) * fact(n - l) * (n + 1.0) * lf * lf / std::tgamma(n + l + 2.0);
  if ((n - l) % 2 == 0) {
    const double c0 = gegen0(n - l, l + 1.0), K = hankel_K_exact(n, l, 0);
    return (c0 < 0 ? -1.0 : 1.0) * std::sqrt(2.0 * base / (p.hbar * c0 * c0 * K * K));
  }
  const double c0 = gegen0(n - l - 1, l + 2.0), K = hankel_K_exact(n, l, 1);
  return (c0 < 0 ? -1.0 : 1.0) * std::sqrt(0.5 * base / (p.hbar * (l + 1.0) * (l + 1.0) * c0 * c0 * K * K));
}

cplx stationary_wf_m(const QuantumNumbers& qn, const MomentumPoint& mp, double A, double B,
                     const PhysicalParams& params) {
  if (!qn.valid()) throw DomainError("stationary_wf_m: invalid quantum numbers");
  const auto [r, chi, theta, phi] = mp.hyperspherical();
  const double k = params.kappa(), nu = qn.n + 1.0;
  double radial;
  if (r == 0.0) {
    if (B != 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
    radial = qn.n == 0 ? A * 0.5 * k : 0.0;
  } else {
    radial = (A * bessel_j(nu, k * r) + (B != 0.0 ? B * bessel_y(qn.n + 1, k * r) : 0.0)) / r;
  }
  return norm_const_M_exact(qn.n, qn.l, params) * std::pow(std::sin(chi), qn.l) *
         gegenbauer(qn.n - qn.l, qn.l + 1.0, std::cos(chi)) * sph_harm(qn.l, qn.m, theta, phi) * radial;
}

std::pair<cplx, cplx> momentum_basis_data(const QuantumNumbers& qn, const Vec3& eps, const PhysicalParams& p) {
  if (!qn.valid()) throw DomainError("momentum_basis_data: invalid quantum numbers");
  const SolidHarmonics sh(qn.l, eps);
  const double G = gegenbauer(qn.n - qn.l, qn.l + 1.0, abs_eps4(eps, p.R) / p.R) * std::pow(p.R, -qn.l);
  const cplx v = data_amp(qn.n, qn.l, p) * G * sh.value(qn.l, qn.m);
  if (qn.even()) return {v, 0.0};
  return {0.0, v};
}

cplx momentum_basis_phase(const QuantumNumbers& qn, const PhysicalParams& p) {
  if (!qn.valid()) throw DomainError("momentum_basis_phase: invalid quantum numbers");
  // F psi has a = sqrt2 psi+ / R (even) or b = -i sqrt2 psi+ / (hbar R) (odd)
  const double N = norm_const_N(qn.n, qn.l);
  const cplx f = qn.even() ? cplx(std::sqrt(2.0) * N / p.R) : -I1 * std::sqrt(2.0) * N / (p.hbar * p.R);
  return f / data_amp(qn.n, qn.l, p);
}

CauchyData make_momentum_spectral(const SpectralState& s, const PhysicalParams& p) {
  const auto mb = std::make_shared<MomBasis>(spectral_nmax(s), p);
  const auto eval = [s, p, mb](bool want_a) {
    return [s, p, mb, want_a](const Vec3& e) {
      std::vector<cplx> a, b;
      basis_data_all(*mb, e, p, a, b);
      cplx v = 0.0;
      for (const auto& [q, c] : s) v += c * (want_a ? a : b)[qn_index(q)];
      return v;
    };
  };
  CauchyData d = make_cauchy(eval(true), eval(false), p);
  d.spectral = s;
  return d;
}

IvpSolver::IvpSolver(const CauchyData& d, int lmax, int nchi) : d_(d) {
  if (nchi < 4) throw DomainError("IvpSolver: nchi too small");
  if (d.support) {
    local_ = ball_rule(d.support->center, d.support->radius, 24, 12, 24);
    lmax_ = 0;
    return;
  }
  lmax_ = lmax >= 0 ? lmax : (d.spectral ? spectral_lmax(*d.spectral) : 8);
  const GaussRule gc = gauss_legendre(nchi, 0.0, 0.5 * kPi);
  chi_ = gc.x;
  wchi_ = gc.w;
  const int nt = lmax_ + 4, nph = 2 * lmax_ + 4, nlm = (lmax_ + 1) * (lmax_ + 1);
  const GaussRule gt = gauss_legendre(nt, -1.0, 1.0);
  alm_.assign(nlm, std::vector<cplx>(nchi, 0.0));
  blm_.assign(nlm, std::vector<cplx>(nchi, 0.0));
  if (!d.reg0 && !d.fhat1) return;
  const double dph = 2.0 * kPi / nph;
  for (int j = 0; j < nt; ++j) {
    const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]);
    for (int q = 0; q < nph; ++q) {
      const double ph = (q + 0.5) * dph;
      const Vec3 u{st * std::cos(ph), st * std::sin(ph), gt.x[j]};
      const SolidHarmonics Y(lmax_, u);
      const double w = gt.w[j] * dph;
      for (int k = 0; k < nchi; ++k) {
        const Vec3 e = (d.params.R * std::sin(chi_[k])) * u;
        const cplx av = d.a(e), bv = d.b(e);
        for (int l = 0; l <= lmax_; ++l)
          for (int m = -l; m <= l; ++m) {
            const cplx y = std::conj(Y.value(l, m)) * w;
            alm_[l * l + l + m][k] += y * av;
            blm_[l * l + l + m][k] += y * bv;
          }
      }
    }
  }
}

cplx IvpSolver::eval(const MomentumPoint& mp, bool deriv) const {
  const PhysicalParams& p = d_.params;
  const double R = p.R, h = p.hbar, pre = std::pow(2.0 * kPi * h, -1.5);
  cplx v = 0.0;
  for (const Atom& at : d_.atoms) {
    const double e4 = abs_eps4(at.eps0, R), th = e4 * mp.pi4 / h;
    const cplx ph = std::polar(1.0, -dot(at.eps0, mp.pi) / h);
    const double sc = e4 > 0 ? std::sin(th) / e4 : mp.pi4 / h;
    v += pre * ph *
         (deriv ? -(e4 / h) * std::sin(th) * at.c0 + std::cos(th) * at.c1 : std::cos(th) * at.c0 + h * sc * at.c1);
  }
  if (!local_.empty()) {
    for (const auto& [e, w] : local_) {
      const double e4 = abs_eps4(e, R);
      if (e4 <= 0.0) continue;
      const double th = e4 * mp.pi4 / h;
      const cplx ph = std::polar(1.0, -dot(e, mp.pi) / h);
      const cplx f0 = d_.a(e) / e4, f1 = d_.b(e);
      v += w * pre * ph *
           (deriv ? -(e4 / h) * std::sin(th) * f0 + std::cos(th) * f1 : std::cos(th) * f0 + h * std::sin(th) / e4 * f1);
    }
    return v;
  }
  if (!d_.reg0 && !d_.fhat1) return v;
  const double rp = norm(mp.pi);
  const Vec3 u = rp > 0 ? (1.0 / rp) * mp.pi : Vec3{0.0, 0.0, 1.0};
  const SolidHarmonics Y(lmax_, u);
  std::vector<cplx> acc((lmax_ + 1) * (lmax_ + 1), 0.0);
  for (size_t k = 0; k < chi_.size(); ++k) {
    const double s = std::sin(chi_[k]), c = std::cos(chi_[k]);
    const double th = R * c * mp.pi4 / h, ct = std::cos(th), stt = std::sin(th);
    // r^2 dr b / ... in chi: R^2 sin^2 chi [cos a + hbar sin b]; derivative R c (-sin a / hbar + cos b)
    const double ca = deriv ? -R * c * stt / h : ct, cb = deriv ? R * c * ct : h * stt;
    const double wr = wchi_[k] * R * R * s * s;
    for (int l = 0; l <= lmax_; ++l) {
      const double jl = sph_bessel_j(l, R * s * rp / h);
      for (int m = -l; m <= l; ++m) {
        const int i = l * l + l + m;
        acc[i] += wr * jl * (ca * alm_[i][k] + cb * blm_[i][k]);
      }
    }
  }
  const double fp = 4.0 * kPi * pre;
  for (int l = 0; l <= lmax_; ++l)
    for (int m = -l; m <= l; ++m) v += fp * std::conj(i_pow(l)) * Y.value(l, m) * acc[l * l + l + m];
  return v;
}

cplx IvpSolver::value(const MomentumPoint& p) const { return eval(p, false); }
cplx IvpSolver::dpi4(const MomentumPoint& p) const { return eval(p, true); }

cplx solve_ivp(const CauchyData& d, const MomentumPoint& p) { return IvpSolver(d).value(p); }
cplx solve_ivp_dpi4(const CauchyData& d, const MomentumPoint& p) { return IvpSolver(d).dpi4(p); }

Classification classify_data(const Sampler& fhat0, const Sampler& fhat1, const PhysicalParams& p) {
  const double R = p.R, h = p.hbar;
  const auto f0 = [&](const Vec3& e) { return fhat0 ? fhat0(e) : cplx(0.0); };
  const auto f1 = [&](const Vec3& e) { return fhat1 ? fhat1(e) : cplx(0.0); };
  const GaussRule gc = gauss_legendre(24, 0.0, 0.5 * kPi), gt = gauss_legendre(8, -1.0, 1.0);
  const int nph = 16;
  const double dph = 2.0 * kPi / nph;
  std::vector<Vec3> dirs;
  std::vector<double> wd;
  for (int j = 0; j < 8; ++j)
    for (int q = 0; q < nph; ++q) {
      const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]), ph = (q + 0.5) * dph;
      dirs.push_back({st * std::cos(ph), st * std::sin(ph), gt.x[j]});
      wd.push_back(gt.w[j] * dph);
    }
  Classification c;
  double fmax = 0.0;
  for (size_t k = 0; k < gc.x.size(); ++k) {
    const double s = std::sin(gc.x[k]), co = std::cos(gc.x[k]);
    for (size_t j = 0; j < dirs.size(); ++j) {
      const Vec3 e = (R * s) * dirs[j];
      const double a0 = std::norm(f0(e)), a1 = std::norm(f1(e));
      // d^3eps (|eps4| |f0|^2 + hbar^2 |f1|^2 / |eps4|), d^3eps = R^3 s^2 c dchi dOmega
      c.mass_inside += gc.w[k] * wd[j] * (std::pow(R, 4) * s * s * co * co * a0 + h * h * R * R * s * s * a1);
      fmax = std::max(fmax, std::sqrt(a1));
    }
  }
  double rim = 0.0;
  for (const Vec3& u : dirs) {
    rim = std::max(rim, std::abs(f1((R * (1.0 - 1e-6)) * u)));
    fmax = std::max(fmax, std::abs(f1((R * (1.0 - 1e-6)) * u)));
  }
  c.rim_ratio = fmax > 0 ? rim / fmax : 0.0;
  c.rim_flagged = c.rim_ratio > 1e-2;
  const GaussRule gr = gauss_legendre(48, R, 6.0 * R);
  for (size_t k = 0; k < gr.x.size(); ++k)
    for (size_t j = 0; j < dirs.size(); ++j) {
      const Vec3 e = gr.x[k] * dirs[j];
      c.mass_outside += gr.w[k] * wd[j] * gr.x[k] * gr.x[k] * (std::norm(f0(e)) + std::norm(f1(e)));
    }
  c.evanescent_flagged = c.mass_outside > 1e-14 * std::max(1.0, c.mass_inside);
  return c;
}

CauchyData make_cauchy_from_raw(const Sampler& fhat0, const Sampler& fhat1, const PhysicalParams& p) {
  const Classification c = classify_data(fhat0, fhat1, p);
  if (!c.oscillatory())
    throw DomainError(std::string("make_cauchy_from_raw: data not oscillatory") +
                      (c.rim_flagged ? " (fhat1 on the rim)" : "") + (c.evanescent_flagged ? " (evanescent)" : ""));
  const double R = p.R;
  Sampler a = fhat0 ? Sampler([fhat0, R](const Vec3& e) { return abs_eps4(e, R) * fhat0(e); }) : Sampler();
  return make_cauchy(a, fhat1, p);
}

std::pair<double, double> momentum_product_weights(const Vec3& eps, const PhysicalParams& p) {
  static const BRKernel k2(2.0, 3), k1(1.0, 3);
  const double k = p.kappa(), R = p.R, x = norm(eps) / R, e4 = abs_eps4(eps, R);
  const double C = p.hbar * k * k / (4.0 * kPi), T = std::pow(2.0 * kPi, 1.5) / (k * k * k);
  return {C * k * k * T * multiplier(k2, x) / (e4 * e4), C * T * multiplier(k1, x)};
}

namespace {

// <atoms of u, smooth part of v>
cplx atoms_vs_smooth(const CauchyData& u, const CauchyData& v) {
  const double h = u.params.hbar;
  cplx s = 0.0;
  for (const Atom& at : u.atoms) {
    const double e4 = abs_eps4(at.eps0, u.params.R);
    s += std::conj(at.c0) * v.a(at.eps0);
    if (e4 > 0) s += h * h * std::conj(at.c1) * v.b(at.eps0) / e4;
  }
  return s;
}

bool has_smooth(const CauchyData& d) { return static_cast<bool>(d.reg0) || static_cast<bool>(d.fhat1); }

}  // namespace

cplx inner_product_m_spectral(const CauchyData& u, const CauchyData& v, const MomentumGrid& g) {
  if (!u.atoms.empty() && !v.atoms.empty())
    throw DomainError("inner_product_m: two point masses have no finite product; use smeared states");
  cplx s = 0.0;
  if (!u.atoms.empty() && has_smooth(v)) s += atoms_vs_smooth(u, v);
  if (!v.atoms.empty() && has_smooth(u)) s += std::conj(atoms_vs_smooth(v, u));
  if (!has_smooth(u) || !has_smooth(v)) return s;
  const PhysicalParams& p = u.params;
  const auto term = [&](const Vec3& e, double w) {
    const auto [wc, wb] = momentum_product_weights(e, p);
    return w * (wc * std::conj(u.a(e)) * v.a(e) + wb * std::conj(u.b(e)) * v.b(e));
  };
  const LocalSupport* sup = nullptr;
  if (u.support && v.support)
    sup = u.support->radius <= v.support->radius ? &*u.support : &*v.support;
  else if (u.support)
    sup = &*u.support;
  else if (v.support)
    sup = &*v.support;
  if (sup) {
    for (const auto& [e, w] : ball_rule(sup->center, sup->radius, 24, 12, 24))
      if (abs_eps4(e, p.R) > 0) s += term(e, w);
    return s;
  }
  const GaussRule gc = gauss_legendre(g.nchi, 0.0, 0.5 * kPi), gt = gauss_legendre(g.ntheta, -1.0, 1.0);
  const double dph = 2.0 * kPi / g.nphi, R3 = p.R * p.R * p.R;
  for (int k = 0; k < g.nchi; ++k) {
    const double sc = std::sin(gc.x[k]), co = std::cos(gc.x[k]);
    for (int j = 0; j < g.ntheta; ++j) {
      const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]);
      for (int q = 0; q < g.nphi; ++q) {
        const double ph = (q + 0.5) * dph, r = p.R * sc;
        const Vec3 e{r * st * std::cos(ph), r * st * std::sin(ph), r * gt.x[j]};
        s += term(e, gc.w[k] * gt.w[j] * dph * R3 * sc * sc * co);
      }
    }
  }
  return s;
}

Eigen::MatrixXcd gram_m(const std::vector<CauchyData>& states, const MomentumGrid& g) {
  const int ns = static_cast<int>(states.size());
  if (ns == 0) return {};
  const PhysicalParams& p = states[0].params;
  for (const CauchyData& d : states)
    if (!d.atoms.empty() || d.support) throw DomainError("gram_m: needs globally smooth data");
  const GaussRule gc = gauss_legendre(g.nchi, 0.0, 0.5 * kPi), gt = gauss_legendre(g.ntheta, -1.0, 1.0);
  const double dph = 2.0 * kPi / g.nphi, R3 = p.R * p.R * p.R;
  Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(ns, ns);
  Eigen::VectorXcd va(ns), vb(ns);
  for (int k = 0; k < g.nchi; ++k) {
    const double sc = std::sin(gc.x[k]), co = std::cos(gc.x[k]), r = p.R * sc;
    for (int j = 0; j < g.ntheta; ++j) {
      const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]);
      for (int q = 0; q < g.nphi; ++q) {
        const double ph = (q + 0.5) * dph;
        const Vec3 e{r * st * std::cos(ph), r * st * std::sin(ph), r * gt.x[j]};
        const auto [wc, wb] = momentum_product_weights(e, p);
        const double w = gc.w[k] * gt.w[j] * dph * R3 * sc * sc * co;
        for (int i = 0; i < ns; ++i) {
          va(i) = states[i].a(e);
          vb(i) = states[i].b(e);
        }
        G.noalias() += (w * wc) * va.conjugate() * va.transpose() + (w * wb) * vb.conjugate() * vb.transpose();
      }
    }
  }
  return G;
}

SpectralState project_to_momentum_basis(const CauchyData& d, int nmax, const MomentumGrid& g) {
  if (!d.atoms.empty() || d.support) throw DomainError("project_to_momentum_basis: needs globally smooth data");
  const PhysicalParams& p = d.params;
  const MomBasis mb(nmax, p);
  const GaussRule gc = gauss_legendre(g.nchi, 0.0, 0.5 * kPi), gt = gauss_legendre(g.ntheta, -1.0, 1.0);
  const double dph = 2.0 * kPi / g.nphi, R3 = p.R * p.R * p.R;
  std::vector<cplx> acc(mb.amp.size(), 0.0), ba, bb;
  for (int k = 0; k < g.nchi; ++k) {
    const double sc = std::sin(gc.x[k]), co = std::cos(gc.x[k]), r = p.R * sc;
    for (int j = 0; j < g.ntheta; ++j) {
      const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]);
      for (int q = 0; q < g.nphi; ++q) {
        const double ph = (q + 0.5) * dph;
        const Vec3 e{r * st * std::cos(ph), r * st * std::sin(ph), r * gt.x[j]};
        const auto [wc, wb] = momentum_product_weights(e, p);
        const double w = gc.w[k] * gt.w[j] * dph * R3 * sc * sc * co;
        const cplx va = d.a(e), vb = d.b(e);
        basis_data_all(mb, e, p, ba, bb);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += w * (wc * std::conj(ba[i]) * va + wb * std::conj(bb[i]) * vb);
      }
    }
  }
  SpectralState s;
  const std::vector<QuantumNumbers> qs = basis_list(nmax);
  for (size_t i = 0; i < qs.size(); ++i) s[qs[i]] = acc[i];
  return s;
}

cplx inner_product_m_direct(const CauchyData& u, const CauchyData& v, double tol, int nchi) {
  if (!u.spectral || !v.spectral) throw DomainError("inner_product_m_direct: needs (l, m)-decomposed (spectral) data");
  const PhysicalParams& p = u.params;
  const double k = p.kappa(), R = p.R, h = p.hbar;
  const GaussRule gc = gauss_legendre(nchi, 0.0, 0.5 * kPi);
  const double C = h * k * k / (4.0 * kPi), T = std::pow(2.0 * kPi, 1.5) / (k * k * k);
  // numerical kernel transforms at the outer nodes
  std::vector<double> t2(nchi), t1(nchi);
  for (int i = 0; i < nchi; ++i) {
    const double x = std::sin(gc.x[i]);
    t2[i] = T * kernel_transform_numeric(BRKernel(2.0, 3), x, 1e-13);
    t1[i] = T * kernel_transform_numeric(BRKernel(1.0, 3), x, 1e-13);
  }
  // radial Fourier profile of each mode: (2 pi hbar)^{-3/2} 4 pi i^l amp int q^{2-s} j_l(rho q / hbar) J_{n+1}(kappa q) dq
  std::map<std::pair<int, int>, std::vector<cplx>> prof;
  const auto profile = [&](int n, int l) -> const std::vector<cplx>& {
    auto it = prof.find({n, l});
    if (it != prof.end()) return it->second;
    const bool even = (n - l) % 2 == 0;
    const double M = norm_const_M_exact(n, l, p);
    const double amp = even ? M * gegen0(n - l, l + 1.0) : M * 2.0 * (l + 1.0) * gegen0(n - l - 1, l + 2.0);
    std::vector<cplx> out(nchi);
    for (int i = 0; i < nchi; ++i) {
      const double rho = R * std::sin(gc.x[i]);
      const QuadResult q = integrate_bessel_wave(even ? 1.0 : 0.0, {WaveKind::SphBessel, rho / h, l}, n + 1.0, k, tol);
      out[i] = std::pow(2.0 * kPi * h, -1.5) * 4.0 * kPi * i_pow(l) * amp * q.value.real();
    }
    return prof.emplace(std::make_pair(n, l), std::move(out)).first->second;
  };
  cplx s = 0.0;
  for (const auto& [qa, ca] : *u.spectral)
    for (const auto& [qb, cb] : *v.spectral) {
      if (qa.l != qb.l || qa.m != qb.m || qa.even() != qb.even()) continue;
      const std::vector<cplx>& fa = profile(qa.n, qa.l);
      const std::vector<cplx>& fb = profile(qb.n, qb.l);
      cplx acc = 0.0;
      for (int i = 0; i < nchi; ++i) {
        const double sc = std::sin(gc.x[i]), co = std::cos(gc.x[i]);
        const double w = gc.w[i] * R * R * R * sc * sc * co * (qa.even() ? C * k * k * t2[i] : C * t1[i]);
        acc += w * std::conj(fa[i]) * fb[i];
      }
      s += std::conj(ca) * cb * acc;
    }
  return s;
}

CauchyData plane_wave_state(const Vec3& eps0, int sign, const PhysicalParams& p, double width) {
  if (sign != 1 && sign != -1) throw DomainError("plane_wave_state: sign must be +1 or -1");
  const double R = p.R, h = p.hbar;
  if (norm(eps0) > R) throw DomainError("plane_wave_state: eps0 outside the ball");
  const cplx c0 = 1.0 / std::sqrt(2.0);
  CauchyData d;
  d.params = p;
  if (width == 0.0) {
    d.atoms.push_back({eps0, c0, -double(sign) * I1 / h * abs_eps4(eps0, R) * c0});
    return d;
  }
  if (!(width > 0 && width <= R / 50.0)) throw DomainError("plane_wave_state: width must lie in (0, R/50]");
  if (!(norm(eps0) + 5.0 * width < R)) throw DomainError("plane_wave_state: mollified support must lie in B_R");
  d.reg0 = [=](const Vec3& e) { return abs_eps4(e, R) * c0 * mollifier(e - eps0, width); };
  d.fhat1 = [=](const Vec3& e) { return -double(sign) * I1 / h * abs_eps4(e, R) * c0 * mollifier(e - eps0, width); };
  d.support = LocalSupport{eps0, 5.0 * width, 0};
  return d;
}

namespace {

// Generator of the rotation of S^3 (coordinates (eps, eps4)) behind k_i (with_boost) or J_i.
Eigen::Matrix4d rotation_generator(int i, bool with_boost) {
  Eigen::Matrix4d G = Eigen::Matrix4d::Zero();
  // (eps x d)_i moves eps_k at rate sum_j e_{ijk} eps_j
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      const int e = (i == j || j == k || i == k) ? 0 : (((j - i + 3) % 3 == 1) ? 1 : -1);
      G(k, j) += e;
    }
  if (with_boost) {
    G(i, 3) += 1.0;
    G(3, i) -= 1.0;
  }
  return G;
}

Eigen::Matrix4d expm_small(const Eigen::Matrix4d& A) {
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity(), term = Eigen::Matrix4d::Identity();
  for (int k = 1; k < 16; ++k) {
    term = term * A / double(k);
    s += term;
  }
  return s;
}

cplx chart_value(const CauchyData& d, const Eigen::Vector4d& X) {
  const Vec3 e{X(0), X(1), X(2)};
  const double sg = X(3) >= 0 ? 1.0 : -1.0;
  return d.params.R / std::sqrt(2.0) * (d.a(e) + sg * I1 * d.params.hbar * d.b(e));
}

}  // namespace

CauchyData op_apply_m(MomentumOp op, const CauchyData& d) {
  const PhysicalParams p = d.params;
  const double R = p.R, h = p.hbar;
  CauchyData out;
  out.params = p;
  out.support = d.support;
  const int oi = static_cast<int>(op);
  if (op == MomentumOp::Eps1 || op == MomentumOp::Eps2 || op == MomentumOp::Eps3) {
    const int i = oi;
    if (d.reg0) out.reg0 = [d, i](const Vec3& e) { return e[i] * d.a(e); };
    if (d.fhat1) out.fhat1 = [d, i](const Vec3& e) { return e[i] * d.b(e); };
    for (const Atom& at : d.atoms) out.atoms.push_back({at.eps0, at.eps0[i] * at.c0, at.eps0[i] * at.c1});
    return out;
  }
  if (op == MomentumOp::Eps4) {
    if (d.fhat1) out.reg0 = [d, R, h](const Vec3& e) { return I1 * h * abs_eps4(e, R) * d.b(e); };
    if (d.reg0) out.fhat1 = [d, R, h](const Vec3& e) { return -I1 / h * abs_eps4(e, R) * d.a(e); };
    for (const Atom& at : d.atoms) {
      const double e4 = abs_eps4(at.eps0, R);
      out.atoms.push_back({at.eps0, I1 * h * at.c1, -I1 / h * e4 * e4 * at.c0});
    }
    return out;
  }
  if (!d.atoms.empty()) throw DomainError("op_apply_m: generators are not defined on point masses");
  const bool boost = op == MomentumOp::K1 || op == MomentumOp::K2 || op == MomentumOp::K3;
  const int i = boost ? oi - 4 : oi - 7;
  const cplx pref = boost ? I1 / p.kappa() : I1 * h;
  // f'^sigma(eps) at both charts, then back to (a, b)
  std::function<std::pair<cplx, cplx>(const Vec3&)> images;
  if (d.spectral) {
    const SpectralState s = *d.spectral;
    const int nmax = spectral_nmax(s);
    std::vector<std::pair<QuantumNumbers, cplx>> coef;
    for (const auto& [q, c] : s) coef.push_back({q, c * std::conj(momentum_basis_phase(q, p))});
    images = [=](const Vec3& e) {
      cplx f[2];
      for (int c = 0; c < 2; ++c) {
        const BasisAtPoint b(nmax, e, c == 0 ? 1 : -1, p);
        cplx v = 0.0;
        for (const auto& [q, w] : coef) v += w * (boost ? b.k(q)[i] : b.J(q)[i]);
        f[c] = -v;  // momentum generators are minus the transported configuration ones
      }
      return std::make_pair(f[0], f[1]);
    };
  } else {
    const Eigen::Matrix4d G = rotation_generator(i, boost);
    const double hs = 2e-3;
    std::array<Eigen::Matrix4d, 6> E;
    const int offs[6] = {-3, -2, -1, 1, 2, 3};
    const double cf[6] = {-1.0, 9.0, -45.0, 45.0, -9.0, 1.0};
    for (int t = 0; t < 6; ++t) E[t] = expm_small(offs[t] * hs * G);
    images = [=](const Vec3& e) {
      cplx f[2];
      const double e4 = abs_eps4(e, R);
      for (int c = 0; c < 2; ++c) {
        const Eigen::Vector4d X(e[0], e[1], e[2], c == 0 ? e4 : -e4);
        cplx acc = 0.0;
        for (int t = 0; t < 6; ++t) acc += cf[t] * chart_value(d, E[t] * X);
        f[c] = pref * acc / (60.0 * hs);
      }
      return std::make_pair(f[0], f[1]);
    };
  }
  const double s2 = std::sqrt(2.0);
  out.reg0 = [images, R, s2](const Vec3& e) {
    const auto [fp, fm] = images(e);
    return (fp + fm) / (s2 * R);
  };
  out.fhat1 = [images, R, h, s2](const Vec3& e) {
    const auto [fp, fm] = images(e);
    return -I1 * (fp - fm) / (s2 * h * R);
  };
  return out;
}

CauchyData project_circ(const CauchyData& d) {
  CauchyData o = d;
  o.fhat1 = nullptr;
  for (Atom& at : o.atoms) at.c1 = 0.0;
  if (d.spectral) {
    SpectralState s;
    for (const auto& [q, c] : *d.spectral)
      if (q.even()) s[q] = c;
    o.spectral = s;
  }
  return o;
}

CauchyData project_bullet(const CauchyData& d) {
  CauchyData o = d;
  o.reg0 = nullptr;
  for (Atom& at : o.atoms) at.c0 = 0.0;
  if (d.spectral) {
    SpectralState s;
    for (const auto& [q, c] : *d.spectral)
      if (!q.even()) s[q] = c;
    o.spectral = s;
  }
  return o;
}

std::string cauchy_to_json(const CauchyData& d, int lmax, int nchi) {
  if (d.support || !d.atoms.empty()) throw DomainError("cauchy_to_json: only globally smooth data serialize");
  const GaussRule gc = gauss_legendre(nchi, 0.0, 0.5 * kPi);
  nlohmann::json j;
  j["params"] = {{"R", d.params.R}, {"hbar", d.params.hbar}, {"mass", d.params.mass}};
  j["chi"] = gc.x;
  j["lmax"] = lmax;
  // angular channels on the chi grid
  const int nt = lmax + 4, nph = 2 * lmax + 4;
  const GaussRule gt = gauss_legendre(nt, -1.0, 1.0);
  const double dph = 2.0 * kPi / nph;
  const int nlm = (lmax + 1) * (lmax + 1);
  std::vector<std::vector<cplx>> A(nlm, std::vector<cplx>(nchi, 0.0)), B = A;
  for (int jt = 0; jt < nt; ++jt)
    for (int q = 0; q < nph; ++q) {
      const double st = std::sqrt(1.0 - gt.x[jt] * gt.x[jt]), ph = (q + 0.5) * dph;
      const Vec3 u{st * std::cos(ph), st * std::sin(ph), gt.x[jt]};
      const SolidHarmonics Y(lmax, u);
      for (int k = 0; k < nchi; ++k) {
        const Vec3 e = (d.params.R * std::sin(gc.x[k])) * u;
        const cplx av = d.a(e), bv = d.b(e);
        for (int i = 0; i < nlm; ++i) {
          const int l = static_cast<int>(std::sqrt(double(i)));
          const cplx y = std::conj(Y.value(l, i - l * l - l)) * gt.w[jt] * dph;
          A[i][k] += y * av;
          B[i][k] += y * bv;
        }
      }
    }
  j["channels"] = nlohmann::json::array();
  for (int i = 0; i < nlm; ++i) {
    const int l = static_cast<int>(std::sqrt(double(i)));
    nlohmann::json ch{{"l", l}, {"m", i - l * l - l}};
    for (int k = 0; k < nchi; ++k) {
      ch["a"].push_back({A[i][k].real(), A[i][k].imag()});
      ch["b"].push_back({B[i][k].real(), B[i][k].imag()});
    }
    j["channels"].push_back(ch);
  }
  return j.dump();
}

CauchyData cauchy_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const auto& q = j.at("params");
  const PhysicalParams p(q.at("R"), q.at("hbar"), q.at("mass"));
  const std::vector<double> chi = j.at("chi").get<std::vector<double>>();
  const int lmax = j.at("lmax");
  const size_t n = chi.size();
  // barycentric weights for interpolation in chi
  std::vector<double> bw(n, 1.0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (a != b) bw[a] /= chi[a] - chi[b];
  struct Ch {
    int l, m;
    std::vector<cplx> a, b;
  };
  auto chans = std::make_shared<std::vector<Ch>>();
  for (const auto& c : j.at("channels")) {
    Ch ch{c.at("l"), c.at("m"), {}, {}};
    for (const auto& v : c.at("a")) ch.a.push_back({v[0].get<double>(), v[1].get<double>()});
    for (const auto& v : c.at("b")) ch.b.push_back({v[0].get<double>(), v[1].get<double>()});
    chans->push_back(std::move(ch));
  }
  const auto interp = [chi, bw](const std::vector<cplx>& y, double x) {
    cplx num = 0.0;
    double den = 0.0;
    for (size_t k = 0; k < chi.size(); ++k) {
      const double dx = x - chi[k];
      if (dx == 0.0) return y[k];
      num += bw[k] / dx * y[k];
      den += bw[k] / dx;
    }
    return num / den;
  };
  const auto sampler = [=](bool want_a) {
    return [=](const Vec3& e) {
      const double r = norm(e), chi0 = std::asin(std::min(1.0, r / p.R));
      const Vec3 u = r > 0 ? (1.0 / r) * e : Vec3{0.0, 0.0, 1.0};
      const SolidHarmonics Y(lmax, u);
      cplx v = 0.0;
      for (const Ch& c : *chans) v += Y.value(c.l, c.m) * interp(want_a ? c.a : c.b, chi0);
      return v;
    };
  };
  return make_cauchy(sampler(true), sampler(false), p);
}

}  // namespace s3q
