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
#include "s3q/fourier_bridge.hpp"

#include "s3q/kernels.hpp"

namespace s3q {

namespace {

const cplx I1(0.0, 1.0);

// T_alpha(|eps|) = int d^3u e^{i eps.u / hbar} k_alpha(kappa |u|)
double kernel_ft(double alpha, const Vec3& e, const PhysicalParams& p) {
  const double k = p.kappa();
  return std::pow(2.0 * kPi, 1.5) / (k * k * k) * multiplier(BRKernel(alpha, 3), norm(e) / p.R);
}

}  // namespace

CauchyData forward_ft(const ChartedWaveFunction& f) {
  const PhysicalParams p = f.params;
  const double c = 1.0 / (std::sqrt(2.0) * p.R), h = p.hbar;
  CauchyData d;
  d.params = p;
  if (f.plus || f.minus) {
    d.reg0 = [f, c](const Vec3& e) { return c * (f.eval(e, 1) + f.eval(e, -1)); };
    d.fhat1 = [f, c, h](const Vec3& e) { return -I1 * c / h * (f.eval(e, 1) - f.eval(e, -1)); };
  }
  if (f.support) d.support = LocalSupport{f.support->center, f.support->radius, 0};
  if (f.spectral) {
    SpectralState s;
    for (const auto& [q, v] : *f.spectral) s[q] = v * momentum_basis_phase(q, p);
    d.spectral = s;
  }
  return d;
}

ChartedWaveFunction inverse_ft(const CauchyData& d) {
  if (!d.atoms.empty()) throw DomainError("inverse_ft: point masses have no normalizable preimage");
  const PhysicalParams p = d.params;
  const double c = p.R / std::sqrt(2.0), h = p.hbar;
  ChartedWaveFunction f;
  f.params = p;
  if (d.reg0 || d.fhat1) {
    f.plus = [d, c, h](const Vec3& e) { return c * (d.a(e) + I1 * h * d.b(e)); };
    f.minus = [d, c, h](const Vec3& e) { return c * (d.a(e) - I1 * h * d.b(e)); };
  }
  if (d.support) f.support = LocalSupport{d.support->center, d.support->radius, 0};
  if (d.spectral) {
    SpectralState s;
    for (const auto& [q, v] : *d.spectral) s[q] = v * std::conj(momentum_basis_phase(q, p));
    f.spectral = s;
  }
  return f;
}

double frame_const_circ(const PhysicalParams& p) { return p.R / (std::sqrt(2.0) * kPi * p.hbar * p.kappa()); }

double frame_const_bullet(const PhysicalParams& p) {
  return std::sqrt(2.0) * p.R / (kPi * p.hbar * p.kappa() * p.kappa());
}

ChartedWaveFunction pi_frame_state_config(const FrameLabel& label, const PhysicalParams& p) {
  const Vec3 q = label.pi0;
  const double h = p.hbar, R = p.R;
  if (label.kind == FrameKind::Circ) {
    const double M = frame_const_circ(p);
    const Sampler s = [q, h, M](const Vec3& e) { return std::polar(M, dot(q, e) / h); };
    return make_config_samplers(s, s, p);
  }
  const double M = frame_const_bullet(p);
  const auto s = [q, h, M, R](double sg) {
    return Sampler([=](const Vec3& e) { return sg * I1 / h * abs_eps4(e, R) * std::polar(M, dot(q, e) / h); });
  };
  return make_config_samplers(s(1.0), s(-1.0), p);
}

CauchyData pi_frame_state_momentum(const FrameLabel& label, const PhysicalParams& p) {
  const Vec3 q = label.pi0;
  const double h = p.hbar, R = p.R, pre = std::pow(2.0 * kPi * h, -1.5);
  // phihat(eps) = (2 pi hbar)^{-3/2} e^{i eps.pi0 / hbar} T_alpha(eps) times the screen constant
  if (label.kind == FrameKind::Circ)
    return make_cauchy(
        [=](const Vec3& e) { return abs_eps4(e, R) * 2.0 * pre * kernel_ft(1.0, e, p) * std::polar(1.0, dot(e, q) / h); },
        nullptr, p);
  return make_cauchy(nullptr,
                     [=](const Vec3& e) { return 8.0 * h * h * pre * kernel_ft(2.0, e, p) * std::polar(1.0, dot(e, q) / h); },
                     p);
}

double frame_kernel(double alpha, const Vec3& pi, const Vec3& pi0, const PhysicalParams& p) {
  return kernel_value(BRKernel(alpha, 3), p.kappa() * norm(pi - pi0));
}

double frame_constant(const PhysicalParams& p) {
  const double k = p.kappa();
  return k * k * k * std::sqrt(p.hbar) / (8.0 * std::sqrt(2.0 * kPi * kPi * kPi));
}

namespace {

// Reconstructed (f+, f-) at eps from the chart values of f there.
std::pair<cplx, cplx> recon_at(const PhysicalParams& p, double D, cplx fp, cplx fm, const Vec3& e) {
  const double k = p.kappa(), h = p.hbar, R = p.R, e4 = abs_eps4(e, R);
  const double pre = D * std::pow(2.0 * kPi * h, 1.5);
  const cplx a = (fp + fm) / (std::sqrt(2.0) * R), b = -I1 * (fp - fm) / (std::sqrt(2.0) * h * R);
  // T_2 / |eps4| stays finite at the rim
  const cplx circ = pre * k * k * frame_const_circ(p) * kernel_ft(2.0, e, p) / e4 * a;
  const cplx bull = pre * 0.5 / h * frame_const_bullet(p) * e4 * kernel_ft(1.0, e, p) * b;
  return {circ + I1 * bull, circ - I1 * bull};
}

}  // namespace

ChartedWaveFunction frame_reconstruct(const ChartedWaveFunction& f, std::optional<double> D) {
  const PhysicalParams p = f.params;
  const double Dv = D.value_or(frame_constant(p));
  ChartedWaveFunction out;
  out.params = p;
  out.support = f.support;
  if (!f.plus && !f.minus) return out;
  const auto side = [=](int sg) {
    return Sampler([=](const Vec3& e) {
      const auto [rp, rm] = recon_at(p, Dv, f.eval(e, 1), f.eval(e, -1), e);
      return sg > 0 ? rp : rm;
    });
  };
  out.plus = side(1);
  out.minus = side(-1);
  return out;
}

double rel_l2_error(const ChartedWaveFunction& f, const ChartedWaveFunction& g, const ConfigGrid& grid) {
  const ChartedWaveFunction diff = make_config_samplers([f, g](const Vec3& e) { return f.eval(e, 1) - g.eval(e, 1); },
                                                        [f, g](const Vec3& e) { return f.eval(e, -1) - g.eval(e, -1); },
                                                        f.params);
  ChartedWaveFunction gq = g;
  gq.spectral.reset();
  ChartedWaveFunction dq = diff;
  if (f.support && g.support) dq.support = g.support;
  const double den = std::sqrt(std::abs(inner_product_c_quadrature(gq, gq, grid)));
  const double num = std::sqrt(std::abs(inner_product_c_quadrature(dq, dq, grid)));
  return den > 0 ? num / den : num;
}

FrameReport tight_frame_check(const std::vector<ChartedWaveFunction>& samples, double tol, std::optional<double> D,
                              const ConfigGrid& grid) {
  FrameReport r;
  if (samples.empty()) return r;
  const PhysicalParams p = samples[0].params;
  r.D_used = D.value_or(frame_constant(p));
  std::vector<GridNode> nodes;
  for (const GridNode& nd : config_nodes(grid, p))
    if (nd.chart == 1) nodes.push_back(nd);
  double nc = 0, dc = 0, nb = 0, db = 0;
  for (const ChartedWaveFunction& f : samples) {
    double err = 0, ref = 0;
    for (const GridNode& nd : nodes) {
      const cplx fp = f.eval(nd.eps, 1), fm = f.eval(nd.eps, -1);
      const auto [gp, gm] = recon_at(p, r.D_used, fp, fm, nd.eps);
      err += nd.w * (std::norm(gp - fp) + std::norm(gm - fm));
      ref += nd.w * (std::norm(fp) + std::norm(fm));
      // per-channel least squares: D_fit = D <rec, f> / <rec, rec>
      const cplx fe = 0.5 * (fp + fm), fo = 0.5 * (fp - fm), ge = 0.5 * (gp + gm), go = 0.5 * (gp - gm);
      nc += 2.0 * nd.w * (std::conj(ge) * fe).real();
      dc += 2.0 * nd.w * std::norm(ge);
      nb += 2.0 * nd.w * (std::conj(go) * fo).real();
      db += 2.0 * nd.w * std::norm(go);
    }
    const double e = ref > 0 ? std::sqrt(err / ref) : std::sqrt(err);
    r.rel_err.push_back(e);
    r.max_rel_err = std::max(r.max_rel_err, e);
  }
  r.D_fit_circ = dc > 0 ? r.D_used * nc / dc : 0.0;
  r.D_fit_bullet = db > 0 ? r.D_used * nb / db : 0.0;
  r.tight = r.max_rel_err < tol;
  return r;
}

}  // namespace s3q
