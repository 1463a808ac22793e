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
#include "s3q/dynamics_group.hpp"

#include <iomanip>

namespace s3q {

namespace {

const cplx I1(0.0, 1.0);

double signed_eps4(const Vec3& e, int chart, double R) {
  if (chart != 1 && chart != -1) throw DomainError("chart must be +1 or -1");
  if (norm(e) > R) throw DomainError("eps outside the ball");
  return chart * abs_eps4(e, R);
}

}  // namespace

GroupElement group_identity() { return {}; }

GroupElement group_compose(const GroupElement& g1, const GroupElement& g2, const PhysicalParams& p) {
  const double R = p.R, k = p.kappa();
  const double a1 = signed_eps4(g1.eps, g1.chart, R), a2 = signed_eps4(g2.eps, g2.chart, R);
  GroupElement g;
  g.eps = (1.0 / R) * (a2 * g1.eps + a1 * g2.eps + cross(g1.eps, g2.eps));
  const double e4 = (a1 * a2 - dot(g1.eps, g2.eps)) / R;
  if (e4 == 0.0) throw DomainError("group_compose: result on the equator, chart undefined");
  g.chart = e4 > 0 ? 1 : -1;
  g.pi = g1.pi + (1.0 / R) * (a1 * g2.pi + cross(g1.eps, g2.pi) + g2.pi4 * g1.eps);
  g.pi4 = g1.pi4 + (a1 * g2.pi4 - dot(g1.eps, g2.pi)) / R;
  g.zeta = g1.zeta * g2.zeta * std::polar(1.0, -k * ((a1 / R - 1.0) * g2.pi4 - dot(g1.eps, g2.pi) / R));
  return g;
}

GroupElement group_inverse(const GroupElement& g, const PhysicalParams& p) {
  const double R = p.R, k = p.kappa(), a = signed_eps4(g.eps, g.chart, R);
  GroupElement h;
  h.eps = -1.0 * g.eps;
  h.chart = g.chart;
  // qbar p with qbar = (eps4, -eps) / R
  const double re = (a * g.pi4 + dot(g.eps, g.pi)) / R;
  h.pi4 = -re;
  h.pi = -1.0 / R * (a * g.pi - g.pi4 * g.eps - cross(g.eps, g.pi));
  h.zeta = std::conj(g.zeta) * std::polar(1.0, k * (re - g.pi4));
  return h;
}

double geodesic_omega(const Vec3& eps0, const Vec3& epsdot0, int chart, const PhysicalParams& p) {
  const double e4 = signed_eps4(eps0, chart, p.R);
  if (e4 == 0.0) throw DomainError("geodesic_omega: metric singular on the equator");
  const double ed = dot(eps0, epsdot0);
  return std::sqrt(norm2(epsdot0) + ed * ed / (e4 * e4)) / p.R;
}

double geodesic_omega_from_energy(const Vec3& eps0, const Vec3& epsdot0, int chart, const PhysicalParams& p) {
  const double w = geodesic_omega(eps0, epsdot0, chart, p);
  const double H = 0.5 * p.mass * w * w * p.R * p.R;
  return std::sqrt(8.0 * H / (p.mass * p.R * p.R));
}

GeodesicState geodesic_flow(const Vec3& eps0, const Vec3& epsdot0, double t, int chart, const PhysicalParams& p) {
  const double e4 = signed_eps4(eps0, chart, p.R);
  if (e4 == 0.0) throw DomainError("geodesic_flow: initial point on the equator");
  const double w = geodesic_omega(eps0, epsdot0, chart, p);
  const double ed4 = -dot(eps0, epsdot0) / e4;
  GeodesicState s;
  if (w == 0.0) {
    s.pos = ConfigPoint(eps0, chart, p.R);
    s.eps4dot = 0.0;
    return s;
  }
  const double c = std::cos(w * t), sn = std::sin(w * t);
  const Vec3 x = c * eps0 + (sn / w) * epsdot0;
  const double x4 = c * e4 + sn / w * ed4;
  s.vel = (-w * sn) * eps0 + c * epsdot0;
  s.eps4dot = -w * sn * e4 + c * ed4;
  const int ch = x4 > 0 ? 1 : (x4 < 0 ? -1 : 0);
  // keep |eps| <= R against rounding
  const double r = norm(x);
  s.pos = ConfigPoint(r > p.R ? (p.R / r) * x : x, ch, p.R);
  s.chart_flipped = ch != chart;
  return s;
}

Vec3 noether_theta(const Vec3& eps, double eps4, const Vec3& epsdot, double eps4dot, const PhysicalParams& p) {
  return (1.0 / p.R) * (eps4 * epsdot - eps4dot * eps + cross(epsdot, eps));
}

Vec3 noether_theta(const GeodesicState& s, const PhysicalParams& p) {
  return noether_theta(s.pos.eps, s.pos.eps4(), s.vel, s.eps4dot, p);
}

void write_trajectory_csv(std::ostream& os, const Vec3& eps0, const Vec3& epsdot0, int chart,
                          const std::vector<double>& times, const PhysicalParams& p) {
  os << "t,eps1,eps2,eps3,eps4,theta1,theta2,theta3\n" << std::setprecision(17);
  for (double t : times) {
    const GeodesicState s = geodesic_flow(eps0, epsdot0, t, chart, p);
    const Vec3 th = noether_theta(s, p);
    os << t << ',' << s.pos.eps[0] << ',' << s.pos.eps[1] << ',' << s.pos.eps[2] << ',' << s.pos.eps4() << ','
       << th[0] << ',' << th[1] << ',' << th[2] << '\n';
  }
}

SpectralState evolve_spectral(const SpectralState& s, double t, const PhysicalParams& p) {
  SpectralState out;
  for (const auto& [q, c] : s) out[q] = c * std::polar(1.0, -hamiltonian_eigenvalue(q, p) * t / p.hbar);
  return out;
}

double evolve_consistency_check(const SpectralState& s, double t, const PhysicalParams& p, const MomentumGrid& mg,
                                const ConfigGrid& cg) {
  int nmax = 0;
  for (const auto& [q, c] : s) nmax = std::max(nmax, q.n);
  // sampled configuration function, no spectral shortcut
  ChartedWaveFunction f = make_config_spectral(s, p);
  f.spectral.reset();
  const CauchyData d = forward_ft(f);
  SpectralState c = project_to_momentum_basis(d, nmax, mg);
  for (auto& [q, v] : c) v *= std::polar(1.0, -hamiltonian_eigenvalue(q, p) * t / p.hbar);
  CauchyData dt = make_momentum_spectral(c, p);
  dt.spectral.reset();
  const ChartedWaveFunction back = inverse_ft(dt);
  const ChartedWaveFunction direct = make_config_spectral(evolve_spectral(s, t, p), p);
  const ChartedWaveFunction diff =
      make_config_samplers([&](const Vec3& e) { return back.eval(e, 1) - direct.eval(e, 1); },
                           [&](const Vec3& e) { return back.eval(e, -1) - direct.eval(e, -1); }, p);
  return std::sqrt(std::abs(inner_product_c_quadrature(diff, diff, cg)));
}

}  // namespace s3q
