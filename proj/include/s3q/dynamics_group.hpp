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
// Classical geodesic flow on S^3, the extended group law of positions,
// momenta and the central U(1), and spectral time evolution in both
// representations.

#pragma once

#include <ostream>
#include <vector>

#include "s3q/config_space.hpp"
#include "s3q/fourier_bridge.hpp"
#include "s3q/momentum_space.hpp"

namespace s3q {

/// eps4 = chart sqrt(R^2 - |eps|^2); |zeta| = 1.
struct GroupElement {
  Vec3 eps{0.0, 0.0, 0.0};
  int chart = 1;
  Vec3 pi{0.0, 0.0, 0.0};
  double pi4 = 0.0;
  cplx zeta{1.0, 0.0};

  double eps4(double R) const { return chart * abs_eps4(eps, R); }
};

GroupElement group_identity();

/// g'' = g' g with g' = g1, g = g2:
///   eps''  = (eps4 eps' + eps4' eps + eps' x eps) / R,   eps4'' = (eps4' eps4 - eps'.eps) / R,
///   pi''   = pi' + (eps4' pi + eps' x pi + pi4 eps') / R,  pi4'' = pi4' + (eps4' pi4 - eps'.pi) / R,
///   zeta'' = zeta' zeta exp(-i kappa ((eps4'/R - 1) pi4 - eps'.pi / R)).
/// The chart of the result is the sign of eps4''; an equatorial result is a DomainError.
GroupElement group_compose(const GroupElement& g1, const GroupElement& g2, const PhysicalParams& p);

/// Two-sided inverse: eps -> -eps in the same chart, (pi4, pi) -> -qbar (pi4, pi),
/// zeta -> conj(zeta) exp(i kappa ((eps4 pi4 + eps.pi) / R - pi4)).
GroupElement group_inverse(const GroupElement& g, const PhysicalParams& p);

struct GeodesicState {
  ConfigPoint pos;
  Vec3 vel{0.0, 0.0, 0.0};
  double eps4dot = 0.0;
  bool chart_flipped = false;  ///< the hemisphere at t differs from the initial one
};

/// omega = sqrt(g_ij epsdot^i epsdot^j) / R, g = delta + eps eps / eps4^2.
double geodesic_omega(const Vec3& eps0, const Vec3& epsdot0, int chart, const PhysicalParams& p);
/// sqrt(8 H / (m R^2)) with H = (m/2) g_ij epsdot^i epsdot^j; twice geodesic_omega.
double geodesic_omega_from_energy(const Vec3& eps0, const Vec3& epsdot0, int chart, const PhysicalParams& p);

/// eps(t) = eps cos(omega t) + epsdot sin(omega t) / omega, eps4 likewise with
/// epsdot4 = -eps.epsdot / eps4. A zero velocity stays put.
GeodesicState geodesic_flow(const Vec3& eps0, const Vec3& epsdot0, double t, int chart, const PhysicalParams& p);

/// theta^i = (1/R)(eps4 epsdot - epsdot4 eps + epsdot x eps)^i, conserved along the flow.
Vec3 noether_theta(const Vec3& eps, double eps4, const Vec3& epsdot, double eps4dot, const PhysicalParams& p);
Vec3 noether_theta(const GeodesicState& s, const PhysicalParams& p);

/// Columns t, eps1, eps2, eps3, eps4, theta1, theta2, theta3.
void write_trajectory_csv(std::ostream& os, const Vec3& eps0, const Vec3& epsdot0, int chart,
                          const std::vector<double>& times, const PhysicalParams& p);

/// c_nlm(t) = exp(-i E_n t / hbar) c_nlm(0), E_n = n(n+2) / (2 m kappa^2) from hamiltonian_eigenvalue.
SpectralState evolve_spectral(const SpectralState& s, double t, const PhysicalParams& p);

/// Config function -> forward_ft -> expansion over phi_nlm by <phi_nlm, .>_m ->
/// mode phases -> momentum data -> inverse_ft, against direct spectral
/// evolution. Returns the L2 norm of the difference (quadrature).
double evolve_consistency_check(const SpectralState& s, double t, const PhysicalParams& p,
                                const MomentumGrid& mg = {}, const ConfigGrid& cg = {});

}  // namespace s3q
