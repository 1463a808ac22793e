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
// Momentum space: oscillatory solutions of the Helmholtz equation
// (Delta_4 + kappa^2) phi = 0 on R^4, held by the Fourier data of their Cauchy
// data on the screen pi4 = 0:
//   phi(pi, pi4) = int_{B_R} d^3eps (2 pi hbar)^{-3/2} e^{-i eps.pi/hbar}
//                  [cos(|eps4| pi4/hbar) fhat0 + hbar sin(|eps4| pi4/hbar)/|eps4| fhat1].
// fhat0 diverges like 1/|eps4| at the rim for normalizable states, so the
// stored datum is the regularized a = |eps4| fhat0 together with b = fhat1.
// In these variables the scalar product is
//   <u, v>_m = int_{B_R} d^3eps (a_u* a_v + hbar^2 b_u* b_v) / |eps4|.

#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "s3q/config_space.hpp"
#include "s3q/quadrature.hpp"
#include "s3q/types.hpp"

namespace s3q {

struct MomentumPoint {
  Vec3 pi{0.0, 0.0, 0.0};
  double pi4 = 0.0;
  /// pi4 = r cos chi, pi = r sin chi (sin th cos ph, sin th sin ph, cos th).
  static MomentumPoint from_hyperspherical(double r, double chi, double theta, double phi);
  /// (pi_r, pi_chi, pi_theta, pi_phi).
  std::array<double, 4> hyperspherical() const;
};

/// Point mass of the Fourier data: fhat0 += c0 delta(eps - eps0), fhat1 += c1 delta(eps - eps0).
struct Atom {
  Vec3 eps0;
  cplx c0, c1;
};

struct CauchyData {
  PhysicalParams params;
  Sampler reg0;   ///< a = |eps4| fhat0; empty means zero
  Sampler fhat1;  ///< b = fhat1; empty means zero
  std::vector<Atom> atoms;
  std::optional<LocalSupport> support;    ///< smooth part vanishes outside this ball
  std::optional<SpectralState> spectral;  ///< coefficients over the orthonormal phi_nlm

  cplx a(const Vec3& e) const { return reg0 ? reg0(e) : cplx(0.0, 0.0); }
  cplx b(const Vec3& e) const { return fhat1 ? fhat1(e) : cplx(0.0, 0.0); }
  cplx fhat0(const Vec3& e) const;
};

CauchyData make_cauchy(Sampler reg0, Sampler fhat1, const PhysicalParams& p);

/// Closed forms with removable poles at integer n, evaluated through the limit
/// n -> n + delta (delta = 1e-5, 5e-6, linear Richardson extrapolation).
/// Returns the sign-fixed real value (sign of the channel value C(0)), / sqrt(hbar).
double norm_const_M(int n, int l, int m, const PhysicalParams& p);
/// K^circ (kind 0) or K^bullet (kind 1) from its closed form, same limit.
double hankel_K(int n, int l, int kind);
/// Pole-free forms obtained from Mellin moments:
///   K0 = 2^{l+1} G((n+l+3)/2) / (G((n-l+1)/2) (2l+1)!! C^{l+1}_{n-l}(1)),
///   K1 = 2^l G((n+l+2)/2) / (G((n-l+2)/2) (2l+1)!! C^{l+1}_{n-l}(1)).
double hankel_K_exact(int n, int l, int kind);
/// Oracle: int_0^inf dq q^{1-kind} j_l(a q) J_{n+1}(kappa q) by the zero-panel
/// engine, divided by the closed-form profile; equals K at any a in (0, R).
double hankel_K_numeric(int n, int l, int kind, double a, const PhysicalParams& p, double tol);

/// Constant making phi_nlm unit under <,>_m (exact K). Equals
/// sqrt((n-l)!) times norm_const_M.
double norm_const_M_exact(int n, int l, const PhysicalParams& p);

/// M sin^l(pi_chi) C^{l+1}_{n-l}(cos pi_chi) Y_lm (A J_{n+1}(kappa r) + B Y_{n+1}(kappa r)) / r,
/// r = pi_r, M = norm_const_M_exact.
cplx stationary_wf_m(const QuantumNumbers& qn, const MomentumPoint& p, double A, double B,
                     const PhysicalParams& params);

/// Fourier data (a, b) of phi_nlm at eps in B_R.
std::pair<cplx, cplx> momentum_basis_data(const QuantumNumbers& qn, const Vec3& eps, const PhysicalParams& p);
/// Phase c with F psi_nlm = c phi_nlm (|c| = 1).
cplx momentum_basis_phase(const QuantumNumbers& qn, const PhysicalParams& p);

CauchyData make_momentum_spectral(const SpectralState& s, const PhysicalParams& p);

/// Evaluator of phi(pi, pi4) and its pi4-derivative from Cauchy data by
/// (l, m)-reduced radial quadrature: the angular channels of (a, b) are taken
/// once on nchi Gauss nodes in chi (|eps| = R sin chi), then each point costs
/// one radial sum with spherical Bessel weights. Atoms are added exactly and a
/// locally supported smooth part is integrated on a ball rule.
class IvpSolver {
 public:
  explicit IvpSolver(const CauchyData& d, int lmax = -1, int nchi = 96);
  cplx value(const MomentumPoint& p) const;
  cplx dpi4(const MomentumPoint& p) const;

 private:
  cplx eval(const MomentumPoint& p, bool deriv) const;
  CauchyData d_;
  int lmax_;
  std::vector<double> chi_, wchi_;
  std::vector<std::vector<cplx>> alm_, blm_;  // [l*l+l+m][k]
  std::vector<std::pair<Vec3, double>> local_;
};

cplx solve_ivp(const CauchyData& d, const MomentumPoint& p);
cplx solve_ivp_dpi4(const CauchyData& d, const MomentumPoint& p);

struct Classification {
  double mass_inside = 0.0;    ///< <,>_m-weighted mass in the open ball
  double rim_ratio = 0.0;      ///< max |fhat1| just inside the rim over max |fhat1|
  double mass_outside = 0.0;   ///< plain L2 mass of (fhat0, fhat1) outside the ball
  bool rim_flagged = false;
  bool evanescent_flagged = false;
  bool oscillatory() const { return !rim_flagged && !evanescent_flagged; }
};

/// Raw Fourier data on R^3 (fhat0 and fhat1 unregularized).
Classification classify_data(const Sampler& fhat0, const Sampler& fhat1, const PhysicalParams& p);
/// Classifies and wraps raw data; non-oscillatory data is a DomainError.
CauchyData make_cauchy_from_raw(const Sampler& fhat0, const Sampler& fhat1, const PhysicalParams& p);

/// Weights per d^3eps multiplying a_u* a_v and b_u* b_v in the momentum scalar
/// product, assembled from the Bochner-Riesz multipliers:
///   C kappa^2 T_2 / |eps4|^2 and C T_1, T_alpha = (2 pi)^{3/2} kappa^{-3} m_alpha(|eps|/R),
///   C = hbar kappa^2 / (4 pi).
std::pair<double, double> momentum_product_weights(const Vec3& eps, const PhysicalParams& p);

struct MomentumGrid {
  int nchi = 32, ntheta = 24, nphi = 48;
};

/// C [kappa^2 <a0, K_2 b0> + <a1, K_1 b1>] evaluated in the Fourier domain.
cplx inner_product_m_spectral(const CauchyData& u, const CauchyData& v, const MomentumGrid& g = {});

/// Gram matrix of globally smooth data on the grid of inner_product_m_spectral,
/// sampling every state once.
Eigen::MatrixXcd gram_m(const std::vector<CauchyData>& states, const MomentumGrid& g = {});

/// Coefficients <phi_nlm, d>_m for n <= nmax on the product grid.
SpectralState project_to_momentum_basis(const CauchyData& d, int nmax, const MomentumGrid& g = {});

/// The literal double integral over pi, pi' for spectrally given data: radial
/// Hankel transforms of the Cauchy data by oscillatory quadrature, numerical
/// kernel transforms, and an outer Gauss sum over nchi nodes in chi.
cplx inner_product_m_direct(const CauchyData& u, const CauchyData& v, double tol, int nchi = 16);

/// N e^{-(i/hbar)(eps0.pi + sign |eps4| pi4)}, N = 1 / (sqrt2 (2 pi hbar)^{3/2}).
/// width = 0 gives exact atoms; width > 0 mollifies (width <= R/50).
CauchyData plane_wave_state(const Vec3& eps0, int sign, const PhysicalParams& p, double width = 0.0);

enum class MomentumOp { Eps1, Eps2, Eps3, Eps4, K1, K2, K3, J1, J2, J3 };

/// eps_i multiplies the data by eps_i; eps4 maps (a, b) -> (i hbar |eps4| b, -(i/hbar) |eps4| a).
/// k_i and J_i act on f^{+-} = (R/sqrt2)(a +- i hbar b) as
/// (i/kappa)(sigma |eps4| d_i + (eps x d)_i) and i hbar (eps x d)_i.
/// Spectral data use exact basis gradients; other data use a sixth-order
/// difference along the corresponding rotation of S^3.
CauchyData op_apply_m(MomentumOp op, const CauchyData& d);

CauchyData project_circ(const CauchyData& d);
CauchyData project_bullet(const CauchyData& d);

/// Radial grid (Gauss nodes in chi) with per-(l, m) samples of a and b.
std::string cauchy_to_json(const CauchyData& d, int lmax, int nchi = 24);
CauchyData cauchy_from_json(const std::string& text);

}  // namespace s3q
