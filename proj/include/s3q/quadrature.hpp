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

// One-dimensional quadrature: adaptive Gauss-Kronrod, ball-radial reduction,
// and semi-infinite Bessel-oscillatory integrals.

#pragma once

#include <functional>
#include <vector>

#include "s3q/types.hpp"

namespace s3q {

struct QuadResult {
  cplx value{0.0, 0.0};
  double error_estimate = 0.0;
  int panels_used = 0;
};

using ComplexFn = std::function<cplx(double)>;
using RealFn = std::function<double(double)>;

/// Gauss-Legendre nodes and weights on [a, b].
struct GaussRule {
  std::vector<double> x, w;
};
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Adaptive G10/K21 bisection on [a, b]. Throws ConvergenceError if the
/// panel budget is exhausted before the error estimate drops below tol.
QuadResult integrate_1d(const ComplexFn& f, double a, double b, double tol, int max_panels = 4000);

/// Same, starting from the given breakpoints (sorted, first/last are the limits).
QuadResult integrate_1d(const ComplexFn& f, const std::vector<double>& breaks, double tol,
                        int max_panels = 4000);

/// k-th positive zero (k >= 1) of J_nu, by McMahon's expansion plus Newton.
double bessel_zero(double nu, int k);

/// int_0^inf f(x) J_nu(c x) dx for non-oscillatory, slowly varying f.
/// Panels end at consecutive zeros of J_nu(c x); the partial sums are
/// accelerated by repeated pairwise averaging until two consecutive depths
/// agree to tol.
QuadResult integrate_oscillatory_bessel(const RealFn& f, double nu, double c, double tol,
                                        int max_panels = 4000);

/// Oscillatory companion factor for integrate_bessel_wave.
enum class WaveKind { Sin, Cos, SphBessel };
struct Wave {
  WaveKind kind = WaveKind::Sin;
  double a = 0.0;  ///< frequency, a > 0
  int l = 0;       ///< order for SphBessel
};

/// int_0^inf x^s W(a x) J_nu(c x) dx where W is sin, cos or j_l.
/// The range is split at X with c X = 40 + nu^2: [0, X] by adaptive
/// Gauss-Kronrod, the tail by resolving J_nu and W into outgoing and incoming
/// exponentials (Hankel expansion, exact for j_l) and integrating each term
/// along the ray in the complex plane on which it decays. Robust when
/// a is close to c, where plain zero-panel sums converge only over the beat
/// period 2 pi / |c - a|. The integral must converge at both ends.
QuadResult integrate_bessel_wave(double s, const Wave& w, double nu, double c, double tol);

/// Amplitude of the Hankel function H^{(sigma)}_nu(z), sigma = +-1, with the
/// factor e^{i sigma z} removed (large-|z| expansion, |z| >= 40 + nu^2).
cplx hankel_amplitude(int sigma, double nu, cplx z);

/// int_X^inf A(x) e^{i omega x} dx for A analytic and algebraically bounded
/// in Re x >= X. For omega != 0 the contour is the ray X + i sign(omega) t;
/// for omega == 0 the map x = X/u is used and A must decay faster than 1/x.
QuadResult integrate_exp_tail(const std::function<cplx(cplx)>& amp, double omega, double X, double tol);

/// Spherical product rule on the ball |u - c| < rho: Gauss in r and cos(theta),
/// uniform in phi. Weights are the plain volume element d^3u.
std::vector<std::pair<Vec3, double>> ball_rule(const Vec3& c, double rho, int nr, int nt, int nphi);

enum class BallWeight { None, InvEps4, Eps4 };

/// int_{B_R} g(|eps|) w(|eps|) d^3 eps = 4 pi int_0^R g(r) w(r) r^2 dr with
/// r = R sin(chi), which makes the 1/sqrt(R^2 - r^2) weight analytic.
QuadResult integrate_ball_radial(const ComplexFn& g, double R, BallWeight weight, double tol);

/// The same integral by a plain r-substitution (endpoint singularity left in).
QuadResult integrate_ball_radial_naive(const ComplexFn& g, double R, BallWeight weight, double tol);

}  // namespace s3q
