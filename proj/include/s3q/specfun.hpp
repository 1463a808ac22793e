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

// Special functions used throughout the library. Everything here is
// implemented in-repo; no external math library is linked into the core.
//
// Supported ranges:
//   bessel_j      order in [0, 60], x in [0, 1e4]
//   bessel_y      integer order in [0, 60], x in (0, 1e4]
//   sph_bessel_j  k in [0, 60], x in [0, 1e4]
//   gegenbauer    degree in [0, 200], lambda > 0

#pragma once

#include <vector>

#include "s3q/types.hpp"

namespace s3q {

/// (x)_+^alpha: zero for x <= 0, x^alpha otherwise.
struct RampPower {
  double alpha;
  double operator()(double x) const { return x > 0.0 ? std::pow(x, alpha) : 0.0; }
};

/// sin(pi x) and cos(pi x) with exact argument reduction.
double sinpi(double x);
double cospi(double x);

/// 1/Gamma(x), finite (zero) at the poles of Gamma.
double rgamma(double x);

double bessel_j(double order, double x);
double bessel_y(int order, double x);
double sph_bessel_j(int k, double x);

/// J_{mu}, J_{mu+1}, ..., J_{mu+count-1} at x for mu in [0, 1) (backward recurrence).
std::vector<double> bessel_j_sequence(double mu, int count, double x);

double gegenbauer(int degree, double lambda, double x);

/// Orthonormal spherical harmonic with the Condon-Shortley phase.
cplx sph_harm(int l, int m, double theta, double phi);

/// Solid harmonic r^l Y_lm(theta, phi) at Cartesian v, with its gradient.
/// Values are polynomial in v, so the gradient is exact.
struct SolidHarmonics {
  /// Fills S_lm and grad S_lm for all l <= lmax, |m| <= l.
  SolidHarmonics(int lmax, const Vec3& v);
  cplx value(int l, int m) const { return val_[idx(l, m)]; }
  const CVec3& grad(int l, int m) const { return grad_[idx(l, m)]; }
  int lmax() const { return lmax_; }

 private:
  static int idx(int l, int m) { return l * l + l + m; }
  int lmax_;
  std::vector<cplx> val_;
  std::vector<CVec3> grad_;
};

/// N_alpha = 1 / (2^alpha Gamma(alpha + 1)), alpha > -1.
double n_alpha(double alpha);

}  // namespace s3q
