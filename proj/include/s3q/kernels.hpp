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
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "s3q/quadrature.hpp"
#include "s3q/types.hpp"

namespace s3q {

/// Bochner-Riesz kernel k_alpha(p) = J_alpha(|p|)/|p|^alpha on R^dim.
/// Evaluation needs alpha > -1; scalar-product use needs alpha > dim/2 - 1.
struct BRKernel {
  double alpha = 0.0;
  int dim = 3;
  BRKernel() = default;
  BRKernel(double a, int d);
  /// Throws DomainError unless alpha > dim/2 - 1.
  void require_positive() const;
};

double kernel_value(const BRKernel& k, double r);

/// N_{a-d/2} (1 - x^2)_+^{a-d/2}: Fourier transform of k_alpha at |x|.
double multiplier(const BRKernel& k, double xnorm);

/// Numerical Fourier transform of k_alpha at |x| (measure d^dp/(2 pi)^{d/2}).
/// d = 3 uses the sine reduction, d = 1 the cosine one.
double kernel_transform_numeric(const BRKernel& k, double xnorm, double tol);

/// |kernel_transform_numeric - multiplier|.
double fourier_pair_residual(const BRKernel& k, double xnorm, double tol);

struct Composition {
  double constant;
  BRKernel result;
};

/// k_a * k_b = constant k_{a+b-d/2} with the (2 pi)^{-d/2} measure.
Composition compose(const BRKernel& a, const BRKernel& b);

/// Direct radially reduced convolution (2 pi)^{-3/2} int d^3q k_a(q) k_b(p - q), d = 3,
/// b.alpha >= 1. Oracle for compose.
QuadResult radial_convolution(const BRKernel& a, const BRKernel& b, double p, double tol);

/// Band-limited function held by its Fourier data on nondimensional radii x = |eps|/R.
/// w are quadrature weights so that sum w |v|^2 is the L2 norm squared.
struct FourierData {
  int dim = 3;
  std::vector<double> x;
  std::vector<double> w;
  std::vector<cplx> v;
};

/// Radial Gauss grid over the closed unit ball with weights S_{d-1} x^{d-1} dx.
FourierData ball_grid(int dim, int nodes);

/// Multiplies the data pointwise by multiplier(k, x).
FourierData apply_operator(const BRKernel& k, const FourierData& f);

/// sum w conj(f) g.
cplx fourier_inner(const FourierData& f, const FourierData& g);

struct SpectrumInterval {
  double lo, hi;
  bool lo_closed, hi_closed;
  bool is_point() const { return lo == hi; }
  std::string describe() const;
};

/// Range of the multiplier over the closed unit ball.
SpectrumInterval spectrum_interval(const BRKernel& k);

/// K^{-1} A^dagger K; throws LinearAlgebraError unless K is positive definite.
Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& K);

}  // namespace s3q
