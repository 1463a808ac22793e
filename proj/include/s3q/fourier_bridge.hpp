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
// Generalized Fourier transform between the charted configuration space and
// the Cauchy data of momentum space, the pi-frame states of both sides and the
// frame resolution of the identity.
//   forward:  a = (f+ + f-) / (sqrt2 R),  b = -i (f+ - f-) / (sqrt2 hbar R)
//   inverse:  f+- = (R / sqrt2) (a +- i hbar b)
// Both are unitary for inner_product_c and inner_product_m_spectral.

#pragma once

#include <optional>
#include <vector>

#include "s3q/config_space.hpp"
#include "s3q/momentum_space.hpp"

namespace s3q {

CauchyData forward_ft(const ChartedWaveFunction& f);
/// Atoms (non-normalizable data) are a DomainError.
ChartedWaveFunction inverse_ft(const CauchyData& d);

enum class FrameKind { Circ, Bullet };

struct FrameLabel {
  Vec3 pi0{0.0, 0.0, 0.0};
  FrameKind kind = FrameKind::Circ;
};

/// M_c = R / (sqrt2 pi hbar kappa), M'_c = sqrt2 R / (pi hbar kappa^2): unit norm under inner_product_c.
double frame_const_circ(const PhysicalParams& p);
double frame_const_bullet(const PhysicalParams& p);

/// circ: f+- = M_c e^{i pi0.eps / hbar}; bullet: f+- = +-(i/hbar) M'_c |eps4| e^{i pi0.eps / hbar}.
ChartedWaveFunction pi_frame_state_config(const FrameLabel& label, const PhysicalParams& p);
/// Screen data (phi0, phidot) = (2 k_1(kappa |pi - pi0|), 0) for circ and
/// (0, 8 hbar^2 k_2(kappa |pi - pi0|)) for bullet, held by their Fourier data.
CauchyData pi_frame_state_momentum(const FrameLabel& label, const PhysicalParams& p);

/// k_alpha(kappa |pi - pi0|) as a function of pi, evaluated directly (d = 3 kernel).
double frame_kernel(double alpha, const Vec3& pi, const Vec3& pi0, const PhysicalParams& p);

/// kappa^3 sqrt(hbar) / (8 sqrt(2 pi^3)).
double frame_constant(const PhysicalParams& p);

/// Frame expansion with kernels kappa^2 k_2 (circ) and k_1 / 2 (bullet), the
/// pi, pi' integrals done as Fourier multipliers on the forward data:
///   f+- = D (2 pi hbar)^{3/2} [kappa^2 M_c T_2 a / |eps4| +- (i / 2 hbar) M'_c |eps4| T_1 b],
///   T_alpha = (2 pi)^{3/2} kappa^{-3} m_alpha(|eps| / R).
/// D defaults to frame_constant.
ChartedWaveFunction frame_reconstruct(const ChartedWaveFunction& f, std::optional<double> D = std::nullopt);

struct FrameReport {
  std::vector<double> rel_err;  ///< per sample, relative L2
  double max_rel_err = 0.0;
  double D_used = 0.0;
  double D_fit_circ = 0.0;    ///< least-squares D for the even parts (0 when absent)
  double D_fit_bullet = 0.0;  ///< same for the odd parts
  bool tight = false;         ///< all errors below tol
};

FrameReport tight_frame_check(const std::vector<ChartedWaveFunction>& samples, double tol,
                              std::optional<double> D = std::nullopt, const ConfigGrid& grid = {});

/// Relative L2 distance ||f - g||_c / ||g||_c by quadrature.
double rel_l2_error(const ChartedWaveFunction& f, const ChartedWaveFunction& g, const ConfigGrid& grid = {});

}  // namespace s3q
