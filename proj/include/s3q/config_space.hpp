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
// Configuration space: wavefunctions on S^3 as pairs (f+, f-) on the ball
// B_R, one per hemisphere chart. The scalar product is
//   <f, g>_c = (1/R^2) sum_sigma int_{B_R} f^sigma* g^sigma / |eps4| d^3eps,
// i.e. the plain integral over S^3 in units where the sphere has radius 1.
// The 1/R^2 calibration makes psi_nlm exactly orthonormal for every R.

#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "s3q/types.hpp"

namespace s3q {

using Sampler = std::function<cplx(const Vec3&)>;

/// Point of S^3 in chart coordinates. chart is +1, -1, or 0 on the equator.
struct ConfigPoint {
  Vec3 eps{0.0, 0.0, 0.0};
  int chart = 1;
  double R = 1.0;

  ConfigPoint() = default;
  ConfigPoint(const Vec3& e, int c, double radius);
  static ConfigPoint from_hyperspherical(double chi, double theta, double phi, double radius);
  double eps4() const;
  /// (chi, theta, phi) with eps4 = R cos chi, chi in [0, pi].
  std::array<double, 3> hyperspherical() const;
};

/// Ball of support in one chart (chart 0: both charts).
struct LocalSupport {
  Vec3 center{0.0, 0.0, 0.0};
  double radius = 0.0;
  int chart = 0;
};

/// (f+, f-) on B_R. Empty samplers mean zero. When spectral is set the
/// samplers evaluate exactly that finite expansion over psi_nlm.
struct ChartedWaveFunction {
  PhysicalParams params;
  Sampler plus, minus;
  std::optional<SpectralState> spectral;
  std::optional<LocalSupport> support;

  cplx eval(const Vec3& eps, int chart) const;
};

ChartedWaveFunction make_config_spectral(const SpectralState& s, const PhysicalParams& p);
ChartedWaveFunction make_config_samplers(Sampler plus, Sampler minus, const PhysicalParams& p);

/// Tensor-product rule on each hemisphere: Gauss in chi on (0, pi/2),
/// Gauss in cos(theta), uniform in phi. Exact for psi_nlm products with
/// 2 n_max < min(nchi, 2 ntheta) and 2 n_max < nphi.
struct ConfigGrid {
  int nchi = 32, ntheta = 24, nphi = 48;
};

struct GridNode {
  Vec3 eps;
  int chart;
  double w;
};
std::vector<GridNode> config_nodes(const ConfigGrid& g, const PhysicalParams& p);

/// Coefficient dot product when both carry spectra, otherwise quadrature.
cplx inner_product_c(const ChartedWaveFunction& f, const ChartedWaveFunction& g, const ConfigGrid& grid = {});
/// Always by quadrature (local ball rule when either factor has a support).
cplx inner_product_c_quadrature(const ChartedWaveFunction& f, const ChartedWaveFunction& g,
                                const ConfigGrid& grid = {});

/// 2^l l! sqrt(2 (n+1) (n-l)! / (pi (n+l+1)!)).
double norm_const_N(int n, int l);

/// N_nl sin^l(chi) C^{l+1}_{n-l}(cos chi) Y_lm(theta, phi).
cplx stationary_wf(const QuantumNumbers& qn, const ConfigPoint& p);

/// n (n+2) / (2 mass kappa^2).
double hamiltonian_eigenvalue(const QuantumNumbers& qn, const PhysicalParams& p);

/// All psi_nlm with n <= nmax at one chart point, with the generator images
/// k_i psi = -(i/kappa)(sigma |eps4| d_i + (eps x grad)_i) psi and
/// J_i psi = -i hbar (eps x grad)_i psi, computed from exact gradients
/// (skipped when generators is false).
class BasisAtPoint {
 public:
  BasisAtPoint(int nmax, const Vec3& eps, int chart, const PhysicalParams& p, bool generators = true);
  int index(const QuantumNumbers& qn) const;
  cplx value(const QuantumNumbers& qn) const { return val_[index(qn)]; }
  const CVec3& k(const QuantumNumbers& qn) const { return k_[index(qn)]; }
  const CVec3& J(const QuantumNumbers& qn) const { return J_[index(qn)]; }
  int size() const { return static_cast<int>(val_.size()); }
  cplx value_at(int i) const { return val_[i]; }
  const CVec3& k_at(int i) const { return k_[i]; }
  const CVec3& J_at(int i) const { return J_[i]; }

 private:
  int nmax_;
  std::vector<cplx> val_;
  std::vector<CVec3> k_, J_;
};

/// Canonical ordering of (n, l, m) for n <= nmax, as used by BasisAtPoint.
std::vector<QuantumNumbers> basis_list(int nmax);

/// Normalized Gaussian truncated at 5 smear, renormalized over the truncated ball.
double mollifier(const Vec3& u, double smear);

/// Chart sigma: sigma R^2 |eps4| delta_smear(eps - eps0); other chart zero.
/// <phi_{eps0 sigma}, f>_c tends to sigma f^sigma(eps0) as smear -> 0.
ChartedWaveFunction position_eigenstate(const Vec3& eps0, int sign, double smear, const PhysicalParams& p);

/// sum_sigma int d^3eps' / (R^2 |eps4'|) phi_{eps' sigma}(eps) <phi_{eps' sigma}, f>_c at one point.
cplx position_resolution(const ChartedWaveFunction& f, const Vec3& eps, int chart, double smear);

ChartedWaveFunction reflect(const ChartedWaveFunction& f);
ChartedWaveFunction project_even(const ChartedWaveFunction& f);
ChartedWaveFunction project_odd(const ChartedWaveFunction& f);
ChartedWaveFunction sign_op(const ChartedWaveFunction& f);
ChartedWaveFunction abs_eps4_op(const ChartedWaveFunction& f);
/// eps4 = sign_op o abs_eps4_op.
ChartedWaveFunction eps4_op(const ChartedWaveFunction& f);

/// EpsSquare is the composite sum_i eps_i^2 + eps4^2.
enum class ConfigOp { Eps1, Eps2, Eps3, Eps4, K1, K2, K3, J1, J2, J3, H, EpsSquare };

/// <psi_qn1, O psi_qn2>_c by quadrature. H uses sum_i <k_i psi, k_i psi> / (2 mass).
cplx op_matrix_element(ConfigOp op, const QuantumNumbers& qn1, const QuantumNumbers& qn2,
                       const PhysicalParams& p, const ConfigGrid& grid = {});
/// Whole block over basis_list(nmax). op == std::nullopt gives the Gram matrix.
Eigen::MatrixXcd config_op_matrix(std::optional<ConfigOp> op, int nmax, const PhysicalParams& p,
                                  const ConfigGrid& grid = {});

/// Projection <psi_nlm, f>_c for n <= nmax by quadrature.
SpectralState project_to_basis(const ChartedWaveFunction& f, int nmax, const ConfigGrid& grid = {});

double spectral_norm(const SpectralState& s);
cplx spectral_dot(const SpectralState& a, const SpectralState& b);

/// {"params": {...}, "coeffs": [{"n","l","m","re","im"}]}.
std::string spectral_to_json(const SpectralState& s, const PhysicalParams& p);
SpectralState spectral_from_json(const std::string& text, PhysicalParams* p = nullptr);

}  // namespace s3q
