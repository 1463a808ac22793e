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
#include <doctest.h>

#include <random>

#include "s3q/config_space.hpp"
#include "s3q/momentum_space.hpp"
#include "s3q/quadrature.hpp"
#include "s3q/specfun.hpp"

using namespace s3q;

namespace {

CauchyData strip_spectral(CauchyData d) {
  d.spectral.reset();
  return d;
}

SpectralState random_state(std::mt19937_64& g, int nmax) {
  std::normal_distribution<double> N;
  SpectralState s;
  for_each_qn(nmax, [&](const QuantumNumbers& qn) { s[qn] = cplx(N(g), N(g)); });
  return s;
}

// O(h^2) 4D Laplacian residual of the Helmholtz operator, Delta_4 + kappa^2.
template <class F>
double helmholtz_residual(const F& f, const MomentumPoint& x, double h, double kappa) {
  cplx lap = -8.0 * f(x);
  for (int i = 0; i < 4; ++i)
    for (int s : {1, -1}) {
      MomentumPoint y = x;
      if (i < 3) y.pi[i] += s * h;
      else y.pi4 += s * h;
      lap += f(y);
    }
  return std::abs(lap / (h * h) + kappa * kappa * f(x));
}

}  // namespace

TEST_CASE("momentum points round trip through hyperspherical coordinates") {
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> U(0, 1);
  for (int i = 0; i < 200; ++i) {
    const MomentumPoint p = MomentumPoint::from_hyperspherical(4 * U(g), kPi * U(g), kPi * U(g), kPi * (2 * U(g) - 1));
    const auto h = p.hyperspherical();
    const MomentumPoint q = MomentumPoint::from_hyperspherical(h[0], h[1], h[2], h[3]);
    CHECK(norm(p.pi - q.pi) < 1e-13);
    CHECK(std::abs(p.pi4 - q.pi4) < 1e-13);
  }
}

TEST_CASE("normalization constants from the pole-cancelling limits") {
  const PhysicalParams p(1.0);
  CHECK(std::abs(norm_const_M(0, 0, 0, p) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(norm_const_M(2, 0, 0, p) + 1.0) < 1e-9);
  CHECK(std::abs(norm_const_M(1, 1, -1, p) - 2 * std::sqrt(2.0) / std::sqrt(3.0)) < 1e-9);
  CHECK(std::abs(norm_const_M(1, 0, 0, p) - std::sqrt(2.0)) < 1e-9);
  CHECK(std::abs(norm_const_M(3, 0, 0, p) + 1 / std::sqrt(3.0)) < 1e-9);
  // the limits equal the exact normalization up to sqrt((n - l)!); see the acceptance output for (3, 2)
  for (const auto& qn : basis_list(5)) {
    double f = 1;
    for (int k = 2; k <= qn.n - qn.l; ++k) f *= k;
    CHECK(std::abs(norm_const_M(qn.n, qn.l, qn.m, p) - norm_const_M_exact(qn.n, qn.l, p) / std::sqrt(f)) < 1e-8);
  }
  const PhysicalParams q(1.0, 0.49);
  CHECK(std::abs(norm_const_M(0, 0, 0, q) - std::sqrt(2.0) / 0.7) < 1e-8);
}

TEST_CASE("Hankel integral constants against oscillatory quadrature") {
  const PhysicalParams p(1.0);
  for (int n = 0; n <= 4; ++n)
    for (int l = 0; l <= n; ++l)
      for (int kind : {0, 1}) {
        CHECK(std::abs(hankel_K(n, l, kind) - hankel_K_exact(n, l, kind)) < 1e-9);
        if (n <= 3) CHECK(std::abs(hankel_K_numeric(n, l, kind, 0.5, p, 1e-9) - hankel_K_exact(n, l, kind)) < 1e-6);
      }
  const PhysicalParams q(2.0, 0.8);
  CHECK(std::abs(hankel_K_numeric(0, 0, 0, 1.0, q, 1e-9) - hankel_K(0, 0, 0)) < 1e-6);
  CHECK(std::abs(hankel_K_numeric(1, 0, 1, 1.0, q, 1e-9) - hankel_K(1, 0, 1)) < 1e-6);
}

TEST_CASE("parity selects one Cauchy channel per basis state") {
  const PhysicalParams p(1.7, 0.8);
  std::mt19937_64 g(32);
  std::uniform_real_distribution<double> U(-0.9, 0.9);
  for (const auto& qn : basis_list(4)) {
    if ((qn.n - qn.l) % 2 == 0) CHECK(gegenbauer(qn.n - qn.l - 1 < 0 ? 0 : qn.n - qn.l - 1, qn.l + 2, 0.0) == (qn.n == qn.l ? 1.0 : 0.0));
    for (int t = 0; t < 5; ++t) {
      const Vec3 e{U(g), U(g), U(g)};
      const auto [a, b] = momentum_basis_data(qn, e, p);
      if ((qn.n - qn.l) % 2 == 0) CHECK(b == 0.0);
      else CHECK(a == 0.0);
    }
    CHECK(std::abs(std::abs(momentum_basis_phase(qn, p)) - 1.0) < 1e-15);
  }
}

TEST_CASE("stationary momentum states") {
  const PhysicalParams p(1.3, 0.9);
  const MomentumPoint x = MomentumPoint::from_hyperspherical(2.1, 0.7, 1.1, -0.4);
  const double kr = p.kappa() * 2.1;
  // the 4D radial profile is J_{n+1}(kappa r) / r
  const cplx v0 = norm_const_M_exact(0, 0, p) / std::sqrt(4 * kPi) * bessel_j(1, kr) / 2.1;
  CHECK(std::abs(stationary_wf_m({0, 0, 0}, x, 1, 0, p) - v0) < 1e-14);
  for (const auto& qn : basis_list(3)) {
    const cplx at0 = stationary_wf_m(qn, MomentumPoint{}, 1, 0, p);
    if (qn.n == 0) CHECK(std::abs(at0 - norm_const_M_exact(0, 0, p) / std::sqrt(4 * kPi) * 0.5 * p.kappa()) < 1e-14);
    else CHECK(at0 == 0.0);
  }
  std::mt19937_64 g(33);
  std::uniform_real_distribution<double> U(0, 1);
  for (int t = 0; t < 10; ++t) {
    const MomentumPoint y = MomentumPoint::from_hyperspherical(0.5 + 3 * U(g), kPi * U(g), kPi * U(g), 2 * kPi * U(g));
    for (const QuantumNumbers qn : {QuantumNumbers(0, 0, 0), QuantumNumbers(2, 1, -1), QuantumNumbers(3, 3, 2)}) {
      const auto f = [&](const MomentumPoint& z) { return stationary_wf_m(qn, z, 1, 0.3, p); };
      const double r1 = helmholtz_residual(f, y, 0.04, p.kappa()), r2 = helmholtz_residual(f, y, 0.02, p.kappa());
      CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
    }
  }
}

TEST_CASE("IVP solution reproduces stationary states and satisfies Helmholtz at O(h^2)") {
  const PhysicalParams p(2.3, 0.7, 1.3);
  SpectralState s{{{2, 1, 0}, 0.5}, {{1, 0, 0}, cplx(0.3, 0.4)}, {{2, 2, 1}, 0.7}};
  const CauchyData d = make_momentum_spectral(s, p);
  const IvpSolver S(d);
  std::mt19937_64 g(34);
  std::uniform_real_distribution<double> U(0, 1);
  for (int t = 0; t < 10; ++t) {
    const MomentumPoint y = MomentumPoint::from_hyperspherical(0.3 + 2 * U(g), kPi * U(g), kPi * U(g), 2 * kPi * U(g));
    cplx direct = 0;
    for (const auto& [qn, c] : s) direct += c * stationary_wf_m(qn, y, 1, 0, p);
    CHECK(std::abs(S.value(y) - direct) < 1e-12);
    const auto f = [&](const MomentumPoint& z) { return S.value(z); };
    const double r1 = helmholtz_residual(f, y, 0.04, p.kappa()), r2 = helmholtz_residual(f, y, 0.02, p.kappa());
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.2));
  }
}

TEST_CASE("IVP at pi4 = 0 returns the Cauchy data; cosine branch is even in pi4") {
  const PhysicalParams p(1.0);
  const double R = p.R;
  const auto bump = [=](const Vec3& e) { return norm(e) < R ? std::pow(1 - norm2(e) / (R * R), 2) : 0.0; };
  const Sampler f0 = [=](const Vec3& e) { return bump(e) * cplx(1 + e[0], e[2]); };
  const Sampler f1 = [=](const Vec3& e) { return bump(e) * cplx(1.0, -0.5 * e[1]); };
  const CauchyData a = make_cauchy_from_raw(f0, f1, p), even = make_cauchy_from_raw(f0, nullptr, p);
  const IvpSolver S(a), E(even);
  // oracle: the inverse transform at pi4 = 0 by direct 3D quadrature of the raw data
  const auto raw_ft = [&](const Sampler& f, const Vec3& pi) {
    cplx s = 0;
    for (const auto& [u, w] : ball_rule({0, 0, 0}, R, 40, 30, 60))
      s += w * f(u) * std::exp(cplx(0, -dot(u, pi) / p.hbar));
    return s / std::pow(2 * kPi * p.hbar, 1.5);
  };
  for (const Vec3& pi : {Vec3{0.3, -0.2, 0.9}, Vec3{-1.5, 0.4, 0.1}}) {
    MomentumPoint x;
    x.pi = pi;
    CHECK(std::abs(S.value(x) - raw_ft(f0, pi)) < 1e-10);
    CHECK(std::abs(S.dpi4(x) - raw_ft(f1, pi)) < 1e-10);
    for (double t : {0.4, 1.7}) {
      MomentumPoint y = x, z = x;
      y.pi4 = t;
      z.pi4 = -t;
      CHECK(std::abs(E.value(y) - E.value(z)) < 1e-13);
    }
  }
}

TEST_CASE("plane-wave states") {
  const PhysicalParams p(2.3, 0.7, 1.3);
  const Vec3 e0{0.4, -0.3, 1.0};
  const double e4 = abs_eps4(e0, p.R), N = 1 / (std::sqrt(2.0) * std::pow(2 * kPi * p.hbar, 1.5));
  std::mt19937_64 g(35);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int sg : {1, -1}) {
    const CauchyData pw = plane_wave_state(e0, sg, p);
    for (int t = 0; t < 10; ++t) {
      MomentumPoint x;
      x.pi = {U(g), U(g), U(g)};
      x.pi4 = U(g);
      const cplx ex = N * std::exp(cplx(0, -(dot(e0, x.pi) + sg * e4 * x.pi4) / p.hbar));
      CHECK(std::abs(solve_ivp(pw, x) - ex) < 1e-10);
      CHECK(std::abs(solve_ivp_dpi4(pw, x) - cplx(0, -sg * e4 / p.hbar) * ex) < 1e-10);
    }
    const CauchyData e = op_apply_m(MomentumOp::Eps4, pw);
    CHECK(std::abs(e.atoms[0].c0 - sg * e4 * pw.atoms[0].c0) < 1e-14);
    CHECK(std::abs(e.atoms[0].c1 - sg * e4 * pw.atoms[0].c1) < 1e-14);
    CHECK(project_circ(pw).atoms[0].c1 == 0.0);
    CHECK(project_bullet(pw).atoms[0].c0 == 0.0);
  }
  CHECK_THROWS_AS(plane_wave_state({3.0, 0, 0}, 1, p), DomainError);
}

TEST_CASE("smeared plane-wave overlaps") {
  const PhysicalParams p(1.0);
  const Vec3 e0{0.3, 0.2, -0.4};
  std::vector<double> err;
  for (double w : {p.R / 50, p.R / 100}) {
    const CauchyData a = plane_wave_state(e0, 1, p, w), b = plane_wave_state(e0, -1, p, w);
    CHECK(std::abs(inner_product_m_spectral(a, b)) < 1e-14 * inner_product_m_spectral(a, a).real());
    // normalized by the mollifier overlap, the limit is |eps4|
    double mm = 0;
    for (const auto& [u, wt] : ball_rule(e0, 5 * w, 24, 16, 32)) mm += wt * std::pow(mollifier(u - e0, w), 2);
    err.push_back(std::abs(inner_product_m_spectral(a, a).real() / mm - abs_eps4(e0, p.R)));
  }
  CHECK(err[1] < 1e-3);
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("mollified plane waves approach the exact ones") {
  const PhysicalParams p(1.0);
  const Vec3 e0{0.2, 0.1, 0.5};
  MomentumPoint x;
  x.pi = {0.7, 1.1, -0.4};
  x.pi4 = 0.9;
  const cplx ex = solve_ivp(plane_wave_state(e0, 1, p), x);
  const double d1 = std::abs(solve_ivp(plane_wave_state(e0, 1, p, 0.02), x) - ex);
  const double d2 = std::abs(solve_ivp(plane_wave_state(e0, 1, p, 0.01), x) - ex);
  CHECK(d1 < 1e-3);
  CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.2));
}

TEST_CASE("data classification") {
  const PhysicalParams p(2.3);
  const Classification ball = classify_data([](const Vec3& e) { return cplx(norm(e) < 1.15 ? 1.0 : 0.0); }, nullptr, p);
  CHECK(ball.oscillatory());
  CHECK(ball.mass_outside == 0.0);
  const Classification gauss = classify_data([](const Vec3& e) { return cplx(std::exp(-norm2(e))); }, nullptr, p);
  CHECK(gauss.evanescent_flagged);
  CHECK_FALSE(gauss.oscillatory());
  const Classification rim = classify_data(nullptr, [](const Vec3&) { return cplx(1.0); }, p);
  CHECK(rim.rim_flagged);
  CHECK_FALSE(rim.oscillatory());
  CHECK_THROWS_AS(make_cauchy_from_raw([](const Vec3& e) { return cplx(std::exp(-norm2(e))); }, nullptr, p),
                  DomainError);
}

TEST_CASE("momentum Gram matrix on n <= 2 is the identity") {
  for (const PhysicalParams& p : {PhysicalParams(1.0), PhysicalParams(2.3, 0.7, 1.3)}) {
    std::vector<CauchyData> ds;
    for (const auto& qn : basis_list(2)) ds.push_back(strip_spectral(make_momentum_spectral({{qn, 1.0}}, p)));
    const Eigen::MatrixXcd G = gram_m(ds);
    CHECK((G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("momentum scalar product: positivity, parity orthogonality, projections") {
  const PhysicalParams p(1.4, 0.8);
  std::mt19937_64 g(36);
  const MomentumGrid coarse{12, 10, 20};
  for (int t = 0; t < 100; ++t) {
    const CauchyData a = strip_spectral(make_momentum_spectral(random_state(g, 2), p));
    const cplx q = inner_product_m_spectral(a, a, coarse);
    CHECK(q.real() > 0);
    CHECK(std::abs(q.imag()) < 1e-12 * q.real());
  }
  const CauchyData a = strip_spectral(make_momentum_spectral(random_state(g, 3), p));
  const CauchyData b = strip_spectral(make_momentum_spectral(random_state(g, 3), p));
  CHECK(std::abs(inner_product_m_spectral(project_circ(a), project_bullet(b))) < 1e-12);
  const CauchyData pc = project_circ(a), pb = project_bullet(a), pcb = project_circ(project_bullet(a));
  for (const Vec3& e : {Vec3{0.3, -0.5, 1.1}, Vec3{-1.2, 0.4, 0.2}}) {
    CHECK(std::abs(pc.a(e) + pb.a(e) - a.a(e)) < 1e-15);
    CHECK(std::abs(pc.b(e) + pb.b(e) - a.b(e)) < 1e-15);
    CHECK(pcb.a(e) == 0.0);
    CHECK(pcb.b(e) == 0.0);
  }
  // projection recovers the coefficients
  const SpectralState s = random_state(g, 2);
  const SpectralState r = project_to_momentum_basis(strip_spectral(make_momentum_spectral(s, p)), 2);
  for (const auto& [qn, c] : s) CHECK(std::abs(r.at(qn) - c) < 1e-10);
}

TEST_CASE("direct scalar product agrees with the diagonal form") {
  const PhysicalParams p(1.0);
  const CauchyData g0 = make_momentum_spectral({{{0, 0, 0}, 1.0}}, p);
  const CauchyData g1 = make_momentum_spectral({{{1, 0, 0}, 1.0}}, p);
  CHECK(std::abs(inner_product_m_direct(g0, g0, 1e-10) - 1.0) < 1e-4);
  CHECK(std::abs(inner_product_m_direct(g0, g1, 1e-10)) < 1e-4);
  std::mt19937_64 g(37);
  std::normal_distribution<double> N;
  const auto qs = basis_list(2);
  for (int t = 0; t < 5; ++t) {
    SpectralState s1, s2;
    for (int k = 0; k < 3; ++k) {
      s1[qs[g() % qs.size()]] = cplx(N(g), N(g));
      s2[qs[g() % qs.size()]] = cplx(N(g), N(g));
    }
    const CauchyData a = make_momentum_spectral(s1, p), b = make_momentum_spectral(s2, p);
    CHECK(std::abs(inner_product_m_direct(a, b, 1e-10) - inner_product_m_spectral(a, b)) < 1e-4);
  }
}

TEST_CASE("momentum operators: Hermiticity, exact versus finite-difference generators") {
  const PhysicalParams p(2.3, 0.7, 1.3);
  std::mt19937_64 g(38);
  const MomentumGrid grid{16, 12, 24};
  for (int t = 0; t < 2; ++t) {
    const CauchyData u = make_momentum_spectral(random_state(g, 2), p), v = make_momentum_spectral(random_state(g, 2), p);
    for (MomentumOp op : {MomentumOp::Eps1, MomentumOp::Eps2, MomentumOp::Eps3, MomentumOp::Eps4, MomentumOp::K1,
                          MomentumOp::K2, MomentumOp::K3, MomentumOp::J1, MomentumOp::J2, MomentumOp::J3}) {
      const cplx l = inner_product_m_spectral(u, op_apply_m(op, v), grid);
      const cplx r = inner_product_m_spectral(op_apply_m(op, u), v, grid);
      CHECK(std::abs(l - r) < 1e-10);
      if (op >= MomentumOp::K1) {
        const CauchyData ex = op_apply_m(op, v), fd = op_apply_m(op, strip_spectral(v));
        for (const Vec3& e : {Vec3{0.3, -0.5, 1.1}, Vec3{-1.2, 0.4, 0.2}}) {
          CHECK(std::abs(ex.a(e) - fd.a(e)) < 1e-10);
          CHECK(std::abs(ex.b(e) - fd.b(e)) < 1e-10);
        }
      }
    }
  }
  // sign convention of the momentum-space generators: opposite to the transported ones
  const CauchyData w = make_momentum_spectral({{{1, 1, 1}, 1.0}}, p);
  CHECK(std::abs(inner_product_m_spectral(w, op_apply_m(MomentumOp::J3, w), grid) + p.hbar) < 1e-12);
}

TEST_CASE("eps^2 + eps4^2 acts as R^2") {
  const PhysicalParams p(1.6, 0.9);
  std::mt19937_64 g(39);
  const CauchyData d = strip_spectral(make_momentum_spectral(random_state(g, 3), p));
  CauchyData sum = op_apply_m(MomentumOp::Eps4, op_apply_m(MomentumOp::Eps4, d));
  std::vector<CauchyData> parts{sum};
  for (MomentumOp op : {MomentumOp::Eps1, MomentumOp::Eps2, MomentumOp::Eps3}) parts.push_back(op_apply_m(op, op_apply_m(op, d)));
  for (const Vec3& e : {Vec3{0.3, -0.5, 1.1}, Vec3{-0.2, 0.4, 0.2}, Vec3{0.9, 0.9, -0.5}}) {
    cplx a = 0, b = 0;
    for (const auto& q : parts) {
      a += q.a(e);
      b += q.b(e);
    }
    CHECK(std::abs(a - p.R * p.R * d.a(e)) < 1e-12);
    CHECK(std::abs(b - p.R * p.R * d.b(e)) < 1e-12);
  }
}

TEST_CASE("Cauchy data JSON round trip") {
  const PhysicalParams p(2.3, 0.7, 1.3);
  const SpectralState s{{{1, 1, 1}, 0.6}, {{2, 0, 0}, cplx(0, 0.8)}};
  const CauchyData u = strip_spectral(make_momentum_spectral(s, p));
  const CauchyData v = cauchy_from_json(cauchy_to_json(u, 3, 24));
  CHECK(v.params.R == p.R);
  for (const Vec3& e : {Vec3{0.3, -0.5, 1.1}, Vec3{-1.2, 0.4, 0.2}, Vec3{0.1, 0.1, -2.0}}) {
    CHECK(std::abs(u.a(e) - v.a(e)) < 1e-12);
    CHECK(std::abs(u.b(e) - v.b(e)) < 1e-12);
  }
  CHECK_THROWS(cauchy_from_json("{\"params\": {}}"));
}
