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
#include "s3q/config_space.hpp"

#include <json.hpp>

#include "s3q/quadrature.hpp"
#include "s3q/specfun.hpp"

namespace s3q {

namespace {

struct LocalRule {
  int nr = 24, nt = 12, nphi = 24;
};

std::vector<std::pair<Vec3, double>> ball_nodes(const Vec3& c, double rho, const LocalRule& lr) {
  return ball_rule(c, rho, lr.nr, lr.nt, lr.nphi);
}

int qn_offset(int n) { return n * (n + 1) * (2 * n + 1) / 6; }

}  // namespace

ConfigPoint::ConfigPoint(const Vec3& e, int c, double radius) : eps(e), chart(c), R(radius) {
  if (!(R > 0)) throw DomainError("ConfigPoint: R must be positive");
  if (c < -1 || c > 1) throw DomainError("ConfigPoint: chart must be -1, 0 or +1");
  if (norm(e) > R * (1.0 + 1e-14)) throw DomainError("ConfigPoint: |eps| exceeds R");
}

ConfigPoint ConfigPoint::from_hyperspherical(double chi, double theta, double phi, double radius) {
  if (!(chi >= 0.0 && chi <= kPi)) throw DomainError("from_hyperspherical: chi must lie in [0, pi]");
  const double s = radius * std::sin(chi);
  const double c = std::cos(chi);
  const int chart = chi == 0.5 * kPi ? 0 : (c > 0 ? 1 : -1);
  ConfigPoint p;
  p.eps = {s * std::sin(theta) * std::cos(phi), s * std::sin(theta) * std::sin(phi), s * std::cos(theta)};
  p.chart = chart;
  p.R = radius;
  return p;
}

double ConfigPoint::eps4() const { return chart * abs_eps4(eps, R); }

std::array<double, 3> ConfigPoint::hyperspherical() const {
  const double r = norm(eps);
  const double chi = std::atan2(r, chart == 0 ? 0.0 : eps4());
  const double theta = std::atan2(std::hypot(eps[0], eps[1]), eps[2]);
  const double phi = std::atan2(eps[1], eps[0]);
  return {chi, theta, phi};
}

cplx ChartedWaveFunction::eval(const Vec3& eps, int chart) const {
  const Sampler& s = chart < 0 ? minus : plus;
  return s ? s(eps) : cplx(0.0, 0.0);
}

std::vector<QuantumNumbers> basis_list(int nmax) {
  std::vector<QuantumNumbers> out;
  for_each_qn(nmax, [&](const QuantumNumbers& q) { out.push_back(q); });
  return out;
}

double norm_const_N(int n, int l) {
  if (!(n >= l && l >= 0)) throw DomainError("norm_const_N: require n >= l >= 0");
  // (n-l)!/(n+l+1)! via lgamma keeps large n finite
  const double lr = std::lgamma(n - l + 1.0) - std::lgamma(n + l + 2.0);
  return std::ldexp(1.0, l) * std::tgamma(l + 1.0) * std::sqrt(2.0 * (n + 1) / kPi * std::exp(lr));
}

cplx stationary_wf(const QuantumNumbers& qn, const ConfigPoint& p) {
  if (!qn.valid()) throw DomainError("stationary_wf: invalid quantum numbers");
  const auto [chi, theta, phi] = p.hyperspherical();
  return norm_const_N(qn.n, qn.l) * std::pow(std::sin(chi), qn.l) *
         gegenbauer(qn.n - qn.l, qn.l + 1.0, std::cos(chi)) * sph_harm(qn.l, qn.m, theta, phi);
}

double hamiltonian_eigenvalue(const QuantumNumbers& qn, const PhysicalParams& p) {
  if (!qn.valid()) throw DomainError("hamiltonian_eigenvalue: invalid quantum numbers");
  const double k = p.kappa();
  return qn.n * (qn.n + 2.0) / (2.0 * p.mass * k * k);
}

BasisAtPoint::BasisAtPoint(int nmax, const Vec3& eps, int chart, const PhysicalParams& p, bool generators)
    : nmax_(nmax) {
  if (nmax < 0) throw DomainError("BasisAtPoint: nmax must be >= 0");
  const double R = p.R, sg = chart < 0 ? -1.0 : 1.0;
  const double e4 = abs_eps4(eps, R), x = sg * e4 / R;
  const SolidHarmonics sh(nmax, eps);
  const int count = qn_offset(nmax + 1);
  val_.resize(count);
  if (generators) {
    k_.resize(count);
    J_.resize(count);
  }
  const cplx mik(0.0, -1.0 / p.kappa()), mih(0.0, -p.hbar);
  for (int l = 0; l <= nmax; ++l) {
    // C^{l+1}_k(x) and C^{l+2}_k(x) for k <= nmax - l by the three-term recurrence
    std::vector<double> c1(nmax - l + 1), c2(nmax - l + 1);
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double>& c = pass == 0 ? c1 : c2;
      const double lam = l + 1.0 + pass;
      for (int j = 0; j <= nmax - l; ++j) {
        if (j == 0)
          c[j] = 1.0;
        else if (j == 1)
          c[j] = 2.0 * lam * x;
        else
          c[j] = (2.0 * x * (j + lam - 1.0) * c[j - 1] - (j + 2.0 * lam - 2.0) * c[j - 2]) / j;
      }
    }
    const double rl = std::pow(R, -l);
    for (int n = l; n <= nmax; ++n) {
      const int kd = n - l;
      const double N = norm_const_N(n, l) * rl;
      const double C = c1[kd], Cp = kd > 0 ? 2.0 * (l + 1.0) * c2[kd - 1] : 0.0;
      for (int m = -l; m <= l; ++m) {
        const int i = qn_offset(n) + l * l + m + l;
        const cplx S = sh.value(l, m);
        const CVec3& g = sh.grad(l, m);
        const CVec3 cr{eps[1] * g[2] - eps[2] * g[1], eps[2] * g[0] - eps[0] * g[2], eps[0] * g[1] - eps[1] * g[0]};
        val_[i] = N * S * C;
        if (!generators) continue;
        for (int a = 0; a < 3; ++a) {
          k_[i][a] = mik * N * (sg * e4 * g[a] * C - S * Cp * eps[a] / R + cr[a] * C);
          J_[i][a] = mih * N * C * cr[a];
        }
      }
    }
  }
}

int BasisAtPoint::index(const QuantumNumbers& qn) const {
  if (!qn.valid() || qn.n > nmax_) throw DomainError("BasisAtPoint: quantum numbers out of range");
  return qn_offset(qn.n) + qn.l * qn.l + qn.m + qn.l;
}

ChartedWaveFunction make_config_samplers(Sampler plus, Sampler minus, const PhysicalParams& p) {
  ChartedWaveFunction f;
  f.params = p;
  f.plus = std::move(plus);
  f.minus = std::move(minus);
  return f;
}

ChartedWaveFunction make_config_spectral(const SpectralState& s, const PhysicalParams& p) {
  int nmax = 0;
  for (const auto& [q, c] : s) nmax = std::max(nmax, q.n);
  const auto eval = [s, p, nmax](int chart) {
    return [s, p, nmax, chart](const Vec3& e) {
      const BasisAtPoint b(nmax, e, chart, p, false);
      cplx v = 0.0;
      for (const auto& [q, c] : s) v += c * b.value(q);
      return v;
    };
  };
  ChartedWaveFunction f = make_config_samplers(eval(1), eval(-1), p);
  f.spectral = s;
  return f;
}

std::vector<GridNode> config_nodes(const ConfigGrid& g, const PhysicalParams& p) {
  const GaussRule gc = gauss_legendre(g.nchi, 0.0, 0.5 * kPi), gt = gauss_legendre(g.ntheta, -1.0, 1.0);
  const double dphi = 2.0 * kPi / g.nphi;
  std::vector<GridNode> out;
  out.reserve(2 * static_cast<size_t>(g.nchi) * g.ntheta * g.nphi);
  for (int chart : {1, -1})
    for (int i = 0; i < g.nchi; ++i) {
      const double s = std::sin(gc.x[i]), r = p.R * s;
      for (int j = 0; j < g.ntheta; ++j) {
        const double st = std::sqrt(1.0 - gt.x[j] * gt.x[j]);
        for (int k = 0; k < g.nphi; ++k) {
          const double ph = (k + 0.5) * dphi;
          out.push_back({{r * st * std::cos(ph), r * st * std::sin(ph), r * gt.x[j]}, chart,
                         gc.w[i] * s * s * gt.w[j] * dphi});
        }
      }
    }
  return out;
}

double spectral_norm(const SpectralState& s) { return std::sqrt(spectral_dot(s, s).real()); }

cplx spectral_dot(const SpectralState& a, const SpectralState& b) {
  cplx v = 0.0;
  for (const auto& [q, c] : a) {
    const auto it = b.find(q);
    if (it != b.end()) v += std::conj(c) * it->second;
  }
  return v;
}

cplx inner_product_c_quadrature(const ChartedWaveFunction& f, const ChartedWaveFunction& g,
                                const ConfigGrid& grid) {
  const double R = f.params.R;
  const LocalSupport* sup = nullptr;
  if (f.support && g.support)
    sup = f.support->radius <= g.support->radius ? &*f.support : &*g.support;
  else if (f.support)
    sup = &*f.support;
  else if (g.support)
    sup = &*g.support;
  cplx v = 0.0;
  if (sup) {
    const auto nodes = ball_nodes(sup->center, sup->radius, LocalRule{});
    for (int chart : {1, -1}) {
      if (sup->chart != 0 && sup->chart != chart) continue;
      for (const auto& [e, w] : nodes) {
        const double e4 = abs_eps4(e, R);
        if (e4 <= 0.0) continue;
        v += w / (R * R * e4) * std::conj(f.eval(e, chart)) * g.eval(e, chart);
      }
    }
    return v;
  }
  for (const GridNode& nd : config_nodes(grid, f.params))
    v += nd.w * std::conj(f.eval(nd.eps, nd.chart)) * g.eval(nd.eps, nd.chart);
  return v;
}

cplx inner_product_c(const ChartedWaveFunction& f, const ChartedWaveFunction& g, const ConfigGrid& grid) {
  if (f.spectral && g.spectral) return spectral_dot(*f.spectral, *g.spectral);
  return inner_product_c_quadrature(f, g, grid);
}

double mollifier(const Vec3& u, double smear) {
  if (!(smear > 0)) throw DomainError("mollifier: smear must be positive");
  const double r2 = norm2(u), s2 = smear * smear;
  if (r2 > 25.0 * s2) return 0.0;
  // mass of the unit Gaussian inside radius 5: erf(5/sqrt2) - sqrt(2/pi) 5 e^{-25/2}
  const double mass = std::erf(5.0 / std::sqrt(2.0)) - std::sqrt(2.0 / kPi) * 5.0 * std::exp(-12.5);
  return std::exp(-0.5 * r2 / s2) / (std::pow(2.0 * kPi * s2, 1.5) * mass);
}

ChartedWaveFunction position_eigenstate(const Vec3& eps0, int sign, double smear, const PhysicalParams& p) {
  if (sign != 1 && sign != -1) throw DomainError("position_eigenstate: sign must be +1 or -1");
  if (!(smear > 0)) throw DomainError("position_eigenstate: smear must be positive");
  if (!(norm(eps0) + 5.0 * smear < p.R)) throw DomainError("position_eigenstate: bump must lie inside B_R");
  const double R = p.R;
  Sampler s = [=](const Vec3& e) {
    return cplx(sign * R * R * abs_eps4(e, R) * mollifier(e - eps0, smear), 0.0);
  };
  ChartedWaveFunction f = sign > 0 ? make_config_samplers(s, nullptr, p) : make_config_samplers(nullptr, s, p);
  f.support = LocalSupport{eps0, 5.0 * smear, sign};
  return f;
}

cplx position_resolution(const ChartedWaveFunction& f, const Vec3& eps, int chart, double smear) {
  const double R = f.params.R, e4 = abs_eps4(eps, R);
  const LocalRule lr{12, 8, 12};
  const auto outer = ball_nodes(eps, 5.0 * smear, lr);
  const auto inner = ball_nodes({0.0, 0.0, 0.0}, 5.0 * smear, lr);
  cplx v = 0.0;
  for (const auto& [ep, w] : outer) {
    const double e4p = abs_eps4(ep, R);
    if (e4p <= 0.0) continue;
    // <phi_{ep chart}, f>_c = chart int delta(u - ep) f^chart(u) d^3u: the |u4| of the
    // state cancels the 1/|u4| of the measure, and R^2 cancels the calibration.
    cplx ov = 0.0;
    for (const auto& [u, wu] : inner) ov += wu * mollifier(u, smear) * f.eval(ep + u, chart);
    ov *= double(chart);
    v += w / (R * R * e4p) * (chart * R * R * e4 * mollifier(eps - ep, smear)) * ov;
  }
  return v;
}

namespace {

ChartedWaveFunction map_charts(const ChartedWaveFunction& f, std::function<cplx(const Vec3&, int, cplx)> op) {
  ChartedWaveFunction g = f;
  g.spectral.reset();
  g.plus = [f, op](const Vec3& e) { return op(e, 1, f.eval(e, 1)); };
  g.minus = [f, op](const Vec3& e) { return op(e, -1, f.eval(e, -1)); };
  return g;
}

SpectralState filter_parity(const SpectralState& s, int keep) {
  SpectralState out;
  for (const auto& [q, c] : s) {
    const int par = q.even() ? 1 : -1;
    if (keep == 0)
      out[q] = double(par) * c;
    else if (par == keep)
      out[q] = c;
  }
  return out;
}

}  // namespace

ChartedWaveFunction reflect(const ChartedWaveFunction& f) {
  ChartedWaveFunction g = f;
  g.plus = f.minus;
  g.minus = f.plus;
  if (f.spectral) g.spectral = filter_parity(*f.spectral, 0);
  if (f.support) g.support->chart = -f.support->chart;
  return g;
}

ChartedWaveFunction project_even(const ChartedWaveFunction& f) {
  ChartedWaveFunction g = map_charts(f, [f](const Vec3& e, int, cplx) { return 0.5 * (f.eval(e, 1) + f.eval(e, -1)); });
  if (f.spectral) g.spectral = filter_parity(*f.spectral, 1);
  if (f.support) g.support->chart = 0;
  return g;
}

ChartedWaveFunction project_odd(const ChartedWaveFunction& f) {
  ChartedWaveFunction g =
      map_charts(f, [f](const Vec3& e, int c, cplx) { return 0.5 * c * (f.eval(e, 1) - f.eval(e, -1)); });
  if (f.spectral) g.spectral = filter_parity(*f.spectral, -1);
  if (f.support) g.support->chart = 0;
  return g;
}

ChartedWaveFunction sign_op(const ChartedWaveFunction& f) {
  return map_charts(f, [](const Vec3&, int c, cplx v) { return double(c) * v; });
}

ChartedWaveFunction abs_eps4_op(const ChartedWaveFunction& f) {
  const double R = f.params.R;
  return map_charts(f, [R](const Vec3& e, int, cplx v) { return abs_eps4(e, R) * v; });
}

ChartedWaveFunction eps4_op(const ChartedWaveFunction& f) { return sign_op(abs_eps4_op(f)); }

namespace {

// Factor images O psi entering a bilinear term conj(A psi_a) (B psi_b).
enum class Img { Id, E1, E2, E3, E4, K1, K2, K3, J1, J2, J3 };

cplx image(Img im, const BasisAtPoint& b, int i, const Vec3& e, double e4) {
  switch (im) {
    case Img::Id: return b.value_at(i);
    case Img::E1: return e[0] * b.value_at(i);
    case Img::E2: return e[1] * b.value_at(i);
    case Img::E3: return e[2] * b.value_at(i);
    case Img::E4: return e4 * b.value_at(i);
    case Img::K1: return b.k_at(i)[0];
    case Img::K2: return b.k_at(i)[1];
    case Img::K3: return b.k_at(i)[2];
    case Img::J1: return b.J_at(i)[0];
    case Img::J2: return b.J_at(i)[1];
    case Img::J3: return b.J_at(i)[2];
  }
  return 0.0;
}

struct Term {
  Img left, right;
  double coef;
};

std::vector<Term> terms_for(std::optional<ConfigOp> op, const PhysicalParams& p) {
  if (!op) return {{Img::Id, Img::Id, 1.0}};
  switch (*op) {
    case ConfigOp::Eps1: return {{Img::Id, Img::E1, 1.0}};
    case ConfigOp::Eps2: return {{Img::Id, Img::E2, 1.0}};
    case ConfigOp::Eps3: return {{Img::Id, Img::E3, 1.0}};
    case ConfigOp::Eps4: return {{Img::Id, Img::E4, 1.0}};
    case ConfigOp::K1: return {{Img::Id, Img::K1, 1.0}};
    case ConfigOp::K2: return {{Img::Id, Img::K2, 1.0}};
    case ConfigOp::K3: return {{Img::Id, Img::K3, 1.0}};
    case ConfigOp::J1: return {{Img::Id, Img::J1, 1.0}};
    case ConfigOp::J2: return {{Img::Id, Img::J2, 1.0}};
    case ConfigOp::J3: return {{Img::Id, Img::J3, 1.0}};
    case ConfigOp::H: {
      const double c = 0.5 / p.mass;
      return {{Img::K1, Img::K1, c}, {Img::K2, Img::K2, c}, {Img::K3, Img::K3, c}};
    }
    case ConfigOp::EpsSquare:
      return {{Img::E1, Img::E1, 1.0}, {Img::E2, Img::E2, 1.0}, {Img::E3, Img::E3, 1.0}, {Img::E4, Img::E4, 1.0}};
  }
  return {};
}

Eigen::MatrixXcd op_block(std::optional<ConfigOp> op, int nmax, const std::vector<int>& rows,
                          const std::vector<int>& cols, const PhysicalParams& p, const ConfigGrid& grid) {
  const std::vector<Term> terms = terms_for(op, p);
  const std::vector<GridNode> nodes = config_nodes(grid, p);
  const int nr = static_cast<int>(rows.size()), nc = static_cast<int>(cols.size());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nr, nc);
  const size_t chunk = 2048;
  for (size_t s0 = 0; s0 < nodes.size(); s0 += chunk) {
    const int B = static_cast<int>(std::min(chunk, nodes.size() - s0));
    std::vector<Eigen::MatrixXcd> L(terms.size(), Eigen::MatrixXcd(B, nr)), Rm(terms.size(), Eigen::MatrixXcd(B, nc));
    for (int k = 0; k < B; ++k) {
      const GridNode& nd = nodes[s0 + k];
      const BasisAtPoint b(nmax, nd.eps, nd.chart, p);
      const double e4 = nd.chart * abs_eps4(nd.eps, p.R);
      for (size_t t = 0; t < terms.size(); ++t) {
        for (int a = 0; a < nr; ++a) L[t](k, a) = nd.w * terms[t].coef * image(terms[t].left, b, rows[a], nd.eps, e4);
        for (int a = 0; a < nc; ++a) Rm[t](k, a) = image(terms[t].right, b, cols[a], nd.eps, e4);
      }
    }
    for (size_t t = 0; t < terms.size(); ++t) M.noalias() += L[t].adjoint() * Rm[t];
  }
  return M;
}

}  // namespace

cplx op_matrix_element(ConfigOp op, const QuantumNumbers& qn1, const QuantumNumbers& qn2, const PhysicalParams& p,
                       const ConfigGrid& grid) {
  if (!qn1.valid() || !qn2.valid()) throw DomainError("op_matrix_element: invalid quantum numbers");
  const int nmax = std::max(qn1.n, qn2.n);
  const int i1 = qn_offset(qn1.n) + qn1.l * qn1.l + qn1.m + qn1.l;
  const int i2 = qn_offset(qn2.n) + qn2.l * qn2.l + qn2.m + qn2.l;
  return op_block(op, nmax, {i1}, {i2}, p, grid)(0, 0);
}

Eigen::MatrixXcd config_op_matrix(std::optional<ConfigOp> op, int nmax, const PhysicalParams& p,
                                  const ConfigGrid& grid) {
  std::vector<int> idx(qn_offset(nmax + 1));
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return op_block(op, nmax, idx, idx, p, grid);
}

SpectralState project_to_basis(const ChartedWaveFunction& f, int nmax, const ConfigGrid& grid) {
  const std::vector<QuantumNumbers> qs = basis_list(nmax);
  std::vector<cplx> acc(qs.size(), 0.0);
  for (const GridNode& nd : config_nodes(grid, f.params)) {
    const cplx fv = f.eval(nd.eps, nd.chart);
    if (fv == 0.0) continue;
    const BasisAtPoint b(nmax, nd.eps, nd.chart, f.params, false);
    for (size_t i = 0; i < qs.size(); ++i) acc[i] += nd.w * std::conj(b.value_at(static_cast<int>(i))) * fv;
  }
  SpectralState s;
  for (size_t i = 0; i < qs.size(); ++i) s[qs[i]] = acc[i];
  return s;
}

std::string spectral_to_json(const SpectralState& s, const PhysicalParams& p) {
  nlohmann::json j;
  j["params"] = {{"R", p.R}, {"hbar", p.hbar}, {"mass", p.mass}, {"kappa", p.kappa()}};
  j["coeffs"] = nlohmann::json::array();
  for (const auto& [q, c] : s)
    j["coeffs"].push_back({{"n", q.n}, {"l", q.l}, {"m", q.m}, {"re", c.real()}, {"im", c.imag()}});
  return j.dump(2);
}

SpectralState spectral_from_json(const std::string& text, PhysicalParams* p) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (p && j.contains("params")) {
    const auto& q = j["params"];
    *p = PhysicalParams(q.value("R", 1.0), q.value("hbar", 1.0), q.value("mass", 1.0));
  }
  SpectralState s;
  for (const auto& c : j.at("coeffs"))
    s[QuantumNumbers(c.at("n"), c.at("l"), c.at("m"))] = cplx(c.at("re").get<double>(), c.at("im").get<double>());
  return s;
}

}  // namespace s3q
