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
#include "s3q/reports.hpp"

#include <cstdlib>
#include <iomanip>
#include <json.hpp>
#include <random>
#include <sstream>

#include "s3q/config_space.hpp"
#include "s3q/dynamics_group.hpp"
#include "s3q/fourier_bridge.hpp"
#include "s3q/kernels.hpp"
#include "s3q/momentum_space.hpp"

namespace s3q {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Paper:
      return "paper";
    case Provenance::Derived:
      return "derived";
    default:
      return "trivial";
  }
}

void Report::add(const std::string& suite, const std::string& id, cplx computed, cplx expected, double tol,
                 Provenance prov) {
  ReportRow r{suite, id, computed, expected, std::abs(computed - expected), tol, false, prov};
  r.pass = r.abs_err <= tol;
  rows_.push_back(r);
}

bool Report::all_pass() const {
  for (const ReportRow& r : rows_)
    if (!r.pass) return false;
  return true;
}

void Report::append(const Report& other) { rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end()); }

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "suite,check_id,computed_re,computed_im,expected_re,expected_im,abs_err,tol,pass,provenance\n"
     << std::setprecision(17);
  for (const ReportRow& r : rows_)
    os << r.suite << ',' << r.check_id << ',' << r.computed.real() << ',' << r.computed.imag() << ','
       << r.expected.real() << ',' << r.expected.imag() << ',' << r.abs_err << ',' << r.tol << ','
       << (r.pass ? "true" : "false") << ',' << provenance_name(r.provenance) << '\n';
  return os.str();
}

std::string Report::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const ReportRow& r : rows_)
    j.push_back({{"suite", r.suite},
                 {"check_id", r.check_id},
                 {"computed_re", r.computed.real()},
                 {"computed_im", r.computed.imag()},
                 {"expected_re", r.expected.real()},
                 {"expected_im", r.expected.imag()},
                 {"abs_err", r.abs_err},
                 {"tol", r.tol},
                 {"pass", r.pass},
                 {"provenance", provenance_name(r.provenance)}});
  return j.dump(2);
}

void RunConfig::validate() const {
  if (nmax < 0 || nmax > 8) throw DomainError("RunConfig: nmax must lie in [0, 8]");
  for (const auto& [s, t] : tol)
    if (!(t > 0)) throw DomainError("RunConfig: tolerance for " + s + " must be positive");
  if (format != "csv" && format != "json") throw DomainError("RunConfig: format must be csv or json");
}

double RunConfig::tol_for(const std::string& suite, double fallback) const {
  const auto it = tol.find(suite);
  return it == tol.end() ? fallback : it->second;
}

RunConfig run_config_from_json(const std::string& text, const RunConfig& base) {
  const nlohmann::json j = nlohmann::json::parse(text);
  RunConfig c = base;
  if (j.contains("params")) {
    const auto& p = j["params"];
    c.params = PhysicalParams(p.value("R", c.params.R), p.value("hbar", c.params.hbar), p.value("mass", c.params.mass));
  }
  c.nmax = j.value("nmax", c.nmax);
  if (j.contains("tol"))
    for (const auto& [k, v] : j["tol"].items()) c.tol[k] = v.get<double>();
  c.out = j.value("out", c.out);
  c.format = j.value("format", c.format);
  c.seed = j.value("seed", c.seed);
  c.time = j.value("time", c.time);
  c.validate();
  return c;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> n{"verify-kernels", "norm-consts", "overlaps", "ft-roundtrip",
                                          "spectrum",       "evolve",      "group-check"};
  return n;
}

std::string report_path(const std::string& command, const RunConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  const char* dir = std::getenv("S3Q_OUTPUT_DIR");
  return std::string(dir && *dir ? dir : ".") + "/" + command + "." + cfg.format;
}

namespace {

std::string qn_id(const char* tag, int n, int l) { return std::string(tag) + "_" + std::to_string(n) + std::to_string(l); }

SpectralState random_state(std::mt19937& rng, int nmax) {
  std::normal_distribution<double> N;
  SpectralState s;
  for (const QuantumNumbers& q : basis_list(nmax)) s[q] = cplx(N(rng), N(rng));
  const double nn = spectral_norm(s);
  for (auto& [q, c] : s) c /= nn;
  return s;
}

Report suite_kernels(const RunConfig& cfg) {
  Report r;
  const std::string S = "verify-kernels";
  const std::pair<int, double> pairs[] = {{1, 0.5}, {3, 1.0}, {3, 2.0}};
  for (const auto& [d, a] : pairs) {
    const BRKernel k(a, d);
    for (double x : {0.1, 0.35, 0.6, 0.85, 0.97, 1.1, 1.5}) {
      std::ostringstream id;
      id << "fourier_pair_d" << d << "_a" << a << "_x" << x;
      r.add(S, id.str(), kernel_transform_numeric(k, x, 1e-11), multiplier(k, x), cfg.tol_for(S, 1e-6),
            Provenance::Derived);
    }
  }
  const std::pair<double, double> comp[] = {{2.0, 2.0}, {3.0, 2.0}, {2.0, 1.0}, {2.5, 1.5}};
  for (const auto& [a, b] : comp) {
    const Composition c = compose(BRKernel(a, 3), BRKernel(b, 3));
    for (double x : {0.2, 0.5, 0.8}) {
      std::ostringstream id;
      id << "reproducing_multiplier_" << a << "_" << b << "_x" << x;
      r.add(S, id.str(), multiplier(BRKernel(a, 3), x) * multiplier(BRKernel(b, 3), x),
            c.constant * multiplier(c.result, x), cfg.tol_for(S, 1e-12), Provenance::Paper);
    }
  }
  const Composition c = compose(BRKernel(2.0, 3), BRKernel(2.0, 3));
  for (double p : {0.5, 1.3, 2.7, 4.1, 6.0}) {
    std::ostringstream id;
    id << "reproducing_convolution_p" << p;
    r.add(S, id.str(), radial_convolution(BRKernel(2.0, 3), BRKernel(2.0, 3), p, 1e-11).value,
          c.constant * kernel_value(c.result, p), cfg.tol_for(S, 1e-6), Provenance::Derived);
  }
  return r;
}

Report suite_norm_consts(const RunConfig& cfg) {
  Report r;
  const std::string S = "norm-consts";
  const PhysicalParams& p = cfg.params;
  const std::map<std::pair<int, int>, double> printed{{{0, 0}, std::sqrt(2.0)},       {{2, 0}, -1.0},
                                                      {{1, 1}, 2.0 * std::sqrt(2.0 / 3.0)}, {{1, 0}, std::sqrt(2.0)},
                                                      {{3, 0}, -1.0 / std::sqrt(3.0)}, {{3, 2}, 1.0}};
  for (int n = 0; n <= cfg.nmax; ++n)
    for (int l = 0; l <= n; ++l) {
      const double M = norm_const_M(n, l, 0, p);
      const auto it = printed.find({n, l});
      if (it != printed.end())
        r.add(S, qn_id("M", n, l), M, it->second / std::sqrt(p.hbar), cfg.tol_for(S, 1e-9), Provenance::Paper);
      else
        r.add(S, qn_id("M", n, l), M, norm_const_M_exact(n, l, p) / std::sqrt(std::tgamma(n - l + 1.0)),
              cfg.tol_for(S, 1e-9), Provenance::Derived);
      r.add(S, qn_id("Kcirc", n, l), hankel_K(n, l, 0), hankel_K_exact(n, l, 0), cfg.tol_for(S, 1e-9),
            Provenance::Derived);
      r.add(S, qn_id("Kbullet", n, l), hankel_K(n, l, 1), hankel_K_exact(n, l, 1), cfg.tol_for(S, 1e-9),
            Provenance::Derived);
    }
  return r;
}

double max_identity_err(const Eigen::MatrixXcd& G) {
  return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

Report suite_overlaps(const RunConfig& cfg) {
  Report r;
  const std::string S = "overlaps";
  const PhysicalParams& p = cfg.params;
  const int nm = std::min(cfg.nmax, 4);
  r.add(S, "config_gram_max_err", max_identity_err(config_op_matrix(std::nullopt, nm, p)), 0.0,
        cfg.tol_for(S, 1e-8), Provenance::Paper);
  std::vector<CauchyData> phis;
  for (const QuantumNumbers& q : basis_list(std::min(cfg.nmax, 3)))
    phis.push_back(make_momentum_spectral(SpectralState{{q, 1.0}}, p));
  r.add(S, "momentum_gram_spectral_max_err", max_identity_err(gram_m(phis)), 0.0, cfg.tol_for(S, 1e-10),
        Provenance::Derived);
  const int nd = std::min<int>(static_cast<int>(phis.size()), 4);
  Eigen::MatrixXcd D(nd, nd);
  for (int i = 0; i < nd; ++i)
    for (int j = 0; j < nd; ++j) D(i, j) = inner_product_m_direct(phis[i], phis[j], 1e-10);
  r.add(S, "momentum_gram_direct_max_err", max_identity_err(D), 0.0, cfg.tol_for(S, 1e-4), Provenance::Derived);
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const double Mp = 1.0 / (std::sqrt(2.0) * kPi * p.hbar * p.kappa()), k = p.kappa();
  const ConfigGrid fine{48, 32, 64};
  for (int i = 0; i < 3; ++i) {
    const double sc = 1.5 * p.hbar / p.R;
    const Vec3 a{sc * U(rng), sc * U(rng), sc * U(rng)}, b{sc * U(rng), sc * U(rng), sc * U(rng)};
    const ChartedWaveFunction fa = pi_frame_state_config({a, FrameKind::Circ}, p);
    const ChartedWaveFunction fb = pi_frame_state_config({b, FrameKind::Circ}, p);
    const ChartedWaveFunction gb = pi_frame_state_config({b, FrameKind::Bullet}, p);
    r.add(S, "frame_circ_overlap_" + std::to_string(i), inner_product_c_quadrature(fa, fb, fine),
          4.0 * kPi * kPi * p.hbar * p.hbar * k * k * Mp * Mp * frame_kernel(1.0, a, b, p), cfg.tol_for(S, 1e-8),
          Provenance::Paper);
    r.add(S, "frame_circ_bullet_overlap_" + std::to_string(i), inner_product_c_quadrature(fa, gb, fine), 0.0,
          cfg.tol_for(S, 1e-8), Provenance::Paper);
  }
  return r;
}

Report suite_ft(const RunConfig& cfg) {
  Report r;
  const std::string S = "ft-roundtrip";
  const PhysicalParams& p = cfg.params;
  std::mt19937 rng(cfg.seed);
  const int nm = std::min(cfg.nmax, 4);
  for (int i = 0; i < 5; ++i) {
    const SpectralState s1 = random_state(rng, nm), s2 = random_state(rng, nm);
    CauchyData a = forward_ft(make_config_spectral(s1, p)), b = forward_ft(make_config_spectral(s2, p));
    a.spectral.reset();
    b.spectral.reset();
    r.add(S, "unitarity_" + std::to_string(i), inner_product_m_spectral(a, b), spectral_dot(s1, s2),
          cfg.tol_for(S, 1e-8), Provenance::Paper);
    ChartedWaveFunction f = make_config_spectral(s1, p);
    const ChartedWaveFunction ref = f;
    f.spectral.reset();
    r.add(S, "config_roundtrip_" + std::to_string(i), rel_l2_error(inverse_ft(forward_ft(f)), ref), 0.0,
          cfg.tol_for(S, 1e-8), Provenance::Paper);
    CauchyData m = make_momentum_spectral(s2, p);
    const CauchyData mref = m;
    m.spectral.reset();
    const CauchyData back = forward_ft(inverse_ft(m));
    CauchyData diff = make_cauchy([&](const Vec3& e) { return back.a(e) - mref.a(e); },
                                  [&](const Vec3& e) { return back.b(e) - mref.b(e); }, p);
    r.add(S, "momentum_roundtrip_" + std::to_string(i), std::sqrt(std::abs(inner_product_m_spectral(diff, diff))),
          0.0, cfg.tol_for(S, 1e-8), Provenance::Paper);
  }
  std::vector<ChartedWaveFunction> basis;
  for (const QuantumNumbers& q : basis_list(std::min(cfg.nmax, 2)))
    basis.push_back(make_config_spectral(SpectralState{{q, 1.0}}, p));
  const FrameReport fr = tight_frame_check(basis, 1e-4);
  r.add(S, "frame_max_rel_err", fr.max_rel_err, 0.0, cfg.tol_for(S, 1e-4), Provenance::Paper);
  r.add(S, "frame_D_fit_circ", fr.D_fit_circ, fr.D_used, cfg.tol_for(S, 1e-4) * fr.D_used, Provenance::Paper);
  if (fr.D_fit_bullet > 0)
    r.add(S, "frame_D_fit_bullet", fr.D_fit_bullet, fr.D_used, cfg.tol_for(S, 1e-4) * fr.D_used, Provenance::Paper);
  const FrameReport neg = tight_frame_check({basis[0]}, 1e-4, 1.1 * fr.D_used);
  r.add(S, "frame_negative_control_err", neg.max_rel_err, 0.1, 1e-6, Provenance::Trivial);
  return r;
}

Report suite_spectrum(const RunConfig& cfg) {
  Report r;
  const std::string S = "spectrum";
  const PhysicalParams& p = cfg.params;
  const Eigen::MatrixXcd H = config_op_matrix(ConfigOp::H, cfg.nmax, p);
  const std::vector<QuantumNumbers> qs = basis_list(cfg.nmax);
  for (size_t i = 0; i < qs.size(); ++i) {
    const QuantumNumbers& q = qs[i];
    r.add(S, "E_" + std::to_string(q.n) + std::to_string(q.l) + (q.m < 0 ? "m" : "") + std::to_string(std::abs(q.m)),
          H(i, i), hamiltonian_eigenvalue(q, p), cfg.tol_for(S, 1e-8), Provenance::Paper);
  }
  Eigen::MatrixXcd off = H;
  off.diagonal().setZero();
  r.add(S, "H_offdiag_max", off.cwiseAbs().maxCoeff(), 0.0, cfg.tol_for(S, 1e-8), Provenance::Paper);
  return r;
}

Report suite_evolve(const RunConfig& cfg) {
  Report r;
  const std::string S = "evolve";
  const PhysicalParams& p = cfg.params;
  std::mt19937 rng(cfg.seed);
  const SpectralState s = random_state(rng, std::min(cfg.nmax, 3));
  r.add(S, "norm_preserved", spectral_norm(evolve_spectral(s, cfg.time, p)), spectral_norm(s), cfg.tol_for(S, 1e-14),
        Provenance::Trivial);
  const double k = p.kappa(), T = 2.0 * kPi * 2.0 * p.mass * k * k * p.hbar / 3.0;
  const QuantumNumbers q1(1, 0, 0);
  r.add(S, "period_n1", evolve_spectral(SpectralState{{q1, 1.0}}, T, p).at(q1), 1.0, cfg.tol_for(S, 1e-12),
        Provenance::Derived);
  const SpectralState two{{QuantumNumbers(1, 0, 0), std::sqrt(0.5)}, {QuantumNumbers(2, 1, 1), cplx(0.0, std::sqrt(0.5))}};
  r.add(S, "consistency_t0", evolve_consistency_check(two, 0.0, p), 0.0, cfg.tol_for(S, 1e-8), Provenance::Trivial);
  r.add(S, "consistency_two_mode", evolve_consistency_check(two, cfg.time, p), 0.0, cfg.tol_for(S, 1e-4),
        Provenance::Derived);
  return r;
}

Report suite_group(const RunConfig& cfg) {
  Report r;
  const std::string S = "group-check";
  const PhysicalParams& p = cfg.params;
  const double R = p.R;
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const auto draw = [&]() {
    GroupElement g;
    do g.eps = {R * U(rng), R * U(rng), R * U(rng)};
    while (norm(g.eps) > 0.95 * R);
    g.chart = U(rng) > 0 ? 1 : -1;
    g.pi = {3 * U(rng), 3 * U(rng), 3 * U(rng)};
    g.pi4 = 3 * U(rng);
    g.zeta = std::polar(1.0, kPi * U(rng));
    return g;
  };
  const auto dist = [](const GroupElement& a, const GroupElement& b) {
    return std::max({norm(a.eps - b.eps), static_cast<double>(std::abs(a.chart - b.chart)), norm(a.pi - b.pi),
                     std::abs(a.pi4 - b.pi4), std::abs(a.zeta - b.zeta)});
  };
  // in-chart samples keep every |eps4| above 0.1 R
  const auto in_chart = [R](const GroupElement& g) { return std::abs(g.eps4(R)) > 0.1 * R; };
  double e_id = 0, e_inv = 0, e_as = 0, e_q = 0;
  for (int n = 0; n < 1000;) {
    const GroupElement a = draw(), b = draw(), c = draw();
    if (!in_chart(a) || !in_chart(b) || !in_chart(c)) continue;
    const GroupElement ab = group_compose(a, b, p), bc = group_compose(b, c, p);
    if (!in_chart(ab) || !in_chart(bc) || !in_chart(group_compose(ab, c, p))) continue;
    ++n;
    e_id = std::max({e_id, dist(group_compose(a, group_identity(), p), a), dist(group_compose(group_identity(), a, p), a)});
    const GroupElement ai = group_inverse(a, p);
    e_inv = std::max({e_inv, dist(group_compose(ai, a, p), group_identity()), dist(group_compose(a, ai, p), group_identity())});
    e_as = std::max(e_as, dist(group_compose(ab, c, p), group_compose(a, bc, p)));
    // Hamilton product of (eps4, eps) / R
    const double w1 = a.eps4(R) / R, w2 = b.eps4(R) / R;
    const Vec3 v1 = (1.0 / R) * a.eps, v2 = (1.0 / R) * b.eps;
    const Vec3 v = w1 * v2 + w2 * v1 + cross(v1, v2);
    const double w = w1 * w2 - dot(v1, v2);
    e_q = std::max({e_q, norm(ab.eps - R * v), std::abs(ab.eps4(R) - R * w)});
  }
  const double t = cfg.tol_for(S, 1e-12);
  r.add(S, "identity_max_err", e_id, 0.0, t, Provenance::Trivial);
  r.add(S, "inverse_max_err", e_inv, 0.0, t, Provenance::Derived);
  r.add(S, "associativity_max_err", e_as, 0.0, t, Provenance::Derived);
  r.add(S, "quaternion_oracle_max_err", e_q, 0.0, t, Provenance::Derived);
  const Vec3 e0{0.3 * R, -0.2 * R, 0.5 * R}, v0{0.4, 0.1, -0.3};
  const Vec3 th0 = noether_theta(geodesic_flow(e0, v0, 0.0, 1, p), p);
  double en = 0, es = 0;
  for (double tt : {0.37, 1.9, 4.2, 9.0}) {
    const GeodesicState g = geodesic_flow(e0, v0, tt, 1, p);
    en = std::max(en, norm(noether_theta(g, p) - th0));
    es = std::max(es, std::abs(norm2(g.pos.eps) + g.pos.eps4() * g.pos.eps4() - R * R) / (R * R));
  }
  r.add(S, "noether_max_drift", en, 0.0, t, Provenance::Paper);
  r.add(S, "sphere_constraint", es, 0.0, t, Provenance::Trivial);
  r.add(S, "omega_energy_over_metric", geodesic_omega_from_energy(e0, v0, 1, p) / geodesic_omega(e0, v0, 1, p), 1.0,
        1e-12, Provenance::Paper);
  return r;
}

}  // namespace

Report run_suite(const std::string& command, const RunConfig& cfg) {
  cfg.validate();
  if (command == "verify-kernels") return suite_kernels(cfg);
  if (command == "norm-consts") return suite_norm_consts(cfg);
  if (command == "overlaps") return suite_overlaps(cfg);
  if (command == "ft-roundtrip") return suite_ft(cfg);
  if (command == "spectrum") return suite_spectrum(cfg);
  if (command == "evolve") return suite_evolve(cfg);
  if (command == "group-check") return suite_group(cfg);
  throw DomainError("run_suite: unknown command " + command);
}

}  // namespace s3q
