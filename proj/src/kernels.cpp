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
#include "s3q/kernels.hpp"

#include <algorithm>
#include <sstream>

#include "s3q/specfun.hpp"

namespace s3q {

BRKernel::BRKernel(double a, int d) : alpha(a), dim(d) {
  if (d < 1) throw DomainError("BRKernel: dim must be >= 1");
  if (!(a > -1.0)) throw DomainError("BRKernel: alpha must exceed -1");
}

void BRKernel::require_positive() const {
  if (!(alpha > 0.5 * dim - 1.0)) throw DomainError("BRKernel: alpha must exceed dim/2 - 1");
}

double kernel_value(const BRKernel& k, double r) {
  if (!(r >= 0.0)) throw DomainError("kernel_value: r must be >= 0");
  if (r < 1e-4) {
    // sum_j (-r^2/4)^j / (j! Gamma(alpha + j + 1)) / 2^alpha; four terms reach 1e-32 relative
    const double t = -0.25 * r * r;
    double term = n_alpha(k.alpha), sum = term;
    for (int j = 1; j < 4; ++j) {
      term *= t / (j * (k.alpha + j));
      sum += term;
    }
    return sum;
  }
  return bessel_j(k.alpha, r) / std::pow(r, k.alpha);
}

double multiplier(const BRKernel& k, double xnorm) {
  k.require_positive();
  if (!(xnorm >= 0.0)) throw DomainError("multiplier: xnorm must be >= 0");
  const double e = k.alpha - 0.5 * k.dim;
  return n_alpha(e) * RampPower{e}(1.0 - xnorm * xnorm);
}

double kernel_transform_numeric(const BRKernel& k, double xnorm, double tol) {
  k.require_positive();
  if (!(xnorm > 0.0)) throw DomainError("kernel_transform_numeric: xnorm must be > 0");
  if (k.dim == 3) {
    const QuadResult q = integrate_bessel_wave(1.0 - k.alpha, {WaveKind::Sin, xnorm, 0}, k.alpha, 1.0,
                                               tol * xnorm * std::pow(2.0 * kPi, 1.5) / (4.0 * kPi));
    return q.value.real() * 4.0 * kPi / (xnorm * std::pow(2.0 * kPi, 1.5));
  }
  if (k.dim == 1) {
    const double c = std::sqrt(2.0 / kPi);
    const QuadResult q = integrate_bessel_wave(-k.alpha, {WaveKind::Cos, xnorm, 0}, k.alpha, 1.0, tol / c);
    return c * q.value.real();
  }
  throw DomainError("kernel_transform_numeric: dim must be 1 or 3");
}

double fourier_pair_residual(const BRKernel& k, double xnorm, double tol) {
  return std::abs(kernel_transform_numeric(k, xnorm, tol) - multiplier(k, xnorm));
}

Composition compose(const BRKernel& a, const BRKernel& b) {
  if (a.dim != b.dim) throw DomainError("compose: dimension mismatch");
  a.require_positive();
  b.require_positive();
  const double d = a.dim;
  if (!(a.alpha + b.alpha > d - 1.0)) throw DomainError("compose: alpha + beta must exceed d - 1");
  const double c = n_alpha(a.alpha - 0.5 * d) * n_alpha(b.alpha - 0.5 * d) / n_alpha(a.alpha + b.alpha - d);
  return {c, BRKernel(a.alpha + b.alpha - 0.5 * d, a.dim)};
}

QuadResult radial_convolution(const BRKernel& a, const BRKernel& b, double p, double tol) {
  if (a.dim != 3 || b.dim != 3) throw DomainError("radial_convolution: d = 3 only");
  if (!(b.alpha >= 1.0)) throw DomainError("radial_convolution: b.alpha must be >= 1");
  if (!(a.alpha + b.alpha > 2.0)) throw DomainError("radial_convolution: alpha + beta must exceed 2");
  if (!(p > 0.0)) throw DomainError("radial_convolution: p must be > 0");
  const double al = a.alpha, be = b.alpha, mu = be - 1.0;
  // The angular integral of k_b(|p - q|) is (1/(p q)) [-s^{1-b} J_{b-1}(s)] between |p-q| and p+q.
  const auto g = [=](double s) { return std::pow(s, 1.0 - be) * bessel_j(mu, s); };
  const auto lead = [=](double s) { return s < 1e-4 ? std::pow(0.5, mu) * rgamma(mu + 1.0) : g(s); };
  const ComplexFn head = [&](double q) {
    return cplx(std::pow(q, 1.0 - al) * bessel_j(al, q) * (lead(std::abs(p - q)) - g(p + q)), 0.0);
  };
  const double X = p + 41.0 + std::max(al * al, mu * mu);
  std::vector<double> br{0.0};
  for (double q = kPi; q < X; q += kPi) {
    if (std::abs(q - p) > 1e-3 && p < q && br.back() < p) br.push_back(p);
    br.push_back(q);
  }
  if (br.back() < p) br.push_back(p);
  br.push_back(X);
  QuadResult r = integrate_1d(head, br, 0.5 * tol, 20000);
  const double pre = 1.0 / (std::sqrt(2.0 * kPi) * p);
  for (int sg : {-1, 1})
    for (int ta : {-1, 1}) {
      const double om = sg + ta;
      const auto amp = [=](cplx q) {
        const cplx u = q - p, v = q + p;
        return 0.25 * std::pow(q, 1.0 - al) * hankel_amplitude(sg, al, q) *
               (std::pow(u, 1.0 - be) * hankel_amplitude(ta, mu, u) * std::polar(1.0, -ta * p) -
                std::pow(v, 1.0 - be) * hankel_amplitude(ta, mu, v) * std::polar(1.0, ta * p));
      };
      const QuadResult t = integrate_exp_tail(amp, om, X, 0.125 * tol);
      r.value += t.value;
      r.error_estimate += t.error_estimate;
      r.panels_used += t.panels_used;
    }
  return {pre * r.value, pre * r.error_estimate, r.panels_used};
}

FourierData ball_grid(int dim, int nodes) {
  if (dim < 1 || nodes < 1) throw DomainError("ball_grid: dim and nodes must be >= 1");
  const GaussRule g = gauss_legendre(nodes, 0.0, 1.0);
  // surface of the unit (d-1)-sphere: 2 pi^{d/2} / Gamma(d/2)
  const double area = 2.0 * std::pow(kPi, 0.5 * dim) * rgamma(0.5 * dim);
  FourierData f;
  f.dim = dim;
  f.x = g.x;
  f.w.resize(g.x.size());
  f.v.assign(g.x.size(), cplx(0.0, 0.0));
  for (size_t i = 0; i < g.x.size(); ++i) f.w[i] = area * std::pow(g.x[i], dim - 1) * g.w[i];
  return f;
}

FourierData apply_operator(const BRKernel& k, const FourierData& f) {
  if (k.dim != f.dim) throw DomainError("apply_operator: dimension mismatch");
  FourierData out = f;
  for (size_t i = 0; i < f.x.size(); ++i) out.v[i] *= multiplier(k, f.x[i]);
  return out;
}

cplx fourier_inner(const FourierData& f, const FourierData& g) {
  if (f.x.size() != g.x.size()) throw DomainError("fourier_inner: grid mismatch");
  cplx s = 0.0;
  for (size_t i = 0; i < f.x.size(); ++i) s += f.w[i] * std::conj(f.v[i]) * g.v[i];
  return s;
}

std::string SpectrumInterval::describe() const {
  std::ostringstream os;
  os.precision(17);
  if (is_point()) {
    os << "{" << lo << "}";
    return os.str();
  }
  os << (lo_closed ? "[" : "(") << lo << ", ";
  if (std::isinf(hi))
    os << "inf)";
  else
    os << hi << (hi_closed ? "]" : ")");
  return os.str();
}

SpectrumInterval spectrum_interval(const BRKernel& k) {
  k.require_positive();
  const double e = k.alpha - 0.5 * k.dim;
  const double n = n_alpha(e);
  if (e == 0.0) return {1.0, 1.0, true, true};
  if (e < 0.0) return {n, std::numeric_limits<double>::infinity(), true, false};
  return {0.0, n, false, true};
}

Eigen::MatrixXcd weighted_adjoint(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& K) {
  if (K.rows() != K.cols() || A.rows() != K.rows() || A.cols() != K.cols())
    throw DomainError("weighted_adjoint: shape mismatch");
  if ((K - K.adjoint()).norm() > 1e-12 * std::max(1.0, K.norm()))
    throw LinearAlgebraError("weighted_adjoint: K is not Hermitian");
  Eigen::LLT<Eigen::MatrixXcd> llt(K);
  if (llt.info() != Eigen::Success) throw LinearAlgebraError("weighted_adjoint: K is not positive definite");
  return llt.solve(A.adjoint() * K);
}

}  // namespace s3q
