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

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace s3q {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Precondition violation (out-of-range argument, invalid quantum numbers).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Matrix factorization failed (singular or indefinite input).
class LinearAlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative numerical procedure failed to reach its tolerance.
/// Carries the best estimate obtained so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, cplx best, double err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  cplx best_estimate;
  double error_estimate;
};

/// Physical constants of the model. kappa is always derived as R/hbar.
struct PhysicalParams {
  double R = 1.0;
  double hbar = 1.0;
  double mass = 1.0;

  PhysicalParams() = default;
  PhysicalParams(double radius, double h = 1.0, double m = 1.0)
      : R(radius), hbar(h), mass(m) {
    if (!(R > 0) || !(hbar > 0) || !(mass > 0))
      throw DomainError("PhysicalParams: R, hbar, mass must be positive");
  }
  double kappa() const { return R / hbar; }
};

/// (n, l, m) with n >= l >= 0 and |m| <= l.
struct QuantumNumbers {
  int n = 0, l = 0, m = 0;
  QuantumNumbers() = default;
  QuantumNumbers(int n_, int l_, int m_) : n(n_), l(l_), m(m_) {
    if (!valid()) throw DomainError("QuantumNumbers: require n >= l >= 0, |m| <= l");
  }
  bool valid() const { return n >= 0 && l >= 0 && l <= n && std::abs(m) <= l; }
  bool even() const { return (n - l) % 2 == 0; }
  auto operator<=>(const QuantumNumbers&) const = default;
};

/// Finite expansion over the orthonormal energy eigenbasis.
using SpectralState = std::map<QuantumNumbers, cplx>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }

/// |eps4| = sqrt((R - r)(R + r)) for r = |eps|, zero on and outside the rim.
inline double abs_eps4(const Vec3& e, double R) {
  const double r = norm(e);
  return r >= R ? 0.0 : std::sqrt((R - r) * (R + r));
}

/// Enumerate all valid (n,l,m) with n <= nmax in canonical order.
template <class F>
void for_each_qn(int nmax, F&& f) {
  for (int n = 0; n <= nmax; ++n)
    for (int l = 0; l <= n; ++l)
      for (int m = -l; m <= l; ++m) f(QuantumNumbers(n, l, m));
}

}  // namespace s3q
