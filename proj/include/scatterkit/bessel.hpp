#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"
#include "order.hpp"
#include "specfun.hpp"

namespace scatterkit {

/// Spherical Bessel functions j_nu(z), y_nu(z) for the consecutive orders
/// nu = l + (n-3)/2, l = 0..lmax, of one dimension n at one real z > 0.
struct BesselSequence {
  int n = 3;
  double z = 0.0;
  std::vector<double> j;
  std::vector<double> y;

  int lmax() const { return static_cast<int>(j.size()) - 1; }
  double nu(int l) const { return l + 0.5 * (n - 3); }

  complex h1(int l) const { return {j[l], y[l]}; }
  complex h2(int l) const { return {j[l], -y[l]}; }
  complex hankel(int kind, int l) const { return kind == 1 ? h1(l) : h2(l); }

  /// d/dz h_nu = (nu/z) h_nu - h_{nu+1}; needs order l+1 in the sequence.
  complex hankel_derivative(int kind, int l) const {
    return nu(l) / z * hankel(kind, l) - hankel(kind, l + 1);
  }
  double j_derivative(int l) const { return nu(l) / z * j[l] - j[l + 1]; }
  double y_derivative(int l) const { return nu(l) / z * y[l] - y[l + 1]; }

  void require_finite_hankel(int up_to_l) const {
    for (int l = 0; l <= up_to_l; ++l)
      if (!std::isfinite(y[l]))
        throw scatter_error(errc::overflow, "spherical Hankel function of order " + std::to_string(nu(l)) +
                                                " overflows at z = " + std::to_string(z));
  }
};

namespace detail {

inline int miller_start(int top_order, double z) {
  const double base = std::max(static_cast<double>(top_order), z);
  return static_cast<int>(base + 40.0 + 12.0 * std::cbrt(std::max(z, 1.0)));
}

/// Integer-order spherical functions for orders -1..top; returned vectors are
/// indexed by order + 1.
inline void spherical_integer_orders(int top, double z, std::vector<double>& j, std::vector<double>& y) {
  const double s = std::sin(z);
  const double c = std::cos(z);
  const int count = top + 2;

  // Miller: downward recurrence f_{nu-1} = (2nu+1)/z f_nu - f_{nu+1}.
  const int start = miller_start(top, z);
  std::vector<double> f(static_cast<std::size_t>(start) + 3, 0.0);
  f[start + 2] = 0.0;
  f[start + 1] = 1e-300;
  for (int nu = start; nu >= 0; --nu) {
    // f index = nu + 1 holds order nu; compute order nu-1.
    f[nu] = (2.0 * nu + 1.0) / z * f[nu + 1] - f[nu + 2];
    if (std::abs(f[nu]) > 1e250) {
      for (int i = nu; i <= start + 2; ++i) f[i] *= 1e-250;
    }
  }
  // Normalise against whichever of j_{-1} = cos z/z, j_0 = sin z/z is larger.
  const double scale = std::abs(c) > std::abs(s) ? (c / z) / f[0] : (s / z) / f[1];
  j.assign(count, 0.0);
  for (int i = 0; i < count; ++i) j[i] = f[i] * scale;

  // Upward recurrence is stable for y: y_{-1} = sin z/z, y_0 = -cos z/z.
  y.assign(count, 0.0);
  y[0] = s / z;
  if (count > 1) y[1] = -c / z;
  for (int nu = 0; nu + 2 < count; ++nu) y[nu + 2] = (2.0 * nu + 1.0) / z * y[nu + 1] - y[nu];
}

/// Cylindrical J_m, Y_m for m = 0..top.
inline void cylindrical_integer_orders(int top, double z, std::vector<double>& jm, std::vector<double>& ym) {
  using std::numbers::egamma;
  using std::numbers::pi;
  const int start = miller_start(std::max(top, 1) + 1, z) | 1;  // odd so the even terms line up
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-300;
  for (int m = start; m >= 1; --m) {
    f[m - 1] = 2.0 * m / z * f[m] - f[m + 1];
    if (std::abs(f[m - 1]) > 1e250) {
      for (int i = m - 1; i <= start + 1; ++i) f[i] *= 1e-250;
    }
  }
  // J_0 + 2 sum J_2k = 1
  double norm = f[0];
  for (int m = 2; m <= start; m += 2) norm += 2.0 * f[m];
  const double scale = 1.0 / norm;
  for (double& v : f) v *= scale;

  // Neumann series for Y_0 and its derivative Y_1 = -Y_0'.
  const double log_term = std::log(0.5 * z) + egamma;
  double sum0 = 0.0;
  double sum1 = 0.0;
  for (int k = 1; 2 * k + 1 <= start + 1; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum0 += sign * f[2 * k] / k;
    sum1 += sign * (f[2 * k - 1] - f[2 * k + 1]) / k;
  }
  const double y0 = 2.0 / pi * log_term * f[0] - 4.0 / pi * sum0;
  const double y1 = -2.0 / pi * f[0] / z + 2.0 / pi * log_term * f[1] + 2.0 / pi * sum1;

  jm.assign(f.begin(), f.begin() + top + 1);
  ym.assign(top + 1, 0.0);
  ym[0] = y0;
  if (top >= 1) ym[1] = y1;
  for (int m = 1; m + 1 <= top; ++m) ym[m + 1] = 2.0 * m / z * ym[m] - ym[m - 1];
}

}  // namespace detail

/// Orders whose y_nu overflows come back as +-inf; callers that need the
/// Hankel functions check with require_finite_hankel().
///
/// Recurrence evaluation of j_nu, y_nu for l = 0..lmax in dimension n:
/// Miller downward recurrence for j, upward recurrence for y. Even n goes
/// through integer-order cylindrical functions, h_nu = sqrt(pi/2z) H_{nu+1/2}.
inline BesselSequence bessel_sequence(int n, int lmax, double z) {
  if (n < 1) throw scatter_error(errc::domain, "dimension must be >= 1");
  if (lmax < 0) throw scatter_error(errc::domain, "lmax must be >= 0");
  if (!(z > 0.0) || !std::isfinite(z))
    throw scatter_error(errc::domain, "Bessel argument must be positive and finite, got " + std::to_string(z));

  BesselSequence out;
  out.n = n;
  out.z = z;
  const std::size_t count = static_cast<std::size_t>(lmax) + 1;

  if (n % 2 == 1) {
    const int first = (n - 3) / 2;  // >= -1
    const int top = first + lmax;
    std::vector<double> j;
    std::vector<double> y;
    detail::spherical_integer_orders(top, z, j, y);
    out.j.assign(j.begin() + (first + 1), j.begin() + (first + 1) + count);
    out.y.assign(y.begin() + (first + 1), y.begin() + (first + 1) + count);
  } else {
    const int first = (n - 2) / 2;
    const int top = first + lmax;
    std::vector<double> jm;
    std::vector<double> ym;
    detail::cylindrical_integer_orders(top, z, jm, ym);
    const double factor = std::sqrt(std::numbers::pi / (2.0 * z));
    out.j.resize(count);
    out.y.resize(count);
    for (std::size_t l = 0; l < count; ++l) {
      out.j[l] = factor * jm[first + l];
      out.y[l] = factor * ym[first + l];
    }
  }
  return out;
}

}  // namespace scatterkit
