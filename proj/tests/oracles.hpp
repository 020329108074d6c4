#pragma once

// Reference values computed independently of the library: wide-precision
// Boost.Math Bessel functions, explicit finite sums and quadrature.

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using wide = boost::multiprecision::cpp_bin_float_50;
using complex = std::complex<double>;

/// h^(1)_nu(z) with nu = l + (n-3)/2, from J and Y of order nu + 1/2 in
/// 50-digit arithmetic.
inline complex hankel1(int n, int l, double z) {
  const int twice_mu = 2 * l + n - 2;
  if (twice_mu < 0) return std::exp(complex(0.0, z)) / z;  // h_{-1} = e^{iz}/z
  const wide mu = wide(twice_mu) / 2;
  const wide x = z;
  const wide scale = sqrt(boost::math::constants::pi<wide>() / (2 * x));
  const wide j = scale * boost::math::cyl_bessel_j(mu, x);
  const wide y = scale * boost::math::cyl_neumann(mu, x);
  return {static_cast<double>(j), static_cast<double>(y)};
}

/// calY_nu(-1/(ix)) = h^(1)_nu(x) (i x) e^{-i(x - nu pi/2)}, phase in wide
/// precision so large x keeps full accuracy.
inline complex calY_on_axis(int n, int l, double x) {
  const int twice_mu = 2 * l + n - 2;
  const wide mu = wide(twice_mu) / 2;
  const wide xw = x;
  const wide nu = mu - wide(1) / 2;
  wide j, y;
  if (twice_mu < 0) {
    j = cos(xw) / xw;
    y = sin(xw) / xw;
  } else {
    const wide scale = sqrt(boost::math::constants::pi<wide>() / (2 * xw));
    j = scale * boost::math::cyl_bessel_j(mu, xw);
    y = scale * boost::math::cyl_neumann(mu, xw);
  }
  const wide phase = xw - nu * boost::math::constants::half_pi<wide>();
  const wide c = cos(phase), s = sin(phase);
  // (j + i y)(i x)(c - i s) = x [ (j s - y c)... ] expanded by hand:
  // (j + i y)(c - i s) = (j c + y s) + i (y c - j s); times i x.
  const wide re = -(y * c - j * s) * xw;
  const wide im = (j * c + y * s) * xw;
  return {static_cast<double>(re), static_cast<double>(im)};
}

/// C_l^lambda(x) by the explicit sum
/// sum_k (-1)^k Gamma(l-k+lambda) / (Gamma(lambda) k! (l-2k)!) (2x)^{l-2k}.
inline double gegenbauer(int l, double lambda, double x) {
  wide sum = 0;
  const wide lam = lambda;
  for (int k = 0; 2 * k <= l; ++k) {
    const wide term = boost::math::tgamma_ratio(wide(l - k) + lam, lam) /
                      (boost::math::factorial<wide>(k) * boost::math::factorial<wide>(l - 2 * k)) *
                      pow(2 * wide(x), l - 2 * k);
    sum += (k % 2 ? -term : term);
  }
  return static_cast<double>(sum);
}

/// Bessel polynomial coefficient (nu+j)! / (j! (nu-j)! 2^j).
inline double bessel_polynomial_coefficient(int nu, int j) {
  const wide v = boost::math::factorial<wide>(nu + j) /
                 (boost::math::factorial<wide>(j) * boost::math::factorial<wide>(nu - j) * pow(wide(2), j));
  return static_cast<double>(v);
}

/// U(a, b, z) for real z > 0 from the Laplace integral
/// U = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt, a > 0.
inline double tricomi_integral(double a, double b, double z) {
  boost::math::quadrature::exp_sinh<double> integrator;
  auto f = [&](double t) { return std::exp(-z * t + (a - 1.0) * std::log(t) + (b - a - 1.0) * std::log1p(t)); };
  return integrator.integrate(f) / std::tgamma(a);
}

/// Spherical j_l, y_l for integer l (three-dimensional orders).
inline double sph_j(int l, double x) { return boost::math::sph_bessel(l, x); }
inline double sph_y(int l, double x) { return boost::math::sph_neumann(l, x); }
inline double sph_j_prime(int l, double x) { return boost::math::sph_bessel_prime(l, x); }
inline double sph_y_prime(int l, double x) { return boost::math::sph_neumann_prime(l, x); }

}  // namespace oracle
