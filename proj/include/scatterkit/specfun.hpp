#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "error.hpp"

namespace scatterkit {

using complex = std::complex<double>;

namespace detail {

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace detail

/// Log-gamma for complex argument (Lanczos, g = 7). The imaginary part is a
/// branch of arg Gamma, so only exp(gamma_ln(z)) is meaningful for complex z.
inline complex gamma_ln(complex z) {
  using std::numbers::pi;
  if (z.imag() == 0.0 && detail::is_nonpositive_integer(z.real()))
    throw scatter_error(errc::pole, "gamma_ln pole at z = " + std::to_string(z.real()));

  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
    return std::log(pi) - std::log(std::sin(pi * z)) - gamma_ln(1.0 - z);
  }

  static constexpr std::array<double, 9> coeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr double g = 7.0;

  z -= 1.0;
  complex series = coeff[0];
  for (std::size_t i = 1; i < coeff.size(); ++i) series += coeff[i] / (z + static_cast<double>(i));
  const complex t = z + g + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(series);
}

inline complex gamma_ln(double x) { return gamma_ln(complex(x, 0.0)); }

/// psi(x) = Gamma'(x)/Gamma(x) for real x off the poles.
inline double digamma(double x) {
  using std::numbers::pi;
  if (detail::is_nonpositive_integer(x))
    throw scatter_error(errc::pole, "digamma pole at x = " + std::to_string(x));

  double result = 0.0;
  if (x < 0.0) {
    result -= pi / std::tan(pi * x);
    x = 1.0 - x;
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // Bernoulli tail: -sum B_2k / (2k x^2k)
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
  return result + std::log(x) - 0.5 / x - tail;
}

/// Rising factorial (alpha)_m by direct product.
inline double pochhammer(double alpha, int m) {
  if (m < 0) throw scatter_error(errc::domain, "pochhammer needs m >= 0");
  double product = 1.0;
  for (int i = 0; i < m; ++i) product *= alpha + i;
  return product;
}

inline double legendre(int l, double x) {
  if (l < 0) throw scatter_error(errc::domain, "legendre needs l >= 0");
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < l; ++k) {
    const double next = ((2 * k + 1) * x * cur - k * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

namespace detail {

inline void check_unit_interval(double x) {
  if (!(std::abs(x) <= 1.0 + 1e-14))
    throw scatter_error(errc::domain, "Gegenbauer argument must lie in [-1, 1], got " + std::to_string(x));
}

}  // namespace detail

/// Gegenbauer polynomials C_0^lambda(x) ... C_lmax^lambda(x).
///
/// lambda = 0 returns the polynomials themselves (1, 0, 0, ...), not the
/// cos(l theta) limit; two-dimensional callers use the closed form instead.
/// lambda = -1/2 is only defined at x = +-1, where C_0 = 1, C_1 = -x and all
/// higher orders vanish.
inline std::vector<double> gegenbauer_sequence(int lmax, double lambda, double x) {
  if (lmax < 0) throw scatter_error(errc::domain, "gegenbauer needs l >= 0");
  detail::check_unit_interval(x);
  std::vector<double> c(static_cast<std::size_t>(lmax) + 1, 0.0);
  c[0] = 1.0;

  if (lambda == 0.0) return c;

  if (lambda == -0.5) {
    if (std::abs(x) != 1.0)
      throw scatter_error(errc::domain, "lambda = -1/2 is only supported at x = +-1");
    if (lmax >= 1) c[1] = -x;
    return c;
  }

  if (lmax >= 1) c[1] = 2.0 * lambda * x;
  for (int l = 1; l < lmax; ++l)
    c[l + 1] = (2.0 * (l + lambda) * x * c[l] - (l + 2.0 * lambda - 1.0) * c[l - 1]) / (l + 1);
  return c;
}

inline double gegenbauer(int l, double lambda, double x) {
  return gegenbauer_sequence(l, lambda, x).back();
}

/// d/dx C_l^lambda(x) = 2 lambda C_{l-1}^{lambda+1}(x).
inline double gegenbauer_derivative(int l, double lambda, double x) {
  if (l == 0) return 0.0;
  return 2.0 * lambda * gegenbauer(l - 1, lambda + 1.0, x);
}

/// Coefficients a_j of y_nu(z) = sum_j a_j z^j, a_j = (nu+j)! / (j! (nu-j)! 2^j).
inline std::vector<double> bessel_polynomial_coefficients(int nu) {
  if (nu < 0) throw scatter_error(errc::domain, "bessel polynomial needs nu >= 0");
  std::vector<double> a(static_cast<std::size_t>(nu) + 1);
  a[0] = 1.0;
  for (int j = 0; j < nu; ++j) a[j + 1] = a[j] * (nu + j + 1.0) * (nu - j) / (2.0 * (j + 1.0));
  return a;
}

/// Bessel polynomial y_nu(z), Horner form.
inline complex bessel_polynomial(int nu, complex z) {
  const auto a = bessel_polynomial_coefficients(nu);
  complex sum = a.back();
  for (int j = nu - 1; j >= 0; --j) sum = sum * z + a[j];
  return sum;
}

}  // namespace scatterkit
