#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "error.hpp"
#include "order.hpp"
#include "series_control.hpp"
#include "specfun.hpp"

namespace scatterkit {

namespace detail {

using wide50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                             boost::multiprecision::et_off>;
using wide100 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                              boost::multiprecision::et_off>;

// Minimal complex arithmetic that works for any real type; std::complex is
// only specified for the built-in floating types.
template <class Real>
struct cplx {
  Real re{0};
  Real im{0};

  friend cplx operator+(const cplx& a, const cplx& b) { return {a.re + b.re, a.im + b.im}; }
  friend cplx operator-(const cplx& a, const cplx& b) { return {a.re - b.re, a.im - b.im}; }
  friend cplx operator*(const cplx& a, const cplx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend cplx operator*(const cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
  friend cplx operator/(const cplx& a, const cplx& b) {
    const Real den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
  }
  cplx& operator+=(const cplx& b) { return *this = *this + b; }
  cplx& operator*=(const cplx& b) { return *this = *this * b; }
};

template <class Real>
double magnitude(const cplx<Real>& z) {
  using std::sqrt;
  return static_cast<double>(sqrt(z.re * z.re + z.im * z.im));
}

template <class Real>
cplx<Real> principal_log(const cplx<Real>& z) {
  using std::atan2;
  using std::log;
  using std::sqrt;
  return {log(sqrt(z.re * z.re + z.im * z.im)), atan2(z.im, z.re)};
}

template <class Real>
struct TricomiSeeds {
  Real rgamma_a;           // 1/Gamma(a)
  Real rgamma_a_minus_m;   // 1/Gamma(a-m), zero on poles
  Real psi_a;              // psi(a), unused when the log part vanishes
  Real euler;
};

template <class Real>
TricomiSeeds<Real> tricomi_seeds(double a, int m) {
  TricomiSeeds<Real> s;
  const bool log_part = !is_nonpositive_integer(a - m);
  if constexpr (std::is_same_v<Real, double>) {
    s.rgamma_a = 1.0 / std::tgamma(a);
    s.rgamma_a_minus_m = log_part ? 1.0 / std::tgamma(a - m) : 0.0;
    s.psi_a = log_part ? digamma(a) : 0.0;
    s.euler = std::numbers::egamma;
  } else {
    const Real wa(a);
    s.rgamma_a = Real(1) / boost::math::tgamma(wa);
    s.rgamma_a_minus_m = log_part ? Real(1) / boost::math::tgamma(wa - m) : Real(0);
    s.psi_a = log_part ? boost::math::digamma(wa) : Real(0);
    s.euler = boost::math::constants::euler<Real>();
  }
  return s;
}

struct TricomiEvaluation {
  complex value;
  double condition;  // largest term magnitude over |value|
  int terms;        // log-series terms summed
};

/// U(a, m+1, Z) from the logarithmic expansion
///   (-1)^{m+1}/(m! Gamma(a-m)) sum_k (a)_k/((m+1)_k k!) Z^k
///       [ln Z + psi(a+k) - psi(1+k) - psi(m+k+1)]
///   + 1/Gamma(a) sum_{k=1}^{m} (k-1)! (1-a+k)_{m-k}/(m-k)! Z^{-k}
/// evaluated entirely in Real.
template <class Real>
TricomiEvaluation tricomi_kernel(double a_in, int m, complex z_in, const SeriesControl& control) {
  const auto seeds = tricomi_seeds<Real>(a_in, m);
  const Real a(a_in);
  const cplx<Real> z{Real(z_in.real()), Real(z_in.imag())};
  const cplx<Real> one{Real(1), Real(0)};

  double largest = 0.0;
  int terms = 0;

  cplx<Real> finite_sum{};
  if (m >= 1) {
    const cplx<Real> inv_z = one / z;
    cplx<Real> power = inv_z;
    Real k_minus_1_factorial(1);
    using std::abs;
    const double rg_abs = static_cast<double>(abs(seeds.rgamma_a));
    for (int k = 1; k <= m; ++k) {
      if (k > 1) k_minus_1_factorial *= (k - 1);
      Real poch(1);
      for (int i = 0; i < m - k; ++i) poch *= (Real(1) - a + Real(k + i));
      Real m_minus_k_factorial(1);
      for (int i = 2; i <= m - k; ++i) m_minus_k_factorial *= i;
      const cplx<Real> term = power * (k_minus_1_factorial * poch / m_minus_k_factorial);
      finite_sum += term;
      largest = std::max(largest, magnitude(term) * rg_abs);
      power = power * inv_z;
    }
    finite_sum = finite_sum * seeds.rgamma_a;
  }

  cplx<Real> log_sum{};
  Real log_prefactor(0);
  if (seeds.rgamma_a_minus_m != Real(0)) {
    Real m_factorial(1);
    for (int i = 2; i <= m; ++i) m_factorial *= i;
    log_prefactor = ((m + 1) % 2 == 0 ? Real(1) : Real(-1)) / m_factorial * seeds.rgamma_a_minus_m;
    using std::abs;
    const double prefactor_abs = static_cast<double>(abs(log_prefactor));

    const cplx<Real> log_z = principal_log(z);
    Real psi_a = seeds.psi_a;
    Real psi_1 = -seeds.euler;
    Real psi_m = -seeds.euler;
    for (int i = 1; i <= m; ++i) psi_m += Real(1) / i;

    // Stop once three consecutive terms fall below rel_tol of the running
    // total (log part plus finite part).
    cplx<Real> t = one;
    int quiet = 0;
    int k = 0;
    for (;; ++k) {
      if (k >= control.max_terms)
        throw scatter_error(errc::truncation, "Tricomi log series exceeded max_terms = " +
                                                  std::to_string(control.max_terms));
      const cplx<Real> bracket = log_z + cplx<Real>{psi_a - psi_1 - psi_m, Real(0)};
      const cplx<Real> contrib = t * bracket;
      log_sum += contrib;
      const double c_abs = magnitude(contrib) * prefactor_abs;
      largest = std::max(largest, c_abs);
      const double running = magnitude(log_sum * log_prefactor + finite_sum);
      if (c_abs < control.rel_tol * running || c_abs == 0.0) {
        if (++quiet >= 3) break;
      } else {
        quiet = 0;
      }
      const Real kk(k);
      t = t * z * ((a + kk) / ((Real(m + 1) + kk) * (kk + 1)));
      psi_a += Real(1) / (a + kk);
      psi_1 += Real(1) / (kk + 1);
      psi_m += Real(1) / (Real(m + 1) + kk);
    }
    terms = k + 1;
  }

  const cplx<Real> total = log_sum * log_prefactor + finite_sum;
  const double total_abs = magnitude(total);
  TricomiEvaluation out;
  out.value = complex(static_cast<double>(total.re), static_cast<double>(total.im));
  out.condition = total_abs > 0.0 ? largest / total_abs : std::numeric_limits<double>::infinity();
  out.terms = terms;
  return out;
}

template <class Real>
double unit_roundoff() {
  return static_cast<double>(std::numeric_limits<Real>::epsilon());
}

template <class Real>
bool try_tricomi(double a, int m, complex z, const SeriesControl& control, complex& result) {
  const auto eval = tricomi_kernel<Real>(a, m, z, control);
  if (eval.condition * unit_roundoff<Real>() * 10.0 > control.rel_tol) return false;
  result = eval.value;
  return true;
}

}  // namespace detail

/// Tricomi U(a, m+1, z) for integer m >= 0 from the logarithmic expansion.
///
/// The ascending series cancels by roughly e^{|z|}; working precision is
/// chosen from that estimate and raised (double, 50 and 100 digits) until the
/// observed cancellation fits inside rel_tol. Beyond the 100-digit budget the
/// call fails with errc::truncation.
inline complex tricomi_u_integer_b(double a, int m, complex z, const SeriesControl& control = {}) {
  control.validate();
  if (m < 0) throw scatter_error(errc::domain, "tricomi_u_integer_b needs m >= 0");
  if (z == complex(0.0, 0.0)) throw scatter_error(errc::domain, "tricomi_u_integer_b needs z != 0");
  if (detail::is_nonpositive_integer(a))
    throw scatter_error(errc::domain, "tricomi_u_integer_b: polynomial case a <= 0 integer not supported");

  const double lost_digits = std::abs(z) * std::numbers::log10e;
  complex result;
  if (lost_digits < 1.5 && detail::try_tricomi<double>(a, m, z, control, result)) return result;
  if (lost_digits < 30.0 && detail::try_tricomi<detail::wide50>(a, m, z, control, result)) return result;
  if (lost_digits < 80.0 && detail::try_tricomi<detail::wide100>(a, m, z, control, result)) return result;
  throw scatter_error(errc::truncation,
                      "Tricomi log series needs more than 100 digits at |z| = " + std::to_string(std::abs(z)));
}

/// Polynomial coefficients of calY_nu for integer nu, built from the finite
/// part of the Tricomi expansion with a = nu+1, m = 2nu+1: the coefficient of
/// w^j is (k-1)! (1-a+k)_{m-k} / ((m-k)! Gamma(a) 2^j) with k = nu+1+j.
inline std::vector<double> calY_odd_coefficients(const Order& order) {
  if (!order.integer_order()) throw scatter_error(errc::domain, "calY is a polynomial only for odd n");
  const int nu = order.integer_nu();
  if (nu < 0) return {1.0};
  const double a = nu + 1.0;
  const int m = 2 * nu + 1;
  std::vector<double> coeff(static_cast<std::size_t>(nu) + 1, 0.0);
  for (int k = 1; k <= m; ++k) {
    const int j = k - nu - 1;
    const double c = std::tgamma(k) * pochhammer(1.0 - a + k, m - k) / std::tgamma(m - k + 1.0) / std::tgamma(a);
    if (j < 0) {
      if (c != 0.0) throw scatter_error(errc::consistency, "negative power with nonzero coefficient");
      continue;
    }
    coeff[j] = c / std::ldexp(1.0, j);
  }
  return coeff;
}

/// calY_nu(w) = (2/w)^{nu+1} U(nu+1, 2(nu+1), 2/w).
///
/// Odd n: the Bessel polynomial y_nu(w) (calY_{-1} = 1 at n = 1, l = 0).
/// Even n: the logarithmic Tricomi series with b = 2nu+2 an odd integer.
inline complex calY(const Order& order, complex w, const SeriesControl& control = {}) {
  if (w == complex(0.0, 0.0)) throw scatter_error(errc::domain, "calY needs w != 0");
  if (order.integer_order()) {
    const int nu = order.integer_nu();
    if (nu < 0) return 1.0;
    return bessel_polynomial(nu, w);
  }
  const double a = order.nu() + 1.0;
  const int m = order.twice_nu() + 1;
  const complex big_z = 2.0 / w;
  return std::pow(big_z, a) * tricomi_u_integer_b(a, m, big_z, control);
}

}  // namespace scatterkit
