#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

#include "bessel.hpp"
#include "error.hpp"
#include "partialwave.hpp"
#include "specfun.hpp"

namespace scatterkit {

/// Scattered-current sample at one (r, theta). dsigma_domega uses the
/// bracketed form; dsigma_cos_form evaluates |j| r^{n-1}/(k cos gamma).
struct CrossSectionSample {
  double r = 0.0;
  double theta = 0.0;
  double dsigma_domega = 0.0;
  double jr_sc = 0.0;
  double jtheta_sc = 0.0;
  double gamma = 0.0;
  double dsigma_cos_form = 0.0;
};

struct AsymptoticAmplitude {
  double theta = 0.0;
  complex f;
};

struct OneDimensionalSummary {
  double sigma0 = 0.0;
  double sigmapi = 0.0;
  double T = 0.0;
  double R = 0.0;
};

struct TotalCrossSection {
  double total = 0.0;
  std::vector<double> per_l;
};

namespace detail {

/// Scattered wave and its r- and theta-derivatives at one point.
struct ScatteredField {
  complex psi;
  complex d_r;
  complex d_theta;
};

inline ScatteredField scattered_field(const ScatterConfig& config, const PhaseShiftSet& shifts, double r,
                                      double theta) {
  const int top = shifts.max_l();
  const double k = config.k;
  const auto seq = bessel_sequence(config.n, top + 1, k * r);
  seq.require_finite_hankel(top + 1);
  const auto ang = angular_sequence(config.n, top, theta);
  const auto dang = angular_derivative_sequence(config.n, top, theta);
  const double s = 0.5 * (config.n - 3);
  const double scale = radial_scale(config.n, r);

  ScatteredField out{};
  for (int l = 0; l <= top; ++l) {
    const complex s_minus_1 = shifts.s_matrix(l) - 1.0;
    const complex weight = 0.5 * s_minus_1 * mode_prefactor(config.n, k, l);
    const complex h = seq.h1(l);
    const complex radial = h * scale;
    const complex radial_dr = (k * seq.hankel_derivative(1, l) - s * h / r) * scale;
    out.psi += weight * ang[l] * radial;
    out.d_r += weight * ang[l] * radial_dr;
    out.d_theta += weight * dang[l] * radial;
  }
  return out;
}

inline void require_real_shifts(const PhaseShiftSet& shifts) {
  if (!shifts.elastic())
    throw scatter_error(errc::domain, "cross sections are defined here for real phase shifts only");
}

}  // namespace detail

/// W_r[h^(2)_{nu}(kr)/r^s, h^(1)_{nu'}(kr)/r^s] with s = (n-3)/2 and
/// analytic Hankel derivatives. The s/r terms cancel in the determinant.
inline complex wronskian_radial(const ScatterConfig& config, int l, int lp, double r) {
  config.validate();
  r = detail::check_radius(r);
  if (l < 0 || lp < 0) throw scatter_error(errc::domain, "l must be >= 0");
  const int top = std::max(l, lp);
  const auto seq = bessel_sequence(config.n, top + 1, config.k * r);
  seq.require_finite_hankel(top + 1);
  const double scale = radial_scale(config.n, r);
  return config.k * scale * scale * (seq.h2(l) * seq.hankel_derivative(1, lp) - seq.h1(lp) * seq.hankel_derivative(2, l));
}

/// Leading finite-distance cross section r^{n-1} (1/k) Im(psi_sc* d_r psi_sc).
inline double dsigma_leading(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  config.validate();
  shifts.validate();
  detail::require_real_shifts(shifts);
  r = detail::check_radius(r);
  const auto field = detail::scattered_field(config, shifts, r, theta);
  return std::pow(r, config.n - 1) / config.k * std::imag(std::conj(field.psi) * field.d_r);
}

/// The same quantity as dsigma_leading from the double sum over Wronskians.
/// The sum is real by anti-Hermiticity of W_{ll'}; a residual imaginary part
/// above 1e-12 of the summed magnitudes signals lost accuracy.
inline double dsigma_wronskian(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  config.validate();
  shifts.validate();
  detail::require_real_shifts(shifts);
  r = detail::check_radius(r);
  const int top = shifts.max_l();
  std::vector<complex> a(static_cast<std::size_t>(top) + 1);
  for (int l = 0; l <= top; ++l) a[l] = a_l(config, shifts, l, theta);

  const auto seq = bessel_sequence(config.n, top + 1, config.k * r);
  seq.require_finite_hankel(top + 1);
  const double scale = radial_scale(config.n, r);
  const double w_factor = config.k * scale * scale;

  complex sum = 0.0;
  double magnitude = 0.0;
  for (int l = 0; l <= top; ++l) {
    if (a[l] == complex(0.0)) continue;
    for (int lp = 0; lp <= top; ++lp) {
      if (a[lp] == complex(0.0)) continue;
      const complex w =
          w_factor * (seq.h2(l) * seq.hankel_derivative(1, lp) - seq.h1(lp) * seq.hankel_derivative(2, l));
      const complex term = std::conj(a[l]) * a[lp] * w;
      sum += term;
      magnitude += std::abs(term);
    }
  }
  if (std::abs(sum.real()) > 1e-12 * magnitude)
    throw scatter_error(errc::consistency, "Wronskian double sum is not real to 1e-12");
  return std::pow(r, config.n - 1) / (2.0 * config.k) * sum.imag();
}

/// Full current-based cross section with the angular current component.
/// Needs 0 < theta < pi for n >= 2; in one dimension j_theta vanishes.
/// A vanishing radial current is an error unless `degenerate_as_zero`,
/// which returns an all-zero sample instead.
inline CrossSectionSample dsigma_full(const ScatterConfig& config, const PhaseShiftSet& shifts, double r,
                                      double theta, bool degenerate_as_zero = false) {
  config.validate();
  shifts.validate();
  detail::require_real_shifts(shifts);
  r = detail::check_radius(r);
  if (config.n >= 2 && !(theta > 0.0 && theta < std::numbers::pi))
    throw scatter_error(errc::domain, "dsigma_full needs 0 < theta < pi");
  const auto field = detail::scattered_field(config, shifts, r, theta);

  CrossSectionSample out;
  out.r = r;
  out.theta = theta;
  out.jr_sc = std::imag(std::conj(field.psi) * field.d_r);
  out.jtheta_sc = config.n >= 2 ? std::imag(std::conj(field.psi) * field.d_theta) / r : 0.0;
  if (std::abs(out.jr_sc) < config.series.underflow_guard) {
    if (degenerate_as_zero) return {r, theta, 0.0, 0.0, 0.0, 0.0, 0.0};
    throw scatter_error(errc::degenerate, "radial scattered current vanishes; gamma is undefined");
  }
  out.gamma = std::atan2(out.jtheta_sc, out.jr_sc);
  const double ratio = out.jtheta_sc / out.jr_sc;
  const double area = std::pow(r, config.n - 1);
  out.dsigma_domega = out.jr_sc / config.k * (1.0 + ratio * ratio) * area;
  out.dsigma_cos_form = std::hypot(out.jr_sc, out.jtheta_sc) / (config.k * std::cos(out.gamma)) * area;
  return out;
}

/// Forward/backward cross sections and transmission/reflection in n = 1.
inline OneDimensionalSummary one_d_summary(const PhaseShiftSet& shifts) {
  shifts.validate();
  detail::require_real_shifts(shifts);
  const double d0 = shifts.shift(0).real();
  const double d1 = shifts.shift(1).real();
  const double s0 = std::sin(d0);
  const double s1 = std::sin(d1);
  const double squares = s0 * s0 + s1 * s1;
  const double cross = std::cos(d0 - d1) * s0 * s1;
  if (squares == 0.0) throw scatter_error(errc::degenerate, "T and R are undefined when sin(d0) = sin(d1) = 0");
  OneDimensionalSummary out;
  out.sigma0 = squares + 2.0 * cross;
  out.sigmapi = squares - 2.0 * cross;
  out.T = 0.5 + cross / squares;
  out.R = 0.5 - cross / squares;
  return out;
}

/// Two-dimensional double sum with Deg(l) weights and cos(l theta).
inline double two_d_dsigma(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  if (config.n != 2) throw scatter_error(errc::wrong_dimension, "two_d_dsigma needs n = 2");
  return dsigma_wronskian(config, shifts, r, theta);
}

/// Large-distance amplitude f(theta) = sum a_l(theta) (-i)^{nu+1} / k.
inline AsymptoticAmplitude f_theta_asymptotic(const ScatterConfig& config, const PhaseShiftSet& shifts,
                                              double theta) {
  config.validate();
  shifts.validate();
  if (config.n < 2) throw scatter_error(errc::wrong_dimension, "f(theta) is defined for n >= 2");
  const int top = shifts.max_l();
  const auto ang = angular_sequence(config.n, top, theta);
  complex sum = 0.0;
  for (int l = 0; l <= top; ++l) {
    const double nu = l + 0.5 * (config.n - 3);
    const complex phase = std::polar(1.0, -0.5 * std::numbers::pi * (nu + 1.0));
    sum += 0.5 * (shifts.s_matrix(l) - 1.0) * mode_prefactor(config.n, config.k, l) * ang[l] * phase;
  }
  return {theta, sum / config.k};
}

/// Surface area of the unit sphere S^{n-2}, the measure left after the
/// polar angle is separated.
inline double sphere_area_minus_two(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * (n - 1)) / std::tgamma(0.5 * (n - 1));
}

inline TotalCrossSection sigma_total_asymptotic(const ScatterConfig& config, const PhaseShiftSet& shifts) {
  config.validate();
  shifts.validate();
  detail::require_real_shifts(shifts);
  if (config.n < 2) throw scatter_error(errc::wrong_dimension, "total cross section needs n >= 2");
  const int n = config.n;
  const double prefactor = 2.0 * sphere_area_minus_two(n) * std::pow(config.k, 1 - n);
  TotalCrossSection out;
  for (int l = 0; l <= shifts.max_l(); ++l) {
    // (2l+n-2)(l+1)_{n-3} tends to Deg(l) as n -> 2.
    const double weight = n == 2 ? deg(l) : (2.0 * l + n - 2.0) * pochhammer(l + 1.0, n - 3);
    const double s = std::sin(shifts.shift(l).real());
    out.per_l.push_back(prefactor * weight * s * s);
    out.total += out.per_l.back();
  }
  return out;
}

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
inline QuadratureRule gauss_legendre(int count) {
  if (count < 1) throw scatter_error(errc::domain, "quadrature needs at least one node");
  const auto positive = boost::math::legendre_p_zeros<double>(count);
  QuadratureRule rule;
  auto push = [&](double x) {
    const double dp = boost::math::legendre_p_prime(count, x);
    rule.nodes.push_back(x);
    rule.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  };
  for (auto it = positive.rbegin(); it != positive.rend(); ++it)
    if (*it != 0.0) push(-*it);
  for (double x : positive) push(x);
  return rule;
}

/// Integral of |f(theta)|^2 over the sphere. For odd n the integrand is a
/// polynomial in cos(theta) and Gauss-Legendre in cos(theta) with 4L+20
/// nodes is exact; for even n the weight sin^{n-2} theta d theta carries
/// a half-integer power of 1-x^2, so the rule is applied in theta instead.
inline double sigma_total_quadrature(const ScatterConfig& config, const PhaseShiftSet& shifts, int nodes = 0) {
  config.validate();
  shifts.validate();
  if (config.n < 2) throw scatter_error(errc::wrong_dimension, "total cross section needs n >= 2");
  const int n = config.n;
  const bool odd = n % 2 == 1;
  if (nodes <= 0) nodes = odd ? 4 * shifts.max_l() + 20 : std::max(200, 4 * shifts.max_l() + 20);
  const auto rule = gauss_legendre(nodes);
  double integral = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    if (odd) {
      const double x = rule.nodes[i];
      const double f = std::norm(f_theta_asymptotic(config, shifts, std::acos(x)).f);
      integral += rule.weights[i] * f * std::pow(1.0 - x * x, 0.5 * (n - 3));
    } else {
      const double theta = 0.5 * std::numbers::pi * (rule.nodes[i] + 1.0);
      const double f = std::norm(f_theta_asymptotic(config, shifts, theta).f);
      integral += 0.5 * std::numbers::pi * rule.weights[i] * f * std::pow(std::sin(theta), n - 2);
    }
  }
  return sphere_area_minus_two(n) * integral;
}

/// dsigma_leading(r, theta) / |f(theta)|^2.
inline double asymptotic_ratio(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  const double f2 = std::norm(f_theta_asymptotic(config, shifts, theta).f);
  if (f2 == 0.0) throw scatter_error(errc::degenerate, "|f(theta)|^2 vanishes");
  return dsigma_leading(config, shifts, r, theta) / f2;
}

/// Cross sections over an (r, theta) grid, r-major, evaluated in parallel.
inline std::vector<CrossSectionSample> evaluate_xsection_grid(const ScatterConfig& config,
                                                             const PhaseShiftSet& shifts,
                                                             const std::vector<double>& radii,
                                                             const std::vector<double>& thetas, unsigned jobs) {
  std::vector<CrossSectionSample> out(radii.size() * thetas.size());
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    out[idx] = dsigma_full(config, shifts, radii[idx / thetas.size()], thetas[idx % thetas.size()], true);
  });
  return out;
}

}  // namespace scatterkit
