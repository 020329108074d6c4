#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "error.hpp"
#include "hankel.hpp"
#include "order.hpp"
#include "parallel.hpp"
#include "series_control.hpp"
#include "specfun.hpp"

namespace scatterkit {

/// Problem context: dimension, wavenumber, partial-wave cutoff.
struct ScatterConfig {
  int n = 3;
  double k = 1.0;
  int lmax = -1;  // < 0 selects ceil(k r) + 30 per evaluation
  SeriesControl series{};

  void validate() const {
    if (n < 1) throw scatter_error(errc::config, "dimension n must be >= 1");
    if (!(k > 0.0) || !std::isfinite(k)) throw scatter_error(errc::config, "wavenumber k must be positive");
    series.validate();
  }

  /// Cutoff used for a field evaluation reaching radius r.
  int lmax_for(double r) const {
    const int needed = static_cast<int>(std::ceil(k * r));
    if (lmax < 0) return needed + 30;
    if (n >= 2 && lmax < needed + 20)
      throw scatter_error(errc::truncation, "lmax = " + std::to_string(lmax) + " is below ceil(k r) + 20 = " +
                                                std::to_string(needed + 20));
    return lmax;
  }
};

/// Phase shifts delta_0..delta_L; delta_l = 0 for l > L. Complex entries
/// model absorption and switch off the unitarity checks.
struct PhaseShiftSet {
  std::vector<complex> delta;

  PhaseShiftSet() = default;
  explicit PhaseShiftSet(std::vector<complex> values) : delta(std::move(values)) { validate(); }
  static PhaseShiftSet from_real(const std::vector<double>& values) {
    return PhaseShiftSet(std::vector<complex>(values.begin(), values.end()));
  }

  void validate() const {
    if (delta.empty()) throw scatter_error(errc::config, "phase shift set must hold at least delta_0");
    for (const auto& d : delta)
      if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
        throw scatter_error(errc::config, "phase shifts must be finite");
  }

  int max_l() const { return static_cast<int>(delta.size()) - 1; }
  complex shift(int l) const { return l <= max_l() ? delta[l] : complex(0.0); }
  /// e^{2 i delta_l}
  complex s_matrix(int l) const { return std::exp(complex(0.0, 2.0) * shift(l)); }
  bool elastic() const {
    for (const auto& d : delta)
      if (d.imag() != 0.0) return false;
    return true;
  }
};

/// Per-l radial data of the scattered wave at one radius.
struct RadialMode {
  int l = 0;
  complex Cl;       // incoming (h^(2)) coefficient
  complex Dl;       // outgoing (h^(1)) coefficient, Cl e^{2 i delta}
  complex Al;       // 2 sqrt(Cl Dl), branch 2 Cl e^{i delta}
  double Ml = 1.0;  // |calY(-1/(ikr))|
  double DeltaL = 0.0;  // arg calY(-1/(ikr))
};

struct FieldSample {
  double r = 0.0;
  double theta = 0.0;
  complex psi;
  complex psi_in;
  complex psi_sc;
};

/// Coefficients of h^(2)/r^{(n-3)/2} (incoming) and h^(1)/r^{(n-3)/2}
/// (outgoing) in one partial wave, angular factor excluded.
struct ModeCoefficients {
  complex incoming;
  complex outgoing;
};

namespace detail {

inline complex i_power(int l) {
  switch (((l % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

inline double check_theta(int n, double theta) {
  if (!(theta >= -1e-12 && theta <= std::numbers::pi + 1e-12))
    throw scatter_error(errc::domain, "theta must lie in [0, pi], got " + std::to_string(theta));
  if (n == 1) {
    if (std::abs(theta) <= 1e-12) return 0.0;
    if (std::abs(theta - std::numbers::pi) <= 1e-12) return std::numbers::pi;
    throw scatter_error(errc::domain, "in one dimension theta is 0 or pi");
  }
  return std::clamp(theta, 0.0, std::numbers::pi);
}

inline double check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw scatter_error(errc::domain, "radius must be positive");
  return r;
}

}  // namespace detail

/// 1/r^{(n-3)/2}
inline double radial_scale(int n, double r) { return std::pow(r, -0.5 * (n - 3)); }

/// Degeneracy weight of the two-dimensional expansion.
inline int deg(int l) { return l == 0 ? 1 : 2; }

/// Gamma(n/2-1) / (sqrt(pi) (k/2)^{(n-3)/2}) (2l+n-2) i^l, the weight that
/// multiplies j_nu(kr)/r^{(n-3)/2} C_l^{n/2-1}(cos theta) in the plane wave.
/// At n = 2 the Gamma pole is removed together with the Gegenbauer zero and
/// the weight becomes Deg(l) i^l sqrt(2k/pi), paired with cos(l theta).
inline complex mode_prefactor(int n, double k, int l) {
  using std::numbers::pi;
  if (n == 2) return static_cast<double>(deg(l)) * std::sqrt(2.0 * k / pi) * detail::i_power(l);
  const double base = std::tgamma(0.5 * n - 1.0) / (std::sqrt(pi) * std::pow(0.5 * k, 0.5 * (n - 3)));
  return base * (2.0 * l + n - 2.0) * detail::i_power(l);
}

/// Angular functions for l = 0..lmax: C_l^{n/2-1}(cos theta) for n != 2,
/// cos(l theta) for n = 2.
inline std::vector<double> angular_sequence(int n, int lmax, double theta) {
  theta = detail::check_theta(n, theta);
  if (n == 2) {
    std::vector<double> c(static_cast<std::size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l) c[l] = std::cos(l * theta);
    return c;
  }
  const double x = n == 1 ? (theta == 0.0 ? 1.0 : -1.0) : std::cos(theta);
  return gegenbauer_sequence(lmax, 0.5 * n - 1.0, x);
}

/// d/dtheta of angular_sequence; zero for n = 1 (no angular coordinate).
inline std::vector<double> angular_derivative_sequence(int n, int lmax, double theta) {
  theta = detail::check_theta(n, theta);
  std::vector<double> d(static_cast<std::size_t>(lmax) + 1, 0.0);
  if (n == 1) return d;
  if (n == 2) {
    for (int l = 0; l <= lmax; ++l) d[l] = -l * std::sin(l * theta);
    return d;
  }
  const double lambda = 0.5 * n - 1.0;
  const double x = std::cos(theta);
  const double s = std::sin(theta);
  if (lmax >= 1) {
    const auto shifted = gegenbauer_sequence(lmax - 1, lambda + 1.0, x);
    for (int l = 1; l <= lmax; ++l) d[l] = -s * 2.0 * lambda * shifted[l - 1];
  }
  return d;
}

/// Truncated n-dimensional plane-wave expansion of e^{ikr cos theta}.
inline complex plane_wave(const ScatterConfig& config, double r, double theta) {
  config.validate();
  r = detail::check_radius(r);
  const int lmax = config.lmax_for(r);
  const auto seq = bessel_sequence(config.n, lmax, config.k * r);
  const auto ang = angular_sequence(config.n, lmax, theta);
  const double scale = radial_scale(config.n, r);
  complex sum = 0.0;
  for (int l = 0; l <= lmax; ++l) sum += mode_prefactor(config.n, config.k, l) * (seq.j[l] * scale * ang[l]);
  return sum;
}

/// a_l(theta): coefficient of h^(1)_{l+(n-3)/2}(kr)/r^{(n-3)/2} in the
/// scattered wave.
inline complex a_l(const ScatterConfig& config, const PhaseShiftSet& shifts, int l, double theta) {
  config.validate();
  if (l < 0) throw scatter_error(errc::domain, "l must be >= 0");
  const complex s_minus_1 = shifts.s_matrix(l) - 1.0;
  if (s_minus_1 == complex(0.0)) return 0.0;
  const auto ang = angular_sequence(config.n, l, theta);
  return 0.5 * s_minus_1 * mode_prefactor(config.n, config.k, l) * ang[l];
}

inline ModeCoefficients incident_coefficients(const ScatterConfig& config, int l) {
  const complex c = 0.5 * mode_prefactor(config.n, config.k, l);
  return {c, c};
}

inline ModeCoefficients total_coefficients(const ScatterConfig& config, const PhaseShiftSet& shifts, int l) {
  const complex c = 0.5 * mode_prefactor(config.n, config.k, l);
  return {c, c * shifts.s_matrix(l)};
}

/// Incident wave as the sum of incoming and outgoing Hankel halves.
inline complex psi_incident(const ScatterConfig& config, double r, double theta) {
  config.validate();
  r = detail::check_radius(r);
  const int lmax = config.lmax_for(r);
  const auto seq = bessel_sequence(config.n, lmax, config.k * r);
  seq.require_finite_hankel(lmax);
  const auto ang = angular_sequence(config.n, lmax, theta);
  const double scale = radial_scale(config.n, r);
  complex sum = 0.0;
  for (int l = 0; l <= lmax; ++l) {
    const auto c = incident_coefficients(config, l);
    sum += (c.incoming * seq.h2(l) + c.outgoing * seq.h1(l)) * (scale * ang[l]);
  }
  return sum;
}

namespace detail {

struct FieldParts {
  complex psi;     // sum of incoming + e^{2i delta} outgoing halves
  complex psi_in;  // incoming + outgoing halves, delta = 0
  complex psi_sc;  // sum a_l h^(1)/r^{(n-3)/2}
};

inline FieldParts field_parts(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  const int lmax = std::max(config.lmax_for(r), shifts.max_l());
  const auto seq = bessel_sequence(config.n, lmax, config.k * r);
  const auto ang = angular_sequence(config.n, lmax, theta);
  const double scale = radial_scale(config.n, r);
  const int scattered_top = std::min(shifts.max_l(), lmax);
  seq.require_finite_hankel(scattered_top);

  FieldParts parts{};
  for (int l = 0; l <= lmax; ++l) {
    const complex weight = mode_prefactor(config.n, config.k, l) * (scale * ang[l]);
    const complex incident = 0.5 * (seq.h2(l) + seq.h1(l));
    parts.psi_in += weight * incident;
    if (l <= scattered_top) {
      const complex s = shifts.s_matrix(l);
      parts.psi += weight * (0.5 * (seq.h2(l) + s * seq.h1(l)));
      parts.psi_sc += weight * (0.5 * (s - 1.0) * seq.h1(l));
    } else {
      parts.psi += weight * incident;
    }
  }
  return parts;
}

}  // namespace detail

/// Total field after scattering. psi comes from the phase-shifted partial
/// waves; psi_in and psi_sc from the incident/scattered split.
inline FieldSample psi_total(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  config.validate();
  shifts.validate();
  r = detail::check_radius(r);
  const auto parts = detail::field_parts(config, shifts, r, theta);
  return {r, theta, parts.psi, parts.psi_in, parts.psi_sc};
}

/// Boundary-condition route: e^{ikr cos theta} + sum a_l h^(1)/r^{(n-3)/2}.
inline complex psi_boundary_form(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  config.validate();
  shifts.validate();
  r = detail::check_radius(r);
  const double t = detail::check_theta(config.n, theta);
  const auto seq = bessel_sequence(config.n, shifts.max_l(), config.k * r);
  seq.require_finite_hankel(shifts.max_l());
  const double scale = radial_scale(config.n, r);
  complex sum = std::exp(complex(0.0, config.k * r * std::cos(t)));
  for (int l = 0; l <= shifts.max_l(); ++l) sum += a_l(config, shifts, l, t) * seq.h1(l) * scale;
  return sum;
}

/// R_l(r) = (C_l h^(2) + D_l h^(1)) / r^{(n-3)/2}.
inline complex radial_hankel_form(const ScatterConfig& config, const PhaseShiftSet& shifts, int l, double r) {
  config.validate();
  r = detail::check_radius(r);
  const auto seq = bessel_sequence(config.n, l, config.k * r);
  seq.require_finite_hankel(l);
  const auto c = total_coefficients(config, shifts, l);
  return (c.incoming * seq.h2(l) + c.outgoing * seq.h1(l)) * radial_scale(config.n, r);
}

inline RadialMode radial_mode(const ScatterConfig& config, const PhaseShiftSet& shifts, int l, double r) {
  config.validate();
  r = detail::check_radius(r);
  const Order order(config.n, l);
  const auto c = total_coefficients(config, shifts, l);
  const complex y = calY_on_axis(order, config.k * r, config.series);
  RadialMode mode;
  mode.l = l;
  mode.Cl = c.incoming;
  mode.Dl = c.outgoing;
  mode.Al = 2.0 * c.incoming * std::exp(complex(0.0, 1.0) * shifts.shift(l));
  mode.Ml = std::abs(y);
  mode.DeltaL = std::arg(y);
  return mode;
}

/// M_l A_l/(kr) r^{-(n-3)/2} sin[kr - nu pi/2 + delta_l + Delta_l].
inline complex radial_sine_form(const ScatterConfig& config, const PhaseShiftSet& shifts, const RadialMode& mode,
                                double r) {
  const Order order(config.n, mode.l);
  const double kr = config.k * r;
  const complex phase = kr - order.nu() * std::numbers::pi / 2.0 + shifts.shift(mode.l) + mode.DeltaL;
  return mode.Ml * mode.Al / kr * radial_scale(config.n, r) * std::sin(phase);
}

/// Distance-dependent three-dimensional amplitude:
/// f(r,theta) = 1/(2ik) sum (2l+1)(e^{2i delta}-1) P_l(cos theta) y_l(-1/(ikr)).
inline complex f_r_theta_3d(const ScatterConfig& config, const PhaseShiftSet& shifts, double r, double theta) {
  config.validate();
  if (config.n != 3) throw scatter_error(errc::wrong_dimension, "f(r, theta) is the n = 3 amplitude");
  r = detail::check_radius(r);
  const double x = std::cos(detail::check_theta(3, theta));
  const complex w(0.0, 1.0 / (config.k * r));
  complex sum = 0.0;
  for (int l = 0; l <= shifts.max_l(); ++l)
    sum += (2.0 * l + 1.0) * (shifts.s_matrix(l) - 1.0) * legendre(l, x) * bessel_polynomial(l, w);
  return sum / complex(0.0, 2.0 * config.k);
}

/// Field over an (r, theta) grid, r-major. Every point is independent, so
/// the result does not depend on `jobs`.
inline std::vector<FieldSample> evaluate_field_grid(const ScatterConfig& config, const PhaseShiftSet& shifts,
                                                    const std::vector<double>& radii,
                                                    const std::vector<double>& thetas, unsigned jobs) {
  std::vector<FieldSample> out(radii.size() * thetas.size());
  parallel_for(out.size(), jobs, [&](std::size_t idx) {
    out[idx] = psi_total(config, shifts, radii[idx / thetas.size()], thetas[idx % thetas.size()]);
  });
  return out;
}

}  // namespace scatterkit
