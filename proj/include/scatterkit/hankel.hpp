#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bessel.hpp"
#include "error.hpp"
#include "order.hpp"
#include "series_control.hpp"
#include "tricomi.hpp"

namespace scatterkit {

enum class HankelPath {
  recurrence,  // ordinary Bessel J/Y of order nu+1/2 by recurrence
  calY         // h^(1) = e^{i(z - nu pi/2)} calY(-1/(iz)) / (iz), and its conjugate form
};

/// Spherical Hankel function h_nu^(kind)(z) for real z > 0.
inline complex spherical_hankel(int kind, const Order& order, double z,
                                HankelPath path = HankelPath::recurrence,
                                const SeriesControl& control = {}) {
  if (kind != 1 && kind != 2) throw scatter_error(errc::domain, "Hankel kind must be 1 or 2");
  if (!(z > 0.0)) throw scatter_error(errc::domain, "spherical_hankel needs z > 0");

  if (path == HankelPath::recurrence) {
    if (order.twice_nu() == -2) {
      // n = 1, l = 0: j_{-1} = cos z/z, y_{-1} = sin z/z.
      const complex h1 = std::exp(complex(0.0, z)) / z;
      return kind == 1 ? h1 : std::conj(h1);
    }
    const auto seq = bessel_sequence(order.n(), order.l(), z);
    seq.require_finite_hankel(order.l());
    return seq.hankel(kind, order.l());
  }

  const complex iz(0.0, z);
  const double phase = z - order.nu() * std::numbers::pi / 2.0;
  complex value;
  if (kind == 1) {
    value = std::exp(complex(0.0, phase)) / iz * calY(order, -1.0 / iz, control);
  } else {
    value = -std::exp(complex(0.0, -phase)) / iz * calY(order, 1.0 / iz, control);
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw scatter_error(errc::overflow, "spherical Hankel overflows at z = " + std::to_string(z));
  return value;
}

/// j_nu(z) = (h^(1) + h^(2)) / 2; the imaginary residual must vanish.
inline double spherical_bessel_j(const Order& order, double z, HankelPath path = HankelPath::recurrence,
                                 const SeriesControl& control = {}) {
  const complex sum = 0.5 * (spherical_hankel(1, order, z, path, control) +
                             spherical_hankel(2, order, z, path, control));
  const double scale = std::max(std::abs(sum), std::abs(spherical_hankel(1, order, z, path, control)));
  if (std::abs(sum.imag()) > control.rel_tol * scale)
    throw scatter_error(errc::consistency, "imaginary residual in j_nu half-sum");
  return sum.real();
}

/// d/dz h_nu^(kind)(z) from the recurrence pair (h_nu, h_{nu+1}).
inline complex spherical_hankel_derivative(int kind, const Order& order, double z) {
  if (order.twice_nu() == -2) {
    // h_{-1}^(1) = e^{iz}/z
    const complex h1 = std::exp(complex(0.0, z)) / z;
    const complex d1 = h1 * complex(-1.0 / z, 1.0);
    return kind == 1 ? d1 : std::conj(d1);
  }
  const auto seq = bessel_sequence(order.n(), order.l() + 1, z);
  seq.require_finite_hankel(order.l() + 1);
  return seq.hankel_derivative(kind, order.l());
}

/// calY_nu(i/x) for real x > 0, the argument that appears in the radial
/// modes. Uses the series/polynomial when it fits the precision budget and
/// otherwise inverts the Hankel relation with the recurrence path.
inline complex calY_on_axis(const Order& order, double x, const SeriesControl& control = {}) {
  if (!(x > 0.0)) throw scatter_error(errc::domain, "calY_on_axis needs x > 0");
  const complex w(0.0, 1.0 / x);
  if (order.integer_order() || 2.0 * x * std::numbers::log10e < 60.0) return calY(order, w, control);
  const complex h1 = spherical_hankel(1, order, x, HankelPath::recurrence, control);
  return h1 * complex(0.0, x) * std::exp(complex(0.0, -(x - order.nu() * std::numbers::pi / 2.0)));
}

}  // namespace scatterkit
