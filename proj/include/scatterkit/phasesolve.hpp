#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "error.hpp"
#include "order.hpp"
#include "parallel.hpp"
#include "partialwave.hpp"

namespace scatterkit {

enum class PotentialKind { hard_sphere, square_well, tabulated };

/// Short-range model potential in units where the radial equation reads
/// R'' + (n-1)/r R' + [k^2 - l(l+n-2)/r^2 - V(r)] R = 0.
/// Tables are piecewise linear between knots; a repeated radius encodes a
/// jump. V must vanish at the last knot and is zero beyond it.
struct PotentialModel {
  PotentialKind kind = PotentialKind::square_well;
  double a = 1.0;
  double V0 = 0.0;
  std::vector<double> r;
  std::vector<double> V;

  static PotentialModel hard_sphere(double radius) { return {PotentialKind::hard_sphere, radius, 0.0, {}, {}}; }
  static PotentialModel square_well(double radius, double depth) {
    return {PotentialKind::square_well, radius, depth, {}, {}};
  }
  static PotentialModel tabulated(std::vector<double> radii, std::vector<double> values) {
    PotentialModel m{PotentialKind::tabulated, 0.0, 0.0, std::move(radii), std::move(values)};
    m.validate();
    m.a = m.r.back();
    return m;
  }

  void validate() const {
    if (kind != PotentialKind::tabulated) {
      if (!(a > 0.0) || !std::isfinite(a)) throw scatter_error(errc::config, "potential radius must be positive");
      if (!std::isfinite(V0)) throw scatter_error(errc::config, "well depth must be finite");
      return;
    }
    if (r.size() != V.size() || r.size() < 2)
      throw scatter_error(errc::config, "tabulated potential needs matching r and V arrays of length >= 2");
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (!std::isfinite(r[i]) || !std::isfinite(V[i])) throw scatter_error(errc::config, "table entries must be finite");
      if (i == 0 && r[i] < 0.0) throw scatter_error(errc::config, "table radii must be >= 0");
      if (i > 0 && r[i] < r[i - 1]) throw scatter_error(errc::config, "table radii must be nondecreasing");
      if (i > 1 && r[i] == r[i - 2]) throw scatter_error(errc::config, "at most two knots may share a radius");
    }
    if (V.back() != 0.0) throw scatter_error(errc::config, "tabulated potential must vanish at its last knot");
    if (!(r.back() > 0.0)) throw scatter_error(errc::config, "tabulated potential needs a positive cutoff radius");
  }

  /// Radius beyond which V = 0.
  double cutoff() const { return kind == PotentialKind::tabulated ? r.back() : a; }
};

struct MatchResult {
  int l = 0;
  double delta = 0.0;            // principal branch (-pi/2, pi/2]
  double delta_unwrapped = 0.0;  // continuous along a sweep, equals delta otherwise
  double residual = 0.0;         // ||D/C| - 1|
  complex S{1.0, 0.0};           // e^{2 i delta}
  std::vector<std::string> warnings;
};

struct OdeOptions {
  double r_match = 0.0;     // <= 0 matches at the cutoff radius
  double steps_per_unit = 0.0;  // > 0 overrides the automatic step size
};

namespace detail {

inline double principal_delta(double numerator, double denominator) {
  // e^{2 i delta} = -conj(X)/X with X = denominator-side complex number;
  // tan(delta) = numerator / denominator.
  if (denominator == 0.0) return std::numbers::pi / 2.0;
  double d = std::atan(numerator / denominator);
  if (d <= -std::numbers::pi / 2.0) d = std::numbers::pi / 2.0;
  return d;
}

inline MatchResult make_result(int l, double delta) {
  MatchResult m;
  m.l = l;
  m.delta = delta;
  m.delta_unwrapped = delta;
  m.S = std::polar(1.0, 2.0 * delta);
  m.residual = std::abs(std::abs(m.S) - 1.0);
  return m;
}

/// J_{mu+1}(x)/J_mu(x) (modified = false) or I_{mu+1}(x)/I_mu(x)
/// (modified = true) by the modified Lentz continued fraction.
inline double cylinder_ratio(double mu, double x, bool modified) {
  constexpr double tiny = 1e-300;
  const double sign = modified ? 1.0 : -1.0;
  // ratio = x / (2(mu+1) + sign x^2 / (2(mu+2) + sign x^2 / ...))
  double f = tiny;
  double C = f;
  double D = 0.0;
  const int limit = 100000 + static_cast<int>(4 * x);
  for (int j = 1; j < limit; ++j) {
    const double a = j == 1 ? x : sign * x * x;
    const double b = 2.0 * (mu + j);
    D = b + a * D;
    if (D == 0.0) D = tiny;
    C = b + a / C;
    if (C == 0.0) C = tiny;
    D = 1.0 / D;
    const double delta = C * D;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) return f;
  }
  throw scatter_error(errc::truncation, "Bessel ratio continued fraction did not converge");
}

/// tan(delta) from the interior log-derivative beta = P/Q at r = a:
/// tan(delta) = (Q k j' - P j) / (Q k y' - P y) at ka.
inline MatchResult match_log_derivative(const ScatterConfig& config, int l, double a, double P, double Q) {
  const double ka = config.k * a;
  const auto seq = bessel_sequence(config.n, l + 1, ka);
  const double num = Q * config.k * seq.j_derivative(l) - P * seq.j[l];
  const double den = Q * config.k * seq.y_derivative(l) - P * seq.y[l];
  MatchResult m;
  if (!std::isfinite(den)) {
    m = make_result(l, 0.0);
    m.warnings.push_back("y overflows at ka; phase shift below double range, set to 0");
  } else {
    m = make_result(l, principal_delta(num, den));
  }
  return m;
}

}  // namespace detail

/// Hard hypersphere: R_l(a) = 0 gives e^{2i delta} = -h2/h1 at ka,
/// equivalently tan(delta) = j/y.
inline MatchResult hard_sphere_shift(const ScatterConfig& config, double a, int l) {
  config.validate();
  if (!(a > 0.0)) throw scatter_error(errc::domain, "hard sphere radius must be positive");
  if (l < 0) throw scatter_error(errc::domain, "l must be >= 0");
  return detail::match_log_derivative(config, l, a, 1.0, 0.0);
}

/// Square well V = V0 for r < a. Propagating, evanescent and zero-momentum
/// interiors are all handled.
inline MatchResult square_well_shift(const ScatterConfig& config, double a, double V0, int l) {
  config.validate();
  if (!(a > 0.0)) throw scatter_error(errc::domain, "well radius must be positive");
  if (l < 0) throw scatter_error(errc::domain, "l must be >= 0");
  const Order order(config.n, l);
  const double nu = order.nu();
  const double mu = nu + 0.5;
  const double q2 = config.k * config.k - V0;
  double beta;  // d/dr log of the interior radial factor without r^{-(n-3)/2}
  if (q2 > 0.0) {
    const double q = std::sqrt(q2);
    beta = q * (nu / (q * a) - detail::cylinder_ratio(mu, q * a, false));
  } else if (q2 < 0.0) {
    const double kappa = std::sqrt(-q2);
    beta = kappa * (nu / (kappa * a) + detail::cylinder_ratio(mu, kappa * a, true));
  } else {
    beta = nu / a;
  }
  return detail::match_log_derivative(config, l, a, beta, 1.0);
}

namespace detail {

struct LinearPiece {
  double r0, r1;  // r1 may be +inf for the free tail
  double v0, slope;
  double at(double r) const { return v0 + slope * (r - r0); }
};

inline std::vector<LinearPiece> pieces(const PotentialModel& model) {
  std::vector<LinearPiece> out;
  if (model.kind == PotentialKind::square_well) {
    out.push_back({0.0, model.a, model.V0, 0.0});
  } else {
    const auto& r = model.r;
    const auto& V = model.V;
    if (r.front() > 0.0) out.push_back({0.0, r.front(), V.front(), 0.0});
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
      if (r[i + 1] == r[i]) continue;
      out.push_back({r[i], r[i + 1], V[i], (V[i + 1] - V[i]) / (r[i + 1] - r[i])});
    }
  }
  out.push_back({model.cutoff(), std::numeric_limits<double>::infinity(), 0.0, 0.0});
  return out;
}

struct OdeState {
  double u, du;
};

}  // namespace detail

/// Integrates u'' = [(mu^2-1/4)/r^2 + V - k^2] u, u = R r^{(n-1)/2},
/// mu = l + (n-2)/2, from a Frobenius start near the origin with fixed-step
/// RK4, then matches u = r (C h2 + D h1) at r_match.
inline MatchResult ode_shift(const ScatterConfig& config, const PotentialModel& model, int l,
                             const OdeOptions& options = {}) {
  config.validate();
  model.validate();
  if (model.kind == PotentialKind::hard_sphere)
    throw scatter_error(errc::config, "hard spheres have no interior equation; use hard_sphere_shift");
  if (l < 0) throw scatter_error(errc::domain, "l must be >= 0");

  const double k = config.k;
  const double mu = l + 0.5 * (config.n - 2);
  const double centrifugal = mu * mu - 0.25;
  const double p = mu + 0.5;
  const double r_cut = model.cutoff();
  const double r_match = options.r_match > 0.0 ? options.r_match : r_cut;
  if (r_match < r_cut) throw scatter_error(errc::config, "r_match must not be inside the potential range");

  const auto segs = detail::pieces(model);
  double v_max = 0.0;
  for (const auto& s : segs)
    if (std::isfinite(s.r1)) v_max = std::max({v_max, std::abs(s.v0), std::abs(s.at(s.r1))});
  const double k_eff = std::sqrt(k * k + v_max);
  const double h_max = options.steps_per_unit > 0.0 ? 1.0 / options.steps_per_unit
                                                     : std::min(1.0 / (20.0 * k_eff), r_cut / 200.0);

  // Frobenius series in the first piece, V = v0 + v1 r:
  // c_j j (2p + j - 1) = (v0 - k^2) c_{j-2} + v1 c_{j-3}.
  const auto& first = segs.front();
  const double e0 = first.v0 - first.slope * first.r0 - k * k;
  const double v1 = first.slope;
  double r_start = std::min(first.r1, r_match);
  if (e0 != 0.0) r_start = std::min(r_start, 1.0 / std::sqrt(std::abs(e0)));
  if (v1 != 0.0) r_start = std::min(r_start, 1.0 / std::cbrt(std::abs(v1)));

  // u / r^p and its derivative, using s = sum c_j r^j.
  double s = 0.0;
  double ds = 0.0;
  {
    std::vector<double> c{1.0};
    double power = 1.0;
    int small_run = 0;
    s = 1.0;
    for (int j = 1; j < 4000; ++j) {
      const double denom = j * (2.0 * p + j - 1.0);
      double cj = 0.0;
      if (denom != 0.0) {
        const double c2 = j >= 2 ? c[j - 2] : 0.0;
        const double c3 = j >= 3 ? c[j - 3] : 0.0;
        cj = (e0 * c2 + v1 * c3) / denom;
      }
      c.push_back(cj);
      power *= r_start;
      const double term = cj * power;
      s += term;
      ds += j * term / r_start;
      small_run = std::abs(term) <= 1e-17 * std::abs(s) ? small_run + 1 : 0;
      if (small_run >= 3) break;
    }
  }
  // State is scaled by r_start^{-p}; the equation is linear so scale is free.
  detail::OdeState y{s, p * s / r_start + ds};

  auto rhs = [&](const detail::LinearPiece& seg, double r, const detail::OdeState& st) {
    const double V = std::isfinite(seg.r1) ? seg.at(r) : 0.0;
    return detail::OdeState{st.du, (centrifugal / (r * r) + V - k * k) * st.u};
  };

  double r = r_start;
  for (const auto& seg : segs) {
    const double end = std::min(seg.r1, r_match);
    if (end <= r) continue;
    const int steps = std::max(1, static_cast<int>(std::ceil((end - r) / h_max)));
    const double h = (end - r) / steps;
    for (int i = 0; i < steps; ++i) {
      const double rr = r + i * h;
      const auto k1 = rhs(seg, rr, y);
      const auto k2 = rhs(seg, rr + h / 2, {y.u + h / 2 * k1.u, y.du + h / 2 * k1.du});
      const auto k3 = rhs(seg, rr + h / 2, {y.u + h / 2 * k2.u, y.du + h / 2 * k2.du});
      const auto k4 = rhs(seg, rr + h, {y.u + h * k3.u, y.du + h * k3.du});
      y.u += h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u);
      y.du += h / 6 * (k1.du + 2 * k2.du + 2 * k3.du + k4.du);
      const double size = std::max(std::abs(y.u), std::abs(y.du));
      if (size > 1e100 || (size < 1e-100 && size > 0.0)) {
        y.u /= size;
        y.du /= size;
      }
    }
    r = end;
    if (r >= r_match) break;
  }

  const auto seq = bessel_sequence(config.n, l + 1, k * r_match);
  const complex h1 = seq.h1(l), h2 = seq.h2(l);
  const double kr = k * r_match;
  const complex g1 = h1 + kr * seq.hankel_derivative(1, l);
  const complex g2 = h2 + kr * seq.hankel_derivative(2, l);
  const double u_r = y.u / r_match;
  const complex det = h2 * g1 - h1 * g2;
  const complex C = (u_r * g1 - h1 * y.du) / det;
  const complex D = (h2 * y.du - u_r * g2) / det;
  const complex S = D / C;

  MatchResult m;
  m.l = l;
  m.S = S;
  m.residual = std::abs(std::abs(S) - 1.0);
  if (!std::isfinite(m.residual) || m.residual > 1e-6)
    throw scatter_error(errc::step_failure, "matching residual " + std::to_string(m.residual) + " exceeds 1e-6 at l = " +
                                                std::to_string(l));
  m.delta = 0.5 * std::arg(S);
  if (m.delta <= -std::numbers::pi / 2.0) m.delta += std::numbers::pi;
  m.delta_unwrapped = m.delta;
  if (kr < l) m.warnings.push_back("k r_match < l: matching point is classically forbidden for this partial wave");
  return m;
}

/// Dispatches on the model kind: closed forms for hard spheres and square
/// wells, the ODE for tables.
inline MatchResult phase_shift(const ScatterConfig& config, const PotentialModel& model, int l) {
  model.validate();
  switch (model.kind) {
    case PotentialKind::hard_sphere: return hard_sphere_shift(config, model.a, l);
    case PotentialKind::square_well: return square_well_shift(config, model.a, model.V0, l);
    default: return ode_shift(config, model, l);
  }
}

/// Shifts for l = 0..lmax, solved independently on up to `jobs` threads.
inline std::vector<MatchResult> phase_shifts(const ScatterConfig& config, const PotentialModel& model, int lmax,
                                             unsigned jobs = 1) {
  if (lmax < 0) throw scatter_error(errc::domain, "lmax must be >= 0");
  std::vector<MatchResult> out(static_cast<std::size_t>(lmax) + 1);
  parallel_for(out.size(), jobs, [&](std::size_t l) { out[l] = phase_shift(config, model, static_cast<int>(l)); });
  return out;
}

/// Continuity along a parameter sweep: each delta_unwrapped is delta plus
/// the multiple of pi closest to the previous unwrapped value.
inline void unwrap_phase_shifts(std::vector<MatchResult>& sweep) {
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    sweep[i].delta_unwrapped = sweep[i].delta;
    if (i == 0) continue;
    const double previous = sweep[i - 1].delta_unwrapped;
    const double turns = std::round((previous - sweep[i].delta) / std::numbers::pi);
    sweep[i].delta_unwrapped = sweep[i].delta + turns * std::numbers::pi;
  }
}

inline PhaseShiftSet to_shift_set(const std::vector<MatchResult>& results) {
  std::vector<double> d;
  d.reserve(results.size());
  for (const auto& m : results) d.push_back(m.delta);
  return PhaseShiftSet::from_real(d);
}

}  // namespace scatterkit
