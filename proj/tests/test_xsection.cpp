#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "helpers.hpp"
#include "scatterkit/hankel.hpp"
#include "scatterkit/xsection.hpp"

using namespace scatterkit;
using std::numbers::pi;

namespace {

ScatterConfig config(int n, double k) { return ScatterConfig{n, k, -1, {}}; }

complex expi(double x) { return std::exp(complex(0.0, x)); }

template <class Fn>
errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const scatter_error& e) {
    return e.code();
  }
  FAIL("expected a scatter_error");
  return errc::config;
}

PhaseShiftSet random_shifts(std::mt19937_64& rng, int count, double bound = 1.0) {
  std::uniform_real_distribution<double> d(-bound, bound);
  std::vector<double> v(count);
  for (auto& x : v) x = d(rng);
  return PhaseShiftSet::from_real(v);
}

/// h^(kind)_nu(kr) / r^{(n-3)/2} as a function of r.
complex radial_hankel(int kind, int n, int l, double k, double r) {
  return spherical_hankel(kind, Order(n, l), k * r) * std::pow(r, -0.5 * (n - 3));
}

}  // namespace

TEST_CASE("three-dimensional s-wave Wronskian", "[xsection]") {
  for (double k : {0.5, 2.0})
    for (double r : {0.3, 2.0, 40.0}) {
      const complex w = wronskian_radial(config(3, k), 0, 0, r);
      CHECK(std::abs(r * r * k * w - complex(0.0, 2.0)) < 1e-13);
    }
}

TEST_CASE("r^{n-1} W is independent of r for equal orders", "[xsection]") {
  for (int n = 1; n <= 6; ++n)
    for (int l : {0, 1, 3, 6}) {
      const double k = 1.3;
      const auto c = config(n, k);
      const complex ref = std::pow(1.0 / k, n - 1) * wronskian_radial(c, l, l, 1.0 / k);
      for (double kr = 1.0; kr <= 100.0; kr *= 1.6) {
        const double r = kr / k;
        const complex w = std::pow(r, n - 1) * wronskian_radial(c, l, l, r);
        CHECK(std::abs(w - ref) < 1e-10 * std::abs(ref));
      }
      const double r = 3.7;
      CHECK(std::abs(std::pow(2 * r, n - 1) * wronskian_radial(c, l, l, 2 * r) -
                     std::pow(r, n - 1) * wronskian_radial(c, l, l, r)) < 1e-10 * std::abs(ref));
    }
}

TEST_CASE("Wronskian matches a finite-difference derivative", "[xsection]") {
  for (int n : {2, 3, 4, 5})
    for (auto [l, lp] : {std::pair{0, 0}, std::pair{1, 3}, std::pair{4, 2}})
      for (double r : {0.9, 6.0}) {
        const double k = 1.1, h = 1e-5 * r;
        auto d = [&](int kind, int order) {
          return (radial_hankel(kind, n, order, k, r + h) - radial_hankel(kind, n, order, k, r - h)) / (2 * h);
        };
        const complex fd = radial_hankel(2, n, l, k, r) * d(1, lp) - radial_hankel(1, n, lp, k, r) * d(2, l);
        CHECK(rel_diff(wronskian_radial(config(n, k), l, lp, r), fd) < 1e-6);
      }
}

TEST_CASE("leading cross section vanishes without scattering", "[xsection]") {
  const auto zero = PhaseShiftSet::from_real({0.0, 0.0});
  for (int n : {1, 2, 3, 4}) CHECK(dsigma_leading(config(n, 1.0), zero, 2.0, n == 1 ? 0.0 : 1.0) == 0.0);
  CHECK(two_d_dsigma(config(2, 1.0), zero, 2.0, 1.0) == 0.0);
}

TEST_CASE("current form equals the Wronskian double sum", "[xsection]") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> rr(0.2, 30.0), t(0.01, pi - 0.01), kk(0.3, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const auto shifts = random_shifts(rng, 1 + trial % 7, 1.5);
    const auto c = config(n, kk(rng));
    const double r = rr(rng), theta = t(rng);
    const double a = dsigma_leading(c, shifts, r, theta);
    const double b = dsigma_wronskian(c, shifts, r, theta);
    CHECK(std::abs(a - b) <= 1e-9 * std::abs(b));
  }
  // n = 3 explicitly, including the forward direction
  const auto shifts = PhaseShiftSet::from_real({0.4, 0.2, -0.1});
  for (double theta : {0.0, 0.8, pi})
    CHECK_THAT(dsigma_leading(config(3, 1.0), shifts, 2.5, theta),
               Catch::Matchers::WithinRel(dsigma_wronskian(config(3, 1.0), shifts, 2.5, theta), 1e-12));
}

TEST_CASE("s-wave cross section far away is sin^2(delta)/k^2 in three dimensions", "[xsection]") {
  const double d0 = 0.5, k = 1.4;
  const auto shifts = PhaseShiftSet::from_real({d0});
  for (double theta : {0.2, 1.3, 2.9}) {
    const double expected = std::pow(std::sin(d0) / k, 2);
    CHECK_THAT(dsigma_leading(config(3, k), shifts, 1e4 / k, theta), Catch::Matchers::WithinRel(expected, 1e-10));
    CHECK_THAT(std::norm(f_theta_asymptotic(config(3, k), shifts, theta).f),
               Catch::Matchers::WithinRel(expected, 1e-14));
  }
  const complex f = f_theta_asymptotic(config(3, k), shifts, 0.7).f;
  CHECK(rel_diff(f, (expi(2 * d0) - 1.0) / complex(0.0, 2.0 * k)) < 1e-14);
}

TEST_CASE("full cross section with the angular current", "[xsection]") {
  const auto zero = PhaseShiftSet::from_real({0.0});
  CHECK(error_code_of([&] { dsigma_full(config(3, 1.0), zero, 2.0, 1.0); }) == errc::degenerate);
  const auto z = dsigma_full(config(3, 1.0), zero, 2.0, 1.0, true);
  CHECK(z.dsigma_domega == 0.0);
  CHECK(z.jr_sc == 0.0);

  const auto swave = PhaseShiftSet::from_real({0.6});
  const auto s = dsigma_full(config(3, 1.0), swave, 3.0, pi / 2);
  CHECK(s.jtheta_sc == 0.0);
  CHECK(s.dsigma_domega == dsigma_leading(config(3, 1.0), swave, 3.0, pi / 2));

  CHECK(error_code_of([&] { dsigma_full(config(3, 1.0), swave, 3.0, 0.0); }) == errc::domain);
  CHECK(error_code_of([&] { dsigma_full(config(3, 1.0), swave, 3.0, pi); }) == errc::domain);
}

TEST_CASE("angular current dies out faster than the radial one", "[xsection]") {
  const auto shifts = PhaseShiftSet::from_real({0.5, -0.4, 0.3});
  for (int n : {2, 3, 4})
    for (double theta : {0.6, 1.7}) {
      const auto c = config(n, 1.0);
      const auto near = dsigma_full(c, shifts, 5.0, theta);
      const auto far = dsigma_full(c, shifts, 1e3, theta);
      CHECK(std::abs(far.jtheta_sc / far.jr_sc) < std::abs(near.jtheta_sc / near.jr_sc));
      CHECK_THAT(far.dsigma_domega / dsigma_leading(c, shifts, 1e3, theta), Catch::Matchers::WithinAbs(1.0, 1e-3));
    }
}

TEST_CASE("current tilt and the cos(gamma) form", "[xsection]") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> t(0.1, 3.0), rr(0.5, 10.0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto shifts = random_shifts(rng, 4);
    const int n = 2 + trial % 4;
    const auto s = dsigma_full(config(n, 1.0), shifts, rr(rng), t(rng));
    CHECK_THAT(std::tan(s.gamma), Catch::Matchers::WithinRel(s.jtheta_sc / s.jr_sc, 1e-10));
    CHECK_THAT(s.dsigma_cos_form, Catch::Matchers::WithinRel(s.dsigma_domega, 1e-12));
  }
}

TEST_CASE("one-dimensional transmission and reflection", "[xsection]") {
  const auto equal = one_d_summary(PhaseShiftSet::from_real({0.7, 0.7}));
  CHECK(equal.sigmapi == Catch::Approx(0.0).margin(1e-15));
  CHECK(equal.T == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(equal.R == Catch::Approx(0.0).margin(1e-15));

  const auto s_only = one_d_summary(PhaseShiftSet::from_real({0.9, 0.0}));
  CHECK(s_only.T == 0.5);
  CHECK(s_only.R == 0.5);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-pi / 2, pi / 2);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = d(rng), b = d(rng);
    const auto s = one_d_summary(PhaseShiftSet::from_real({a, b}));
    const auto swapped = one_d_summary(PhaseShiftSet::from_real({b, a}));
    CHECK(std::abs(s.T + s.R - 1.0) < 1e-15);
    CHECK(s.T == Catch::Approx(swapped.T).epsilon(1e-14));
    CHECK(s.R == Catch::Approx(swapped.R).margin(1e-14));
    // sigma(0) = |sin d0 e^{i d0} + sin d1 e^{i d1}|^2
    CHECK_THAT(s.sigma0, Catch::Matchers::WithinAbs(std::norm(std::sin(a) * expi(a) + std::sin(b) * expi(b)), 1e-14));
  }
  CHECK(error_code_of([] { one_d_summary(PhaseShiftSet::from_real({0.0, 0.0})); }) == errc::degenerate);
}

TEST_CASE("one-dimensional cross sections follow from the current at any distance", "[xsection]") {
  const auto shifts = PhaseShiftSet::from_real({0.35, -0.8});
  const auto s = one_d_summary(shifts);
  for (double r : {0.1, 3.0, 200.0}) {
    CHECK_THAT(dsigma_leading(config(1, 1.3), shifts, r, 0.0), Catch::Matchers::WithinRel(s.sigma0, 1e-12));
    CHECK_THAT(dsigma_leading(config(1, 1.3), shifts, r, pi), Catch::Matchers::WithinRel(s.sigmapi, 1e-12));
  }
}

TEST_CASE("two-dimensional cross section and its asymptotic form", "[xsection]") {
  const double k = 1.0;
  const auto shifts = PhaseShiftSet::from_real({0.4, -0.3});
  const double theta = 1.0;
  // (1/(2 pi k)) sum Deg Deg (e^{-2i d_l} - 1)(e^{2i d_l'} - 1) cos(l theta) cos(l' theta)
  complex sum = 0.0;
  for (int l = 0; l <= 1; ++l)
    for (int lp = 0; lp <= 1; ++lp) {
      const double dl = l ? 2.0 : 1.0, dlp = lp ? 2.0 : 1.0;
      sum += dl * dlp * (expi(-2 * shifts.delta[l].real()) - 1.0) * (expi(2 * shifts.delta[lp].real()) - 1.0) *
             std::cos(l * theta) * std::cos(lp * theta);
    }
  const double asymptotic = sum.real() / (2 * pi * k);
  CHECK_THAT(std::norm(f_theta_asymptotic(config(2, k), shifts, theta).f), Catch::Matchers::WithinRel(asymptotic, 1e-13));
  CHECK_THAT(two_d_dsigma(config(2, k), shifts, 1e4, theta) / asymptotic, Catch::Matchers::WithinAbs(1.0, 1e-3));

  const auto swave = PhaseShiftSet::from_real({0.8});
  const double ref = two_d_dsigma(config(2, k), swave, 2.0, 0.1);
  for (double t : {0.5, 1.5, 3.0}) CHECK_THAT(two_d_dsigma(config(2, k), swave, 2.0, t), Catch::Matchers::WithinRel(ref, 1e-13));
  CHECK(error_code_of([&] { two_d_dsigma(config(3, k), swave, 2.0, 1.0); }) == errc::wrong_dimension);
}

TEST_CASE("asymptotic amplitude", "[xsection]") {
  const auto zero = PhaseShiftSet::from_real({0.0, 0.0});
  CHECK(f_theta_asymptotic(config(4, 1.0), zero, 1.0).f == complex(0.0));
  CHECK(error_code_of([&] { f_theta_asymptotic(config(1, 1.0), zero, 0.0); }) == errc::wrong_dimension);

  // closed form with the Gamma prefactor
  const auto shifts = PhaseShiftSet::from_real({0.3, -0.7, 0.5});
  for (int n : {3, 4, 5, 6}) {
    const double k = 0.9, theta = 1.2;
    const double lambda = 0.5 * n - 1;
    complex sum = 0.0;
    for (int l = 0; l <= 2; ++l)
      sum += (2.0 * l + n - 2) * (shifts.s_matrix(l) - 1.0) * gegenbauer(l, lambda, std::cos(theta));
    const complex pref = std::pow(complex(0, -1), 0.5 * (n - 3)) * std::tgamma(lambda) /
                         (std::sqrt(pi) * std::pow(k / 2, 0.5 * (n - 3)));
    CHECK(rel_diff(f_theta_asymptotic(config(n, k), shifts, theta).f, pref * sum / complex(0.0, 2.0 * k)) < 1e-13);
  }
}

TEST_CASE("finite-distance cross section approaches |f|^2", "[xsection]") {
  const auto shifts = PhaseShiftSet::from_real({0.5, -0.4, 0.3});
  for (int n : {2, 3, 4, 5})
    for (double theta : {0.5, 1.4, 2.6}) {
      const auto c = config(n, 1.0);
      const double dev3 = std::abs(asymptotic_ratio(c, shifts, 1e3, theta) - 1.0);
      const double dev4 = std::abs(asymptotic_ratio(c, shifts, 1e4, theta) - 1.0);
      CHECK(dev4 < dev3);
      CHECK(dev4 < 1e-2);
    }
  const double kr = 1e4;
  CHECK(std::abs(dsigma_leading(config(3, 1.0), shifts, kr, 1.0) / std::norm(f_theta_asymptotic(config(3, 1.0), shifts, 1.0).f) - 1.0) < 1e-2);
}

TEST_CASE("total cross section closed form", "[xsection]") {
  const auto shifts = PhaseShiftSet::from_real({0.3, -0.6, 1.1, 0.05});
  const double k = 1.7;
  double expected = 0.0;
  for (int l = 0; l <= 3; ++l) expected += (2 * l + 1) * std::pow(std::sin(shifts.delta[l].real()), 2);
  expected *= 4 * pi / (k * k);
  const auto total = sigma_total_asymptotic(config(3, k), shifts);
  CHECK_THAT(total.total, Catch::Matchers::WithinRel(expected, 1e-14));
  REQUIRE(total.per_l.size() == 4);
  for (int l = 0; l <= 3; ++l) CHECK(total.per_l[l] <= 4 * pi / (k * k) * (2 * l + 1));
  CHECK(sigma_total_asymptotic(config(3, k), PhaseShiftSet::from_real({0.0, 0.0})).total == 0.0);

  // two dimensions: (4/k) sum Deg(l) sin^2
  const double two_d = 4.0 / k * (std::pow(std::sin(0.3), 2) + 2 * std::pow(std::sin(-0.6), 2) +
                                  2 * std::pow(std::sin(1.1), 2) + 2 * std::pow(std::sin(0.05), 2));
  CHECK_THAT(sigma_total_asymptotic(config(2, k), shifts).total, Catch::Matchers::WithinRel(two_d, 1e-14));
}

TEST_CASE("total cross section equals the integral of |f|^2", "[xsection]") {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 7; ++n) {
    const auto shifts = random_shifts(rng, 6);
    const auto c = config(n, 1.2);
    CHECK_THAT(sigma_total_quadrature(c, shifts), Catch::Matchers::WithinRel(sigma_total_asymptotic(c, shifts).total, 1e-8));
  }
  const auto shifts = random_shifts(rng, 6);
  CHECK_THAT(sigma_total_quadrature(config(4, 1.0), shifts, 200),
             Catch::Matchers::WithinRel(sigma_total_asymptotic(config(4, 1.0), shifts).total, 1e-8));
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly", "[xsection]") {
  const auto rule = gauss_legendre(7);
  REQUIRE(rule.nodes.size() == 7);
  for (int p = 0; p <= 13; ++p) {
    double sum = 0.0;
    for (std::size_t i = 0; i < 7; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], p);
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(p % 2 ? 0.0 : 2.0 / (p + 1), 1e-14));
  }
}

TEST_CASE("cross sections refuse absorptive shifts", "[xsection]") {
  const PhaseShiftSet absorptive(std::vector<complex>{complex(0.3, 0.1)});
  CHECK(error_code_of([&] { dsigma_leading(config(3, 1.0), absorptive, 2.0, 1.0); }) == errc::domain);
}
