// How the cross section measured at distance r approaches |f(theta)|^2 in
// four dimensions, for phase shifts produced by a square well.

#include <cstdio>

#include "scatterkit/scatterkit.hpp"

int main() {
  using namespace scatterkit;
  const ScatterConfig config{4, 1.0, -1, {}};
  const auto shifts = to_shift_set(phase_shifts(config, PotentialModel::square_well(2.0, -3.0), 8));
  const double theta = 0.8;
  const double f2 = std::norm(f_theta_asymptotic(config, shifts, theta).f);

  std::printf("|f(theta)|^2 = %.10e\n", f2);
  std::printf("%10s %18s %18s %12s\n", "r", "dsigma_leading", "dsigma_full", "ratio");
  for (double r : {2.0, 5.0, 20.0, 100.0, 1e3, 1e4}) {
    const double leading = dsigma_leading(config, shifts, r, theta);
    const auto full = dsigma_full(config, shifts, r, theta);
    std::printf("%10.1f %18.10e %18.10e %12.8f\n", r, leading, full.dsigma_domega, leading / f2);
  }
}
