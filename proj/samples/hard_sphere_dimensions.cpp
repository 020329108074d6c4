// Phase shifts and total cross sections of a hard hypersphere of radius 1
// in dimensions 2 through 6.

#include <cmath>
#include <cstdio>

#include "scatterkit/scatterkit.hpp"

int main() {
  using namespace scatterkit;
  const double k = 1.5;
  const auto sphere = PotentialModel::hard_sphere(1.0);
  std::printf("%3s %14s %14s %14s\n", "n", "delta_0", "delta_1", "sigma_total");
  for (int n = 2; n <= 6; ++n) {
    const ScatterConfig config{n, k, -1, {}};
    const auto results = phase_shifts(config, sphere, static_cast<int>(std::ceil(k)) + 10);
    const auto shifts = to_shift_set(results);
    const double sigma = sigma_total_asymptotic(config, shifts).total;
    std::printf("%3d %14.8f %14.8f %14.8f\n", n, results[0].delta, results[1].delta, sigma);
  }
}
