#pragma once

#include <string>

#include "error.hpp"

namespace scatterkit {

/// Radial order nu = l + (n-3)/2 of the n-dimensional free solution,
/// stored as the exact integer 2*nu so odd/even dimension dispatch never
/// depends on a floating point parity test.
class Order {
 public:
  Order(int n, int l) : n_(n), l_(l), twice_nu_(2 * l + n - 3) {
    if (n < 1) throw scatter_error(errc::domain, "dimension n must be >= 1, got " + std::to_string(n));
    if (l < 0) throw scatter_error(errc::domain, "angular index l must be >= 0, got " + std::to_string(l));
  }

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int twice_nu() const noexcept { return twice_nu_; }
  double nu() const noexcept { return 0.5 * twice_nu_; }

  /// Odd n gives integer nu (Bessel polynomial regime).
  bool integer_order() const noexcept { return twice_nu_ % 2 == 0; }

  /// Valid only when integer_order().
  int integer_nu() const noexcept { return twice_nu_ / 2; }

  /// Order nu + 1/2 of the cylindrical Bessel function; an integer when n is even.
  int cylindrical_order() const noexcept { return (twice_nu_ + 1) / 2; }

 private:
  int n_;
  int l_;
  int twice_nu_;
};

}  // namespace scatterkit
