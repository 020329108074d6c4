#pragma once

#include <cstdlib>
#include <limits>
#include <string>

#include "error.hpp"

namespace scatterkit {

/// Truncation policy shared by every infinite series in the library.
struct SeriesControl {
  double rel_tol = 1e-13;
  int max_terms = 500;
  double underflow_guard = 1e-300;

  void validate() const {
    if (!(rel_tol > 0.0) || rel_tol < 100.0 * std::numeric_limits<double>::epsilon())
      throw scatter_error(errc::config, "rel_tol must be >= 100*epsilon, got " + std::to_string(rel_tol));
    if (max_terms < 16)
      throw scatter_error(errc::config, "max_terms must be >= 16");
    if (!(underflow_guard >= 0.0))
      throw scatter_error(errc::config, "underflow_guard must be non-negative");
  }

  /// Defaults, with rel_tol taken from SCATTERKIT_RTOL when it is set.
  static SeriesControl from_environment() {
    SeriesControl control;
    if (const char* env = std::getenv("SCATTERKIT_RTOL"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const double value = std::strtod(env, &end);
      if (end == env || *end != '\0')
        throw scatter_error(errc::config, std::string("SCATTERKIT_RTOL is not a number: ") + env);
      control.rel_tol = value;
    }
    control.validate();
    return control;
  }
};

}  // namespace scatterkit
