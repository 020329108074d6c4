#pragma once

#include <stdexcept>
#include <string>

namespace scatterkit {

enum class errc {
  pole,             // argument sits on a pole of gamma/digamma
  domain,           // argument outside the supported domain
  truncation,       // series or partial-wave sum did not converge
  overflow,         // result not representable in double
  consistency,      // an internal cross-check failed
  wrong_dimension,  // operation only defined for a specific n
  degenerate,       // quantity undefined (0/0)
  step_failure,     // ODE matching residual too large
  config,           // invalid user configuration
  io                // file or parse error
};

inline const char* to_string(errc code) {
  switch (code) {
    case errc::pole: return "pole";
    case errc::domain: return "domain";
    case errc::truncation: return "truncation";
    case errc::overflow: return "overflow";
    case errc::consistency: return "consistency";
    case errc::wrong_dimension: return "wrong_dimension";
    case errc::degenerate: return "degenerate";
    case errc::step_failure: return "step_failure";
    case errc::config: return "config";
    case errc::io: return "io";
  }
  return "unknown";
}

class scatter_error : public std::runtime_error {
 public:
  scatter_error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace scatterkit
