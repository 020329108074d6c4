#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "partialwave.hpp"
#include "phasesolve.hpp"

namespace scatterkit::io {

/// Fixed 17-significant-digit scientific notation; identical bytes on every
/// platform with IEEE doubles, and exact on re-parse.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", x);
  return buffer;
}

/// JSON has no representation for non-finite numbers, so they become null.
inline std::string json_number(double x) { return std::isfinite(x) ? format_double(x) : "null"; }

inline std::string json_array(const std::vector<double>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += json_number(values[i]);
  }
  return out + "]";
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw scatter_error(errc::io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw scatter_error(errc::io, "cannot write " + path.string());
  out << text;
  if (!out) throw scatter_error(errc::io, "write failed for " + path.string());
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw scatter_error(errc::config, what + ": " + e.what());
  }
}

struct ShiftDocument {
  int n = 3;
  double k = 1.0;
  PhaseShiftSet shifts;
};

inline ShiftDocument shifts_from_json(const nlohmann::json& doc) {
  try {
    ShiftDocument out;
    out.n = doc.at("n").get<int>();
    out.k = doc.at("k").get<double>();
    out.shifts = PhaseShiftSet::from_real(doc.at("delta").get<std::vector<double>>());
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw scatter_error(errc::config, std::string("phase shift document: ") + e.what());
  }
}

inline std::string shifts_to_json(int n, double k, const PhaseShiftSet& shifts) {
  std::vector<double> real;
  for (const auto& d : shifts.delta) real.push_back(d.real());
  return "{\"n\":" + std::to_string(n) + ",\"k\":" + json_number(k) + ",\"delta\":" + json_array(real) + "}\n";
}

inline PotentialModel potential_from_json(const nlohmann::json& doc) {
  try {
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "square_well") return PotentialModel::square_well(doc.at("a").get<double>(), doc.at("V0").get<double>());
    if (kind == "hard_sphere" || kind == "hard_hypersphere") return PotentialModel::hard_sphere(doc.at("a").get<double>());
    if (kind == "tabulated")
      return PotentialModel::tabulated(doc.at("r").get<std::vector<double>>(), doc.at("V").get<std::vector<double>>());
    throw scatter_error(errc::config, "unknown potential kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw scatter_error(errc::config, std::string("potential document: ") + e.what());
  }
}

/// Comma-separated, LF-terminated rows with a mandatory header.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) {
    for (std::size_t i = 0; i < header.size(); ++i) text_ += (i ? "," : "") + header[i];
    text_ += "\n";
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) text_ += ",";
      text_ += format_double(values[i]);
    }
    text_ += "\n";
  }
  const std::string& str() const { return text_; }

 private:
  std::string text_;
};

}  // namespace scatterkit::io
