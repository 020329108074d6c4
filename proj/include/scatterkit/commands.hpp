#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "partialwave.hpp"
#include "phasesolve.hpp"
#include "xsection.hpp"

namespace scatterkit {

struct GridSpec {
  double r_min = 1.0;
  double r_max = 10.0;
  int r_count = 10;
  bool log_spacing = false;
  int theta_count = 8;

  void validate() const {
    if (!(r_min > 0.0) || !(r_max >= r_min) || !std::isfinite(r_max))
      throw scatter_error(errc::config, "radial grid needs 0 < r_min <= r_max");
    if (r_count < 1 || theta_count < 1) throw scatter_error(errc::config, "grids must be nonempty");
  }
};

inline std::vector<double> radial_grid(const GridSpec& grid) {
  grid.validate();
  std::vector<double> r(static_cast<std::size_t>(grid.r_count));
  for (int i = 0; i < grid.r_count; ++i) {
    const double t = grid.r_count == 1 ? 0.0 : static_cast<double>(i) / (grid.r_count - 1);
    r[i] = grid.log_spacing ? grid.r_min * std::pow(grid.r_max / grid.r_min, t) : grid.r_min + t * (grid.r_max - grid.r_min);
  }
  r.back() = grid.r_count == 1 ? grid.r_min : grid.r_max;
  return r;
}

/// Cell midpoints on (0, pi) so that forward and backward directions, where
/// the angular current is not defined, are never sampled. One dimension has
/// only the two directions 0 and pi.
inline std::vector<double> theta_grid(int n, const GridSpec& grid) {
  if (n == 1) return {0.0, std::numbers::pi};
  std::vector<double> t(static_cast<std::size_t>(grid.theta_count));
  for (int i = 0; i < grid.theta_count; ++i) t[i] = (i + 0.5) * std::numbers::pi / grid.theta_count;
  return t;
}

inline std::string cmd_wavefield(const ScatterConfig& config, const PhaseShiftSet& shifts, const GridSpec& grid,
                                 unsigned jobs) {
  const auto radii = radial_grid(grid);
  const auto thetas = theta_grid(config.n, grid);
  const auto samples = evaluate_field_grid(config, shifts, radii, thetas, jobs);
  io::CsvWriter csv({"r", "theta", "re_psi", "im_psi", "re_psi_in", "im_psi_in", "re_psi_sc", "im_psi_sc"});
  for (const auto& s : samples)
    csv.row({s.r, s.theta, s.psi.real(), s.psi.imag(), s.psi_in.real(), s.psi_in.imag(), s.psi_sc.real(),
             s.psi_sc.imag()});
  return csv.str();
}

struct XsectionOutput {
  std::string csv;
  std::string summary;
};

namespace detail {

/// |f(theta)|^2; in one dimension the r-independent sigma(0), sigma(pi).
inline double asymptotic_f2(const ScatterConfig& config, const PhaseShiftSet& shifts, double theta) {
  if (config.n >= 2) return std::norm(f_theta_asymptotic(config, shifts, theta).f);
  const auto summary = one_d_summary(shifts);
  return theta == 0.0 ? summary.sigma0 : summary.sigmapi;
}

inline double safe_ratio(double num, double den) { return den == 0.0 ? std::nan("") : num / den; }

}  // namespace detail

inline std::string summary_json(const ScatterConfig& config, const PhaseShiftSet& shifts) {
  if (config.n == 1) {
    const auto s = one_d_summary(shifts);
    return "{\"sigma0\":" + io::json_number(s.sigma0) + ",\"sigmapi\":" + io::json_number(s.sigmapi) +
           ",\"T\":" + io::json_number(s.T) + ",\"R\":" + io::json_number(s.R) + "}\n";
  }
  const auto total = sigma_total_asymptotic(config, shifts);
  return "{\"sigma_total\":" + io::json_number(total.total) + ",\"per_l\":" + io::json_array(total.per_l) + "}\n";
}

inline XsectionOutput cmd_xsection(const ScatterConfig& config, const PhaseShiftSet& shifts, const GridSpec& grid,
                                   bool asymptotic, unsigned jobs) {
  const auto radii = radial_grid(grid);
  const auto thetas = theta_grid(config.n, grid);
  const auto samples = evaluate_xsection_grid(config, shifts, radii, thetas, jobs);

  std::vector<std::string> header{"r", "theta", "dsigma", "jr", "jtheta", "gamma"};
  std::vector<double> f2;
  std::vector<double> leading;
  if (asymptotic) {
    header.insert(header.end(), {"f2", "ratio"});
    for (double t : thetas) f2.push_back(detail::asymptotic_f2(config, shifts, t));
    leading.resize(samples.size());
    parallel_for(samples.size(), jobs,
                 [&](std::size_t i) { leading[i] = dsigma_leading(config, shifts, samples[i].r, samples[i].theta); });
  }
  io::CsvWriter csv(header);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    std::vector<double> row{s.r, s.theta, s.dsigma_domega, s.jr_sc, s.jtheta_sc, s.gamma};
    if (asymptotic) {
      const double f = f2[i % thetas.size()];
      row.push_back(f);
      row.push_back(detail::safe_ratio(leading[i], f));
    }
    csv.row(row);
  }
  return {csv.str(), summary_json(config, shifts)};
}

/// Phase shifts for l = 0..lmax of a model potential, as a shift document.
/// Without an explicit cutoff, lmax = ceil(k r_cut) + 10.
inline std::string cmd_phaseshifts(const ScatterConfig& config, const PotentialModel& potential, unsigned jobs) {
  config.validate();
  potential.validate();
  const int lmax =
      config.lmax >= 0 ? config.lmax : static_cast<int>(std::ceil(config.k * potential.cutoff())) + 10;
  const auto results = phase_shifts(config, potential, lmax, jobs);
  return io::shifts_to_json(config.n, config.k, to_shift_set(results));
}

/// Finite-distance leading cross section against |f(theta)|^2.
inline std::string cmd_asympt_compare(const ScatterConfig& config, const PhaseShiftSet& shifts, const GridSpec& grid,
                                      unsigned jobs) {
  const auto radii = radial_grid(grid);
  const auto thetas = theta_grid(config.n, grid);
  std::vector<double> f2;
  for (double t : thetas) f2.push_back(detail::asymptotic_f2(config, shifts, t));
  std::vector<double> leading(radii.size() * thetas.size());
  parallel_for(leading.size(), jobs, [&](std::size_t i) {
    leading[i] = dsigma_leading(config, shifts, radii[i / thetas.size()], thetas[i % thetas.size()]);
  });
  io::CsvWriter csv({"r", "theta", "kr", "dsigma_leading", "f2", "ratio"});
  for (std::size_t i = 0; i < leading.size(); ++i) {
    const double r = radii[i / thetas.size()];
    const double f = f2[i % thetas.size()];
    csv.row({r, thetas[i % thetas.size()], config.k * r, leading[i], f, detail::safe_ratio(leading[i], f)});
  }
  return csv.str();
}

/// Batch description: one run per dimension in n_list with shared grids.
struct SweepSpec {
  std::vector<int> n_list;
  double k = 1.0;
  int lmax = -1;
  GridSpec grid;
  std::optional<PhaseShiftSet> shifts;      // inline or loaded from file
  std::optional<PotentialModel> potential;  // solved per dimension
  bool wavefield = true;
  bool xsection = true;
  bool asymptotic = false;

  void validate() const {
    if (n_list.empty()) throw scatter_error(errc::config, "sweep needs a nonempty n_list");
    grid.validate();
    if (shifts.has_value() == potential.has_value())
      throw scatter_error(errc::config, "sweep needs exactly one shift source: shifts, shifts_file or potential");
  }
};

/// Reads a sweep document. Relative file references resolve against `base`.
inline SweepSpec sweep_from_json(const nlohmann::json& doc, const std::filesystem::path& base = {}) {
  try {
    SweepSpec spec;
    spec.n_list = doc.at("n_list").get<std::vector<int>>();
    spec.k = doc.at("k").get<double>();
    spec.lmax = doc.value("lmax", -1);
    const auto& rg = doc.at("r_grid");
    spec.grid.r_min = rg.at("min").get<double>();
    spec.grid.r_max = rg.at("max").get<double>();
    spec.grid.r_count = rg.at("count").get<int>();
    const auto spacing = rg.value("spacing", std::string("linear"));
    if (spacing != "linear" && spacing != "log") throw scatter_error(errc::config, "r_grid.spacing is linear or log");
    spec.grid.log_spacing = spacing == "log";
    spec.grid.theta_count = doc.at("theta_grid").at("count").get<int>();

    int sources = 0;
    if (doc.contains("shifts")) {
      spec.shifts = PhaseShiftSet::from_real(doc.at("shifts").at("delta").get<std::vector<double>>());
      ++sources;
    }
    if (doc.contains("shifts_file")) {
      const auto text = io::read_text_file(base / doc.at("shifts_file").get<std::string>());
      spec.shifts = io::shifts_from_json(io::parse_json(text, "shifts_file")).shifts;
      ++sources;
    }
    if (doc.contains("potential")) {
      spec.potential = io::potential_from_json(doc.at("potential"));
      ++sources;
    }
    if (sources != 1) throw scatter_error(errc::config, "sweep needs exactly one of shifts, shifts_file, potential");

    if (doc.contains("outputs")) {
      const auto& o = doc.at("outputs");
      spec.wavefield = o.value("wavefield", true);
      spec.xsection = o.value("xsection", true);
      spec.asymptotic = o.value("asymptotic", false);
    }
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw scatter_error(errc::config, std::string("sweep document: ") + e.what());
  }
}

/// Runs every dimension of the sweep and returns file name -> contents,
/// ordered by name so the caller writes them deterministically.
inline std::map<std::string, std::string> cmd_sweep(const SweepSpec& spec, const SeriesControl& series, unsigned jobs) {
  spec.validate();
  std::map<std::string, std::string> files;
  for (int n : spec.n_list) {
    ScatterConfig config{n, spec.k, spec.lmax, series};
    config.validate();
    const std::string stem = "n" + std::to_string(n) + "_";
    PhaseShiftSet shifts;
    if (spec.potential) {
      const auto doc = cmd_phaseshifts(config, *spec.potential, jobs);
      files[stem + "shifts.json"] = doc;
      shifts = io::shifts_from_json(nlohmann::json::parse(doc)).shifts;
    } else {
      shifts = *spec.shifts;
    }
    if (spec.wavefield) files[stem + "wavefield.csv"] = cmd_wavefield(config, shifts, spec.grid, jobs);
    if (spec.xsection) {
      auto out = cmd_xsection(config, shifts, spec.grid, spec.asymptotic, jobs);
      files[stem + "xsection.csv"] = std::move(out.csv);
      files[stem + "summary.json"] = std::move(out.summary);
    }
  }
  return files;
}

}  // namespace scatterkit
