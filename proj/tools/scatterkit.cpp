#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scatterkit/commands.hpp"
#include "scatterkit/io.hpp"

namespace fs = std::filesystem;
using namespace scatterkit;

namespace {

struct CommonOptions {
  int n = 3;
  double k = 1.0;
  int lmax = -1;
  double rtol = 0.0;
  std::string shifts_file;
  std::string potential_file;
  std::string out_dir = ".";
  unsigned jobs = default_jobs();
  GridSpec grid;
  std::string spacing = "linear";
  bool asymptotic = false;
  std::string sweep_file;
};

void add_config_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--n", o.n, "spatial dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--k", o.k, "wavenumber")->check(CLI::PositiveNumber);
  cmd->add_option("--lmax", o.lmax, "partial-wave cutoff (default: automatic)");
  cmd->add_option("--rtol", o.rtol, "series relative tolerance (overrides SCATTERKIT_RTOL)");
  cmd->add_option("--out", o.out_dir, "output directory");
  cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void add_grid_flags(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--rmin", o.grid.r_min, "smallest radius");
  cmd->add_option("--rmax", o.grid.r_max, "largest radius");
  cmd->add_option("--nr", o.grid.r_count, "number of radii");
  cmd->add_option("--rspacing", o.spacing, "radial spacing")->check(CLI::IsMember({"linear", "log"}));
  cmd->add_option("--ntheta", o.grid.theta_count, "number of polar angles");
}

ScatterConfig make_config(const CommonOptions& o) {
  ScatterConfig config{o.n, o.k, o.lmax, SeriesControl::from_environment()};
  if (o.rtol > 0.0) config.series.rel_tol = o.rtol;
  config.validate();
  return config;
}

/// Shift files carry their own n and k; command-line values must agree.
PhaseShiftSet load_shifts(const CommonOptions& o, ScatterConfig& config, const CLI::App* cmd) {
  const auto doc = io::shifts_from_json(io::parse_json(io::read_text_file(o.shifts_file), o.shifts_file));
  if (cmd->count("--n") == 0) config.n = doc.n;
  if (cmd->count("--k") == 0) config.k = doc.k;
  if (config.n != doc.n || config.k != doc.k)
    std::fprintf(stderr, "warning: --n/--k differ from the shift file (n=%d, k=%s)\n", doc.n,
                 io::format_double(doc.k).c_str());
  config.validate();
  return doc.shifts;
}

void write(const CommonOptions& o, const std::string& name, const std::string& text) {
  const fs::path path = fs::path(o.out_dir) / name;
  io::write_text_file(path, text);
  std::printf("wrote %s\n", path.string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-wave scattering in n dimensions at finite distance"};
  app.require_subcommand(1);
  CommonOptions o;

  auto* wavefield = app.add_subcommand("wavefield", "total, incident and scattered field on an (r, theta) grid");
  auto* xsection = app.add_subcommand("xsection", "finite-distance cross sections and asymptotic totals");
  auto* phaseshifts = app.add_subcommand("phaseshifts", "phase shifts of a model potential");
  auto* compare = app.add_subcommand("asympt-compare", "finite-distance cross section against |f(theta)|^2");
  auto* sweep = app.add_subcommand("sweep", "batch runs described by a JSON sweep file");

  for (auto* cmd : {wavefield, xsection, compare}) {
    add_config_flags(cmd, o);
    add_grid_flags(cmd, o);
    cmd->add_option("--shifts", o.shifts_file, "phase shift JSON")->required()->check(CLI::ExistingFile);
  }
  xsection->add_flag("--asymptotic", o.asymptotic, "add |f(theta)|^2 and the finite/asymptotic ratio");
  add_config_flags(phaseshifts, o);
  phaseshifts->add_option("--potential", o.potential_file, "potential JSON")->required()->check(CLI::ExistingFile);
  add_config_flags(sweep, o);
  sweep->add_option("--spec", o.sweep_file, "sweep JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    o.grid.log_spacing = o.spacing == "log";
    if (wavefield->parsed()) {
      auto config = make_config(o);
      const auto shifts = load_shifts(o, config, wavefield);
      write(o, "wavefield.csv", cmd_wavefield(config, shifts, o.grid, o.jobs));
    } else if (xsection->parsed()) {
      auto config = make_config(o);
      const auto shifts = load_shifts(o, config, xsection);
      const auto out = cmd_xsection(config, shifts, o.grid, o.asymptotic, o.jobs);
      write(o, "xsection.csv", out.csv);
      write(o, "xsection_summary.json", out.summary);
    } else if (compare->parsed()) {
      auto config = make_config(o);
      const auto shifts = load_shifts(o, config, compare);
      write(o, "asympt_compare.csv", cmd_asympt_compare(config, shifts, o.grid, o.jobs));
    } else if (phaseshifts->parsed()) {
      const auto config = make_config(o);
      const auto potential =
          io::potential_from_json(io::parse_json(io::read_text_file(o.potential_file), o.potential_file));
      write(o, "phaseshifts.json", cmd_phaseshifts(config, potential, o.jobs));
    } else if (sweep->parsed()) {
      const auto config = make_config(o);
      const fs::path spec_path(o.sweep_file);
      const auto spec =
          sweep_from_json(io::parse_json(io::read_text_file(spec_path), o.sweep_file), spec_path.parent_path());
      for (const auto& [name, text] : cmd_sweep(spec, config.series, o.jobs)) write(o, name, text);
    }
  } catch (const scatter_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
