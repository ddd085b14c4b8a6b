// qtunnel command line: scattering amplitudes, phase times, parameter
// sweeps, resonance fits, wavepacket runs, the waveguide mapping, and the
// canonical verification suite. Thin argument layer over the C API.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtunnel.h"

namespace {

struct Common {
  std::string out;     // empty: stdout
  std::string format = "csv";
  std::string units = "natural";
  int jobs = 0;
  double tolerance = 0.0;  // guard-threshold scale; 0 keeps defaults
};

int fail_with(qtn_status status, const char* what) {
  std::fprintf(stderr, "qtunnel: %s: %s (%s)\n", what, qtn_last_error(),
               qtn_status_name(status));
  return 2;
}

qtn_format format_of(const Common& c) {
  return c.format == "jsonl" ? QTN_FORMAT_JSONL : QTN_FORMAT_CSV;
}

int write_and_free(qtn_table* table, const Common& c) {
  const qtn_status st =
      qtn_table_write(table, format_of(c), c.out.empty() ? nullptr : c.out.c_str());
  qtn_table_free(table);
  if (st != QTN_OK) return fail_with(st, "writing output");
  return 0;
}

// Profile-file constants win over --units; --units si covers an electron.
int load_profile(const std::string& path, const Common& c, qtn_profile** profile,
                 qtn_constants* constants) {
  qtn_constants file_constants;
  int has_constants = 0;
  const qtn_status st =
      qtn_profile_load(path.c_str(), profile, &file_constants, &has_constants);
  if (st != QTN_OK) return fail_with(st, "loading profile");
  if (has_constants) *constants = file_constants;
  else if (c.units == "si") *constants = qtn_constants_si_electron();
  else *constants = qtn_constants_natural();
  return 0;
}

std::vector<double> make_grid(const std::vector<double>& single,
                              const std::vector<double>& grid3) {
  std::vector<double> out = single;
  if (grid3.size() == 3) {
    const int n = static_cast<int>(grid3[2]);
    for (int i = 0; i < n; ++i)
      out.push_back(grid3[0] + (grid3[1] - grid3[0]) * i / (n > 1 ? n - 1 : 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D multi-barrier tunneling: exact scattering, phase times, "
               "wavepacket arrival times, and the waveguide analogy"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out, "output file (default: stdout)");
  app.add_option("--format", common.format, "output format: csv|jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--units", common.units,
                 "constants when the profile file has none: natural|si")
      ->check(CLI::IsMember({"natural", "si"}));
  app.add_option("--jobs", common.jobs, "worker threads for sweeps (0: auto)");
  app.add_option("--tolerance", common.tolerance,
                 "scale factor on the near-resonance guard threshold");

  // scatter
  std::string sc_profile;
  std::vector<double> sc_energy, sc_grid;
  auto* scatter = app.add_subcommand("scatter", "amplitudes of one profile");
  scatter->fallthrough();
  scatter->add_option("--profile", sc_profile, "profile file")->required();
  scatter->add_option("--energy", sc_energy, "probe energy (repeatable)");
  scatter->add_option("--energy-grid", sc_grid, "LO HI N energy grid")->expected(3);

  // phase-time
  std::string pt_profile;
  std::vector<double> pt_energy, pt_grid;
  double pt_step = 0.0;
  auto* ptc = app.add_subcommand("phase-time", "transmission group delay");
  ptc->fallthrough();
  ptc->add_option("--profile", pt_profile, "profile file")->required();
  ptc->add_option("--energy", pt_energy, "probe energy (repeatable)");
  ptc->add_option("--energy-grid", pt_grid, "LO HI N energy grid")->expected(3);
  ptc->add_option("--step-fraction", pt_step, "initial stencil step as fraction of E");

  // sweep
  std::string sw_spec;
  auto* sweep = app.add_subcommand("sweep", "run a sweep spec file");
  sweep->fallthrough();
  sweep->add_option("--spec", sw_spec, "sweep spec file")->required();

  // resonances
  std::string rs_profile;
  double rs_emin = 0.0, rs_emax = 0.0;
  int rs_points = 400;
  auto* resonances =
      app.add_subcommand("resonances", "scan and fit transmission resonances");
  resonances->fallthrough();
  resonances->add_option("--profile", rs_profile, "profile file")->required();
  resonances->add_option("--emin", rs_emin, "scan start")->required();
  resonances->add_option("--emax", rs_emax, "scan end")->required();
  resonances->add_option("--points", rs_points, "scan grid points");

  // wavepacket
  std::string wp_profile, wp_frames;
  double wp_k0 = 0.0, wp_sigma = 0.0, wp_x0 = 0.0, wp_detector = 0.0;
  double wp_xmin = 0.0, wp_xmax = 0.0, wp_dt = 0.0, wp_tmax = 0.0;
  int wp_n = 0, wp_frame_stride = 0;
  bool wp_absorbers = false;
  auto* wavepacket =
      app.add_subcommand("wavepacket", "time-domain packet run with a detector");
  wavepacket->fallthrough();
  wavepacket->add_option("--profile", wp_profile, "profile file")->required();
  wavepacket->add_option("--k0", wp_k0, "carrier wavenumber")->required();
  wavepacket->add_option("--sigma", wp_sigma, "packet width")->required();
  wavepacket->add_option("--x0", wp_x0, "start center (default -(5 sigma + 10))");
  wavepacket->add_option("--detector-offset", wp_detector,
                         "detector distance beyond the profile (default 10)");
  wavepacket->add_option("--xmin", wp_xmin, "grid start (default auto)");
  wavepacket->add_option("--xmax", wp_xmax, "grid end (default auto)");
  wavepacket->add_option("--n", wp_n, "grid points (default auto)");
  wavepacket->add_option("--dt", wp_dt, "time step (default auto)");
  wavepacket->add_option("--tmax", wp_tmax, "simulated time (default auto)");
  wavepacket->add_flag("--absorbers", wp_absorbers, "absorbing layers at the edges");
  wavepacket->add_option("--frames", wp_frames, "dump |psi|^2 frames to this file");
  wavepacket->add_option("--frame-stride", wp_frame_stride, "steps between frames");

  // waveguide (stationary analyses only)
  std::string wg_params, wg_save;
  auto* waveguide = app.add_subcommand(
      "waveguide", "map an undersized-section guide onto an equivalent profile");
  waveguide->fallthrough();
  waveguide->add_option("--params", wg_params, "waveguide parameter file")->required();
  waveguide->add_option("--save-profile", wg_save, "write the mapped profile here");

  // reproduce
  std::uint64_t rp_seed = 20260808ull;
  std::vector<int> rp_checks;
  auto* reproduce =
      app.add_subcommand("reproduce", "run the canonical verification suite");
  reproduce->fallthrough();
  reproduce->add_option("--seed", rp_seed, "seed for the randomized-profile check");
  reproduce->add_option("--check", rp_checks, "run only these check ids (1-10)");

  CLI11_PARSE(app, argc, argv);

  if (scatter->parsed() || ptc->parsed()) {
    const bool is_scatter = scatter->parsed();
    const std::string& path = is_scatter ? sc_profile : pt_profile;
    const std::vector<double> energies = is_scatter ? make_grid(sc_energy, sc_grid)
                                                    : make_grid(pt_energy, pt_grid);
    if (energies.empty()) {
      std::fprintf(stderr, "qtunnel: need --energy or --energy-grid\n");
      return 2;
    }
    qtn_profile* profile = nullptr;
    qtn_constants constants;
    if (int rc = load_profile(path, common, &profile, &constants)) return rc;
    qtn_table* table = nullptr;
    qtn_status st;
    if (is_scatter) {
      st = qtn_scatter_table(profile, &constants, energies.data(), energies.size(),
                             &table);
    } else {
      qtn_phase_time_options opt = qtn_phase_time_defaults();
      if (pt_step > 0.0) opt.step_fraction = pt_step;
      if (common.tolerance > 0.0) opt.resonance_guard *= common.tolerance;
      st = qtn_phase_time_table(profile, &constants, energies.data(), energies.size(),
                                &opt, &table);
    }
    qtn_profile_free(profile);
    if (st != QTN_OK) return fail_with(st, is_scatter ? "scatter" : "phase-time");
    return write_and_free(table, common);
  }

  if (sweep->parsed()) {
    qtn_table* table = nullptr;
    const qtn_status st = qtn_sweep_table_from_file(
        sw_spec.c_str(), common.jobs, common.tolerance, &table);
    if (st != QTN_OK) return fail_with(st, "sweep");
    return write_and_free(table, common);
  }

  if (resonances->parsed()) {
    qtn_profile* profile = nullptr;
    qtn_constants constants;
    if (int rc = load_profile(rs_profile, common, &profile, &constants)) return rc;
    qtn_table* table = nullptr;
    const qtn_status st =
        qtn_resonance_table(profile, &constants, rs_emin, rs_emax, rs_points, &table);
    qtn_profile_free(profile);
    if (st != QTN_OK) return fail_with(st, "resonances");
    return write_and_free(table, common);
  }

  if (wavepacket->parsed()) {
    qtn_profile* profile = nullptr;
    qtn_constants constants;
    if (int rc = load_profile(wp_profile, common, &profile, &constants)) return rc;
    const double extent = qtn_profile_extent(profile);
    const double sigma = wp_sigma;
    const double x0 = wp_x0 != 0.0 ? wp_x0 : -(5.0 * sigma + 10.0);
    const double det_off = wp_detector > 0.0 ? wp_detector : 10.0;
    qtn_grid_spec grid;
    grid.x_min = wp_xmin != 0.0 ? wp_xmin : std::min(x0 - 6.0 * sigma, -10.0 * sigma);
    grid.x_max = wp_xmax != 0.0 ? wp_xmax : extent + 10.0 * sigma + det_off + 10.0;
    grid.n_points =
        wp_n > 0 ? wp_n
                 : static_cast<int>((grid.x_max - grid.x_min) / (0.02 / wp_k0)) + 1;
    grid.dt = wp_dt > 0.0 ? wp_dt : 0.02 / std::max(1.0, 0.5 * wp_k0 * wp_k0);
    qtn_packet_spec packet{x0, wp_k0, sigma};
    qtn_arrival_options opt = qtn_arrival_defaults();
    opt.t_max = wp_tmax;
    opt.absorbers = wp_absorbers ? 1 : 0;
    if (!wp_frames.empty()) {
      opt.frame_path = wp_frames.c_str();
      opt.frame_stride = wp_frame_stride > 0 ? wp_frame_stride : 200;
    }
    qtn_table* table = nullptr;
    const qtn_status st = qtn_arrival_table(profile, &constants, &grid, &packet,
                                            extent + det_off, &opt, &table);
    qtn_profile_free(profile);
    if (st != QTN_OK) return fail_with(st, "wavepacket");
    return write_and_free(table, common);
  }

  if (waveguide->parsed()) {
    if (!wg_save.empty()) {
      qtn_profile* mapped = nullptr;
      qtn_waveguide_result result;
      qtn_status st = qtn_waveguide_map_file(wg_params.c_str(), &mapped, &result);
      if (st != QTN_OK) return fail_with(st, "waveguide mapping");
      st = qtn_profile_save(mapped, &result.constants, wg_save.c_str());
      qtn_profile_free(mapped);
      if (st != QTN_OK) return fail_with(st, "saving mapped profile");
    }
    qtn_table* table = nullptr;
    const qtn_status st = qtn_waveguide_table_from_file(wg_params.c_str(), &table);
    if (st != QTN_OK) return fail_with(st, "waveguide results");
    return write_and_free(table, common);
  }

  if (reproduce->parsed()) {
    qtn_table* table = nullptr;
    int n_failed = 0;
    const qtn_status st = qtn_reproduce_table(
        rp_checks.empty() ? nullptr : rp_checks.data(), rp_checks.size(), rp_seed,
        common.jobs, &table, &n_failed);
    if (st != QTN_OK) return fail_with(st, "reproduce");
    const size_t rows = qtn_table_row_count(table);
    const int rc = write_and_free(table, common);
    if (rc != 0) return rc;
    std::fprintf(stderr, "%zu checks, %d failed\n", rows, n_failed);
    return n_failed == 0 ? 0 : 1;
  }

  return 0;
}
