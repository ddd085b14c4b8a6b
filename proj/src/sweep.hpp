#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "profile.hpp"
#include "records.hpp"

namespace qtn {

enum class SweepParameter { barrier_width, gap_width, energy, barrier_count };
enum class SweepOutput { phase_time, transmission, resonances, wavepacket_arrival };

const char* sweep_parameter_name(SweepParameter);
const char* sweep_output_name(SweepOutput);

// Declarative sweep: a base profile, one swept parameter with its grid, and
// the set of outputs evaluated at each grid point.
struct SweepSpec {
  PotentialProfile base_profile;
  PhysicalConstants constants;
  SweepParameter parameter = SweepParameter::energy;
  std::vector<double> grid;  // strictly monotone
  std::vector<SweepOutput> outputs;
  double energy = 0.0;  // probe energy (unused when sweeping energy)

  // resonances output
  double scan_min = 0.0, scan_max = 0.0;
  int scan_points = 400;

  // wavepacket_arrival output (0 = derived default)
  double packet_sigma = 0.0;
  double packet_x0 = 0.0;
  double detector_offset = 10.0;
  double grid_dt = 0.0;
  int grid_points = 0;

  double guard_scale = 1.0;  // scales the near-resonance guard threshold

  std::uint64_t content_hash = 0;  // provenance of the spec text
  std::string origin;
};

std::uint64_t fnv1a64(const std::string& bytes);

SweepSpec parse_sweep_spec_text(const std::string& text, const std::string& origin,
                                const std::string& base_dir);
SweepSpec load_sweep_spec(const std::string& path);

// One record per grid point per requested output (resonances emit one record
// per fitted peak). Point failures become flagged rows, not aborts. Rows are
// ordered by (grid index, output) regardless of the worker count.
Table run_sweep(const SweepSpec&, int jobs = 0);

}  // namespace qtn
