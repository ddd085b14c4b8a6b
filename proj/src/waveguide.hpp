#pragma once

#include <string>
#include <vector>

#include "profile.hpp"

namespace qtn {

// Rectangular-guide parameters in units with c = 1: the lowest transverse
// mode of a section of width b cuts off at omega_c = pi / b. An undersized
// section driven below its cutoff carries only an evanescent wave and acts
// as a barrier for the mode.
struct WaveguideParams {
  double width_normal = 0.0;
  double width_undersized = 0.0;
  double frequency = 0.0;
  // Section lengths alternating undersized / normal / undersized / ...,
  // starting and ending undersized (odd count).
  std::vector<double> segment_lengths;
};

struct WaveguideMapping {
  PotentialProfile profile;
  PhysicalConstants constants;  // natural units
  double energy = 0.0;
  double k = 0.0;    // longitudinal wavenumber in the normal sections
  double chi = 0.0;  // evanescent decay in the undersized sections
  double cutoff_normal = 0.0;
  double cutoff_undersized = 0.0;
  double barrier_height = 0.0;
};

// Maps the guide dispersion k^2 = omega^2 - omega_c^2 onto an equivalent
// piecewise-constant quantum profile with the section lengths preserved:
// E = k^2/2 and V0 = (k^2 + chi^2)/2 in natural units. Stationary analyses
// only. Throws mapping errors outside the single-mode evanescent window.
WaveguideMapping waveguide_map(const WaveguideParams&);

WaveguideParams parse_waveguide_text(const std::string& text,
                                     const std::string& origin = "<string>");
WaveguideParams load_waveguide_file(const std::string& path);

}  // namespace qtn
