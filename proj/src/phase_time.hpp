#pragma once

#include "scattering.hpp"

namespace qtn {

struct PhaseTimeOptions {
  double step_fraction = 1e-4;       // initial dE = step_fraction * E
  double min_step_fraction = 1e-10;  // adaptive shrink floor
  double resonance_guard = 0.1;      // |condition| <= guard * 2*chi*k flags proximity
};

struct PhaseTimeResult {
  double energy = 0.0;
  double tau = 0.0;
  double reference_length = 0.0;  // profile extent entering the e^{ikD} reference factor
  double step_used = 0.0;         // base stencil step after adaptation
  bool resonance_flag = false;
};

// tau = hbar * d/dE arg[t(E) e^{ikD}], by 5-point central stencils at three
// step levels combined with Richardson extrapolation; the stencil phases are
// unwrapped to the nearest branch. The stencil adapts down when the phase
// winds too fast (sharp resonances) and refuses to cross a segment-height
// degeneracy.
PhaseTimeResult phase_time(const PotentialProfile&, const PhysicalConstants&,
                           double E, const PhaseTimeOptions& = {});

// True when any propagating interior segment flanked by evanescent segments
// satisfies |resonance_condition| <= guard * 2*chi*k at this energy.
bool near_resonance(const PotentialProfile&, const PhysicalConstants&, double E,
                    double guard = 0.1);

}  // namespace qtn
