#pragma once

#include "scattering.hpp"

namespace qtn {

// Closed forms of the double-barrier amplitudes in the opaque limit
// (chi*a -> infinity), with corrections of order e^{-2 chi a}.
struct OpaqueLimitAmplitudes {
  Complex refl1, trans1, decay1, grow1;
  Complex refl2, trans2, decay2, grow2;
  double gap_factor;  // real inter-barrier enhancement factor; diverges at resonance
};

// 2*chi*k*cos(k*gap) + (chi^2 - k^2)*sin(k*gap). Zeros locate the
// Fabry-Perot-like resonances of the inter-barrier region.
double resonance_condition(double k, double chi, double gap);

// Evaluates all eight opaque-limit amplitudes plus the gap factor for
// barriers [0,a] and [L,L+a]. Throws near_resonance when the gap factor
// denominator falls under guard_tol * (2*chi*k).
OpaqueLimitAmplitudes opaque_amplitudes(double k, double chi, double a, double L,
                                        double guard_tol = 1e-6);

// Width- and gap-independent opaque tunneling delay 2m/(hbar*k*chi).
double hartman_phase_time(double k, double chi, const PhysicalConstants& = {});

// First zero of the resonance condition, in gap width for fixed (k, chi).
double resonance_zero_in_gap(double k, double chi, double gap_lo, double gap_hi);

// Zero of the resonance condition in energy for a fixed gap and barrier
// height (k and chi both vary with E).
double resonance_zero_in_energy(const PhysicalConstants&, double height, double gap,
                                double e_lo, double e_hi);

}  // namespace qtn
