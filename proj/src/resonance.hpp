#pragma once

#include <vector>

#include "phase_time.hpp"

namespace qtn {

struct ResonanceFit {
  double e_r = 0.0;      // resonance center
  double gamma = 0.0;    // half-width
  double tau_nr = 0.0;   // non-resonant background delay
  double fit_quality = 0.0;  // R^2 of the delay-curve fit
  bool flagged = false;      // fit quality under threshold
};

struct ResonanceScanOptions {
  int n_points = 400;  // transmission-scan grid; contract requires >= 100
  double fit_quality_threshold = 0.99;
  int fit_window_points = 61;  // samples across E_r +- 3*Gamma
};

// Scans |t(E)|^2 over [e_min, e_max] (inside (0, min barrier height)), refines
// each local maximum, and fits the delay curve near each peak to
// hbar*Gamma/((E-E_r)^2 + Gamma^2) + tau_nr. No peaks -> empty list.
std::vector<ResonanceFit> resonance_scan(const PotentialProfile&,
                                         const PhysicalConstants&, double e_min,
                                         double e_max,
                                         const ResonanceScanOptions& = {});

// Least-squares Lorentzian fit of a sampled delay curve (Levenberg-Marquardt
// on E_r, Gamma, tau_nr from the given initial guesses).
ResonanceFit fit_lorentzian_delay(const std::vector<double>& energy,
                                  const std::vector<double>& tau,
                                  const PhysicalConstants&, double er0, double gamma0,
                                  double tau_nr0, double quality_threshold = 0.99);

}  // namespace qtn
