#pragma once

#include <vector>

#include "profile.hpp"
#include "transfer_matrix.hpp"

namespace qtn {

// One uniform region of the stationary solution. Coefficients are referenced
// to the region's own origin (its left edge; the left lead uses the profile
// start): psi(x) = forward * e^{iq(x-x0)} + backward * e^{-iq(x-x0)}.
// Evanescent regions have q = i*chi, so "forward" is the decaying and
// "backward" the growing coefficient.
struct RegionWave {
  Complex wavenumber;
  double origin;
  double width;  // 0 for the semi-infinite leads
  Complex forward;
  Complex backward;
};

struct ScatteringSolution {
  double energy = 0.0;
  double lead_k = 0.0;
  Complex reflection;    // coefficient of e^{-ikx} in the left lead
  Complex transmission;  // coefficient of e^{+ikx} in the right lead
  double trans_log_abs = 0.0;  // ln|transmission|; valid even if the complex value underflows
  double exit_phase = 0.0;     // arg[transmission * e^{ikD}], D = profile extent
  std::vector<RegionWave> regions;  // leads included (front and back)

  double reflection_prob() const { return std::norm(reflection); }
  double transmission_prob() const { return std::exp(2.0 * trans_log_abs); }

  Complex psi(double x) const;
  Complex psi_derivative(double x) const;
};

// Wavenumber of a uniform region: real sqrt(2m(E-V))/hbar when propagating,
// i*chi when evanescent.
Complex segment_wavenumber(const PhysicalConstants&, double height, double E);

// Ordered product of interface and propagation matrices across the whole
// profile, mapping right-lead coefficients to left-lead coefficients.
TransferMatrix profile_transfer_matrix(const PotentialProfile&,
                                       const PhysicalConstants&, double E);

// Unit-amplitude incidence from the left. Throws on E <= 0 and on energies
// degenerate with a segment height.
ScatteringSolution solve_scattering(const PotentialProfile&,
                                    const PhysicalConstants&, double E);

// The eight double-barrier amplitudes in the global-origin convention of the
// direct matching solver: refl/trans of each barrier plus the decaying and
// growing coefficients inside it (second-barrier entries relative to trans1).
struct TwoBarrierAmplitudes {
  Complex refl1, trans1, decay1, grow1;
  Complex refl2, trans2, decay2, grow2;
};

TwoBarrierAmplitudes two_barrier_amplitudes(const ScatteringSolution&);

}  // namespace qtn
