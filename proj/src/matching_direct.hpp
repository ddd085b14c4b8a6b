#pragma once

#include "scattering.hpp"

namespace qtn {

// Symmetric double barrier: [0,a] and [L, L+a] at the same height, free gap
// of width L-a between them. barrier_width may be 0 (collapses to free
// space), which a strict PotentialProfile cannot represent.
struct TwoBarrierGeometry {
  double barrier_width;
  double gap;
  double height;
};

// Extracts the geometry from a barrier/gap/barrier profile (equal widths and
// heights required).
TwoBarrierGeometry two_barrier_geometry(const PotentialProfile&);

// Solves the eight continuity conditions of the five-region double-barrier
// problem as one dense linear system, independently of the transfer-matrix
// path. Tunneling regime only (E < height).
TwoBarrierAmplitudes solve_matching_direct(const TwoBarrierGeometry&,
                                           const PhysicalConstants&, double E);

// Full five-region solution assembled from the directly solved amplitudes,
// so that generic invariants (unitarity, continuity) apply to this route too.
ScatteringSolution matching_direct_solution(const TwoBarrierGeometry&,
                                            const PhysicalConstants&, double E);

}  // namespace qtn
