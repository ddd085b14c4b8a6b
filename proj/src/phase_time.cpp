#include "phase_time.hpp"

#include <array>
#include <cmath>

#include "opaque.hpp"

namespace qtn {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Offsets (in units of the base step) covering 5-point stencils at h, h/2, h/4.
constexpr std::array<double, 9> kOffsets = {-2.0, -1.0, -0.5, -0.25, 0.0,
                                            0.25, 0.5,  1.0,  2.0};

double five_point(const std::array<double, 9>& phi, int im2, int im1, int ip1,
                  int ip2, double step) {
  return (phi[im2] - 8.0 * phi[im1] + 8.0 * phi[ip1] - phi[ip2]) / (12.0 * step);
}

}  // namespace

bool near_resonance(const PotentialProfile& p, const PhysicalConstants& c, double E,
                    double guard) {
  const auto& segs = p.segments();
  for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
    if (i == 0) continue;
    if (!(segs[i].height < E)) continue;          // gap must propagate
    if (!(segs[i - 1].height > E)) continue;      // flanked by evanescent
    if (!(segs[i + 1].height > E)) continue;
    const double kg = std::sqrt(2.0 * c.mass * (E - segs[i].height)) / c.hbar;
    for (const double h : {segs[i - 1].height, segs[i + 1].height}) {
      const double chi = std::sqrt(2.0 * c.mass * (h - E)) / c.hbar;
      if (std::abs(resonance_condition(kg, chi, segs[i].width)) <=
          guard * 2.0 * chi * kg)
        return true;
    }
  }
  return false;
}

PhaseTimeResult phase_time(const PotentialProfile& p, const PhysicalConstants& c,
                           double E, const PhaseTimeOptions& opt) {
  c.validate();
  if (!(E > 0.0)) fail(ErrorCode::invalid_argument, "energy must be strictly positive");
  if (!(opt.step_fraction > 0.0) || !(opt.min_step_fraction > 0.0) ||
      opt.min_step_fraction > opt.step_fraction)
    fail(ErrorCode::invalid_argument, "bad phase-time step bracket");

  const double h_min = opt.min_step_fraction * E;
  double h = opt.step_fraction * E;

  // The widest stencil spans E +- 2h; keep it positive and away from any
  // segment-height degeneracy.
  h = std::min(h, 0.45 * E);
  for (const auto& s : p.segments()) {
    if (!(s.height > 0.0)) continue;
    const double dist = std::abs(E - s.height);
    if (dist < 2.5 * h) h = dist / 2.5;
  }
  if (h < h_min)
    fail(ErrorCode::degenerate_energy,
         "differentiation stencil cannot avoid a segment-height degeneracy");

  std::array<double, 9> phi{};
  bool flagged = false;
  while (true) {
    flagged = false;
    for (std::size_t i = 0; i < kOffsets.size(); ++i) {
      const double Ei = E + kOffsets[i] * h;
      const ScatteringSolution s = solve_scattering(p, c, Ei);
      phi[i] = s.exit_phase;
      if (near_resonance(p, c, Ei, opt.resonance_guard)) flagged = true;
    }
    // Nearest-branch unwrapping, left to right.
    bool too_fast = false;
    for (std::size_t i = 1; i < phi.size(); ++i) {
      double d = phi[i] - phi[i - 1];
      d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
      phi[i] = phi[i - 1] + d;
      // A near-pi jump between neighbors cannot be branched reliably.
      if (std::abs(d) > 0.5 * kPi) too_fast = true;
    }
    if (!too_fast) break;
    if (0.5 * h < h_min)
      fail(ErrorCode::step_too_large,
           "transmission phase winds faster than the smallest allowed stencil step");
    h *= 0.5;
  }

  // Richardson tableau over the three 5-point estimates (orders h^4, h^6, h^8).
  const double d0 = five_point(phi, 0, 1, 7, 8, h);
  const double d1 = five_point(phi, 1, 2, 6, 7, 0.5 * h);
  const double d2 = five_point(phi, 2, 3, 5, 6, 0.25 * h);
  const double r0 = d1 + (d1 - d0) / 15.0;
  const double r1 = d2 + (d2 - d1) / 15.0;
  const double r2 = r1 + (r1 - r0) / 63.0;

  PhaseTimeResult res;
  res.energy = E;
  res.tau = c.hbar * r2;
  res.reference_length = p.extent();
  res.step_used = h;
  res.resonance_flag = flagged;
  return res;
}

}  // namespace qtn
