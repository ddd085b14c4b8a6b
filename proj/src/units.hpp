#pragma once

#include <cmath>

#include "errors.hpp"

namespace qtn {

// All quantities are expressed in whatever unit system makes hbar and mass
// take these values; the default is natural units hbar = m = 1, in which
// E = k^2/2 and chi = sqrt(2(V-E)).
struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0))
      fail(ErrorCode::invalid_argument, "hbar and mass must be strictly positive");
  }
};

inline PhysicalConstants si_electron_constants() {
  return PhysicalConstants{1.054571817e-34, 9.1093837015e-31};
}

// Lead kinematics: E = hbar^2 k^2 / 2m, v = hbar k / m.
struct Kinematics {
  double energy;
  double k;
  double v;

  Kinematics(const PhysicalConstants& c, double E) {
    c.validate();
    if (!(E > 0.0)) fail(ErrorCode::invalid_argument, "energy must be strictly positive");
    energy = E;
    k = std::sqrt(2.0 * c.mass * E) / c.hbar;
    v = c.hbar * k / c.mass;
  }
};

// Evanescent decay constant inside a segment with V > E.
inline double decay_constant(const PhysicalConstants& c, double height, double E) {
  c.validate();
  if (!(height > E))
    fail(ErrorCode::invalid_argument, "decay constant is defined only for V > E");
  return std::sqrt(2.0 * c.mass * (height - E)) / c.hbar;
}

}  // namespace qtn
