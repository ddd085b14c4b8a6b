#include "opaque.hpp"

#include <cmath>

#include "linalg.hpp"

namespace qtn {

double resonance_condition(double k, double chi, double gap) {
  return 2.0 * chi * k * std::cos(k * gap) + (chi * chi - k * k) * std::sin(k * gap);
}

OpaqueLimitAmplitudes opaque_amplitudes(double k, double chi, double a, double L,
                                        double guard_tol) {
  if (!(k > 0.0) || !(chi > 0.0))
    fail(ErrorCode::invalid_argument, "opaque amplitudes need k > 0 and chi > 0");
  if (!(a > 0.0) || !(a <= L))
    fail(ErrorCode::invalid_argument, "opaque amplitudes need 0 < a <= L");
  const double gap = L - a;
  const double denom = resonance_condition(k, chi, gap);
  if (std::abs(denom) < guard_tol * (2.0 * chi * k))
    fail(ErrorCode::near_resonance,
         "gap factor diverges: energy too close to an inter-barrier resonance");

  const Complex i(0.0, 1.0);
  const Complex ik = i * k;
  const Complex ikmc = ik - chi;
  const double A = 2.0 * chi * k / denom;

  OpaqueLimitAmplitudes o;
  o.gap_factor = A;
  o.refl1 = (ik + chi) / ikmc;
  o.trans1 = std::exp(-chi * a) * std::exp(-i * k * L) * A;
  o.decay1 = 2.0 * ik / ikmc;
  o.grow1 = std::exp(-2.0 * chi * a) * Complex(k, -chi) * std::sin(k * gap) / chi * A;
  o.refl2 = std::exp(2.0 * i * k * L) * (ik + chi) / ikmc;
  o.trans2 = std::exp(-chi * a) * std::exp(-i * k * a) * (-4.0 * ik * chi) / (ikmc * ikmc);
  o.decay2 = std::exp(i * k * L) * 2.0 * ik / ikmc;
  o.grow2 = std::exp(i * k * L - 2.0 * chi * a) * (-2.0 * ik) * (ik + chi) / (ikmc * ikmc);
  return o;
}

double hartman_phase_time(double k, double chi, const PhysicalConstants& c) {
  c.validate();
  if (!(k > 0.0) || !(chi > 0.0))
    fail(ErrorCode::invalid_argument, "phase time limit needs k > 0 and chi > 0");
  return 2.0 * c.mass / (c.hbar * k * chi);
}

double resonance_zero_in_gap(double k, double chi, double gap_lo, double gap_hi) {
  return bisect_root([&](double g) { return resonance_condition(k, chi, g); },
                     gap_lo, gap_hi);
}

double resonance_zero_in_energy(const PhysicalConstants& c, double height, double gap,
                                double e_lo, double e_hi) {
  c.validate();
  if (!(e_lo > 0.0) || !(e_hi < height) || !(e_lo < e_hi))
    fail(ErrorCode::invalid_argument, "energy bracket must lie inside (0, V0)");
  auto f = [&](double E) {
    const double k = std::sqrt(2.0 * c.mass * E) / c.hbar;
    const double chi = std::sqrt(2.0 * c.mass * (height - E)) / c.hbar;
    return resonance_condition(k, chi, gap);
  };
  return bisect_root(f, e_lo, e_hi);
}

}  // namespace qtn
