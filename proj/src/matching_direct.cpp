#include "matching_direct.hpp"

#include <cmath>

#include "linalg.hpp"

namespace qtn {

TwoBarrierGeometry two_barrier_geometry(const PotentialProfile& p) {
  const auto& s = p.segments();
  if (s.size() != 3 || !(s[0].height > 0.0) || s[1].height != 0.0 ||
      !(s[2].height > 0.0))
    fail(ErrorCode::invalid_argument, "profile is not barrier/gap/barrier");
  if (std::abs(s[0].height - s[2].height) > 1e-12 * s[0].height ||
      std::abs(s[0].width - s[2].width) > 1e-12 * s[0].width)
    fail(ErrorCode::invalid_argument, "double-barrier solve expects equal barriers");
  return {s[0].width, s[1].width, s[0].height};
}

TwoBarrierAmplitudes solve_matching_direct(const TwoBarrierGeometry& geo,
                                           const PhysicalConstants& c, double E) {
  c.validate();
  if (!(geo.barrier_width >= 0.0) || !(geo.gap >= 0.0) || !(geo.height > 0.0))
    fail(ErrorCode::invalid_argument, "invalid double-barrier geometry");
  if (!(E > 0.0)) fail(ErrorCode::invalid_argument, "energy must be strictly positive");
  if (!(E < geo.height))
    fail(ErrorCode::invalid_argument, "direct matching solve covers the tunneling regime (E < V0)");
  if (std::abs(E - geo.height) <= 1e-12 * std::max(1.0, geo.height))
    fail(ErrorCode::degenerate_energy, "energy degenerate with the barrier height");

  const double a = geo.barrier_width;
  const double L = a + geo.gap;
  const double D = L + a;
  const double k = Kinematics(c, E).k;
  const double chi = decay_constant(c, geo.height, E);
  const Complex i(0.0, 1.0);
  const Complex ik = i * k;
  const Complex eika = std::exp(i * k * a);
  const Complex eikL = std::exp(i * k * L);
  const Complex eikD = std::exp(i * k * D);
  const double ema = std::exp(-chi * a);  // e^{-chi a}; the e^{+chi a} columns are
                                          // rescaled by this factor for conditioning

  // Unknowns: refl1, decay1, grow1*e^{chi a}, trans1, trans1*refl2,
  //           trans1*decay2, trans1*grow2*e^{chi a}, trans1*trans2.
  std::vector<Complex> A(64, Complex(0.0));
  std::vector<Complex> b(8, Complex(0.0));
  auto at = [&A](int r, int col) -> Complex& { return A[r * 8 + col]; };

  // psi and psi' continuity at x = 0
  at(0, 0) = -1.0; at(0, 1) = 1.0; at(0, 2) = ema;
  b[0] = 1.0;
  at(1, 0) = ik; at(1, 1) = -chi; at(1, 2) = chi * ema;
  b[1] = ik;
  // at x = a
  at(2, 1) = ema; at(2, 2) = 1.0; at(2, 3) = -eika; at(2, 4) = -1.0 / eika;
  at(3, 1) = -chi * ema; at(3, 2) = chi; at(3, 3) = -ik * eika; at(3, 4) = ik / eika;
  // at x = L
  at(4, 3) = eikL; at(4, 4) = 1.0 / eikL; at(4, 5) = -1.0; at(4, 6) = -ema;
  at(5, 3) = ik * eikL; at(5, 4) = -ik / eikL; at(5, 5) = chi; at(5, 6) = -chi * ema;
  // at x = L + a
  at(6, 5) = ema; at(6, 6) = 1.0; at(6, 7) = -eikD;
  at(7, 5) = -chi * ema; at(7, 6) = chi; at(7, 7) = -ik * eikD;

  solve_dense_complex(A, b, 8);

  TwoBarrierAmplitudes out;
  out.refl1 = b[0];
  out.decay1 = b[1];
  out.grow1 = b[2] * ema;
  out.trans1 = b[3];
  out.refl2 = b[4] / b[3];
  out.decay2 = b[5] / b[3];
  out.grow2 = b[6] * ema / b[3];
  out.trans2 = b[7] / b[3];
  return out;
}

ScatteringSolution matching_direct_solution(const TwoBarrierGeometry& geo,
                                            const PhysicalConstants& c, double E) {
  const TwoBarrierAmplitudes amp = solve_matching_direct(geo, c, E);
  const double a = geo.barrier_width;
  const double L = a + geo.gap;
  const double D = L + a;
  const double k = Kinematics(c, E).k;
  const double chi = decay_constant(c, geo.height, E);
  const Complex i(0.0, 1.0);
  const Complex qe(0.0, chi);
  const Complex t_total = amp.trans1 * amp.trans2;

  ScatteringSolution sol;
  sol.energy = E;
  sol.lead_k = k;
  sol.reflection = amp.refl1;
  sol.transmission = t_total;
  sol.trans_log_abs = std::log(std::abs(t_total));
  sol.exit_phase = std::arg(t_total * std::exp(i * k * D));
  sol.regions = {
      {Complex(k, 0.0), 0.0, 0.0, 1.0, amp.refl1},
      {qe, 0.0, a, amp.decay1, amp.grow1},
      {Complex(k, 0.0), a, geo.gap, amp.trans1 * std::exp(i * k * a),
       amp.trans1 * amp.refl2 * std::exp(-i * k * a)},
      {qe, L, a, amp.trans1 * amp.decay2, amp.trans1 * amp.grow2},
      {Complex(k, 0.0), D, 0.0, t_total * std::exp(i * k * D), 0.0},
  };
  return sol;
}

}  // namespace qtn
