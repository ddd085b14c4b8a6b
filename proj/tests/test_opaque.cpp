#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "matching_direct.hpp"
#include "opaque.hpp"

using namespace qtn;
using doctest::Approx;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(Complex a, Complex b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace

TEST_CASE("internal reflection at k = chi is -i") {
  const OpaqueLimitAmplitudes o = opaque_amplitudes(1.0, 1.0, 10.0, 13.0);
  CHECK(std::abs(o.refl1 - Complex(0.0, -1.0)) < 1e-15);
  CHECK(std::abs(o.refl1) == Approx(1.0).epsilon(1e-15));
  CHECK(std::arg(o.refl1) == Approx(-kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("both opaque reflection amplitudes have unit modulus exactly") {
  for (const double k : {0.5, 1.0, 1.9})
    for (const double chi : {0.3, 1.0, 2.4}) {
      const OpaqueLimitAmplitudes o = opaque_amplitudes(k, chi, 8.0, 10.5);
      CHECK(std::abs(o.refl1) == Approx(1.0).epsilon(1e-15));
      CHECK(std::abs(o.refl2) == Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("gap factor is 1/cos(gap) at k = chi = 1") {
  const double a = 25.0, gap = 3.0;
  const OpaqueLimitAmplitudes o = opaque_amplitudes(1.0, 1.0, a, a + gap);
  CHECK(o.gap_factor == Approx(1.0 / std::cos(3.0)).epsilon(1e-15));
  // cross-check against the exact solver at chi a = 25
  const PhysicalConstants c;
  const TwoBarrierAmplitudes ex =
      two_barrier_amplitudes(solve_scattering(make_two_barrier(a, gap, 1.0), c, 0.5));
  const Complex analog = ex.trans1 * std::exp(a) * std::exp(Complex(0.0, 1.0) * (a + gap));
  CHECK(analog.real() == Approx(o.gap_factor).epsilon(1e-10));
  CHECK(std::abs(analog.imag() / analog.real()) < 1e-15);
}

TEST_CASE("second-barrier transmission modulus is e^{-chi a} 4 k chi/(k^2+chi^2)") {
  const OpaqueLimitAmplitudes o = opaque_amplitudes(1.0, 1.0, 10.0, 13.0);
  CHECK(std::abs(o.trans2) == Approx(2.0 * std::exp(-10.0)).epsilon(1e-14));
}

TEST_CASE("total opaque transmission separates modulus and reference phase") {
  const double k = 1.0, chi = 1.0, a = 9.0, L = 12.0;
  const OpaqueLimitAmplitudes o = opaque_amplitudes(k, chi, a, L);
  const Complex total = o.trans1 * o.trans2;
  CHECK(std::abs(total) == Approx(std::exp(-2.0 * chi * a) * (4.0 * k * chi) /
                                  (k * k + chi * chi) * std::abs(o.gap_factor))
                               .epsilon(1e-13));
  // the phase of trans1 trans2 e^{ik(L+a)} carries no a or L dependence:
  // flat across a 20x20 (width, gap) grid to 1e-12 (gap range keeps the gap
  // factor's sign fixed)
  const Complex i(0.0, 1.0);
  const double base = std::arg(total * std::exp(i * k * (L + a)));
  for (int ia = 0; ia < 20; ++ia)
    for (int ig = 0; ig < 20; ++ig) {
      const double aa = 5.0 + ia;
      const double gg = 2.0 + ig * (1.0 / 19.0);
      const OpaqueLimitAmplitudes oo = opaque_amplitudes(k, chi, aa, aa + gg);
      const double phase =
          std::arg(oo.trans1 * oo.trans2 * std::exp(i * k * (2.0 * aa + gg)));
      CHECK(std::abs(std::remainder(phase - base, 2.0 * kPi)) < 1e-12);
    }
}

TEST_CASE("resonance condition basics") {
  CHECK(resonance_condition(1.3, 0.7, 0.0) == Approx(2.0 * 0.7 * 1.3).epsilon(1e-15));
  // k = chi: zeros at k*gap = pi/2 + n pi
  for (int n = 0; n < 3; ++n) {
    const double g = (kPi / 2.0 + n * kPi) / 1.0;
    CHECK(std::abs(resonance_condition(1.0, 1.0, g)) < 1e-12);
  }
  // k=1, chi=2: first positive zero of 4 cos g + 3 sin g at pi - atan(4/3)
  const double g_closed = kPi - std::atan(4.0 / 3.0);
  CHECK(resonance_condition(1.0, 2.0, g_closed) == Approx(0.0).epsilon(1e-12));
  const double g_num = resonance_zero_in_gap(1.0, 2.0, 0.5, 3.0);
  CHECK(g_num == Approx(g_closed).epsilon(1e-12));
}

TEST_CASE("near-resonance guard fires on the gap factor") {
  const double g_zero = resonance_zero_in_gap(1.0, 1.0, 1.0, 2.0);  // pi/2
  CHECK_THROWS_AS(opaque_amplitudes(1.0, 1.0, 10.0, 10.0 + g_zero), Error);
  try {
    opaque_amplitudes(1.0, 1.0, 10.0, 10.0 + g_zero);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::near_resonance);
  }
}

TEST_CASE("opaque delay equals 2m/(hbar k chi)") {
  CHECK(hartman_phase_time(1.0, 1.0) == Approx(2.0).epsilon(1e-15));
  CHECK(hartman_phase_time(2.0, 0.5) == Approx(2.0).epsilon(1e-15));
  const PhysicalConstants c{2.0, 3.0};
  CHECK(hartman_phase_time(1.0, 1.0, c) == Approx(2.0 * 3.0 / 2.0).epsilon(1e-15));
  // k -> infinity at fixed chi drives the delay to zero
  CHECK(hartman_phase_time(1e6, 1.0) == Approx(2e-6).epsilon(1e-12));
}

TEST_CASE("finite-difference delay of the opaque amplitude matches the closed form") {
  // tau = hbar d/dE arg[-4 i k chi/(ik - chi)^2] at fixed V0, numerically.
  const double V0 = 1.0, E = 0.5, h = 1e-6;
  auto phase = [&](double e) {
    const double k = std::sqrt(2.0 * e), chi = std::sqrt(2.0 * (V0 - e));
    const Complex i(0.0, 1.0);
    const Complex ikmc = i * k - chi;
    return std::arg(-4.0 * i * k * chi / (ikmc * ikmc));
  };
  const double d =
      (phase(E - 2 * h) - 8 * phase(E - h) + 8 * phase(E + h) - phase(E + 2 * h)) /
      (12.0 * h);
  CHECK(d == Approx(hartman_phase_time(1.0, 1.0)).epsilon(1e-8));
}

TEST_CASE("exact coefficients converge to the opaque forms at rate e^{-2 chi a}") {
  const PhysicalConstants c;
  const double g = 3.0;
  auto errs = [&](double a) {
    const TwoBarrierAmplitudes ex =
        two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, 1.0), c, 0.5));
    const OpaqueLimitAmplitudes o = opaque_amplitudes(1.0, 1.0, a, a + g);
    return std::array<double, 8>{rel(ex.refl1, o.refl1),   rel(ex.trans1, o.trans1),
                                 rel(ex.decay1, o.decay1), rel(ex.grow1, o.grow1),
                                 rel(ex.refl2, o.refl2),   rel(ex.trans2, o.trans2),
                                 rel(ex.decay2, o.decay2), rel(ex.grow2, o.grow2)};
  };
  const auto e6 = errs(6.0);
  const auto e7 = errs(7.0);
  // doubling chi a by +1 shrinks each error by ~e^{-2}
  for (int i = 0; i < 8; ++i) {
    const double ratio = e7[i] / e6[i];
    CHECK(ratio > 0.5 * std::exp(-2.0));
    CHECK(ratio < 2.0 * std::exp(-2.0));
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(opaque_amplitudes(0.0, 1.0, 1.0, 2.0), Error);
  CHECK_THROWS_AS(opaque_amplitudes(1.0, 1.0, 3.0, 2.0), Error);  // a > L
  CHECK_THROWS_AS(hartman_phase_time(-1.0, 1.0), Error);
}
