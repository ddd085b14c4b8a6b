#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "scattering.hpp"

using namespace qtn;
using doctest::Approx;

namespace {

// Closed-form single-barrier transmission probability,
// |t|^2 = [1 + ((k^2+chi^2)/(2 k chi))^2 sinh^2(chi a)]^{-1}.
double single_barrier_T(double k, double chi, double a) {
  const double f = (k * k + chi * chi) / (2.0 * k * chi);
  const double s = std::sinh(chi * a);
  return 1.0 / (1.0 + f * f * s * s);
}

PotentialProfile random_profile(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nseg(1, 6);
  std::uniform_real_distribution<double> width(0.1, 4.0);
  std::uniform_real_distribution<double> height(0.05, 3.0);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<Segment> segs;
  const int n = nseg(rng);
  for (int i = 0; i < n; ++i)
    segs.push_back({width(rng), uni(rng) < 0.3 ? 0.0 : height(rng)});
  return PotentialProfile(std::move(segs));
}

}  // namespace

TEST_CASE("free space transmits with unit amplitude") {
  const PhysicalConstants c;
  const ScatteringSolution s = solve_scattering(PotentialProfile{}, c, 0.5);
  CHECK(std::abs(s.transmission) == Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.reflection) == Approx(0.0));
  CHECK(s.trans_log_abs == Approx(0.0));
}

TEST_CASE("zero-height segments only shift the phase") {
  const PhysicalConstants c;
  const PotentialProfile p({{5.0, 0.0}});
  const ScatteringSolution s = solve_scattering(p, c, 0.5);
  CHECK(std::abs(s.transmission) == Approx(1.0).epsilon(1e-14));
  // t e^{ikD} has phase kD for free flight
  CHECK(s.exit_phase == Approx(std::remainder(1.0 * 5.0, 2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("single barrier matches the closed-form transmission") {
  const PhysicalConstants c;
  const double E = 0.5, V0 = 1.0;  // k = chi = 1
  for (const double a : {0.5, 1.0, 2.0, 5.0}) {
    const PotentialProfile p({{a, V0}});
    const ScatteringSolution s = solve_scattering(p, c, E);
    CHECK(s.transmission_prob() == Approx(single_barrier_T(1.0, 1.0, a)).epsilon(1e-12));
  }
  // E != V0/2 as well
  const ScatteringSolution s = solve_scattering(PotentialProfile({{1.7, 2.3}}), c, 0.9);
  const double k = std::sqrt(2.0 * 0.9), chi = std::sqrt(2.0 * (2.3 - 0.9));
  CHECK(s.transmission_prob() == Approx(single_barrier_T(k, chi, 1.7)).epsilon(1e-12));
}

TEST_CASE("above-barrier energies propagate through the segment") {
  const PhysicalConstants c;
  const PotentialProfile p({{2.0, 1.0}});
  const ScatteringSolution s = solve_scattering(p, c, 2.0);  // E > V0
  CHECK(s.transmission_prob() > 0.5);
  CHECK(s.reflection_prob() + s.transmission_prob() == Approx(1.0).epsilon(1e-13));
}

TEST_CASE("unitarity holds over randomized profiles") {
  const PhysicalConstants c;
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> energy(0.05, 4.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const PotentialProfile p = random_profile(rng);
    double E = energy(rng);
    while (p.is_degenerate_energy(E, 1e-6)) E = energy(rng);
    const ScatteringSolution s = solve_scattering(p, c, E);
    CHECK(std::abs(s.reflection_prob() + s.transmission_prob() - 1.0) < 1e-12);
  }
}

TEST_CASE("the reconstructed wavefunction is continuous at every interface") {
  const PhysicalConstants c;
  std::mt19937_64 rng(0xc0ffee);
  std::uniform_real_distribution<double> energy(0.05, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PotentialProfile p = random_profile(rng);
    double E = energy(rng);
    while (p.is_degenerate_energy(E, 1e-6)) E = energy(rng);
    const ScatteringSolution s = solve_scattering(p, c, E);
    double x = 0.0;
    const double eps = 1e-9;
    for (std::size_t i = 0; i <= p.size(); ++i) {
      const double scale = std::max(std::abs(s.psi(x - eps)), 1e-30);
      CHECK(std::abs(s.psi(x - eps) - s.psi(x + eps)) / scale < 1e-6);
      const Complex dl = s.psi_derivative(x - eps), dr = s.psi_derivative(x + eps);
      const double dscale = std::max({std::abs(dl), std::abs(dr), 1e-30});
      CHECK(std::abs(dl - dr) / dscale < 1e-5);
      if (i < p.size()) x += p.segments()[i].width;
    }
  }
}

TEST_CASE("interface continuity holds exactly at the region boundaries") {
  const PhysicalConstants c;
  const PotentialProfile p = make_two_barrier(2.0, 3.0, 1.0);
  const ScatteringSolution s = solve_scattering(p, c, 0.5);
  // evaluate each region's own expansion at its edges
  for (std::size_t j = 0; j + 1 < s.regions.size(); ++j) {
    const RegionWave& left = s.regions[j];
    const RegionWave& right = s.regions[j + 1];
    const Complex i(0.0, 1.0);
    const double w = left.width;
    const Complex psi_l = left.forward * std::exp(i * left.wavenumber * w) +
                          left.backward * std::exp(-i * left.wavenumber * w);
    const Complex psi_r = right.forward + right.backward;
    CHECK(std::abs(psi_l - psi_r) / std::max(std::abs(psi_l), 1e-30) < 1e-10);
    const Complex dpsi_l =
        i * left.wavenumber *
        (left.forward * std::exp(i * left.wavenumber * w) -
         left.backward * std::exp(-i * left.wavenumber * w));
    const Complex dpsi_r = i * right.wavenumber * (right.forward - right.backward);
    CHECK(std::abs(dpsi_l - dpsi_r) / std::max(std::abs(dpsi_l), 1e-30) < 1e-10);
  }
}

TEST_CASE("transmission is identical for reversed profiles") {
  const PhysicalConstants c;
  const PotentialProfile p({{1.0, 2.0}, {0.5, 0.0}, {2.0, 0.7}});
  for (const double E : {0.3, 1.1, 2.6}) {
    const ScatteringSolution fwd = solve_scattering(p, c, E);
    const ScatteringSolution bwd = solve_scattering(p.reversed(), c, E);
    CHECK(std::abs(fwd.transmission - bwd.transmission) < 1e-13);
  }
}

TEST_CASE("degenerate and non-positive energies are rejected") {
  const PhysicalConstants c;
  const PotentialProfile p({{1.0, 1.0}});
  CHECK_THROWS_AS(solve_scattering(p, c, 1.0), Error);
  CHECK_THROWS_AS(solve_scattering(p, c, -0.5), Error);
  CHECK_THROWS_AS(solve_scattering(p, c, 0.0), Error);
  try {
    solve_scattering(p, c, 1.0 + 1e-14);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_energy);
  }
}

TEST_CASE("unit incidence convention holds in the left lead") {
  const PhysicalConstants c;
  const ScatteringSolution s =
      solve_scattering(make_two_barrier(1.5, 2.0, 1.0), c, 0.5);
  CHECK(s.regions.front().forward == Complex(1.0, 0.0));
  CHECK(std::abs(s.regions.front().backward - s.reflection) < 1e-15);
  CHECK(std::abs(s.regions.back().backward) == Approx(0.0));
}

TEST_CASE("scaled units reproduce the dimensionless observables") {
  // hbar=2, m=3 with rescaled geometry gives identical |t|^2 when k a and
  // chi a are preserved.
  const PhysicalConstants natural;
  const PhysicalConstants scaled{2.0, 3.0};
  const double E_nat = 0.5, V_nat = 1.0, a_nat = 1.3;
  // In scaled units pick E', V' with the same k' a' and chi' a' products:
  // k' = sqrt(2 m E')/hbar; choose E' = hbar^2/(2m) so k' = 1; V' = 2 E'.
  const double E_s = scaled.hbar * scaled.hbar / (2.0 * scaled.mass);
  const double V_s = 2.0 * E_s;
  const ScatteringSolution nat =
      solve_scattering(PotentialProfile({{a_nat, V_nat}}), natural, E_nat);
  const ScatteringSolution phys =
      solve_scattering(PotentialProfile({{a_nat, V_s}}), scaled, E_s);
  CHECK(nat.transmission_prob() == Approx(phys.transmission_prob()).epsilon(1e-13));
}
