#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "matching_direct.hpp"

using namespace qtn;
using doctest::Approx;

namespace {

double rel(Complex a, Complex b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

}  // namespace

TEST_CASE("direct solve and transfer-matrix route agree on all 8 amplitudes") {
  const PhysicalConstants c;
  for (const double E : {0.15, 0.3, 0.5, 0.7, 0.85})
    for (const double a : {0.8, 1.5, 2.2, 3.0})
      for (const double g : {0.7, 1.6, 2.5, 3.4, 4.3}) {
        const TwoBarrierAmplitudes tm =
            two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, 1.0), c, E));
        const TwoBarrierAmplitudes dd = solve_matching_direct({a, g, 1.0}, c, E);
        CHECK(rel(tm.refl1, dd.refl1) < 1e-10);
        CHECK(rel(tm.trans1, dd.trans1) < 1e-10);
        CHECK(rel(tm.decay1, dd.decay1) < 1e-10);
        CHECK(rel(tm.grow1, dd.grow1) < 1e-10);
        CHECK(rel(tm.refl2, dd.refl2) < 1e-10);
        CHECK(rel(tm.trans2, dd.trans2) < 1e-10);
        CHECK(rel(tm.decay2, dd.decay2) < 1e-10);
        CHECK(rel(tm.grow2, dd.grow2) < 1e-10);
      }
}

TEST_CASE("the two routes agree on the opaque spec point") {
  const PhysicalConstants c;
  const double a = 20.0, g = 3.0;
  const TwoBarrierAmplitudes tm =
      two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, 1.0), c, 0.5));
  const TwoBarrierAmplitudes dd = solve_matching_direct({a, g, 1.0}, c, 0.5);
  const Complex t_tm = tm.trans1 * tm.trans2;
  const Complex t_dd = dd.trans1 * dd.trans2;
  CHECK(rel(t_tm, t_dd) < 1e-10);
  CHECK(std::abs(t_tm) == Approx(std::exp(-40.0) * 2.0 * std::abs(1.0 / std::cos(3.0)))
                              .epsilon(1e-4));
}

TEST_CASE("zero-width barriers collapse to free space") {
  const PhysicalConstants c;
  const TwoBarrierAmplitudes a = solve_matching_direct({0.0, 3.0, 1.0}, c, 0.5);
  CHECK(std::abs(a.trans1 * a.trans2) == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(a.refl1) == Approx(0.0));
}

TEST_CASE("opaque internal reflection approaches unit modulus") {
  const PhysicalConstants c;
  const double a = 10.0;  // chi a = 10
  const TwoBarrierAmplitudes amp = solve_matching_direct({a, 3.0, 1.0}, c, 0.5);
  // |refl1| -> 1 with at most an O(e^{-2 chi a}) defect (at k = chi the
  // correction is nearly tangential, so the modulus defect is even smaller)
  CHECK(std::abs(std::abs(amp.refl1) - 1.0) < 10.0 * std::exp(-2.0 * a));
  // while the amplitude itself still differs from its opaque limit
  const Complex limit = Complex(0.0, -1.0);  // (ik+chi)/(ik-chi) at k = chi
  CHECK(std::abs(amp.refl1 - limit) > 0.1 * std::exp(-2.0 * a));
}

TEST_CASE("the direct solution satisfies unitarity and continuity too") {
  const PhysicalConstants c;
  const ScatteringSolution s = matching_direct_solution({1.5, 2.0, 1.0}, c, 0.4);
  CHECK(s.reflection_prob() + s.transmission_prob() == Approx(1.0).epsilon(1e-12));
  const double eps = 1e-9;
  for (const double x : {0.0, 1.5, 3.5, 5.0}) {
    const double scale = std::max(std::abs(s.psi(x - eps)), 1e-30);
    CHECK(std::abs(s.psi(x - eps) - s.psi(x + eps)) / scale < 1e-6);
  }
}

TEST_CASE("geometry extraction accepts barrier/gap/barrier profiles only") {
  CHECK_THROWS_AS(two_barrier_geometry(PotentialProfile({{1.0, 1.0}})), Error);
  CHECK_THROWS_AS(
      two_barrier_geometry(PotentialProfile({{1.0, 1.0}, {2.0, 0.0}, {1.5, 1.0}})),
      Error);
  const TwoBarrierGeometry g =
      two_barrier_geometry(make_two_barrier(1.25, 2.0, 0.8));
  CHECK(g.barrier_width == 1.25);
  CHECK(g.gap == 2.0);
  CHECK(g.height == 0.8);
}

TEST_CASE("the direct solver guards its domain") {
  const PhysicalConstants c;
  CHECK_THROWS_AS(solve_matching_direct({1.0, 1.0, 1.0}, c, 1.5), Error);  // E > V0
  CHECK_THROWS_AS(solve_matching_direct({1.0, 1.0, 1.0}, c, 1.0), Error);  // E = V0
  CHECK_THROWS_AS(solve_matching_direct({-1.0, 1.0, 1.0}, c, 0.5), Error);
}
