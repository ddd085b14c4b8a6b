#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "scattering.hpp"
#include "transfer_matrix.hpp"

using namespace qtn;
using doctest::Approx;

namespace {

Complex entry(const TransferMatrix& m, int r, int c) {
  const double s = std::exp(m.log_scale);
  if (r == 0 && c == 0) return s * m.a;
  if (r == 0 && c == 1) return s * m.b;
  if (r == 1 && c == 0) return s * m.c;
  return s * m.d;
}

// Independent 2x2 solve of the continuity conditions at x = 0:
//   u + v = f' + b',  q_l (u - v) = q_r (f' - b')
// for the left-side pair (u, v) given a right-side pair (f', b').
std::pair<Complex, Complex> continuity_solve(Complex ql, Complex qr, Complex f,
                                             Complex b) {
  const Complex rhs1 = f + b;
  const Complex rhs2 = qr * (f - b);
  // [[1, 1], [ql, -ql]] (u,v)^T = (rhs1, rhs2)^T
  const Complex u = 0.5 * (rhs1 + rhs2 / ql);
  const Complex v = 0.5 * (rhs1 - rhs2 / ql);
  return {u, v};
}

}  // namespace

TEST_CASE("equal wavenumbers give the identity interface") {
  const TransferMatrix m = interface_matrix({1.3, 0.0}, {1.3, 0.0});
  CHECK(entry(m, 0, 0) == Complex(1.0, 0.0));
  CHECK(entry(m, 0, 1) == Complex(0.0, 0.0));
  CHECK(entry(m, 1, 0) == Complex(0.0, 0.0));
  CHECK(entry(m, 1, 1) == Complex(1.0, 0.0));
}

TEST_CASE("propagating-to-evanescent interface at k = chi has the (1 -+ i)/2 pattern") {
  const TransferMatrix m = interface_matrix({1.0, 0.0}, {0.0, 1.0});
  CHECK(entry(m, 0, 0).real() == Approx(0.5).epsilon(1e-15));
  CHECK(entry(m, 0, 0).imag() == Approx(0.5).epsilon(1e-15));
  CHECK(entry(m, 0, 1).real() == Approx(0.5).epsilon(1e-15));
  CHECK(entry(m, 0, 1).imag() == Approx(-0.5).epsilon(1e-15));
  CHECK(entry(m, 1, 0) == entry(m, 0, 1));
  CHECK(entry(m, 1, 1) == entry(m, 0, 0));
}

TEST_CASE("interface matrix reproduces a direct continuity solve") {
  const Complex ql(0.9, 0.0), qr(0.0, 1.7);
  const TransferMatrix m = interface_matrix(ql, qr);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex f(u(rng), u(rng)), b(u(rng), u(rng));
    const auto [uu, vv] = continuity_solve(ql, qr, f, b);
    const Complex mu = entry(m, 0, 0) * f + entry(m, 0, 1) * b;
    const Complex mv = entry(m, 1, 0) * f + entry(m, 1, 1) * b;
    CHECK(std::abs(mu - uu) < 1e-14);
    CHECK(std::abs(mv - vv) < 1e-14);
  }
}

TEST_CASE("interface determinant is the wavenumber ratio") {
  const double k = 1.0, chi = 0.25;
  const TransferMatrix m = interface_matrix({k, 0.0}, {0.0, chi});
  CHECK(std::abs(m.det_scaled()) * std::exp(2.0 * m.log_scale) ==
        Approx(chi / k).epsilon(1e-14));
}

TEST_CASE("composite equal-lead matrix has unit determinant") {
  // det is formed from entries of size e^{2s}, so its verifiable precision is
  // ~eps * e^{2s}; moderate-stiffness profiles here, unitarity covers the
  // opaque ones through the well-conditioned T21/T11 ratio.
  const PhysicalConstants c;
  const PotentialProfile p({{0.6, 2.0}, {0.7, 0.0}, {0.8, 0.9}, {0.3, 3.0}});
  for (const double E : {0.3, 0.85, 1.7, 2.4}) {
    const TransferMatrix t = profile_transfer_matrix(p, c, E);
    CHECK(std::exp(t.log_abs_det()) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("zero-width propagation is the identity") {
  const TransferMatrix m = propagation_matrix({0.0, 2.0}, 0.0);
  CHECK(entry(m, 0, 0) == Complex(1.0, 0.0));
  CHECK(entry(m, 1, 1) == Complex(1.0, 0.0));
  CHECK(entry(m, 0, 1) == Complex(0.0, 0.0));
}

TEST_CASE("free propagation is unimodular") {
  const TransferMatrix m = propagation_matrix({1.7, 0.0}, 3.0);
  CHECK(std::abs(entry(m, 0, 0)) == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(entry(m, 1, 1)) == Approx(1.0).epsilon(1e-15));
  CHECK(m.log_scale == Approx(0.0));
}

TEST_CASE("evanescent propagation damps and grows by e^{-+ chi w}") {
  const double chi = 1.0, w = 20.0;
  const TransferMatrix m = propagation_matrix({0.0, chi}, w);
  // forward entry e^{+chi w}, backward e^{-chi w}; the growth sits in log_scale
  CHECK(m.log_scale + std::log(std::abs(m.a)) == Approx(chi * w).epsilon(1e-14));
  CHECK(m.log_scale + std::log(std::abs(m.d)) == Approx(-chi * w).epsilon(1e-13));
}

TEST_CASE("inserting a zero-width segment changes nothing") {
  const Complex k(1.0, 0.0), q(0.0, 1.3), k2(0.8, 0.0);
  const TransferMatrix direct = interface_matrix(k, k2);
  const TransferMatrix split = interface_matrix(k, q) *
                               propagation_matrix(q, 0.0) *
                               interface_matrix(q, k2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      CHECK(std::abs(entry(direct, r, c) - entry(split, r, c)) < 1e-14);
}

TEST_CASE("profile matrix equals the ordered product of its parts") {
  const PhysicalConstants c;
  const double E = 0.4;
  const Complex k(std::sqrt(2.0 * E), 0.0);
  const Complex q1 = segment_wavenumber(c, 1.0, E);
  const Complex q2 = segment_wavenumber(c, 0.0, E);
  const TransferMatrix manual = interface_matrix(k, q1) * propagation_matrix(q1, 2.0) *
                                interface_matrix(q1, q2) * propagation_matrix(q2, 3.0) *
                                interface_matrix(q2, q1) * propagation_matrix(q1, 2.0) *
                                interface_matrix(q1, k);
  const TransferMatrix t =
      profile_transfer_matrix(make_two_barrier(2.0, 3.0, 1.0), c, E);
  for (int r = 0; r < 2; ++r)
    for (int cc = 0; cc < 2; ++cc)
      CHECK(std::abs(entry(manual, r, cc) - entry(t, r, cc)) < 1e-12);
}

TEST_CASE("zero wavenumber at an interface is rejected") {
  CHECK_THROWS_AS(interface_matrix({0.0, 0.0}, {1.0, 0.0}), Error);
  CHECK_THROWS_AS(propagation_matrix({1.0, 0.0}, -1.0), Error);
}
