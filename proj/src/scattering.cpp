#include "scattering.hpp"

#include <cmath>

namespace qtn {

namespace {

struct RegionLayout {
  std::vector<Complex> q;   // size n+2, leads included
  std::vector<double> x0;   // origins
  std::vector<double> w;    // widths (leads 0)
};

RegionLayout layout(const PotentialProfile& p, const PhysicalConstants& c, double E) {
  if (!(E > 0.0)) fail(ErrorCode::invalid_argument, "energy must be strictly positive");
  if (p.is_degenerate_energy(E))
    fail(ErrorCode::degenerate_energy,
         "energy coincides with a segment height (chi = 0); nudge the energy");
  const Kinematics kin(c, E);
  RegionLayout r;
  const auto& segs = p.segments();
  r.q.reserve(segs.size() + 2);
  r.x0.reserve(segs.size() + 2);
  r.w.reserve(segs.size() + 2);
  r.q.push_back(Complex(kin.k, 0.0));
  r.x0.push_back(0.0);
  r.w.push_back(0.0);
  double x = 0.0;
  for (const auto& s : segs) {
    r.q.push_back(segment_wavenumber(c, s.height, E));
    r.x0.push_back(x);
    r.w.push_back(s.width);
    x += s.width;
  }
  r.q.push_back(Complex(kin.k, 0.0));
  r.x0.push_back(x);
  r.w.push_back(0.0);
  return r;
}

}  // namespace

Complex segment_wavenumber(const PhysicalConstants& c, double height, double E) {
  if (E > height) return Complex(std::sqrt(2.0 * c.mass * (E - height)) / c.hbar, 0.0);
  return Complex(0.0, std::sqrt(2.0 * c.mass * (height - E)) / c.hbar);
}

TransferMatrix profile_transfer_matrix(const PotentialProfile& p,
                                       const PhysicalConstants& c, double E) {
  const RegionLayout r = layout(p, c, E);
  const std::size_t n = p.size();
  TransferMatrix t = TransferMatrix::identity();
  for (std::size_t j = 0; j + 1 < r.q.size(); ++j) {
    t = t * interface_matrix(r.q[j], r.q[j + 1]);
    if (j + 1 <= n) t = t * propagation_matrix(r.q[j + 1], r.w[j + 1]);
  }
  return t;
}

ScatteringSolution solve_scattering(const PotentialProfile& p,
                                    const PhysicalConstants& c, double E) {
  const RegionLayout r = layout(p, c, E);
  const std::size_t n = p.size();
  const double D = p.extent();
  const TransferMatrix t = profile_transfer_matrix(p, c, E);

  ScatteringSolution sol;
  sol.energy = E;
  sol.lead_k = r.q.front().real();
  if (std::abs(t.a) == 0.0)
    fail(ErrorCode::internal, "vanishing (1,1) transfer-matrix entry");

  // f_end = 1/T11, referenced to the profile exit plane.
  sol.trans_log_abs = -(t.log_scale + std::log(std::abs(t.a)));
  sol.exit_phase = -std::arg(t.a);
  sol.reflection = t.c / t.a;
  const double kD = sol.lead_k * D;
  sol.transmission = std::exp(sol.trans_log_abs) *
                     Complex(std::cos(sol.exit_phase - kD), std::sin(sol.exit_phase - kD));

  // Region coefficients, swept right to left from f_end.
  const Complex f_end = std::exp(-t.log_scale) / t.a;
  std::vector<RegionWave> regions(n + 2);
  Complex f = f_end, b = 0.0;
  regions[n + 1] = {r.q[n + 1], r.x0[n + 1], 0.0, f, b};
  for (std::size_t j = n + 1; j-- > 0;) {
    const TransferMatrix m = interface_matrix(r.q[j], r.q[j + 1]);
    Complex u = m.a * f + m.b * b;
    Complex v = m.c * f + m.d * b;
    if (j >= 1) {
      const Complex i(0.0, 1.0);
      u *= std::exp(-i * r.q[j] * r.w[j]);
      v *= std::exp(i * r.q[j] * r.w[j]);
    }
    f = u;
    b = v;
    regions[j] = {r.q[j], r.x0[j], r.w[j], f, b};
  }

  // Normalize to exactly unit incidence.
  const Complex f0 = regions[0].forward;
  if (std::isfinite(f0.real()) && std::isfinite(f0.imag()) && std::abs(f0) > 0.0) {
    for (auto& rw : regions) {
      rw.forward /= f0;
      rw.backward /= f0;
    }
  }
  regions[0].forward = 1.0;
  sol.regions = std::move(regions);
  return sol;
}

namespace {

const RegionWave& region_at(const ScatteringSolution& s, double x) {
  for (std::size_t j = 1; j + 1 < s.regions.size(); ++j) {
    const auto& r = s.regions[j];
    if (x >= r.origin && x < r.origin + r.width) return r;
  }
  if (x < 0.0) return s.regions.front();
  return s.regions.back();
}

}  // namespace

Complex ScatteringSolution::psi(double x) const {
  const RegionWave& r = region_at(*this, x);
  const Complex i(0.0, 1.0);
  const double dx = x - r.origin;
  return r.forward * std::exp(i * r.wavenumber * dx) +
         r.backward * std::exp(-i * r.wavenumber * dx);
}

Complex ScatteringSolution::psi_derivative(double x) const {
  const RegionWave& r = region_at(*this, x);
  const Complex i(0.0, 1.0);
  const double dx = x - r.origin;
  return i * r.wavenumber *
         (r.forward * std::exp(i * r.wavenumber * dx) -
          r.backward * std::exp(-i * r.wavenumber * dx));
}

TwoBarrierAmplitudes two_barrier_amplitudes(const ScatteringSolution& s) {
  if (s.regions.size() != 5)
    fail(ErrorCode::invalid_argument,
         "two-barrier amplitude extraction needs a three-segment profile");
  const Complex i(0.0, 1.0);
  const double k = s.lead_k;
  const auto& lead = s.regions[0];
  const auto& bar1 = s.regions[1];
  const auto& gap = s.regions[2];
  const auto& bar2 = s.regions[3];
  const auto& out = s.regions[4];

  TwoBarrierAmplitudes a;
  a.refl1 = lead.backward;
  a.decay1 = bar1.forward;
  a.grow1 = bar1.backward;
  // Region III carries trans1 * [e^{ikx} + refl2 e^{-ikx}] in global-origin form.
  a.trans1 = gap.forward * std::exp(-i * k * gap.origin);
  a.refl2 = gap.backward * std::exp(i * k * gap.origin) / a.trans1;
  a.decay2 = bar2.forward / a.trans1;
  a.grow2 = bar2.backward / a.trans1;
  a.trans2 = out.forward * std::exp(-i * k * out.origin) / a.trans1;
  return a;
}

}  // namespace qtn
