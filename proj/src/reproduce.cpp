#include "reproduce.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "matching_direct.hpp"
#include "opaque.hpp"
#include "phase_time.hpp"
#include "resonance.hpp"
#include "wavepacket.hpp"

namespace qtn {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel_diff(Complex x, Complex y) {
  const double scale = std::max(std::abs(x), std::abs(y));
  return scale > 0.0 ? std::abs(x - y) / scale : 0.0;
}

std::string fmt(double v) { return format_double(v); }

using Clock = std::chrono::steady_clock;

struct CheckDef {
  int id;
  const char* name;
  void (*run)(CheckResult&, std::uint64_t seed);
};

// 1: the canonical opaque double barrier at E = V0/2 in natural units.
void check_canonical(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const PotentialProfile p = make_two_barrier(20.0, 3.0, 1.0);
  const double tau = phase_time(p, c, 0.5).tau;
  const double target = hartman_phase_time(1.0, 1.0, c);  // = 2
  r.measured = std::abs(tau - target) / target;
  r.limit = 1e-6;
  r.passed = r.measured <= r.limit;
  r.detail = "tau=" + fmt(tau) + " target=" + fmt(target);
}

// 2: delay plateau across barrier widths chi*a in {10,...,30}.
void check_width_independence(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  double lo = 0.0, hi = 0.0;
  std::ostringstream detail;
  bool first = true;
  for (const double a : {10.0, 15.0, 20.0, 25.0, 30.0}) {
    const double tau = phase_time(make_two_barrier(a, 3.0, 1.0), c, 0.5).tau;
    if (first) {
      lo = hi = tau;
      first = false;
    } else {
      lo = std::min(lo, tau);
      hi = std::max(hi, tau);
    }
    detail << "tau(a=" << a << ")=" << fmt(tau) << " ";
  }
  r.measured = (hi - lo) / (0.5 * (hi + lo));
  r.limit = 1e-6;
  r.passed = r.measured <= r.limit;
  r.detail = detail.str();
}

// 3: delay independent of the inter-barrier distance, off resonance.
void check_gap_independence(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double k = 1.0, chi = 1.0, a = 20.0;
  // 50 gaps spanning [0.5, 10]; values inside a guard window slide off it
  std::vector<double> gaps;
  for (int i = 0; i < 50; ++i) {
    double g = 0.5 + (10.0 - 0.5) * i / 49.0;
    while (std::abs(resonance_condition(k, chi, g)) <= 0.1 * (2.0 * chi * k))
      g += (g < 9.8 ? 0.02 : -0.02);
    gaps.push_back(g);
  }
  double lo = 1e300, hi = -1e300;
  for (const double g : gaps) {
    const double tau = phase_time(make_two_barrier(a, g, 1.0), c, 0.5).tau;
    lo = std::min(lo, tau);
    hi = std::max(hi, tau);
  }
  r.measured = (hi - lo) / (0.5 * (hi + lo));
  r.limit = 1e-4;
  r.passed = r.measured <= r.limit;
  r.detail = "gaps=" + std::to_string(gaps.size()) + " tau_min=" + fmt(lo) +
             " tau_max=" + fmt(hi);
}

// 4: same delay for 3 and 4 opaque barriers with unequal widths and gaps.
void check_multi_barrier(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double tau2 = phase_time(make_two_barrier(20.0, 3.0, 1.0), c, 0.5).tau;
  const double tau3 =
      phase_time(make_barriers({8.0, 10.0, 9.0}, {2.2, 2.8}, 1.0), c, 0.5).tau;
  const double tau4 =
      phase_time(make_barriers({8.0, 9.0, 10.0, 11.0}, {2.2, 2.9, 3.6}, 1.0), c, 0.5)
          .tau;
  r.measured = std::max(std::abs(tau3 - tau2), std::abs(tau4 - tau2)) / tau2;
  r.limit = 1e-4;
  r.passed = r.measured <= r.limit;
  r.detail = "tau2=" + fmt(tau2) + " tau3=" + fmt(tau3) + " tau4=" + fmt(tau4);
}

// 5: |R|^2 + |T|^2 = 1 over randomized profiles.
void check_unitarity(CheckResult& r, std::uint64_t seed) {
  const PhysicalConstants c;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> nseg(1, 6);
  std::uniform_real_distribution<double> width(0.1, 4.0);
  std::uniform_real_distribution<double> height(0.05, 3.0);
  std::uniform_real_distribution<double> zero_frac(0.0, 1.0);
  std::uniform_real_distribution<double> energy(0.05, 4.0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Segment> segs;
    const int n = nseg(rng);
    for (int i = 0; i < n; ++i) {
      const double h = zero_frac(rng) < 0.3 ? 0.0 : height(rng);
      segs.push_back({width(rng), h});
    }
    const PotentialProfile p(std::move(segs));
    double E = energy(rng);
    while (p.is_degenerate_energy(E, 1e-6)) E = energy(rng);
    const ScatteringSolution s = solve_scattering(p, c, E);
    worst = std::max(worst,
                     std::abs(s.reflection_prob() + s.transmission_prob() - 1.0));
  }
  r.measured = worst;
  r.limit = 1e-12;
  r.passed = r.measured <= r.limit;
  r.detail = "1000 profiles, 1-6 segments";
}

// 6: transfer-matrix route against the dense matching-condition solve,
// all eight double-barrier amplitudes.
void check_cross_validation(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  double worst = 0.0;
  int points = 0;
  for (const double E : {0.15, 0.3, 0.5, 0.7, 0.85})
    for (const double a : {0.8, 1.5, 2.2, 3.0})
      for (const double g : {0.7, 1.6, 2.5, 3.4, 4.3}) {
        ++points;
        const TwoBarrierAmplitudes tm =
            two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, 1.0), c, E));
        const TwoBarrierAmplitudes dd =
            solve_matching_direct({a, g, 1.0}, c, E);
        const double errs[8] = {
            rel_diff(tm.refl1, dd.refl1),   rel_diff(tm.trans1, dd.trans1),
            rel_diff(tm.decay1, dd.decay1), rel_diff(tm.grow1, dd.grow1),
            rel_diff(tm.refl2, dd.refl2),   rel_diff(tm.trans2, dd.trans2),
            rel_diff(tm.decay2, dd.decay2), rel_diff(tm.grow2, dd.grow2)};
        for (const double e : errs) worst = std::max(worst, e);
      }
  r.measured = worst;
  r.limit = 1e-10;
  r.passed = r.measured <= r.limit;
  r.detail = std::to_string(points) + " grid points, 8 amplitudes each";
}

// 7: exact amplitudes approach the closed opaque-limit forms at rate
// e^{-2 chi a}; the gap-factor analogue becomes purely real.
void check_opaque_convergence(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double E = 0.5, V0 = 1.0, g = 3.0, k = 1.0, chi = 1.0;
  auto errors = [&](double a) {
    const TwoBarrierAmplitudes ex =
        two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, V0), c, E));
    const OpaqueLimitAmplitudes op = opaque_amplitudes(k, chi, a, a + g);
    return std::array<double, 8>{
        rel_diff(ex.refl1, op.refl1),   rel_diff(ex.trans1, op.trans1),
        rel_diff(ex.decay1, op.decay1), rel_diff(ex.grow1, op.grow1),
        rel_diff(ex.refl2, op.refl2),   rel_diff(ex.trans2, op.trans2),
        rel_diff(ex.decay2, op.decay2), rel_diff(ex.grow2, op.grow2)};
  };
  const auto e8 = errors(8.0);
  const auto e10 = errors(10.0);
  const double expected = std::exp(-4.0);
  double worst_log2 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double ratio = e10[i] / e8[i];
    worst_log2 = std::max(worst_log2, std::abs(std::log2(ratio / expected)));
  }
  // Imaginary part of the measured gap factor dies away with opacity.
  double prev = 1e300;
  bool imfalls = true;
  std::ostringstream detail;
  for (const double a : {6.0, 9.0, 12.0}) {
    const TwoBarrierAmplitudes ex =
        two_barrier_amplitudes(solve_scattering(make_two_barrier(a, g, V0), c, E));
    const Complex i(0.0, 1.0);
    const Complex analog = ex.trans1 * std::exp(chi * a) * std::exp(i * k * (a + g));
    const double ratio = std::abs(analog.imag() / analog.real());
    imfalls = imfalls && ratio < prev;
    prev = ratio;
    detail << "im/re(a=" << a << ")=" << fmt(ratio) << " ";
  }
  r.measured = worst_log2;
  r.limit = 1.0;  // every error ratio within [0.5, 2] of e^{-4}
  r.passed = r.measured <= r.limit && imfalls;
  r.detail = detail.str() + (imfalls ? "" : " IM-PART-NOT-DECREASING");
}

// 8: Lorentzian delay at a moderately opaque resonance.
void check_resonance_fit(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double V0 = 1.0, gap = 4.0, a = 4.61;  // chi*a ~ 4 at the resonance
  const PotentialProfile p = make_two_barrier(a, gap, V0);
  const auto fits = resonance_scan(p, c, 0.55, 0.70);
  const double e_pred = resonance_zero_in_energy(c, V0, gap, 0.55, 0.70);
  if (fits.empty()) {
    r.measured = 1e300;
    r.limit = 1.0;
    r.passed = false;
    r.detail = "no resonance found in the scan window";
    return;
  }
  const ResonanceFit* best = &fits[0];
  for (const auto& f : fits)
    if (std::abs(f.e_r - e_pred) < std::abs(best->e_r - e_pred)) best = &f;
  r.measured = std::abs(best->e_r - e_pred) / best->gamma;
  r.limit = 1.0;  // fitted center within Gamma of the predicted zero
  r.passed = r.measured <= r.limit && best->fit_quality > 0.99;
  r.detail = "E_r=" + fmt(best->e_r) + " predicted=" + fmt(e_pred) +
             " Gamma=" + fmt(best->gamma) + " R2=" + fmt(best->fit_quality) +
             " tau_nr=" + fmt(best->tau_nr);
}

// 9: transmitted-peak arrival time flat against the gap width.
void check_wavepacket_gap_independence(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double k0 = 0.5 * kPi;
  const double V0 = k0 * k0;  // carrier at E = V0/2, so k = chi
  const double a = 5.0 / k0;  // chi*a = 5
  const double sigma = 50.0 / k0;
  // 7 sigma of start distance keeps the packet's forward tail off the barrier
  // at t = 0; at the minimal 5 sigma the tail beats against the transmitted
  // pulse and the flat-topped |psi|^2 maximum hops by ~0.05 time units.
  const double x0 = -(7.0 * sigma + 10.0);
  const double v0 = k0;
  std::ostringstream detail;
  std::vector<double> peaks;
  // One exact dx and one common x_min for all three runs; the gaps are exact
  // multiples of dx, so every barrier edge samples identically on each grid
  // and the discretization error cancels out of the slope.
  const double dx = 0.0125;
  const double x_min = x0 - 6.0 * sigma;
  for (const double gap : {2.0, 4.0, 6.0}) {
    const PotentialProfile p = make_two_barrier(a, gap, V0);
    const double d_end = p.extent();
    const double detector = d_end + 10.0;
    GridSpec g;
    g.x_min = x_min;
    g.n_points =
        static_cast<int>(std::ceil((d_end + 10.0 * sigma + 20.0 - x_min) / dx)) + 1;
    g.x_max = x_min + (g.n_points - 1) * dx;
    g.dt = 0.0125;
    ArrivalOptions opt;
    opt.t_max = (detector - x0 + 5.0 * sigma) / v0;
    const ArrivalMeasurement m =
        simulate_arrival(p, c, g, x0, k0, sigma, detector, opt);
    peaks.push_back(m.record.t_peak);
    detail << "t_peak(gap=" << gap << ")=" << fmt(m.record.t_peak) << " ";
  }
  const double slope = (peaks[2] - peaks[0]) / 4.0;
  r.measured = std::abs(slope) * v0;  // in units of the free-flight slope 1/v
  r.limit = 0.05;
  r.passed = r.measured <= r.limit;
  r.detail = detail.str() + "slope*v=" + fmt(slope * v0);
}

// 10: free propagation against the analytic packet and the D/v delay.
void check_free_space(CheckResult& r, std::uint64_t) {
  const PhysicalConstants c;
  const double k0 = 1.0, sigma = 10.0;
  GridSpec g;
  g.x_min = -80.0;
  g.x_max = 180.0;
  g.n_points = 65536;
  g.dt = 0.02;
  const PotentialProfile free_space;
  WavepacketState st = init_gaussian(g, 0.0, k0, sigma);
  const double x_start = st.centroid();
  const double w_start = st.width();
  const double t_final = 100.0;
  const int n_steps = static_cast<int>(std::round(t_final / g.dt));
  evolve(st, free_space, c, n_steps);
  const double v_meas = (st.centroid() - x_start) / st.t;
  const double v_err = std::abs(v_meas - k0) / k0;
  const double w_expect =
      w_start * std::sqrt(1.0 + std::pow(st.t / (w_start * w_start), 2.0));
  const double w_err = std::abs(st.width() - w_expect) / w_expect;

  const PotentialProfile flat(std::vector<Segment>{{5.0, 0.0}});
  const double tau = phase_time(flat, c, 0.5).tau;
  const double tau_err = std::abs(tau - 5.0) / 5.0;  // D/v at k = v = 1

  r.measured = std::max({v_err / 1e-4, w_err / 1e-4, tau_err / 1e-10});
  r.limit = 1.0;
  r.passed = r.measured <= r.limit;
  r.detail = "centroid_err=" + fmt(v_err) + " width_err=" + fmt(w_err) +
             " free_tau_err=" + fmt(tau_err);
}

const CheckDef kChecks[] = {
    {1, "canonical_two_barrier_delay", check_canonical},
    {2, "width_independence_plateau", check_width_independence},
    {3, "gap_independence", check_gap_independence},
    {4, "multi_barrier_independence", check_multi_barrier},
    {5, "unitarity_random_profiles", check_unitarity},
    {6, "solver_cross_validation", check_cross_validation},
    {7, "opaque_limit_convergence", check_opaque_convergence},
    {8, "resonance_delay_fit", check_resonance_fit},
    {9, "wavepacket_gap_independence", check_wavepacket_gap_independence},
    {10, "free_space_oracles", check_free_space},
};

}  // namespace

std::vector<CheckResult> run_acceptance_checks(const std::vector<int>& which,
                                               std::uint64_t seed, int /*jobs*/) {
  std::vector<CheckResult> out;
  for (const CheckDef& def : kChecks) {
    if (!which.empty() &&
        std::find(which.begin(), which.end(), def.id) == which.end())
      continue;
    CheckResult res;
    res.id = def.id;
    res.name = def.name;
    const auto start = Clock::now();
    try {
      def.run(res, seed);
    } catch (const std::exception& e) {
      res.passed = false;
      res.measured = 1e300;
      res.limit = res.limit > 0.0 ? res.limit : 1.0;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.push_back(std::move(res));
  }
  return out;
}

Table acceptance_table(const std::vector<CheckResult>& results) {
  Table t;
  for (const auto& r : results) {
    Record rec;
    rec.set("check", static_cast<std::int64_t>(r.id));
    rec.set("name", r.name);
    rec.set("passed", r.passed);
    rec.set("measured", r.measured);
    rec.set("limit", r.limit);
    rec.set("seconds", r.seconds);
    rec.set("detail", r.detail);
    t.append(rec);
  }
  return t;
}

}  // namespace qtn
