#include "resonance.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"

namespace qtn {

namespace {

// Solves the damped 3x3 normal equations of one Levenberg-Marquardt step.
bool solve3(double m[3][3], double rhs[3], double out[3]) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (m[piv][c] == 0.0) return false;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int j = c; j < 3; ++j) m[r][j] -= f * m[c][j];
      rhs[r] -= f * rhs[c];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double s = rhs[r];
    for (int j = r + 1; j < 3; ++j) s -= m[r][j] * out[j];
    out[r] = s / m[r][r];
  }
  return true;
}

double sum_sq_residual(const std::vector<double>& E, const std::vector<double>& tau,
                       double hbar, double er, double g, double c) {
  double ss = 0.0;
  for (std::size_t i = 0; i < E.size(); ++i) {
    const double d = E[i] - er;
    const double r = hbar * g / (d * d + g * g) + c - tau[i];
    ss += r * r;
  }
  return ss;
}

}  // namespace

ResonanceFit fit_lorentzian_delay(const std::vector<double>& energy,
                                  const std::vector<double>& tau,
                                  const PhysicalConstants& cst, double er0,
                                  double gamma0, double tau_nr0,
                                  double quality_threshold) {
  if (energy.size() != tau.size() || energy.size() < 5)
    fail(ErrorCode::invalid_argument, "delay fit needs at least 5 samples");
  const double hbar = cst.hbar;
  double er = er0, g = std::abs(gamma0), c = tau_nr0;
  double ss = sum_sq_residual(energy, tau, hbar, er, g, c);
  double lambda = 1e-3;

  for (int iter = 0; iter < 200; ++iter) {
    double jtj[3][3] = {{0}};
    double jtr[3] = {0, 0, 0};
    for (std::size_t i = 0; i < energy.size(); ++i) {
      const double d = energy[i] - er;
      const double den = d * d + g * g;
      const double model = hbar * g / den + c;
      const double r = model - tau[i];
      const double j0 = hbar * g * 2.0 * d / (den * den);        // d/dE_r
      const double j1 = hbar * (d * d - g * g) / (den * den);    // d/dGamma
      const double j2 = 1.0;                                     // d/dtau_nr
      const double J[3] = {j0, j1, j2};
      for (int aa = 0; aa < 3; ++aa) {
        jtr[aa] += J[aa] * r;
        for (int bb = 0; bb < 3; ++bb) jtj[aa][bb] += J[aa] * J[bb];
      }
    }
    double m[3][3];
    for (int aa = 0; aa < 3; ++aa)
      for (int bb = 0; bb < 3; ++bb)
        m[aa][bb] = jtj[aa][bb] + (aa == bb ? lambda * jtj[aa][aa] : 0.0);
    double rhs[3] = {-jtr[0], -jtr[1], -jtr[2]};
    double step[3];
    if (!solve3(m, rhs, step)) break;
    const double er_n = er + step[0];
    const double g_n = std::abs(g + step[1]);
    const double c_n = c + step[2];
    const double ss_n = (g_n > 0.0)
                            ? sum_sq_residual(energy, tau, hbar, er_n, g_n, c_n)
                            : ss + 1.0;
    if (ss_n < ss) {
      const double rel = (ss - ss_n) / std::max(ss, 1e-300);
      er = er_n;
      g = g_n;
      c = c_n;
      ss = ss_n;
      lambda = std::max(lambda * 0.3, 1e-12);
      if (rel < 1e-14) break;
    } else {
      lambda *= 10.0;
      if (lambda > 1e12) break;
    }
  }

  double mean = 0.0;
  for (const double t : tau) mean += t;
  mean /= static_cast<double>(tau.size());
  double ss_tot = 0.0;
  for (const double t : tau) ss_tot += (t - mean) * (t - mean);
  const double r2 = ss_tot > 0.0 ? 1.0 - ss / ss_tot : 0.0;

  ResonanceFit fit;
  fit.e_r = er;
  fit.gamma = g;
  fit.tau_nr = c;
  fit.fit_quality = std::clamp(r2, 0.0, 1.0);
  fit.flagged = fit.fit_quality < quality_threshold;
  return fit;
}

std::vector<ResonanceFit> resonance_scan(const PotentialProfile& p,
                                         const PhysicalConstants& c, double e_min,
                                         double e_max,
                                         const ResonanceScanOptions& opt) {
  c.validate();
  const double vmin = p.min_barrier_height();
  if (!(vmin > 0.0))
    fail(ErrorCode::invalid_argument, "resonance scan needs at least one barrier");
  if (!(e_min > 0.0) || !(e_max > e_min) || !(e_max < vmin))
    fail(ErrorCode::invalid_argument, "scan range must lie inside (0, min barrier height)");
  if (opt.n_points < 100)
    fail(ErrorCode::invalid_argument, "resonance scan needs at least 100 points");

  auto trans_prob = [&](double E) { return solve_scattering(p, c, E).transmission_prob(); };
  auto delay = [&](double E) { return phase_time(p, c, E).tau; };

  const int n = opt.n_points;
  std::vector<double> Es(n), Ts(n);
  for (int i = 0; i < n; ++i) {
    Es[i] = e_min + (e_max - e_min) * i / (n - 1);
    Ts[i] = trans_prob(Es[i]);
  }

  std::vector<ResonanceFit> fits;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(Ts[i] > Ts[i - 1] && Ts[i] >= Ts[i + 1])) continue;
    const double e_peak = golden_max(trans_prob, Es[i - 1], Es[i + 1]);
    const double t_peak = trans_prob(e_peak);

    // Half-width of the transmission peak estimates Gamma.
    auto half_cross = [&](double lo, double hi) {
      return bisect_root([&](double E) { return trans_prob(E) - 0.5 * t_peak; }, lo, hi);
    };
    double gamma0 = 0.0;
    {
      double left = e_peak, right = e_peak;
      double step = (e_max - e_min) / n;
      while (left - step > e_min && trans_prob(left - step) > 0.5 * t_peak) left -= step;
      while (right + step < e_max && trans_prob(right + step) > 0.5 * t_peak) right += step;
      double hw_l = 0.0, hw_r = 0.0;
      if (left - step > e_min) hw_l = e_peak - half_cross(left - step, left);
      if (right + step < e_max) hw_r = half_cross(right, right + step) - e_peak;
      if (hw_l > 0.0 && hw_r > 0.0) gamma0 = 0.5 * (hw_l + hw_r);
      else gamma0 = std::max(hw_l, hw_r);
      if (!(gamma0 > 0.0)) gamma0 = step;
    }

    // Sample the delay curve across +-3*Gamma and fit.
    const int m = std::max(opt.fit_window_points, 11);
    const double lo = std::max(e_min, e_peak - 3.0 * gamma0);
    const double hi = std::min(e_max, e_peak + 3.0 * gamma0);
    std::vector<double> Ef, tf;
    Ef.reserve(m);
    tf.reserve(m);
    for (int j = 0; j < m; ++j) {
      const double E = lo + (hi - lo) * j / (m - 1);
      try {
        tf.push_back(delay(E));
        Ef.push_back(E);
      } catch (const Error&) {
        // skip stencil failures at the window edge
      }
    }
    if (Ef.size() < 5) continue;
    const double tau_bg = std::min(tf.front(), tf.back());
    ResonanceFit fit = fit_lorentzian_delay(Ef, tf, c, e_peak, gamma0, tau_bg,
                                            opt.fit_quality_threshold);
    fits.push_back(fit);
  }
  std::sort(fits.begin(), fits.end(),
            [](const ResonanceFit& a, const ResonanceFit& b) { return a.e_r < b.e_r; });
  return fits;
}

}  // namespace qtn
