#include "linalg.hpp"

#include <cmath>

#include "errors.hpp"

namespace qtn {

void solve_dense_complex(std::vector<std::complex<double>>& A,
                         std::vector<std::complex<double>>& b, int n) {
  using C = std::complex<double>;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(A[col * n + col]);
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(A[r * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) fail(ErrorCode::degenerate_energy, "singular linear system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(A[piv * n + j], A[col * n + j]);
      std::swap(b[piv], b[col]);
    }
    const C inv = 1.0 / A[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const C f = A[r * n + col] * inv;
      if (f == C(0.0)) continue;
      A[r * n + col] = 0.0;
      for (int j = col + 1; j < n; ++j) A[r * n + j] -= f * A[col * n + j];
      b[r] -= f * b[col];
    }
  }
  for (int row = n - 1; row >= 0; --row) {
    C s = b[row];
    for (int j = row + 1; j < n; ++j) s -= A[row * n + j] * b[j];
    b[row] = s / A[row * n + row];
  }
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0)
    fail(ErrorCode::invalid_argument, "bisection bracket has no sign change");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int max_iter) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int i = 0; i < max_iter && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi)); ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qtn
