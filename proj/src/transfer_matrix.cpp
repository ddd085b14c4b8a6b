#include "transfer_matrix.hpp"

#include <algorithm>
#include <cmath>

namespace qtn {

double TransferMatrix::log_abs_det() const {
  return 2.0 * log_scale + std::log(std::abs(det_scaled()));
}

void TransferMatrix::rescale() {
  double m = std::max(std::max(std::abs(a), std::abs(b)),
                      std::max(std::abs(c), std::abs(d)));
  if (m > 0.0 && (m > 1e8 || m < 1e-8)) {
    a /= m;
    b /= m;
    c /= m;
    d /= m;
    log_scale += std::log(m);
  }
}

TransferMatrix operator*(const TransferMatrix& x, const TransferMatrix& y) {
  TransferMatrix r;
  r.a = x.a * y.a + x.b * y.c;
  r.b = x.a * y.b + x.b * y.d;
  r.c = x.c * y.a + x.d * y.c;
  r.d = x.c * y.b + x.d * y.d;
  r.log_scale = x.log_scale + y.log_scale;
  r.rescale();
  return r;
}

TransferMatrix interface_matrix(Complex k_left, Complex k_right) {
  if (std::abs(k_left) == 0.0 || std::abs(k_right) == 0.0)
    fail(ErrorCode::degenerate_energy,
         "zero wavenumber at an interface (energy coincides with a segment height)");
  const Complex r = k_right / k_left;
  TransferMatrix m;
  m.a = 0.5 * (1.0 + r);
  m.b = 0.5 * (1.0 - r);
  m.c = 0.5 * (1.0 - r);
  m.d = 0.5 * (1.0 + r);
  return m;
}

TransferMatrix propagation_matrix(Complex wavenumber, double width) {
  if (width < 0.0) fail(ErrorCode::invalid_argument, "propagation width must be >= 0");
  const Complex i(0.0, 1.0);
  const Complex lam_f = -i * wavenumber * width;  // exponent on the forward entry
  const Complex lam_b = i * wavenumber * width;
  const double s = std::max(lam_f.real(), lam_b.real());
  TransferMatrix m;
  m.a = std::exp(lam_f - s);
  m.b = 0.0;
  m.c = 0.0;
  m.d = std::exp(lam_b - s);
  m.log_scale = s;
  return m;
}

}  // namespace qtn
