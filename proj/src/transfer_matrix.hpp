#pragma once

#include <complex>

#include "errors.hpp"

namespace qtn {

using Complex = std::complex<double>;

// 2x2 complex matrix with the overall magnitude split off into log_scale, so
// products across opaque segments (chi*w of a few hundred) neither overflow
// nor lose their phases: actual = exp(log_scale) * [[a, b], [c, d]].
struct TransferMatrix {
  Complex a{1.0, 0.0}, b{0.0, 0.0};
  Complex c{0.0, 0.0}, d{1.0, 0.0};
  double log_scale = 0.0;

  static TransferMatrix identity() { return {}; }

  Complex det_scaled() const { return a * d - b * c; }
  double log_abs_det() const;  // log |det(actual)|

  // Pull a large/small common magnitude out of the entries.
  void rescale();
};

TransferMatrix operator*(const TransferMatrix& x, const TransferMatrix& y);

// Continuity of psi and psi' at a potential step. Maps the (forward,
// backward) coefficients referenced to the interface on its right side to
// the pair on its left side. Evanescent sides use imaginary wavenumber
// i*chi. det = k_right / k_left.
TransferMatrix interface_matrix(Complex k_left, Complex k_right);

// Carries (forward, backward) coefficients from the right edge of a uniform
// segment back to its left-edge origin: diag(e^{-iqw}, e^{+iqw}). For an
// evanescent segment (q = i*chi) the grown e^{+chi w} factor lands in
// log_scale.
TransferMatrix propagation_matrix(Complex wavenumber, double width);

}  // namespace qtn
