#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qtn {

// Dense complex LU with partial pivoting; solves A x = b in place for the
// small fixed-size systems used here. A is row-major n*n, b has length n and
// receives x. Throws on a (numerically) singular matrix.
void solve_dense_complex(std::vector<std::complex<double>>& A,
                         std::vector<std::complex<double>>& b, int n);

// Bisection root of f on [lo, hi]; requires a sign change.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   int max_iter = 200);

// Golden-section maximum of f on [lo, hi]; returns the abscissa.
double golden_max(const std::function<double(double)>& f, double lo, double hi,
                  int max_iter = 200);

}  // namespace qtn
