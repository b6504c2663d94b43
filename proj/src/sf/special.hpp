#pragma once

#include <complex>

// Gamma/Beta/Bessel helpers plus the incomplete-gamma weights used by the
// approximate functional equations. Real Gamma goes through std::lgamma;
// complex arguments use a Lanczos fit good to ~1e-13 on Re(z) > 0.

namespace rtf::sf {

using cplx = std::complex<double>;

double gamma_fn(double x);
double beta_fn(double a, double b);
double digamma(double x);

cplx lgamma_cplx(cplx z);

// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a).
// a is a positive integer here (a = k/2 for even weight k).
double gamma_q_upper(int a, double x);

// Bessel J_nu(x), x >= 0. Half-integer and integer orders are evaluated by
// stable downward recurrence; other orders fall back to the power series
// (small x) or the large-x Hankel expansion.
double bessel_j(double nu, double x);

} // namespace rtf::sf
