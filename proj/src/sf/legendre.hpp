#pragma once

namespace rtf::sf {

// Legendre polynomial P_n(x) on [-1,1] (defined for all real x).
double legendre_p(int n, double x);

// Legendre function of the second kind Q_n(x) for |x| > 1.
// Negative arguments use Q_n(-x) = (-1)^{n+1} Q_n(x).
double legendre_q(int n, double x);

// Q_n(x) by adaptive quadrature of the integral representation
//   Q_n(x) = 2^{-n-1} int_{-1}^{1} (1-t^2)^n / (x-t)^{n+1} dt,  x > 1.
// Exposed as the independent oracle for legendre_q.
double legendre_q_quadrature(int n, double x);

// Archimedean orbital weight for one embedding u and one even weight k >= 4:
//   |2u+1| >  1 :  2 Q_{k/2-1}(2u+1)
//   |2u+1| <= 1 : -[ P_{k/2-1}(2u+1) log|u/(u+1)|
//                    + 2 sum_{j=0}^{floor(k/4)} (k-4j+1)/((2j-1)(k/2-j)) P_{k/2-2j}(2u+1) ]
// u must avoid {0,-1}.
double curly_p(double u, int k);

// Relative residual of the identity
//   B(k/2,k/2) 2F1(k/2,k/2;k;1-z) = 2 (1-z)^{-k/2} Q_{k/2-1}((1+z)/(1-z)),
// 0 < z < 1. The left side is summed as a power series in (1-z).
double gauss_2f1_check(int k, double z);

} // namespace rtf::sf
