#pragma once

#include <complex>
#include <vector>

namespace rtf::nf {

using cplx = std::complex<double>;

inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

// Riemann zeta by Euler-Maclaurin; valid for s != 1 with Re(s) > -6.
cplx riemann_zeta(cplx s);

// Hurwitz zeta(s, a), a > 0, same validity range.
cplx hurwitz_zeta(cplx s, double a);

// Kronecker symbol (D|n) for a fundamental discriminant D > 0.
int kronecker(long long D, long long n);

// L(s, chi_D) for the real primitive character of fundamental discriminant D.
cplx dirichlet_L(cplx s, long long D);

// L(1, chi_D) by the closed Gauss-sum formula (even primitive real character).
double dirichlet_L1_closed(long long D);

// d/ds L(s, chi_D) at s = 1 (central differences with Richardson step halving).
double dirichlet_L_prime_at_1(long long D);

// Primes up to n (inclusive), simple sieve.
const std::vector<long long>& primes_upto(long long n);

} // namespace rtf::nf
