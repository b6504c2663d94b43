#pragma once

#include "nf/zeta.hpp"

#include <string>
#include <utility>

namespace rtf::nf {

// Totally real field of degree <= 2 with class number one. Quadratic fields
// carry the integral basis {1, omega} with omega = sqrt(d) or (1+sqrt d)/2,
// so an algebraic integer is x + y*omega with x, y in Z.
struct Field {
  int degree = 1;
  long long disc = 1;
  double zeta_residue = 1.0;  // Res_{s=1} zeta_F(s)
  double zeta_constant = kEulerGamma;

  // quadratic-only data
  long long radicand = 0;  // squarefree d
  bool omega_halfint = false;
  long long unit_x = 1, unit_y = 0;  // fundamental unit (x + y*omega), N = +-1
  double sqrt_d = 0.0;

  bool is_rational() const { return degree == 1; }
  // trace and norm of omega: omega^2 = T*omega - Q
  long long omega_trace() const { return omega_halfint ? 1 : 0; }
  long long omega_norm() const { return omega_halfint ? (1 - radicand) / 4 : -radicand; }
  double omega_embedding(int v) const {
    const double s = (v == 0) ? sqrt_d : -sqrt_d;
    return omega_halfint ? 0.5 * (1.0 + s) : s;
  }
  int chi(long long n) const { return degree == 1 ? 1 : kronecker(disc, n); }
};

// Parse "Q" or "Q(sqrtD)". Throws std::invalid_argument for unsupported
// degrees, non-squarefree radicands, or class number != 1.
Field field_from_spec(const std::string& spec);

// zeta_F(s). Degree 2 goes through zeta(s) L(s, chi_D). s = 1 is a pole.
cplx dedekind_zeta(const Field& f, cplx s);

// Truncated Euler product over rational primes < prime_bound; Re(s) > 1 only.
cplx dedekind_zeta_euler(const Field& f, cplx s, long long prime_bound);

// Laurent data (R, c0) of zeta_F at s = 1.
std::pair<double, double> zeta_laurent(const Field& f);

// Local factor zeta_q(s) = (1 - Nq^{-s})^{-1}; Nq == 1 encodes q = O_F and
// returns 1 by convention.
cplx local_zeta(double Nq, cplx s);

} // namespace rtf::nf
