#include "nf/field.hpp"

#include <cmath>
#include <stdexcept>

namespace rtf::nf {

namespace {

bool squarefree(long long d) {
  for (long long q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0) return false;
  return true;
}

// Does x + y*omega of absolute norm p exist? Brute scan; enough for the
// Minkowski-bound class number check on small discriminants.
bool has_element_of_norm(const Field& f, long long p) {
  const long long T = f.omega_trace(), Q = f.omega_norm();
  const long long bound = 4 * static_cast<long long>(std::sqrt(static_cast<double>(p))) + 8;
  for (long long y = -bound; y <= bound; ++y)
    for (long long x = -bound; x <= bound; ++x) {
      const long long n = x * x + T * x * y + Q * y * y;
      if (n == p || n == -p) return true;
    }
  return false;
}

void find_fundamental_unit(Field& f) {
  const long long T = f.omega_trace(), Q = f.omega_norm();
  for (long long y = 1; y < 200000; ++y) {
    // x near the real solution of x^2 + Txy + Qy^2 = +-1 with embedding > 1
    const double x0 = y * (-0.5 * T + 0.5 * f.sqrt_d * (f.omega_halfint ? 1.0 : 1.0));
    (void)x0;
    const double target = -0.5 * T * y;
    const double spread = 0.5 * std::sqrt(static_cast<double>(T * T * y * y - 4 * Q * y * y + 4));
    for (long long x = static_cast<long long>(std::floor(target - spread)) - 2;
         x <= static_cast<long long>(std::ceil(target + spread)) + 2; ++x) {
      const long long n = x * x + T * x * y + Q * y * y;
      if (n == 1 || n == -1) {
        const double emb = x + y * f.omega_embedding(0);
        if (emb > 1.0 + 1e-12) {
          f.unit_x = x;
          f.unit_y = y;
          return;
        }
      }
    }
  }
  throw std::runtime_error("fundamental unit search exhausted");
}

} // namespace

Field field_from_spec(const std::string& spec) {
  Field f;
  if (spec == "Q") return f;
  if (spec.rfind("Q(sqrt", 0) == 0 && spec.back() == ')') {
    const long long d = std::stoll(spec.substr(6, spec.size() - 7));
    if (d <= 1) throw std::invalid_argument("field_from_spec: radicand must be > 1");
    if (!squarefree(d)) throw std::invalid_argument("field_from_spec: radicand not squarefree");
    f.degree = 2;
    f.radicand = d;
    f.omega_halfint = (d % 4 == 1);
    f.disc = f.omega_halfint ? d : 4 * d;
    f.sqrt_d = std::sqrt(static_cast<double>(d));
    find_fundamental_unit(f);

    // Class number one check via the Minkowski bound sqrt(D)/2: every prime
    // ideal of norm below the bound must be principal.
    const double mink = 0.5 * std::sqrt(static_cast<double>(f.disc));
    for (long long p : primes_upto(static_cast<long long>(mink) + 1)) {
      if (static_cast<double>(p) > mink) break;
      if (f.chi(p) == -1) continue; // inert, norm p^2 > bound
      if (!has_element_of_norm(f, p))
        throw std::invalid_argument("field_from_spec: class number exceeds one");
    }

    const double reg = std::log(f.unit_x + f.unit_y * f.omega_embedding(0));
    f.zeta_residue = 2.0 * reg / std::sqrt(static_cast<double>(f.disc));
    const double l1 = dirichlet_L1_closed(f.disc);
    f.zeta_constant = kEulerGamma * l1 + dirichlet_L_prime_at_1(f.disc);
    return f;
  }
  throw std::invalid_argument("field_from_spec: unsupported descriptor " + spec);
}

cplx dedekind_zeta(const Field& f, cplx s) {
  if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("dedekind_zeta: pole at s = 1");
  if (f.is_rational()) return riemann_zeta(s);
  return riemann_zeta(s) * dirichlet_L(s, f.disc);
}

cplx dedekind_zeta_euler(const Field& f, cplx s, long long prime_bound) {
  if (s.real() <= 1.0) throw std::domain_error("dedekind_zeta_euler: requires Re(s) > 1");
  cplx prod(1.0, 0.0);
  for (long long p : primes_upto(prime_bound)) {
    if (p >= prime_bound) break;
    const cplx ps = std::pow(static_cast<double>(p), -s);
    if (f.is_rational()) {
      prod /= (1.0 - ps);
      continue;
    }
    const int c = f.chi(p);
    if (c == 1) prod /= (1.0 - ps) * (1.0 - ps);
    else if (c == -1) prod /= (1.0 - ps * ps);
    else prod /= (1.0 - ps);
  }
  return prod;
}

std::pair<double, double> zeta_laurent(const Field& f) {
  return {f.zeta_residue, f.zeta_constant};
}

cplx local_zeta(double Nq, cplx s) {
  if (Nq == 1.0) return {1.0, 0.0};
  if (Nq < 2.0) throw std::domain_error("local_zeta: Nq must be >= 2 or the unit ideal");
  const cplx denom = 1.0 - std::pow(Nq, -s);
  if (std::abs(denom) < 1e-14) throw std::domain_error("local_zeta: pole");
  return 1.0 / denom;
}

} // namespace rtf::nf
