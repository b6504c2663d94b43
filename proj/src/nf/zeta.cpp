#include "nf/zeta.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace rtf::nf {

namespace {

// B_{2j}/(2j)! for the Euler-Maclaurin correction.
constexpr double kBern[16] = {
    1.0,
    8.3333333333333333333e-02, -1.3888888888888888889e-03, 3.3068783068783068783e-05,
    -8.2671957671957671958e-07, 2.0876756987868098979e-08, -5.2841901386874931848e-10,
    1.3382536530684678833e-11, -3.3896802963225828668e-13, 8.5860620562778445641e-15,
    -2.1748686985580618730e-16, 5.5090028283602295152e-18, -1.3954464685812523341e-19,
    3.5347070396294674717e-21, -8.9535174270375468504e-23, 2.2679524523376830603e-24};

cplx em_zeta_tail(cplx s, double M) {
  // M^{1-s}/(s-1) + M^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} M^{-s-2j+1}
  cplx tail = std::pow(M, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(M, -s);
  cplx poch = s;                        // (s)_{2j-1} at j = 1
  cplx mpow = std::pow(M, -s - 1.0);    // M^{-s-2j+1} at j = 1
  for (int j = 1; j <= 15; ++j) {
    tail += kBern[j] * poch * mpow;
    poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    mpow /= M * M;
  }
  return tail;
}

} // namespace

cplx riemann_zeta(cplx s) {
  if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("riemann_zeta: pole at s = 1");
  const int N = 40 + static_cast<int>(std::abs(s.imag()));
  cplx sum(0.0, 0.0);
  for (int n = 1; n < N; ++n) sum += std::pow(static_cast<double>(n), -s);
  return sum + em_zeta_tail(s, static_cast<double>(N));
}

cplx hurwitz_zeta(cplx s, double a) {
  if (a <= 0.0) throw std::domain_error("hurwitz_zeta: a must be positive");
  if (std::abs(s - 1.0) < 1e-14) throw std::domain_error("hurwitz_zeta: pole at s = 1");
  const int N = 40 + static_cast<int>(std::abs(s.imag()));
  cplx sum(0.0, 0.0);
  for (int n = 0; n < N; ++n) sum += std::pow(n + a, -s);
  return sum + em_zeta_tail(s, N + a);
}

int kronecker(long long D, long long n) {
  if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
  int sign = 1;
  long long a = D, b = n;
  if (b < 0) b = -b;
  // strip factors of 2 from b
  while (b % 2 == 0) {
    b /= 2;
    const long long amod8 = ((a % 8) + 8) % 8;
    if (amod8 == 3 || amod8 == 5) sign = -sign;
    if (amod8 % 2 == 0) return 0;
  }
  a = ((a % b) + b) % b;
  // Jacobi symbol (a|b), b odd positive
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const long long bmod8 = b % 8;
      if (bmod8 == 3 || bmod8 == 5) sign = -sign;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) sign = -sign;
    a %= b;
  }
  return b == 1 ? sign : 0;
}

cplx dirichlet_L(cplx s, long long D) {
  // L(s,chi) = D^{-s} sum_{a=1}^{D} chi(a) zeta_H(s, a/D); chi is primitive so
  // the zeta_H poles cancel and the formula continues L to s != 1 safely.
  cplx acc(0.0, 0.0);
  for (long long a = 1; a <= D; ++a) {
    const int c = kronecker(D, a);
    if (c == 0) continue;
    acc += static_cast<double>(c) * hurwitz_zeta(s, static_cast<double>(a) / D);
  }
  return std::pow(static_cast<double>(D), -s) * acc;
}

double dirichlet_L1_closed(long long D) {
  // Even primitive real character: L(1,chi) = -(1/sqrt D) sum chi(a) log sin(pi a/D).
  double acc = 0.0;
  for (long long a = 1; a < D; ++a) {
    const int c = kronecker(D, a);
    if (c == 0) continue;
    acc += static_cast<double>(c) * std::log(std::sin(M_PI * a / D));
  }
  return -acc / std::sqrt(static_cast<double>(D));
}

double dirichlet_L_prime_at_1(long long D) {
  auto L = [D](double s) { return dirichlet_L(cplx(s, 0.0), D).real(); };
  const double h = 1e-3;
  const double d1 = (L(1.0 + h) - L(1.0 - h)) / (2.0 * h);
  const double d2 = (L(1.0 + 0.5 * h) - L(1.0 - 0.5 * h)) / h;
  return (4.0 * d2 - d1) / 3.0;
}

const std::vector<long long>& primes_upto(long long n) {
  static std::vector<long long> cache;
  static long long limit = 0;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (n <= limit) return cache;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  cache.clear();
  for (long long p = 2; p <= n; ++p) {
    if (comp[static_cast<size_t>(p)]) continue;
    cache.push_back(p);
    for (long long q = p * p; q <= n; q += p) comp[static_cast<size_t>(q)] = true;
  }
  limit = n;
  return cache;
}

} // namespace rtf::nf
