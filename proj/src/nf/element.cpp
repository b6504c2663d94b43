#include "nf/element.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rtf::nf {

namespace {

long long gcd3(long long a, long long b, long long c) {
  return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::llabs(c));
}

int valuation_ll(long long n, long long p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

using i128 = __int128;

long long mod_pow(long long base, long long exp, long long mod) {
  i128 acc = 1, b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1) acc = acc * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<long long>(acc);
}

// Root of x^2 - T x + Q mod the largest power p^m <= 1e18, for the which-th
// of the two mod-p roots (sorted). Linear Hensel lifting; the derivative
// 2r - T is a unit at a split prime.
std::pair<long long, long long> split_root(const Field& f, long long p, int which) {
  const long long T = f.omega_trace(), Q = f.omega_norm();
  std::vector<long long> base;
  for (long long r0 = 0; r0 < p; ++r0) {
    const i128 v = ((i128)r0 * r0 - (i128)T * r0 + Q) % p;
    if ((v % p + p) % p == 0) base.push_back(r0);
  }
  if (base.size() != 2) throw std::runtime_error("split_root: prime is not split");
  std::sort(base.begin(), base.end());
  long long r = base[static_cast<size_t>(which)];
  long long pk = p;
  while (pk <= 1000000000000000000LL / p) {
    const i128 mod = (i128)pk * p;
    i128 fr = ((i128)r * r - (i128)T * r + Q) % mod;
    fr = (fr + mod) % mod;
    const long long t = static_cast<long long>((fr / pk) % p);
    const long long d = (((2 * (r % p) - T) % p) + p) % p;
    const long long dinv = (p == 2) ? 1 : mod_pow(d, p - 2, p);
    const long long c = (p - (t * dinv) % p) % p;
    r += c * pk;
    pk *= p;
  }
  return {r, pk};
}

} // namespace

FieldElement FieldElement::from_rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("FieldElement: zero denominator");
  FieldElement e{num, 0, den};
  e.reduce();
  return e;
}

void FieldElement::reduce() {
  if (den < 0) { x = -x; y = -y; den = -den; }
  const long long g = gcd3(x, y, den);
  if (g > 1) { x /= g; y /= g; den /= g; }
  if (x == 0 && y == 0) den = 1;
}

FieldElement FieldElement::plus_one(const Field&) const {
  FieldElement e{x + den, y, den};
  e.reduce();
  return e;
}

FieldElement FieldElement::times(const Field& f, const FieldElement& o) const {
  const long long T = f.omega_trace(), Q = f.omega_norm();
  // (x1 + y1 w)(x2 + y2 w), w^2 = T w - Q
  FieldElement e;
  e.x = x * o.x - Q * (y * o.y);
  e.y = x * o.y + y * o.x + T * (y * o.y);
  e.den = den * o.den;
  e.reduce();
  return e;
}

FieldElement FieldElement::inverse(const Field& f) const {
  if (is_zero()) throw std::domain_error("FieldElement::inverse of zero");
  const long long T = f.omega_trace(), Q = f.omega_norm();
  // 1/u = conj(u)/N(u); conj(x + y w) = (x + T y) - y w
  const long long nx = x + T * y, ny = -y;
  const long long nnum = x * x + T * x * y + Q * y * y; // N * den^2 / den^2 -> exact numerator
  FieldElement e{nx * den, ny * den, nnum};
  e.reduce();
  return e;
}

double FieldElement::embedding(const Field& f, int v) const {
  if (f.is_rational()) return static_cast<double>(x) / den;
  return (x + y * f.omega_embedding(v)) / den;
}

std::pair<long long, long long> FieldElement::norm_rational(const Field& f) const {
  if (f.is_rational()) {
    long long n = x, d = den;
    const long long g = std::gcd(std::llabs(n), d);
    return {n / g, d / g};
  }
  const long long T = f.omega_trace(), Q = f.omega_norm();
  long long n = x * x + T * x * y + Q * y * y;
  long long d = den * den;
  const long long g = std::gcd(std::llabs(n), d);
  return {n / g, d / g};
}

int FieldElement::valuation(const Field& f, const PrimeIdeal& p) const {
  if (is_zero()) throw std::domain_error("valuation of zero element");
  const int vden = (den % p.p == 0) ? valuation_ll(den, p.p) : 0;
  if (f.is_rational()) {
    return valuation_ll(x, p.p) - vden;
  }
  const long long T = f.omega_trace(), Q = f.omega_norm();
  if (p.f == 2) {
    // inert: v(x + y w) = min(v_p(x), v_p(y))
    const int vx = x == 0 ? 1 << 20 : valuation_ll(x, p.p);
    const int vy = y == 0 ? 1 << 20 : valuation_ll(y, p.p);
    return std::min(vx, vy) - vden;
  }
  if (p.e == 2) {
    // ramified: f = 1, e = 2 gives v = v_p(N(x + y w)) - 2 v_p(den)
    const long long n = x * x + T * x * y + Q * y * y;
    return valuation_ll(n, p.p) - 2 * vden;
  }
  // split: evaluate x + y * r in Z_p with r the Hensel root for this tag
  if (y == 0) return valuation_ll(x, p.p) - vden;
  const auto [r, pk] = split_root(f, p.p, p.which);
  i128 z = ((i128)x + (i128)y % pk * r) % pk;
  z = (z + pk) % pk;
  if (z == 0) throw std::runtime_error("valuation: p-adic precision exhausted");
  int v = 0;
  while (z % p.p == 0) { z /= p.p; ++v; }
  return v - vden;
}

FieldElement ideal_generator(const Field& f, const IdealData& a) {
  FieldElement gen{1, 0, 1};
  if (f.is_rational()) {
    for (const auto& [p, e] : a.factors()) {
      FieldElement pe = FieldElement::from_rational(p.p, 1);
      if (e < 0) pe = pe.inverse(f);
      for (int i = 0; i < std::abs(e); ++i) gen = gen.times(f, pe);
    }
    return gen;
  }
  for (const auto& [p, e] : a.factors()) {
    // find a generator of the prime ideal: |N| = p^f and correct valuation
    FieldElement g;
    bool found = false;
    const long long target = static_cast<long long>(p.norm());
    for (long long bound = 4; bound <= 4096 && !found; bound *= 2) {
      for (long long yy = -bound; yy <= bound && !found; ++yy)
        for (long long xx = -bound; xx <= bound && !found; ++xx) {
          if (xx == 0 && yy == 0) continue;
          FieldElement cand{xx, yy, 1};
          const auto [nn, nd] = cand.norm_rational(f);
          if (std::llabs(nn) != target || nd != 1) continue;
          if (cand.valuation(f, p) != 1) continue;
          g = cand;
          found = true;
        }
    }
    if (!found) throw std::runtime_error("ideal_generator: no generator found (class number?)");
    FieldElement ge = g;
    if (e < 0) ge = ge.inverse(f);
    for (int i = 0; i < std::abs(e); ++i) gen = gen.times(f, ge);
  }
  return gen;
}

std::vector<FieldElement> enumerate_elements(const Field& f, const IdealData& a,
                                             const std::vector<double>& box, long long cap) {
  if (static_cast<int>(box.size()) != f.degree)
    throw std::invalid_argument("enumerate_elements: box size mismatch");
  for (double b : box)
    if (!(b > 0.0)) throw std::invalid_argument("enumerate_elements: box bounds must be positive");
  std::vector<FieldElement> out;
  const FieldElement gen = ideal_generator(f, a);
  if (f.is_rational()) {
    const double g = std::fabs(gen.embedding(f, 0));
    const long long mmax = static_cast<long long>(std::floor(box[0] / g + 1e-12));
    if (2 * mmax > cap) throw std::runtime_error("enumerate_elements: cap exceeded");
    for (long long m = -mmax; m <= mmax; ++m) {
      if (m == 0) continue;
      FieldElement u{gen.x * m, 0, gen.den};
      u.reduce();
      out.push_back(u);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // quadratic: u = gen * (m + n*omega); |m + n*w_v| <= box[v]/|gen_v|
  const double g0 = std::fabs(gen.embedding(f, 0));
  const double g1 = std::fabs(gen.embedding(f, 1));
  const double c0 = box[0] / g0, c1 = box[1] / g1;
  const double w0 = f.omega_embedding(0), w1 = f.omega_embedding(1);
  const double nmax = (c0 + c1) / std::fabs(w0 - w1) + 1.0;
  if (nmax > 2e9) throw std::runtime_error("enumerate_elements: cap exceeded");
  long long count = 0;
  for (long long n = -static_cast<long long>(nmax); n <= static_cast<long long>(nmax); ++n) {
    const double lo = std::max(-c0 - n * w0, -c1 - n * w1);
    const double hi = std::min(c0 - n * w0, c1 - n * w1);
    if (lo > hi) continue;
    for (long long m = static_cast<long long>(std::ceil(lo - 1e-9));
         m <= static_cast<long long>(std::floor(hi + 1e-9)); ++m) {
      if (m == 0 && n == 0) continue;
      FieldElement u = gen.times(f, FieldElement::integer_combo(m, n));
      if (std::fabs(u.embedding(f, 0)) > box[0] + 1e-12) continue;
      if (std::fabs(u.embedding(f, 1)) > box[1] + 1e-12) continue;
      out.push_back(u);
      if (++count > cap) throw std::runtime_error("enumerate_elements: cap exceeded");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace rtf::nf
