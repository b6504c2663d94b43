#include "orb1/firstmoment.hpp"

#include "sf/kummer.hpp"
#include "sf/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtf::orb1 {

namespace {

using i128 = __int128;

long long ipow_ll(long long p, int m) {
  long long r = 1;
  for (int i = 0; i < m; ++i) r *= p;
  return r;
}

int val_ll(long long n, long long p) {
  int v = 0;
  n = std::llabs(n);
  while (n != 0 && n % p == 0) { n /= p; ++v; }
  return v;
}

long long inv_mod(long long a, long long m) {
  long long b = m, u0 = 1, u1 = 0;
  a = ((a % m) + m) % m;
  while (b) {
    const long long q = a / b;
    a -= q * b; std::swap(a, b);
    u0 -= q * u1; std::swap(u0, u1);
  }
  return ((u0 % m) + m) % m;
}

// p-adic fractional part of num/den in [0,1).
double frac_p_rational(long long num, long long den, long long p) {
  if (num == 0) return 0.0;
  const int m = val_ll(den, p) - val_ll(num, p);
  if (m <= 0) return 0.0;
  const long long pm = ipow_ll(p, m);
  long long n2 = num / ipow_ll(p, val_ll(num, p));
  long long d2 = den / ipow_ll(p, val_ll(den, p));
  const long long a = static_cast<long long>((((i128)n2 % pm + pm) % pm) * inv_mod(d2, pm) % pm);
  return static_cast<double>(a) / static_cast<double>(pm);
}

// psi_bar_v(xi) = exp(2 pi i {local image}_p); xi given as an exact element.
cplx psi_bar(const nf::Field& f, const nf::FieldElement& xi, const nf::PrimeIdeal& pr) {
  double frac = 0.0;
  if (f.is_rational()) {
    frac = frac_p_rational(xi.x, xi.den, pr.p);
  } else if (pr.f == 2 || pr.e == 2) {
    // single place above p: psi_v = psi_p of the global trace
    const long long tr_num = 2 * xi.x + f.omega_trace() * xi.y;
    frac = frac_p_rational(tr_num, xi.den, pr.p);
  } else {
    // split: embed via the Hensel root of the minimal polynomial of omega
    const int vnum = xi.valuation(f, pr) + val_ll(xi.den, pr.p);
    const int vden = val_ll(xi.den, pr.p);
    const int m = vden - vnum;
    if (m <= 0 || xi.y == 0) {
      frac = frac_p_rational(xi.x, xi.den, pr.p);
    } else {
      // alpha = (x + y r)/p^{vnum} * inv(den/p^{vden}) mod p^m
      const auto root = [&]() {
        // recompute the root modulo a healthy power (cached inside element.cpp
        // is not exposed; redo the lifting cheaply)
        const long long T = f.omega_trace(), Q = f.omega_norm();
        long long r = 0;
        for (long long r0 = 0; r0 < pr.p; ++r0) {
          const i128 v = (((i128)r0 * r0 - (i128)T * r0 + Q) % pr.p + pr.p) % pr.p;
          if (v == 0) { r = r0; if (pr.which == 0) break; }
        }
        // pick sorted root per tag
        std::vector<long long> base;
        for (long long r0 = 0; r0 < pr.p; ++r0) {
          const i128 v = (((i128)r0 * r0 - (i128)T * r0 + Q) % pr.p + pr.p) % pr.p;
          if (v == 0) base.push_back(r0);
        }
        std::sort(base.begin(), base.end());
        r = base[static_cast<size_t>(pr.which)];
        long long pk = pr.p;
        while (pk <= 1000000000000000000LL / pr.p) {
          const i128 mod = (i128)pk * pr.p;
          i128 fr = ((i128)r * r - (i128)T * r + Q) % mod;
          fr = (fr + mod) % mod;
          const long long t = static_cast<long long>((fr / pk) % pr.p);
          const long long d = (((2 * (r % pr.p) - T) % pr.p) + pr.p) % pr.p;
          const long long dinv = (pr.p == 2) ? 1 : inv_mod(d, pr.p);
          r += (pr.p - (t * dinv) % pr.p) % pr.p * pk;
          pk *= pr.p;
        }
        return std::pair<long long, long long>{r, pk};
      }();
      const long long pm = ipow_ll(pr.p, m);
      i128 img = ((i128)xi.x + (i128)xi.y % root.second * root.first) % root.second;
      img = (img + root.second) % root.second;
      i128 reduced = img / ipow_ll(pr.p, vnum);
      const long long d2 = xi.den / ipow_ll(pr.p, vden);
      const long long a =
          static_cast<long long>((reduced % pm) * inv_mod(d2, pm) % pm);
      frac = static_cast<double>(a) / static_cast<double>(pm);
    }
  }
  return std::polar(1.0, 2.0 * M_PI * frac);
}

std::vector<long long> prime_divisors_ll(long long n) {
  std::vector<long long> ps;
  n = std::llabs(n);
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    ps.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

struct CompensatedSum {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) comp += (sum - t) + v;
    else comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Normalized archimedean weight of the tail term at one embedding tv > 0:
// (k-1)(2 pi)^{k/2} Gamma(k/2) / (4 pi^2 i^{k/2} tv^{k/2} Gamma(k)) 1F1(k/2;k;-2 pi i/tv).
cplx tail_arch_factor(double tv, int k) {
  const bool neg = tv < 0.0;
  const double a = std::fabs(tv);
  const double logmag = std::log(k - 1.0) + 0.5 * k * std::log(2.0 * M_PI) +
                        std::lgamma(0.5 * k) - std::log(4.0 * M_PI * M_PI) -
                        0.5 * k * std::log(a) - std::lgamma(static_cast<double>(k));
  static const cplx ipows[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const cplx val = std::exp(logmag) / ipows[(k / 2) % 4] * sf::kummer_imag(k, -2.0 * M_PI / a);
  return neg ? std::conj(val) : val;
}

} // namespace

cplx i_fin(const nf::Field& f, const nf::FieldElement& t, const nf::IdealData& n,
           const nf::IdealData& q) {
  if (t.is_zero()) throw std::domain_error("i_fin: t must be nonzero");
  const nf::FieldElement tinv = t.inverse(f);
  std::vector<nf::PrimeIdeal> cands;
  auto add = [&](const nf::PrimeIdeal& pr) {
    if (std::find(cands.begin(), cands.end(), pr) == cands.end()) cands.push_back(pr);
  };
  for (const auto& [pr, e] : n.factors()) add(pr);
  for (const auto& [pr, e] : q.factors()) add(pr);
  const auto [nn, nd] = t.norm_rational(f);
  for (long long p : prime_divisors_ll(nn))
    for (const auto& pr : nf::primes_above(f, p)) add(pr);
  for (long long p : prime_divisors_ll(nd))
    for (const auto& pr : nf::primes_above(f, p)) add(pr);
  if (!f.is_rational())
    for (long long p : prime_divisors_ll(f.disc))
      for (const auto& pr : nf::primes_above(f, p)) add(pr);

  cplx out(1.0, 0.0);
  const nf::FieldElement different{-f.omega_trace(), 2, 1};
  for (const auto& pr : cands) {
    const int ev = t.valuation(f, pr);
    if (q.valuation(pr) > 0) {
      if (ev < 1) return {0.0, 0.0};
      out *= psi_bar(f, tinv, pr);
      continue;
    }
    const int en = n.valuation(pr);
    if (en > 0) {
      cplx factor(0.0, 0.0);
      if (ev > -en) factor += psi_bar(f, tinv, pr);
      if (ev >= -en) factor += 1.0;
      if (factor == cplx(0.0, 0.0)) return {0.0, 0.0};
      out *= factor;
      continue;
    }
    const int dv = f.is_rational() ? 0 : different.valuation(f, pr);
    cplx factor(0.0, 0.0);
    if (ev >= dv) factor += 1.0;
    if (ev >= dv + 1) factor += psi_bar(f, tinv, pr) * std::pow(pr.norm(), dv);
    if (factor == cplx(0.0, 0.0)) return {0.0, 0.0};
    out *= factor;
  }
  const double Vq = q.is_unit_ideal() ? 1.0 : q.norm() + 1.0;
  const double D = static_cast<double>(f.disc);
  return out * Vq / (std::sqrt(n.norm()) * D * D);
}

cplx i_inf(const nf::Field& f, const nf::FieldElement& t, const std::vector<int>& weights) {
  cplx prod(1.0, 0.0);
  static const cplx ipows[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (int v = 0; v < f.degree; ++v) {
    const double tv = t.embedding(f, v);
    if (tv == 0.0) throw std::domain_error("i_inf: vanishing embedding");
    const int k = weights[static_cast<size_t>(v)];
    const double a = std::fabs(tv);
    const double logmag = std::log(k - 1.0) - std::log(4.0 * M_PI) - 2.0 * M_PI +
                          k * std::log(4.0 * M_PI) + 2.0 * std::lgamma(0.5 * k) -
                          0.5 * k * std::log(a) - 2.0 * std::lgamma(static_cast<double>(k));
    cplx val = std::exp(logmag) / ipows[(k / 2) % 4] * sf::kummer_imag(k, -2.0 * M_PI / a);
    if (tv < 0.0) val = std::conj(val);
    prod *= val;
  }
  return prod;
}

double firstmoment_main(const FirstMomentParams& p) {
  p.validate();
  double main = 2.0 * p.delta_kq() * (p.Nq() + 1.0) * std::pow(static_cast<double>(p.field.disc), 1.5) /
                std::sqrt(p.n.norm());
  for (int kv : p.weights) main *= (kv - 1.0) / (4.0 * M_PI * M_PI);
  return main;
}

TailSum tail_sum(const FirstMomentParams& p) {
  p.validate();
  TailSum out;
  const nf::Field& F = p.field;
  const int d = F.degree;
  const nf::IdealData qninv = p.q.times(p.n.power(-1));
  const double pref = 2.0 * std::pow(static_cast<double>(F.disc), 1.5);

  const int kmin = *std::min_element(p.weights.begin(), p.weights.end());
  const double shell_ratio =
      std::min(std::pow(2.0, 1.0 + 0.5 * (d - 1) - 0.5 * kmin), 0.8);
  constexpr int kMaxShells = 40;

  CompensatedSum acc_re;
  double imag_acc = 0.0;
  double cur_abs = 0.0, prev_abs = 0.0;
  bool converged = false;
  for (int M = 0; M <= kMaxShells; ++M) {
    const double bound = std::pow(2.0, M);
    std::vector<double> box(static_cast<size_t>(d), bound);
    auto elems = nf::enumerate_elements(F, qninv, box);
    std::vector<nf::FieldElement> shell;
    for (const auto& t : elems) {
      if (t.is_zero()) continue;
      double mx = 0.0;
      for (int v = 0; v < d; ++v) mx = std::max(mx, std::fabs(t.embedding(F, v)));
      const int idx = mx <= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(mx) - 1e-12));
      if (idx == M) shell.push_back(t);
    }
    std::sort(shell.begin(), shell.end(), [&](const nf::FieldElement& a, const nf::FieldElement& b) {
      const auto na = a.norm_rational(F), nb = b.norm_rational(F);
      const double va = std::fabs(static_cast<double>(na.first) / na.second);
      const double vb = std::fabs(static_cast<double>(nb.first) / nb.second);
      if (va != vb) return va < vb;
      return a < b;
    });
    prev_abs = cur_abs;
    cur_abs = 0.0;
    for (const auto& t : shell) {
      cplx term = i_fin(F, t, p.n, p.q);
      if (term == cplx(0.0, 0.0)) continue;
      for (int v = 0; v < d; ++v)
        term *= tail_arch_factor(t.embedding(F, v), p.weights[static_cast<size_t>(v)]);
      term *= pref;
      acc_re.add(term.real());
      imag_acc += term.imag();
      cur_abs += std::abs(term);
    }
    out.shells_evaluated = M + 1;
    if (M >= 3) {
      const double last = std::max(cur_abs, prev_abs * shell_ratio);
      const double tail = 4.0 * last * shell_ratio / (1.0 - shell_ratio);
      if (tail < p.tol) {
        out.bound = tail;
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw std::runtime_error("tail_sum: shell cap exceeded before reaching tol");
  if (std::fabs(imag_acc) > 1e-8 * std::max(1.0, std::fabs(acc_re.value())))
    throw std::runtime_error("tail_sum: imaginary part failed to cancel");
  out.value = acc_re.value();
  return out;
}

OldformFirstMoment oldform_firstmoment(const FirstMomentParams& p,
                                       const std::vector<oracle::NewformRecord>& level1) {
  OldformFirstMoment out;
  if (p.q.is_unit_ideal()) throw std::invalid_argument("oldform_firstmoment: q must be prime");
  const double Nq = p.Nq();
  const long long qq = static_cast<long long>(Nq);
  const long long nn = static_cast<long long>(p.n.norm());
  for (const auto& r : level1) {
    if (r.weight != p.weights[0]) continue;
    out.exact += (p.Vq() / Nq) * r.lam(nn) * oracle::oldform_L_factor(r.lam(qq), Nq) *
                 r.central_value / r.adjoint_value;
  }
  out.asymptotic = 4.0 * p.delta_k() * std::pow(static_cast<double>(p.field.disc), 1.5) /
                   std::sqrt(p.n.norm());
  for (int kv : p.weights) out.asymptotic *= (kv - 1.0) / (4.0 * M_PI * M_PI);
  return out;
}

} // namespace rtf::orb1
