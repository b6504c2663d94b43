#include "moll/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtf::moll {

RhoHandle default_rho() {
  return [](double np) { return 1.0 / (1.0 + 1.0 / np); };
}

void validate_rho(const nf::Field& f, const RhoHandle& rho) {
  double first = 0.0, second = 0.0;
  for (long long p : nf::primes_upto(10000)) {
    for (const auto& pr : nf::primes_above(f, p)) {
      const double term = std::fabs(1.0 - rho(pr.norm())) / pr.norm();
      (p < 3163 ? first : second) += term;
      if (std::fabs(rho(pr.norm())) > 1.5)
        throw std::invalid_argument("validate_rho: handle exceeds the boundedness assumption");
    }
  }
  (void)first;
  if (second > 0.01)
    throw std::invalid_argument("validate_rho: summability condition looks violated");
}

namespace {

double rho_of_ideal(const nf::IdealData& n, const RhoHandle& rho) {
  double r = 1.0;
  for (const auto& [p, e] : n.factors()) r *= rho(p.norm());
  return r;
}

} // namespace

double mollifier_weight(const nf::IdealData& n, const MollifierSpec& spec) {
  if (!n.integral()) throw std::invalid_argument("mollifier_weight: fractional ideal");
  const double N = n.norm();
  if (N > spec.xi) return 0.0;
  const int mu = nf::moebius(n);
  if (mu == 0) return 0.0;
  const double lg = std::log(spec.xi / N);
  return mu * rho_of_ideal(n, spec.rho) / std::sqrt(N) * lg * lg / (2.0 * std::log(spec.xi));
}

double mollifier_value(const oracle::NewformRecord& rec, const MollifierSpec& spec) {
  if (spec.field.degree != 1)
    throw std::invalid_argument("mollifier_value: oracle records exist over Q only");
  double acc = 0.0;
  for (const auto& n : nf::ideals_up_to(spec.field, spec.xi)) {
    if (!n.coprime(spec.q)) continue;
    const double w = mollifier_weight(n, spec);
    if (w == 0.0) continue;
    const long long nn = static_cast<long long>(n.norm() + 0.5);
    if (nn > rec.n_max()) throw std::runtime_error("mollifier_value: eigenvalue coverage too short");
    acc += w * rec.lam(nn);
  }
  return acc;
}

cplx triple_series_brute(cplx s, cplx s1, cplx s2, const MollifierSpec& spec, double cutoff) {
  if (2.0 * s1.real() + s.real() <= 0.0 || 2.0 * s2.real() + s.real() <= 0.0 ||
      s1.real() + s2.real() <= 0.0)
    throw std::domain_error("triple_series_brute: outside the convergence region");
  const auto ideals = nf::ideals_up_to(spec.field, cutoff);
  std::vector<const nf::IdealData*> sqfree;
  for (const auto& n : ideals) {
    if (!n.coprime(spec.q) || nf::moebius(n) == 0) continue;
    sqfree.push_back(&n);
  }
  cplx acc(0.0, 0.0);
  for (const auto* n1 : sqfree) {
    const cplx w1 = static_cast<double>(nf::moebius(*n1)) * rho_of_ideal(*n1, spec.rho) *
                    std::pow(n1->norm(), -(0.5 + s1));
    for (const auto* n2 : sqfree) {
      const cplx w2 = static_cast<double>(nf::moebius(*n2)) * rho_of_ideal(*n2, spec.rho) *
                      std::pow(n2->norm(), -(0.5 + s2));
      // gcd of squarefree ideals: common primes
      nf::IdealData prod = n1->times(*n2);
      std::vector<nf::PrimeIdeal> common;
      for (const auto& [p, e] : n1->factors())
        if (n2->valuation(p) > 0) common.push_back(p);
      // sum over m | gcd: tau(n1 n2 m^{-2}) / N(n1 n2 m^{-2})^{(1+s)/2}
      cplx inner(0.0, 0.0);
      const size_t subsets = 1ull << common.size();
      for (size_t mask = 0; mask < subsets; ++mask) {
        nf::IdealData m;
        for (size_t b = 0; b < common.size(); ++b)
          if (mask & (1ull << b)) m.set(common[b], 1);
        const nf::IdealData red = prod.times(m.power(-2));
        inner += static_cast<double>(nf::tau(red)) * std::pow(red.norm(), -0.5 * (1.0 + s));
      }
      acc += w1 * w2 * inner;
    }
  }
  return acc;
}

namespace {

cplx local_euler_factor(double np, double rp, cplx s, cplx s1, cplx s2) {
  return 1.0 - 2.0 * rp * std::pow(np, -(1.0 + s1 + 0.5 * s)) -
         2.0 * rp * std::pow(np, -(1.0 + s2 + 0.5 * s)) +
         rp * rp * std::pow(np, -(1.0 + s1 + s2)) +
         3.0 * rp * rp * std::pow(np, -(2.0 + s1 + s2 + s));
}

} // namespace

cplx triple_series_euler(cplx s, cplx s1, cplx s2, const MollifierSpec& spec) {
  if (2.0 * s1.real() + s.real() <= 0.0 || 2.0 * s2.real() + s.real() <= 0.0 ||
      s1.real() + s2.real() <= 0.0)
    throw std::domain_error("triple_series_euler: outside the convergence region");
  cplx logacc(0.0, 0.0);
  const long long bound = 3000000;
  for (long long p : nf::primes_upto(bound)) {
    for (const auto& pr : nf::primes_above(spec.field, p)) {
      if (spec.q.valuation(pr) > 0) continue;
      logacc += std::log(local_euler_factor(pr.norm(), spec.rho(pr.norm()), s, s1, s2));
    }
  }
  return std::exp(logacc);
}

double triple_series_E000(const MollifierSpec& spec) {
  // E(0,0,0) = L_q(1,rho)^3 prod_{p not| q} E_loc(p),
  // E_loc(p) = (1 - rho/Np)^{-3} (1 - (4 rho - rho^2)/Np + 3 rho^2/Np^2).
  // Factor zeta_F(2)^{-1} out so the remaining product converges fast for the
  // default rho (it is identically 1 there) and at the b7.17 rate otherwise.
  const nf::Field& f = spec.field;
  double zeta2 = nf::dedekind_zeta(f, {2.0, 0.0}).real();
  double prefactor = 1.0 / zeta2;
  if (!spec.q.is_unit_ideal()) {
    const double nq = spec.q.norm();
    const double rq = spec.rho(nq);
    const double lq1 = 1.0 / (1.0 - rq / nq);
    prefactor *= lq1 * lq1 * lq1 / (1.0 - 1.0 / (nq * nq));
  }
  double corr = 1.0;
  double tail_probe = 0.0;
  const long long bound = 1000000;
  for (long long p : nf::primes_upto(bound)) {
    for (const auto& pr : nf::primes_above(f, p)) {
      if (spec.q.valuation(pr) > 0) continue;
      const double np = pr.norm();
      const double rp = spec.rho(np);
      const double onemr = 1.0 - rp / np;
      const double eloc =
          (1.0 - (4.0 * rp - rp * rp) / np + 3.0 * rp * rp / (np * np)) / (onemr * onemr * onemr);
      const double ratio = eloc / (1.0 - 1.0 / (np * np));
      corr *= ratio;
      if (p > bound / 2) tail_probe += std::log(ratio);
    }
  }
  if (std::fabs(tail_probe) > 1e-11)
    throw std::runtime_error("triple_series_E000: residual product has not converged");
  return prefactor * corr;
}

double rho_residue_ratio(const MollifierSpec& spec) {
  // R(rho) = prod_p [1 - (1-rho)/(Np (1 - rho/Np))]; factor zeta_F(2)^{-1}
  // out so the default-rho evaluation is exact and generic handles converge
  // at the b7.17 rate.
  double corr = 0.0;
  for (long long p : nf::primes_upto(1000000)) {
    for (const auto& pr : nf::primes_above(spec.field, p)) {
      const double np = pr.norm();
      const double rp = spec.rho(np);
      const double local = 1.0 - (1.0 - rp) / np / (1.0 - rp / np);
      corr += std::log(local / (1.0 - 1.0 / (np * np)));
    }
  }
  return std::exp(corr) / nf::dedekind_zeta(spec.field, {2.0, 0.0}).real();
}

LBig l_big(double g0, double gprime0, const MollifierSpec& spec) {
  LBig out;
  const double R = spec.field.zeta_residue;
  const double e000 = triple_series_E000(spec);
  const double rr = rho_residue_ratio(spec);
  out.value = e000 / (rr * rr * rr * R * R) * (gprime0 / std::log(spec.xi) + g0);
  out.error_budget = "O(G(0) (log xi)^{-1})";
  return out;
}

namespace {

double knorm_of(const std::vector<int>& k) {
  double n = 1.0;
  for (int kv : k) n *= kv;
  return n;
}

int delta_of(const std::vector<int>& k) {
  int sum = 0;
  for (int kv : k) sum += kv;
  return sum % 4 == 0 ? 1 : 0;
}

} // namespace

std::pair<double, double> moment_main_terms(const std::vector<int>& k, const nf::IdealData& q,
                                            double xi, const nf::Field& f) {
  (void)f;
  const double knorm = knorm_of(k);
  const int dk = delta_of(k);
  const bool full = q.is_unit_ideal();
  const double Nq = full ? 1.0 : q.norm();
  const double zq1 = full ? 1.0 : 1.0 / (1.0 - 1.0 / Nq);
  const double zq2 = full ? 1.0 : 1.0 / (1.0 - 1.0 / (Nq * Nq));
  const double cq = full ? static_cast<double>(dk) : zq1 * zq1 * zq1 / zq2;
  const double M1 = full ? 4.0 * dk : (2.0 * (Nq + 1.0) - 4.0 * dk) * zq1;
  const double lx = std::log(xi);
  double M2 = 4.0 * (Nq + 1.0) * cq * std::log(xi * std::sqrt(Nq) * knorm) / lx;
  if (!full) M2 -= 16.0 * zq2 * dk / (1.0 + 1.0 / Nq) * std::log(xi * knorm) / lx;
  return {M1, M2};
}

double proportion_bound(const std::vector<int>& k, const nf::IdealData& q, double xi,
                        const nf::Field& f) {
  const auto [m1, m2] = moment_main_terms(k, q, xi, f);
  const double Nq = q.is_unit_ideal() ? 1.0 : q.norm();
  if (m2 <= 0.0) return 0.0;
  return m1 * m1 / (2.0 * Nq * m2);
}

Rational regime_limit(Regime r, long long Nq) {
  switch (r) {
    case Regime::level_aspect:
      // xi = Nq^{1/2}, Nq -> infinity: M1 ~ 2 Nq, M2 ~ 8 Nq
      return {1, 4};
    case Regime::weight_aspect:
      // q = O_F, delta_k = 1, xi = ||k||^{1/4}: M1 = 4, M2 -> 40
      return {1, 5};
    case Regime::double_limit:
      return {1, 10};
    case Regime::fixed_q: {
      if (Nq < 2) throw std::invalid_argument("regime_limit: fixed_q needs a prime norm");
      // (1 - 1/Nq)^3 / (10 (1 + 1/Nq)) = (Nq-1)^3 / (10 Nq^2 (Nq+1))
      const long long num = (Nq - 1) * (Nq - 1) * (Nq - 1);
      const long long den = 10 * Nq * Nq * (Nq + 1);
      const long long g = std::__gcd(num, den);
      return {num / g, den / g};
    }
    case Regime::uniform:
      return {1, 100};
  }
  throw std::logic_error("regime_limit: unreachable");
}

HarmonicNormalizers harmonic_normalizers(const std::vector<int>& k, const nf::IdealData& q,
                                         double xi, const nf::Field& f) {
  HarmonicNormalizers out;
  const double knorm = knorm_of(k);
  const bool full = q.is_unit_ideal();
  const double Nq = full ? 1.0 : q.norm();
  const double Vq = full ? 1.0 : Nq + 1.0;
  const double zq2 = full ? 1.0 : 1.0 / (1.0 - 1.0 / (Nq * Nq));
  const double d32 = std::pow(static_cast<double>(f.disc), 1.5);
  double arch = 1.0;
  for (int kv : k) arch *= (kv - 1.0) / (4.0 * M_PI * M_PI);
  out.count_harmonic = 2.0 * (Vq - (full ? 0.0 : 1.0)) * zq2 * d32 * arch;
  if (!full) {
    const double x = 1.0 / Nq;
    const double lx = std::log(xi);
    out.R_qk = (1.0 - x * x) * (1.0 - x * x) * (1.0 - x * x) * lx /
               (std::pow(1.0 + x, 4.0) * std::log(Nq) +
                2.0 * (1.0 + 10.0 * x * x + 4.0 * x * x * x + x * x * x * x) *
                    std::log(xi * knorm));
  }
  out.dim_estimate = 2.0 * Nq * d32 * nf::dedekind_zeta(f, {2.0, 0.0}).real() * arch;
  out.amp_bound = std::pow(xi, 1.0 / 3.0) * std::pow(Nq, 1.0 / 3.0) * std::pow(knorm, 5.0 / 12.0);
  out.xi_in_window = xi <= std::sqrt(Nq) * std::pow(knorm, 0.25) + 1e-9;
  return out;
}

} // namespace rtf::moll
