#include "orb2/secondmoment.hpp"

#include "sf/legendre.hpp"
#include "sf/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtf::orb2 {

namespace {

// Neumaier compensated accumulator; the reduction order is fixed by callers.
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

std::vector<long long> factor_candidates(long long n) {
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

} // namespace

int SecondMomentParams::delta_k() const {
  int sum = 0;
  for (int kv : weights) sum += kv;
  return sum % 4 == 0 ? 1 : 0;
}

int SecondMomentParams::delta_kq() const { return q.is_unit_ideal() ? delta_k() : 1; }

double SecondMomentParams::knorm() const {
  double n = 1.0;
  for (int kv : weights) n *= kv;
  return n;
}

void SecondMomentParams::validate() const {
  if (static_cast<int>(weights.size()) != field.degree)
    throw std::invalid_argument("SecondMomentParams: weight vector length != degree");
  for (int kv : weights)
    if (kv < 4 || kv % 2 != 0)
      throw std::invalid_argument("SecondMomentParams: weights must be even and >= 4");
  if (!n.integral()) throw std::invalid_argument("SecondMomentParams: n must be integral");
  if (!n.coprime(q)) throw std::invalid_argument("SecondMomentParams: (n,q) != 1");
  if (!q.is_unit_ideal() && q.factors().size() != 1)
    throw std::invalid_argument("SecondMomentParams: q must be O_F or prime");
  if (!q.is_unit_ideal() && q.factors()[0].second != 1)
    throw std::invalid_argument("SecondMomentParams: q must be O_F or prime");
}

cplx g_function(const SecondMomentParams& p, cplx s) {
  const double Nq = p.Nq();
  const double D = static_cast<double>(p.field.disc);
  cplx val = 2.0 * (1.0 + std::pow(Nq, s)) * std::pow(D, 1.5 + s);
  for (int kv : p.weights) {
    const cplx g = std::exp(2.0 * sf::lgamma_cplx(0.5 * (static_cast<double>(kv) + s)) - 2.0 * std::lgamma(0.5 * kv));
    val *= (kv - 1.0) * g / (2.0 * std::pow(2.0 * M_PI, 1.0 + s) * M_PI);
  }
  val *= static_cast<double>(nf::tau(p.n)) * std::pow(p.n.norm(), -0.5 * (1.0 + s));
  return val;
}

double g_prime0(const SecondMomentParams& p) {
  const double g0 = g_function(p, 0.0).real();
  double logderiv = 0.5 * std::log(p.Nq()) + std::log(static_cast<double>(p.field.disc)) -
                    0.5 * std::log(p.n.norm());
  for (int kv : p.weights) logderiv += sf::digamma(0.5 * kv) - std::log(2.0 * M_PI);
  return g0 * logderiv;
}

SingularMain singular_main(const SecondMomentParams& p) {
  p.validate();
  SingularMain out;
  const double pref = (p.Nq() + 1.0) * p.delta_kq();
  if (pref == 0.0) return out;

  const auto [R, c0] = nf::zeta_laurent(p.field);
  const double g0 = g_function(p, 0.0).real();
  double gp = g_prime0(p);
  // finite-difference cross-check of the digamma derivative
  const double h = 1e-5;
  const double gp_fd = (g_function(p, {h, 0.0}).real() - g_function(p, {-h, 0.0}).real()) / (2.0 * h);
  if (std::fabs(gp - gp_fd) > 1e-9 * std::max(1.0, std::fabs(gp)) * 10.0)
    throw std::runtime_error("singular_main: derivative routes disagree");
  out.derivative_form = pref * (c0 * g0 + R * gp);

  // contour quadrature on |s| = 0.1 with 2^10 trapezoid nodes
  const double eps = 0.1;
  const int nodes = 1 << 10;
  cplx acc(0.0, 0.0);
  for (int j = 0; j < nodes; ++j) {
    const double th = 2.0 * M_PI * j / nodes;
    const cplx s = eps * std::exp(cplx(0.0, th));
    acc += nf::dedekind_zeta(p.field, 1.0 + s) * g_function(p, s);
  }
  out.contour_form = pref * (acc / static_cast<double>(nodes)).real();
  if (std::fabs(out.derivative_form - out.contour_form) >
      1e-7 * std::max(1.0, std::fabs(out.derivative_form)))
    throw std::runtime_error("singular_main: contour and derivative forms disagree");
  return out;
}

double e_factor(const nf::Field& f, const nf::FieldElement& u, const nf::IdealData& n,
                const nf::IdealData& q) {
  // candidate places: primes of n, q, and any prime where u or 1+u has
  // nonzero valuation (detected through the norms).
  const nf::FieldElement u1 = u.plus_one(f);
  std::vector<nf::PrimeIdeal> cands;
  auto add_prime = [&](long long p) {
    for (const auto& pr : nf::primes_above(f, p))
      if (std::find(cands.begin(), cands.end(), pr) == cands.end()) cands.push_back(pr);
  };
  for (const auto& [pr, e] : n.factors()) if (std::find(cands.begin(), cands.end(), pr) == cands.end()) cands.push_back(pr);
  for (const auto& [pr, e] : q.factors()) if (std::find(cands.begin(), cands.end(), pr) == cands.end()) cands.push_back(pr);
  for (const auto* el : {&u, &u1}) {
    const auto [nn, nd] = el->norm_rational(f);
    for (long long p : factor_candidates(nn)) add_prime(p);
    for (long long p : factor_candidates(nd)) add_prime(p);
  }
  double prod = 1.0;
  for (const auto& pr : cands) {
    const int ev_u = u.valuation(f, pr);
    const bool at_q = q.valuation(pr) > 0;
    if (at_q) {
      if (ev_u < 1) throw std::domain_error("e_factor: u outside q n^{-1}");
      prod *= static_cast<double>(ev_u);
      continue;
    }
    const int ev_n = n.valuation(pr);
    const int ev_u1 = u1.is_zero() ? 0 : u1.valuation(f, pr);
    if (ev_u < -ev_n) throw std::domain_error("e_factor: u outside q n^{-1}");
    prod *= static_cast<double>(ev_n + 1 + ev_u1) * static_cast<double>(ev_n + 1 + ev_u);
  }
  return prod;
}

GeometricBreakdown regular_sum(const SecondMomentParams& p, bool reflected) {
  p.validate();
  GeometricBreakdown out;
  const nf::Field& F = p.field;
  const int d = F.degree;
  const nf::IdealData qninv = p.q.times(p.n.power(-1));

  double pref = 2.0 * static_cast<double>(F.disc) * p.Vq() / std::sqrt(p.n.norm());
  for (int kv : p.weights) pref *= (kv - 1.0) / (2.0 * M_PI * M_PI);

  // Shell-to-shell majorant: the maximal place loses 2^{-k_v/2} per dyadic
  // step (Legendre-Q decay times |u(u+1)|^{-1/2}), the weighted count gains
  // 2^{1 + (d-1)/2}. Clamped away from 1 so the geometric tail stays finite;
  // configurations that still cannot reach tol hit the shell cap below.
  const int kmin = *std::min_element(p.weights.begin(), p.weights.end());
  const double shell_ratio =
      std::min(std::pow(2.0, 1.0 + 0.5 * (d - 1) - 0.5 * kmin), 0.8);
  constexpr int kMaxShells = 40;

  CompensatedSum acc;
  double prev_abs = 0.0, cur_abs = 0.0;
  int M = 0;
  bool converged = false;
  for (; M <= kMaxShells; ++M) {
    const double bound = 0.5 * (std::pow(2.0, M) + 1.0);
    std::vector<double> box(static_cast<size_t>(d), bound);
    auto elems = nf::enumerate_elements(F, qninv, box);
    // keep only the current shell: max_v shell(u_v) == M
    std::vector<nf::FieldElement> shell;
    for (const auto& u : elems) {
      if (u.is_zero()) continue;
      const nf::FieldElement mu = u.negate();
      if (mu.x == mu.den && mu.y == 0) continue; // u == -1
      int mx = 0;
      for (int v = 0; v < d; ++v) {
        const double a = std::fabs(2.0 * u.embedding(F, v) + 1.0);
        const int s = a <= 1.0 ? 0 : static_cast<int>(std::ceil(std::log2(a) - 1e-12));
        mx = std::max(mx, s);
      }
      if (mx == M) shell.push_back(u);
    }
    // deterministic order: by |norm|, then coordinates
    std::sort(shell.begin(), shell.end(), [&](const nf::FieldElement& a, const nf::FieldElement& b) {
      const auto na = a.norm_rational(F), nb = b.norm_rational(F);
      const double va = std::fabs(static_cast<double>(na.first) / na.second);
      const double vb = std::fabs(static_cast<double>(nb.first) / nb.second);
      if (va != vb) return va < vb;
      return a < b;
    });
    prev_abs = cur_abs;
    cur_abs = 0.0;
    for (const auto& u0 : shell) {
      nf::FieldElement u = u0;
      if (reflected) {
        u = u0.plus_one(F).negate(); // -(1+u)
      }
      double term = 1.0;
      for (int v = 0; v < d; ++v) term *= sf::curly_p(u.embedding(F, v), p.weights[static_cast<size_t>(v)]);
      term *= e_factor(F, u, p.n, p.q);
      acc.add(pref * term);
      cur_abs += std::fabs(pref * term);
    }
    out.shells_evaluated = M + 1;
    if (M >= 3) {
      const double last = std::max(cur_abs, prev_abs * shell_ratio);
      const double tail = 4.0 * last * shell_ratio / (1.0 - shell_ratio);
      if (tail < p.tol) {
        out.truncation_bound = tail;
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw std::runtime_error("regular_sum: shell cap exceeded before reaching tol");
  out.regular_sum = acc.value();
  return out;
}

GeometricBreakdown secondmoment_geometric(const SecondMomentParams& p) {
  GeometricBreakdown out = regular_sum(p);
  out.main_term = singular_main(p).value();
  return out;
}

} // namespace rtf::orb2
