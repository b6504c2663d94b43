#include "oracle/lfunctions.hpp"

#include "nf/zeta.hpp"
#include "sf/special.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rtf::oracle {

namespace {

using cplx = std::complex<double>;

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

} // namespace

double central_value_smoothed(const NewformRecord& rec, double delta) {
  const int k = rec.weight;
  const double eps = rec.root_number;
  const double sqn = std::sqrt(static_cast<double>(rec.level));
  const int a = k / 2;
  double sum = 0.0;
  const int n_max = rec.n_max();
  for (long long n = 1; n <= n_max; ++n) {
    const double q1 = rtf::sf::gamma_q_upper(a, 2.0 * M_PI * n * delta / sqn);
    const double q2 = rtf::sf::gamma_q_upper(a, 2.0 * M_PI * n / (delta * sqn));
    const double w = q1 + eps * q2;
    if (w == 0.0) continue;
    sum += rec.lam(n) / std::sqrt(static_cast<double>(n)) * w;
    if (q1 < 1e-18 && q2 < 1e-18) break;
  }
  // tail guard: the slowest-decaying weight at n_max must be negligible
  const double tail = rtf::sf::gamma_q_upper(a, 2.0 * M_PI * n_max * std::min(delta, 1.0 / delta) / sqn);
  if (tail > 1e-12) throw std::runtime_error("central_value: insufficient n_max for this weight/level");
  return sum;
}

double central_value(const NewformRecord& rec) {
  if (rec.root_number == -1) return 0.0;
  const double v1 = central_value_smoothed(rec, 1.0);
  const double v2 = central_value_smoothed(rec, 2.0);
  if (std::fabs(v1 - v2) > 1e-9 * std::max(1.0, std::fabs(v1)))
    throw std::runtime_error("central_value: smoothing parameters disagree");
  return v1;
}

namespace {

// j-th Dirichlet coefficient at the prime power p^j of L(s, Sym^2 pi):
// complete homogeneous symmetric function of (alpha^2, 1, beta^2) away from
// the level, (1 - p^{-s-1})^{-1} at a Steinberg prime.
double sym2_local(const NewformRecord& rec, long long p, int j) {
  if (rec.level % p == 0) return std::pow(static_cast<double>(p), -j);
  const double e1 = rec.lam(p) * rec.lam(p) - 1.0; // e2 = e1, e3 = 1
  std::vector<double> h{1.0};
  for (int t = 1; t <= j; ++t) {
    const double h1 = h[static_cast<size_t>(t - 1)];
    const double h2 = t >= 2 ? h[static_cast<size_t>(t - 2)] : 0.0;
    const double h3 = t >= 3 ? h[static_cast<size_t>(t - 3)] : 0.0;
    h.push_back(e1 * h1 - e1 * h2 + h3);
  }
  return h[static_cast<size_t>(j)];
}

} // namespace

std::vector<double> sym2_coefficients(const NewformRecord& rec, int M) {
  std::vector<double> out(static_cast<size_t>(M) + 1, 0.0);
  for (long long n = 1; n <= M; ++n) {
    long long m = n;
    double val = 1.0;
    for (long long p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      int j = 0;
      while (m % p == 0) { m /= p; ++j; }
      val *= sym2_local(rec, p, j);
    }
    if (m > 1) val *= sym2_local(rec, m, 1);
    out[static_cast<size_t>(n)] = val;
  }
  return out;
}

namespace {

// gamma factor of Sym^2: pi^{-(3z+2k)/2} G((z+1)/2) G((z+k-1)/2) G((z+k)/2),
// as log for complex z.
cplx log_gamma_sym2(cplx z, int k) {
  return -0.5 * (3.0 * z + 2.0 * (k - 1.0)) * std::log(M_PI) +
         rtf::sf::lgamma_cplx(0.5 * (z + 1.0)) + rtf::sf::lgamma_cplx(0.5 * (z + (k - 1.0))) +
         rtf::sf::lgamma_cplx(0.5 * (z + static_cast<double>(k)));
}

// H(z0, y) = (1/2 pi i) int_{(c)} [gamma(z0+w)/gamma(1)] y^w dw / w.
// The three Gamma factors supply e^{-3 pi |t|/4} decay along the contour; the
// abscissa c is bucketed near the real saddle of |gamma(z0+c)| y^c so the
// quadrature stays well conditioned, and the per-bucket Gamma data is cached.
struct KernelGrid {
  std::vector<cplx> vals;
  double log_scale = 0.0;
};

double smoothing_kernel(double z0, double y, int k) {
  static std::map<long long, KernelGrid> cache;
  static std::mutex mu;
  constexpr double kT = 32.0, kDt = 0.025;
  const int steps = static_cast<int>(2.0 * kT / kDt);

  // saddle of (1/2) sum psi((c+z0+mu_j)/2) - (3/2) log pi = log(1/y)
  double c = 1.5;
  if (y < 1.0) {
    const double target = std::log(1.0 / y);
    auto g = [&](double cc) {
      return 0.5 * (rtf::sf::digamma(0.5 * (cc + z0 + 1.0)) +
                    rtf::sf::digamma(0.5 * (cc + z0 + k - 1.0)) +
                    rtf::sf::digamma(0.5 * (cc + z0 + k))) -
             1.5 * std::log(M_PI) - target;
    };
    double lo = 0.5, hi = 4.0;
    while (g(hi) < 0.0 && hi < 4096.0) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    c = std::max(1.5, 0.5 * (lo + hi));
    // bucket to powers of two above 1.5 so the Gamma grid is reusable
    double b = 1.5;
    while (b < c) b *= 2.0;
    c = b;
  }

  // Cache holds |Gamma(c+it+z0)/Gamma(c+z0)|-normalized values (bounded), with
  // the real-axis magnitude kept separately in log form; recombining with
  // y^c in a single exponential avoids inf * 0 at large buckets.
  const long long key = static_cast<long long>(z0 * 4.0) + (static_cast<long long>(k) << 4) +
                        (static_cast<long long>(c * 2.0) << 24);
  const KernelGrid* grid = nullptr;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
      KernelGrid g;
      g.vals.resize(static_cast<size_t>(steps) + 1);
      const cplx lg1 = log_gamma_sym2(cplx(1.0, 0.0), k);
      const cplx lgc = log_gamma_sym2(cplx(c + z0, 0.0), k);
      g.log_scale = (lgc - lg1).real();
      for (int i = 0; i <= steps; ++i) {
        const double t = -kT + i * kDt;
        const cplx w(c, t);
        g.vals[static_cast<size_t>(i)] = std::exp(log_gamma_sym2(w + z0, k) - lgc) / w;
      }
      it = cache.emplace(key, std::move(g)).first;
    }
    grid = &it->second;
  }

  const double ly = std::log(y);
  const double mag = std::exp(grid->log_scale + c * ly);
  cplx acc(0.0, 0.0);
  for (int i = 0; i <= steps; ++i) {
    const double t = -kT + i * kDt;
    const cplx val = grid->vals[static_cast<size_t>(i)] * std::polar(mag, t * ly);
    acc += (i == 0 || i == steps) ? 0.5 * val : val;
  }
  return (acc * kDt / (2.0 * M_PI)).real();
}

} // namespace

double adjoint_value_smoothed(const NewformRecord& rec, double X) {
  const int k = rec.weight;
  const double Q = static_cast<double>(rec.level); // sqrt of conductor N^2
  const int M = rec.n_max();
  const auto c = sym2_coefficients(rec, M);
  double sum = 0.0;
  int used = 0;
  for (long long n = 1; n <= M; ++n) {
    const double h1 = smoothing_kernel(1.0, X * Q / n, k);
    const double h0 = smoothing_kernel(0.0, Q / (X * n), k);
    const double term = c[static_cast<size_t>(n)] / n * h1 + c[static_cast<size_t>(n)] / Q * h0;
    sum += term;
    ++used;
    if (std::fabs(h1) < 1e-16 && std::fabs(h0) < 1e-16 && n > 8) break;
  }
  if (used >= M) {
    const double tail = std::fabs(smoothing_kernel(1.0, X * Q / M, k)) +
                        std::fabs(smoothing_kernel(0.0, Q / (X * M), k));
    if (tail > 1e-12) throw std::runtime_error("adjoint_value: insufficient n_max");
  }
  return sum;
}

double adjoint_value(const NewformRecord& rec) {
  const double v1 = adjoint_value_smoothed(rec, 1.0);
  const double v2 = adjoint_value_smoothed(rec, 2.0);
  if (std::fabs(v1 - v2) > 1e-8 * std::max(1.0, std::fabs(v1)))
    throw std::runtime_error("adjoint_value: smoothing parameters disagree");
  if (v1 <= 0.0) throw std::runtime_error("adjoint_value: nonpositive value");
  return v1;
}

double oldform_L_factor(double lambda_q, double Nq) {
  const double denom = 1.0 + lambda_q / std::sqrt(Nq) + 1.0 / Nq;
  if (std::fabs(denom) < 1e-12) throw std::domain_error("oldform_L_factor: vanishing denominator");
  return 1.0 / denom;
}

SpectralMoment spectral_secondmoment(int k, long long q, long long n,
                                     const std::vector<NewformRecord>& level1,
                                     const std::vector<NewformRecord>& levelq) {
  SpectralMoment m;
  if (q == 1) {
    for (const auto& r : level1) {
      if (r.weight != k) continue;
      m.value += r.lam(n) * r.central_value * r.central_value / r.adjoint_value;
    }
    m.new_part = m.value;
    return m;
  }
  const double Nq = static_cast<double>(q);
  const double zq2 = 1.0 / (1.0 - 1.0 / (Nq * Nq));
  const double Vq = Nq + 1.0;
  for (const auto& r : level1) {
    if (r.weight != k) continue;
    m.old_part += (2.0 * Vq / Nq) * r.lam(n) * oldform_L_factor(r.lam(q), Nq) * r.central_value *
                  r.central_value / r.adjoint_value;
  }
  m.new_known = !levelq.empty();
  for (const auto& r : levelq) {
    if (r.weight != k || r.level != q) continue;
    // L^{(q)}(1,Ad) = L(1,Ad)/zeta_q(2); the zeta_q(2)^{-2} prefactor leaves
    // lambda L^2 / (zeta_q(2) L(1,Ad)).
    m.new_part += r.lam(n) * r.central_value * r.central_value / (zq2 * r.adjoint_value);
  }
  m.value = m.old_part + m.new_part;
  return m;
}

SpectralMoment spectral_firstmoment(int k, long long q, long long n,
                                    const std::vector<NewformRecord>& level1,
                                    const std::vector<NewformRecord>& levelq) {
  SpectralMoment m;
  if (q == 1) {
    for (const auto& r : level1) {
      if (r.weight != k) continue;
      m.value += r.lam(n) * r.central_value / r.adjoint_value;
    }
    m.new_part = m.value;
    return m;
  }
  const double Nq = static_cast<double>(q);
  const double zq2 = 1.0 / (1.0 - 1.0 / (Nq * Nq));
  const double Vq = Nq + 1.0;
  for (const auto& r : level1) {
    if (r.weight != k) continue;
    m.old_part += (Vq / Nq) * r.lam(n) * oldform_L_factor(r.lam(q), Nq) * r.central_value /
                  r.adjoint_value;
  }
  m.new_known = !levelq.empty();
  for (const auto& r : levelq) {
    if (r.weight != k || r.level != q) continue;
    m.new_part += r.lam(n) * r.central_value / (zq2 * r.adjoint_value);
  }
  m.value = m.old_part + m.new_part;
  return m;
}

} // namespace rtf::oracle
