#include "sf/kummer.hpp"

#include "sf/special.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rtf::sf {

namespace {

struct GaussLegendre {
  std::vector<double> node, weight;
  explicit GaussLegendre(int n) : node(n), weight(n) {
    // Roots of P_n by Newton iteration, nodes mapped later by caller.
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int m = 1; m < n; ++m) {
          const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int m = 1; m < n; ++m) {
        const double p2 = ((2.0 * m + 1.0) * x * p1 - m * p0) / (m + 1.0);
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (x * p1 - p0) / (x * x - 1.0);
      node[static_cast<size_t>(i)] = x;
      weight[static_cast<size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

const GaussLegendre& gl240() {
  static const GaussLegendre g(240);
  return g;
}

void check_k(int k) {
  if (k < 4 || k % 2 != 0) throw std::domain_error("kummer_imag: k must be even and >= 4");
}

} // namespace

std::complex<double> kummer_imag_integral(int k, double x) {
  check_k(k);
  // 1F1(k/2;k;ix) = [B(k/2,k/2)]^{-1} int_0^1 e^{ixt} (t(1-t))^{k/2-1} dt
  const auto& g = gl240();
  const double a = 0.5 * k;
  const double logbeta = std::lgamma(a) + std::lgamma(a) - std::lgamma(static_cast<double>(k));
  std::complex<double> acc(0.0, 0.0);
  for (size_t i = 0; i < g.node.size(); ++i) {
    const double t = 0.5 * (g.node[i] + 1.0);
    const double w = 0.5 * g.weight[i];
    const double base = t * (1.0 - t);
    const double mag = std::exp((a - 1.0) * std::log(base) - logbeta);
    acc += w * mag * std::complex<double>(std::cos(x * t), std::sin(x * t));
  }
  return acc;
}

std::complex<double> kummer_imag_bessel(int k, double x) {
  check_k(k);
  if (x == 0.0) return {1.0, 0.0};
  if (x < 0.0) return std::conj(kummer_imag_bessel(k, -x));
  // 1F1(nu+1/2; 2nu+1; 2iz) = Gamma(nu+1) e^{iz} (z/2)^{-nu} J_nu(z), nu = (k-1)/2.
  const double nu = 0.5 * (k - 1.0);
  const double z = 0.5 * x;
  const double j = bessel_j(nu, z);
  if (j == 0.0) return {0.0, 0.0};
  const double mag = (j > 0 ? 1.0 : -1.0) *
                     std::exp(std::lgamma(nu + 1.0) - nu * std::log(0.5 * z) + std::log(std::fabs(j)));
  return mag * std::complex<double>(std::cos(z), std::sin(z));
}

std::complex<double> kummer_imag(int k, double x) {
  check_k(k);
  if (std::fabs(x) <= 50.0) return kummer_imag_integral(k, x);
  return kummer_imag_bessel(k, x);
}

} // namespace rtf::sf
