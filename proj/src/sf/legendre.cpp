#include "sf/legendre.hpp"

#include "sf/special.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rtf::sf {

double legendre_p(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_p: negative degree");
  if (n == 0) return 1.0;
  double pm1 = 1.0, p = x;
  for (int m = 1; m < n; ++m) {
    const double pn = ((2.0 * m + 1.0) * x * p - m * pm1) / (m + 1.0);
    pm1 = p;
    p = pn;
  }
  return p;
}

namespace {

double q0(double x) { return 0.5 * std::log((x + 1.0) / (x - 1.0)); }

// Downward (Miller) recurrence; Q is the dominant solution as n decreases.
double legendre_q_backward(int n, double x) {
  const double t = x + std::sqrt(x * x - 1.0);
  const double decade = std::max(2.0 * std::log10(t), 1e-4);
  int buffer = static_cast<int>(std::ceil(36.0 / decade)) + 10;
  if (buffer > 400000) buffer = 400000;
  const int top = n + buffer;
  std::vector<double> q(static_cast<size_t>(top) + 2, 0.0);
  q[static_cast<size_t>(top) + 1] = 0.0;
  q[static_cast<size_t>(top)] = 1e-280;
  for (int m = top; m >= 1; --m) {
    q[static_cast<size_t>(m) - 1] =
        ((2.0 * m + 1.0) * x * q[static_cast<size_t>(m)] - (m + 1.0) * q[static_cast<size_t>(m) + 1]) / m;
    if (std::fabs(q[static_cast<size_t>(m) - 1]) > 1e250) {
      for (int i = m - 1; i <= top + 1; ++i) q[static_cast<size_t>(i)] *= 1e-250;
    }
  }
  return q[static_cast<size_t>(n)] * (q0(x) / q[0]);
}

double q_integrand(int n, double x, double t) {
  // (1-t^2)^n / (x-t)^{n+1}, in log form to avoid under/overflow.
  const double one_minus = (1.0 - t) * (1.0 + t);
  if (one_minus <= 0.0) return 0.0;
  return std::exp(n * std::log(one_minus) - (n + 1.0) * std::log(x - t));
}

double adaptive_simpson(int n, double x, double a, double b, double fa, double fm, double fb,
                        double tol_abs, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = q_integrand(n, x, lm), frm = q_integrand(n, x, rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol_abs) return left + right + delta / 15.0;
  return adaptive_simpson(n, x, a, m, fa, flm, fm, 0.5 * tol_abs, depth - 1) +
         adaptive_simpson(n, x, m, b, fm, frm, fb, 0.5 * tol_abs, depth - 1);
}

} // namespace

double legendre_q_quadrature(int n, double x) {
  if (x <= 1.0) throw std::domain_error("legendre_q_quadrature: requires x > 1");
  // rough composite pass to set the absolute refinement target; the integrand
  // peaks sharply toward t = 1 for x near 1, so sample a crowded grid there
  double rough = 0.0;
  const int pre = 4096;
  for (int i = 0; i < pre; ++i) {
    const double t0 = -1.0 + 2.0 * i / pre;
    const double t1 = -1.0 + 2.0 * (i + 1) / pre;
    rough += (t1 - t0) * q_integrand(n, x, 0.5 * (t0 + t1));
  }
  const double tol_abs = 1e-14 * (rough + 1e-300);
  const double fa = q_integrand(n, x, -1.0);
  const double fb = q_integrand(n, x, 1.0);
  const double fm = q_integrand(n, x, 0.0);
  const double integral =
      adaptive_simpson(n, x, -1.0, 0.0, fa, q_integrand(n, x, -0.5), fm, 0.5 * tol_abs, 52) +
      adaptive_simpson(n, x, 0.0, 1.0, fm, q_integrand(n, x, 0.5), fb, 0.5 * tol_abs, 52);
  return std::ldexp(integral, -n - 1);
}

double legendre_q(int n, double x) {
  if (n < 0) throw std::domain_error("legendre_q: negative degree");
  if (std::fabs(x) <= 1.0) throw std::domain_error("legendre_q: requires |x| > 1");
  if (x < 0.0) {
    const double v = legendre_q(n, -x);
    return (n % 2 == 0) ? -v : v;
  }
  if (n == 0) return q0(x);
  return legendre_q_backward(n, x);
}

double curly_p(double u, int k) {
  if (k < 4 || k % 2 != 0) throw std::domain_error("curly_p: k must be even and >= 4");
  if (u == 0.0 || u == -1.0) throw std::domain_error("curly_p: logarithmic singularity");
  const double arg = 2.0 * u + 1.0;
  const int half = k / 2;
  if (std::fabs(arg) > 1.0) return 2.0 * legendre_q(half - 1, arg);
  // Continuation of 2 Q_{k/2-1} across the cut: the classical expansion
  //   Q_n(x) = (1/2) P_n(x) log((1+x)/(1-x))
  //            - sum_{j=1}^{floor((n+1)/2)} (2n-4j+3)/((2j-1)(n-j+1)) P_{n-2j+1}(x)
  // with n = k/2-1 and log|u/(u+1)| = -log|(1+x)/(1-x)| at x = 2u+1.
  double sum = 0.0;
  for (int j = 1; j <= k / 4; ++j) {
    const double coeff = (k - 4.0 * j + 1.0) / ((2.0 * j - 1.0) * (half - j));
    sum += coeff * legendre_p(half - 2 * j, arg);
  }
  return -(legendre_p(half - 1, arg) * std::log(std::fabs(u / (u + 1.0))) + 2.0 * sum);
}

double gauss_2f1_check(int k, double z) {
  if (!(z > 0.0 && z < 1.0)) throw std::domain_error("gauss_2f1_check: requires 0 < z < 1");
  const double a = 0.5 * k;
  const double w = 1.0 - z;
  double term = 1.0, sum = 1.0;
  for (int m = 0; m < 2000000; ++m) {
    term *= (a + m) * (a + m) / ((k + m) * (1.0 + m)) * w;
    sum += term;
    if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
  }
  const double lhs = beta_fn(a, a) * sum;
  const double rhs = 2.0 * std::pow(1.0 - z, -a) * legendre_q(k / 2 - 1, (1.0 + z) / (1.0 - z));
  return std::fabs(lhs - rhs) / std::fabs(rhs);
}

} // namespace rtf::sf
