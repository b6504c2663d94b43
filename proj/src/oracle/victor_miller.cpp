#include "oracle/victor_miller.hpp"

#include <cmath>
#include <stdexcept>

namespace rtf::oracle {

namespace {

// sigma_r(n) for n = 1..nmax.
std::vector<mpz_class> sigma_table(int r, int nmax) {
  std::vector<mpz_class> s(static_cast<size_t>(nmax) + 1, 0);
  for (long long d = 1; d <= nmax; ++d) {
    mpz_class dr;
    mpz_ui_pow_ui(dr.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(r));
    for (long long n = d; n <= nmax; n += d) s[static_cast<size_t>(n)] += dr;
  }
  return s;
}

} // namespace

Series eisenstein_e4(int nmax) {
  auto s3 = sigma_table(3, nmax);
  Series e(static_cast<size_t>(nmax) + 1);
  e[0] = 1;
  for (int n = 1; n <= nmax; ++n) e[static_cast<size_t>(n)] = 240 * s3[static_cast<size_t>(n)];
  return e;
}

Series eisenstein_e6(int nmax) {
  auto s5 = sigma_table(5, nmax);
  Series e(static_cast<size_t>(nmax) + 1);
  e[0] = 1;
  for (int n = 1; n <= nmax; ++n) e[static_cast<size_t>(n)] = -504 * s5[static_cast<size_t>(n)];
  return e;
}

Series series_mul(const Series& a, const Series& b, int nmax) {
  Series c(static_cast<size_t>(nmax) + 1, 0);
  for (int i = 0; i <= nmax && i < static_cast<int>(a.size()); ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    const int jmax = std::min(nmax - i, static_cast<int>(b.size()) - 1);
    for (int j = 0; j <= jmax; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      c[static_cast<size_t>(i + j)] += a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
    }
  }
  return c;
}

Series delta_series(int nmax) {
  // Delta = (E4^3 - E6^2)/1728; the tau(n) values are reproduced, not assumed.
  const Series e4 = eisenstein_e4(nmax);
  const Series e6 = eisenstein_e6(nmax);
  Series e4sq = series_mul(e4, e4, nmax);
  Series e4cu = series_mul(e4sq, e4, nmax);
  Series e6sq = series_mul(e6, e6, nmax);
  Series d(static_cast<size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) {
    mpz_class num = e4cu[static_cast<size_t>(n)] - e6sq[static_cast<size_t>(n)];
    if (num % 1728 != 0) throw std::logic_error("delta_series: non-integral coefficient");
    d[static_cast<size_t>(n)] = num / 1728;
  }
  return d;
}

int dim_cusp_level1(int k) {
  if (k < 12 || k % 2 != 0) return 0;
  return (k % 12 == 2) ? k / 12 - 1 : k / 12;
}

std::vector<Series> miller_cusp_basis(int k, int nmax) {
  if (k % 2 != 0 || k < 12) return {};
  const int d = dim_cusp_level1(k);
  if (d <= 0) return {};
  const Series e4 = eisenstein_e4(nmax);
  const Series e6 = eisenstein_e6(nmax);
  const Series delta = delta_series(nmax);

  // g_i = Delta^i * E4^a * E6^b with 4a + 6b = k - 12i, for i = 1..d.
  std::vector<Series> basis;
  Series deltapow = delta;
  for (int i = 1; i <= d; ++i) {
    const int r = k - 12 * i;
    int b = -1, a = -1;
    if (r % 4 == 0) { a = r / 4; b = 0; }
    else if (r >= 6 && (r - 6) % 4 == 0) { a = (r - 6) / 4; b = 1; }
    if (a < 0) throw std::logic_error("miller_cusp_basis: no (a,b) for remainder weight");
    Series g = deltapow;
    for (int t = 0; t < a; ++t) g = series_mul(g, e4, nmax);
    for (int t = 0; t < b; ++t) g = series_mul(g, e6, nmax);
    basis.push_back(std::move(g));
    if (i < d) deltapow = series_mul(deltapow, delta, nmax);
  }

  // Echelonize: basis[i] = q^{i+1} + O(q^{d+1}). Leading coefficients are 1,
  // so the reduction stays integral.
  for (int i = 0; i < d; ++i) {
    if (basis[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] != 1)
      throw std::logic_error("miller_cusp_basis: unexpected leading coefficient");
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      const mpz_class c = basis[static_cast<size_t>(j)][static_cast<size_t>(i + 1)];
      if (c == 0) continue;
      for (int n = 0; n <= nmax; ++n)
        basis[static_cast<size_t>(j)][static_cast<size_t>(n)] -= c * basis[static_cast<size_t>(i)][static_cast<size_t>(n)];
    }
  }
  return basis;
}

double normalized_coeff(const mpz_class& a, long long n, int k) {
  if (a == 0) return 0.0;
  signed long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  // a = mant * 2^exp2; lambda = a / n^{(k-1)/2}
  const double log2n = std::log2(static_cast<double>(n));
  return mant * std::exp2(static_cast<double>(exp2) - 0.5 * (k - 1) * log2n);
}

} // namespace rtf::oracle
