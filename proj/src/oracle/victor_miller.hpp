#pragma once

#include <gmpxx.h>

#include <vector>

namespace rtf::oracle {

// Dense integer q-expansion a[0..nmax] (a[0] = constant term).
using Series = std::vector<mpz_class>;

Series eisenstein_e4(int nmax);
Series eisenstein_e6(int nmax);
Series delta_series(int nmax);
Series series_mul(const Series& a, const Series& b, int nmax);

// Echelonized basis of the weight-k level-1 cusp space: result[i] = q^{i+1} + O(q^{d+1}),
// i = 0..d-1, coefficients exact to q^nmax.
std::vector<Series> miller_cusp_basis(int k, int nmax);

int dim_cusp_level1(int k);

// Exact double value of a(n)/n^{(k-1)/2} for an mpz coefficient.
double normalized_coeff(const mpz_class& a, long long n, int k);

} // namespace rtf::oracle
