#pragma once

#include "nf/field.hpp"
#include "nf/ideal.hpp"
#include "oracle/records.hpp"

#include <complex>
#include <functional>
#include <utility>
#include <vector>

namespace rtf::moll {

using cplx = std::complex<double>;

// Multiplicative handle rho evaluated at a prime of norm Np. The default is
// rho(p) = (1 + Np^{-1})^{-1}.
using RhoHandle = std::function<double(double)>;

RhoHandle default_rho();

// Checks sum_p |1 - rho(p)| / Np < infinity numerically on primes < 10^4;
// throws if the partial sums are still growing.
void validate_rho(const nf::Field& f, const RhoHandle& rho);

struct MollifierSpec {
  nf::Field field;
  double xi = 10.0;
  nf::IdealData q; // level (O_F or prime)
  RhoHandle rho = default_rho();
};

// mu(n) rho(n) / sqrt(Nn) * (log(xi/Nn))^2 / (2 log xi) for Nn <= xi, else 0.
double mollifier_weight(const nf::IdealData& n, const MollifierSpec& spec);

// M_xi(pi) for an oracle record over Q: finite sum of weights times lambda.
double mollifier_value(const oracle::NewformRecord& rec, const MollifierSpec& spec);

// Triple Dirichlet series: direct double sum over ideal pairs of norm <= cutoff.
cplx triple_series_brute(cplx s, cplx s1, cplx s2, const MollifierSpec& spec, double cutoff);

// Euler product over primes away from q, extended far enough that the
// remaining tail is below ~1e-10 in the sampled region.
cplx triple_series_euler(cplx s, cplx s1, cplx s2, const MollifierSpec& spec);

// E(0,0,0; rho, q), evaluated through the zeta_F(2)-factored local product.
double triple_series_E000(const MollifierSpec& spec);

// R(rho) = lim L(1+s,rho)/zeta_F(1+s).
double rho_residue_ratio(const MollifierSpec& spec);

struct LBig {
  double value = 0.0;
  std::string error_budget; // symbolic O-budget, reported not computed
};

// Main term of the mollified singular integral for a handle given as
// (G(0), G'(0)).
LBig l_big(double g0, double gprime0, const MollifierSpec& spec);

// Closed forms of the moment main terms (M1, M2).
std::pair<double, double> moment_main_terms(const std::vector<int>& k, const nf::IdealData& q,
                                            double xi, const nf::Field& f);

// Numeric proportion bound (M1)^2 / (2 N(q) M2).
double proportion_bound(const std::vector<int>& k, const nf::IdealData& q, double xi,
                        const nf::Field& f);

enum class Regime { level_aspect, weight_aspect, fixed_q, double_limit, uniform };

struct Rational {
  long long num = 0, den = 1;
  double value() const { return static_cast<double>(num) / den; }
};

// Exact limiting proportion for the named regime. fixed_q takes the prime norm.
Rational regime_limit(Regime r, long long Nq = 0);

struct HarmonicNormalizers {
  double count_harmonic = 0.0; // ~ sum 1/L(1,Ad)
  double R_qk = 0.0;           // harmonic non-vanishing ratio term at prime level
  double dim_estimate = 0.0;   // ~ #F(k,q)
  double amp_bound = 0.0;      // mollified-value amplification bound
  bool xi_in_window = true;
};

HarmonicNormalizers harmonic_normalizers(const std::vector<int>& k, const nf::IdealData& q,
                                         double xi, const nf::Field& f);

} // namespace rtf::moll
