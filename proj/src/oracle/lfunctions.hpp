#pragma once

#include "oracle/records.hpp"

namespace rtf::oracle {

// Central value L(1/2, pi) by the two-sided incomplete-gamma approximate
// functional equation. Exactly 0 (short-circuit) when the root number is -1.
// Computed at smoothing deltas 1 and 2; throws if they disagree beyond 1e-9
// or if n_max cannot support the sum.
double central_value(const NewformRecord& rec);
double central_value_smoothed(const NewformRecord& rec, double delta);

// Adjoint value L(1, pi, Ad) = L(1, Sym^2 pi) (finite part, q-factor included
// for prime level) via a contour-smoothed approximate functional equation.
double adjoint_value(const NewformRecord& rec);
double adjoint_value_smoothed(const NewformRecord& rec, double X);

// Dirichlet coefficients of Sym^2 pi up to M (index 0 unused).
std::vector<double> sym2_coefficients(const NewformRecord& rec, int M);

// Exact local factor at 1/2 of pi_q twisted by the unramified quadratic
// character: (1 + lambda_q Nq^{-1/2} + Nq^{-1})^{-1}.
double oldform_L_factor(double lambda_q, double Nq);

struct SpectralMoment {
  double value = 0.0;     // the full left-hand side of the trace identity
  double old_part = 0.0;  // old-form contribution (prime level only)
  double new_part = 0.0;  // new-form contribution when records are available
  bool new_known = true;  // false when prime-level records were not supplied
};

// Left-hand sides of the second/first-moment identities at weight k, level q
// (q = 1 means the full level), Hecke index n (a positive integer over Q).
SpectralMoment spectral_secondmoment(int k, long long q, long long n,
                                     const std::vector<NewformRecord>& level1,
                                     const std::vector<NewformRecord>& levelq);
SpectralMoment spectral_firstmoment(int k, long long q, long long n,
                                    const std::vector<NewformRecord>& level1,
                                    const std::vector<NewformRecord>& levelq);

} // namespace rtf::oracle
