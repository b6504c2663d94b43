#pragma once

#include "oracle/lfunctions.hpp"
#include "orb2/secondmoment.hpp"

#include <complex>

namespace rtf::orb1 {

using cplx = std::complex<double>;
using FirstMomentParams = orb2::SecondMomentParams;

// Finite-place product I_fin(t) (prefactor V_q / (sqrt(N n) D_F^2) included);
// t must be a nonzero element of q n^{-1}.
cplx i_fin(const nf::Field& f, const nf::FieldElement& t, const nf::IdealData& n,
           const nf::IdealData& q);

// Archimedean product I_infty(t) exactly as the Kummer-weighted closed form,
// with conjugation at negative embeddings.
cplx i_inf(const nf::Field& f, const nf::FieldElement& t, const std::vector<int>& weights);

// Closed-form main term of the first-moment identity.
double firstmoment_main(const FirstMomentParams& p);

struct TailSum {
  double value = 0.0;
  double bound = 0.0;
  long long shells_evaluated = 0;
};

// The Kummer-weighted lattice tail (spectrally normalized, so that
// spectral first moment = firstmoment_main + tail).
TailSum tail_sum(const FirstMomentParams& p);

struct OldformFirstMoment {
  double exact = 0.0;       // (V_q/N_q) sum lambda(n) L_piq L(1/2)/L(1,Ad) from records
  double asymptotic = 0.0;  // 4 delta_k D^{3/2}/sqrt(N n) prod (k_v-1)/(4 pi^2)
};

OldformFirstMoment oldform_firstmoment(const FirstMomentParams& p,
                                       const std::vector<oracle::NewformRecord>& level1);

} // namespace rtf::orb1
