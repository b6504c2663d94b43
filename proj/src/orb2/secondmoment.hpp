#pragma once

#include "nf/element.hpp"
#include "nf/field.hpp"
#include "nf/ideal.hpp"

#include <complex>
#include <vector>

namespace rtf::orb2 {

using cplx = std::complex<double>;

struct SecondMomentParams {
  nf::Field field;
  std::vector<int> weights;  // k_v, even, >= 4, one per infinite place
  nf::IdealData q;           // O_F or a prime ideal
  nf::IdealData n;           // integral, coprime to q
  double tol = 1e-8;

  double Nq() const { return q.norm(); }
  double Vq() const { return q.is_unit_ideal() ? 1.0 : q.norm() + 1.0; }
  // delta_{k,q} = 1_{q proper} + 1_{q = O_F & sum k_v = 0 mod 4}
  int delta_kq() const;
  int delta_k() const;
  double knorm() const;
  void validate() const;
};

struct GeometricBreakdown {
  double main_term = 0.0;
  double regular_sum = 0.0;
  double truncation_bound = 0.0;
  long long shells_evaluated = 0;
  double total() const { return main_term + regular_sum; }
};

// G_{n,q}(s) of the main-term contour integrand.
cplx g_function(const SecondMomentParams& p, cplx s);

// d/ds G_{n,q}(s) at s = 0 via the digamma closed form.
double g_prime0(const SecondMomentParams& p);

struct SingularMain {
  double derivative_form = 0.0; // (Nq+1) delta [c0 G(0) + R G'(0)]
  double contour_form = 0.0;    // trapezoid contour quadrature on |s| = 0.1
  double value() const { return derivative_form; }
};

// Both evaluations of the singular main term; throws if they disagree beyond
// 1e-7 relative.
SingularMain singular_main(const SecondMomentParams& p);

// prod_{v finite} e_{v,n}(u); u must lie in q n^{-1} minus {0,-1}.
double e_factor(const nf::Field& f, const nf::FieldElement& u, const nf::IdealData& n,
                const nf::IdealData& q);

// Shell-truncated regular orbital sum (the full second term of the identity,
// archimedean prefactor included). reflected = true enumerates via
// u -> -(1+u) for the invariance property test.
GeometricBreakdown regular_sum(const SecondMomentParams& p, bool reflected = false);

// main + regular.
GeometricBreakdown secondmoment_geometric(const SecondMomentParams& p);

} // namespace rtf::orb2
