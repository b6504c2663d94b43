#include <doctest.h>

#include "oracle/records.hpp"
#include "orb1/firstmoment.hpp"

#include <cmath>
#include <cstring>

using namespace rtf;
using orb1::FirstMomentParams;

namespace {

FirstMomentParams make_params(int k, long long q, long long n, double tol = 1e-8) {
  static const nf::Field field = nf::field_from_spec("Q");
  return FirstMomentParams{field,
                           {k},
                           q == 1 ? nf::IdealData::unit() : nf::IdealData::from_integer(field, q),
                           nf::IdealData::from_integer(field, n), tol};
}

} // namespace

TEST_CASE("i_fin values over Q") {
  const nf::Field f = nf::field_from_spec("Q");
  const auto unit = nf::IdealData::unit();
  // t = 1: every local factor is 1, prefactor V/D^2 = 1
  CHECK(orb1::i_fin(f, nf::FieldElement::from_rational(1, 1), unit, unit).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
  // t = 2: the p = 2 factor is 1 + e^{2 pi i (1/2)} = 0
  CHECK(std::abs(orb1::i_fin(f, nf::FieldElement::from_rational(2, 1), unit, unit)) ==
        doctest::Approx(0.0));
  // boundary at v | n: e_v(t) = -e_v(n) leaves only the non-strict summand
  const auto n2 = nf::IdealData::from_integer(f, 2);
  CHECK(orb1::i_fin(f, nf::FieldElement::from_rational(1, 2), n2, unit).real() ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  // prime-level gate: e_q(t) = 0 kills the term
  const auto q5 = nf::IdealData::from_integer(f, 5);
  CHECK(std::abs(orb1::i_fin(f, nf::FieldElement::from_rational(2, 1), unit, q5)) == 0.0);
  CHECK_THROWS(orb1::i_fin(f, nf::FieldElement{0, 0, 1}, unit, unit));
}

TEST_CASE("i_inf conjugation and scale") {
  const nf::Field f = nf::field_from_spec("Q");
  const auto plus = orb1::i_inf(f, nf::FieldElement::from_rational(3, 2), {12});
  const auto minus = orb1::i_inf(f, nf::FieldElement::from_rational(-3, 2), {12});
  CHECK(std::abs(minus - std::conj(plus)) < 1e-15);
  CHECK(std::abs(minus) == doctest::Approx(std::abs(plus)));
  // |t|^{-1/2-eps}-type decay across a dyadic range (Lemma-9.8 flavor)
  double C = 0.0;
  for (double t : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
    const auto v = orb1::i_inf(f, nf::FieldElement::from_rational(static_cast<long long>(t), 1), {12});
    C = std::max(C, std::abs(v) * std::pow(t, 0.5 + 0.01));
  }
  for (double t : {64.0, 128.0}) {
    const auto v = orb1::i_inf(f, nf::FieldElement::from_rational(static_cast<long long>(t), 1), {12});
    CHECK(std::abs(v) <= 2.0 * C * std::pow(t, -0.5 - 0.01));
  }
}

TEST_CASE("first moment main term") {
  CHECK(orb1::firstmoment_main(make_params(12, 1, 1)) ==
        doctest::Approx(11.0 / (M_PI * M_PI)).epsilon(1e-14));
  CHECK(orb1::firstmoment_main(make_params(14, 1, 1)) == 0.0);
  CHECK(orb1::firstmoment_main(make_params(12, 1, 4)) ==
        doctest::Approx(0.5 * 11.0 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("tail sum stability and determinism") {
  auto p = make_params(12, 1, 3, 1e-8);
  const auto a = orb1::tail_sum(p);
  auto pt = make_params(12, 1, 3, 1e-10);
  const auto b = orb1::tail_sum(pt);
  CHECK(std::fabs(a.value - b.value) <= 1e-8);
  const auto again = orb1::tail_sum(p);
  CHECK(std::memcmp(&again.value, &a.value, sizeof(double)) == 0);
}

TEST_CASE("vanishing weights: main and tail cancel") {
  auto p = make_params(14, 1, 1);
  const auto t = orb1::tail_sum(p);
  CHECK(std::fabs(orb1::firstmoment_main(p) + t.value) < 1e-6);
}

TEST_CASE("tail growth bound over a sweep") {
  double C = 0.0;
  for (int k : {12, 16, 20})
    for (long long n : {1LL, 2LL, 3LL, 4LL}) {
      auto p = make_params(k, 1, n, 1e-7);
      const auto t = orb1::tail_sum(p);
      C = std::max(C, std::fabs(t.value) / std::pow(static_cast<double>(n), 0.55));
    }
  CHECK(C < 5.0);
}

TEST_CASE("old form first moment") {
  const nf::Field f = nf::field_from_spec("Q");
  // empty spectrum below weight 12
  auto p10 = make_params(4, 5, 1);
  CHECK(orb1::oldform_firstmoment(p10, {}).exact == 0.0);

  const auto r12 = oracle::level1_eigenforms(12, 600);
  auto p = make_params(12, 5, 1);
  const auto old = orb1::oldform_firstmoment(p, r12);
  const double expect = (6.0 / 5.0) * oracle::oldform_L_factor(r12[0].lam(5), 5.0) *
                        r12[0].central_value / r12[0].adjoint_value;
  CHECK(old.exact == doctest::Approx(expect).epsilon(1e-13));
  CHECK(old.asymptotic == doctest::Approx(4.0 * 11.0 / (4.0 * M_PI * M_PI)).epsilon(1e-14));

  // exact/asymptotic trend toward 1 on average over k = 12..32
  double ratio_sum = 0.0;
  int count = 0;
  for (int k : {12, 16, 20, 24, 28, 32}) {
    const auto recs = oracle::level1_eigenforms(k, 600);
    auto pk = make_params(k, 5, 1);
    const auto o = orb1::oldform_firstmoment(pk, recs);
    ratio_sum += o.exact / o.asymptotic;
    ++count;
  }
  const double mean = ratio_sum / count;
  CHECK(mean > 0.75);
  CHECK(mean < 1.25);
}
