// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Tolerances are pinned here, not configurable.

#include "harness/commands.hpp"
#include "moll/mollify.hpp"
#include "oracle/lfunctions.hpp"
#include "oracle/records.hpp"
#include "orb1/firstmoment.hpp"
#include "orb2/secondmoment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

using namespace rtf;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %d [%s]: %s  (%s)\n", idx, name, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

nf::Field field_q() { return nf::field_from_spec("Q"); }

orb2::SecondMomentParams params_for(int k, long long q, long long n, double tol) {
  const nf::Field f = field_q();
  return orb2::SecondMomentParams{
      f, {k}, q == 1 ? nf::IdealData::unit() : nf::IdealData::from_integer(f, q),
      nf::IdealData::from_integer(f, n), tol};
}

} // namespace

int main() {
  // ---- 1: second-moment identity on the grid ------------------------------
  {
    double worst = 0.0, worst_time = 0.0;
    bool pass = true;
    for (int k : {12, 16, 20}) {
      const auto recs = oracle::level1_eigenforms(k, 1000);
      for (long long n : {1LL, 2LL, 3LL, 4LL}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto geo = orb2::secondmoment_geometric(params_for(k, 1, n, 1e-8));
        const auto spec = oracle::spectral_secondmoment(k, 1, n, recs, {});
        const double rel =
            std::fabs(spec.value - geo.total()) / std::max(std::fabs(spec.value), 1e-3);
        worst = std::max(worst, rel);
        worst_time = std::max(worst_time, seconds_since(t0));
        if (rel >= 1e-4 || seconds_since(t0) >= 60.0) pass = false;
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst residual %.2e, slowest case %.2fs", worst, worst_time);
    report(1, "second-moment identity", pass, buf);
  }

  // ---- 2: first-moment identity on the grid -------------------------------
  {
    double worst = 0.0, worst_time = 0.0;
    bool pass = true;
    for (int k : {12, 16, 20}) {
      const auto recs = oracle::level1_eigenforms(k, 1000);
      for (long long n : {1LL, 2LL, 3LL, 4LL}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto p = params_for(k, 1, n, 1e-8);
        const double geom = orb1::firstmoment_main(p) + orb1::tail_sum(p).value;
        const auto spec = oracle::spectral_firstmoment(k, 1, n, recs, {});
        const double rel = std::fabs(spec.value - geom) / std::max(std::fabs(spec.value), 1e-3);
        worst = std::max(worst, rel);
        worst_time = std::max(worst_time, seconds_since(t0));
        if (rel >= 1e-4 || seconds_since(t0) >= 30.0) pass = false;
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst residual %.2e, slowest case %.2fs", worst, worst_time);
    report(2, "first-moment identity", pass, buf);
  }

  // ---- 3: forced-vanishing cancellation -----------------------------------
  {
    // scale anchors at k = 12
    const double scale2 = std::fabs(orb2::secondmoment_geometric(params_for(12, 1, 1, 1e-8)).total());
    const auto p12 = params_for(12, 1, 1, 1e-8);
    const double scale1 = std::fabs(orb1::firstmoment_main(p12) + orb1::tail_sum(p12).value);
    double worst = 0.0;
    bool pass = true;
    for (int k : {14, 18, 22, 26}) {
      const auto p = params_for(k, 1, 1, 1e-10);
      const double g2 = std::fabs(orb2::secondmoment_geometric(p).total());
      const double g1 = std::fabs(orb1::firstmoment_main(p) + orb1::tail_sum(p).value);
      worst = std::max(worst, std::max(g2 / scale2, g1 / scale1));
      if (g2 >= 1e-6 * scale2 || g1 >= 1e-6 * scale1) pass = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst |geometric|/scale %.2e", worst);
    report(3, "forced-vanishing cancellation", pass, buf);
  }

  // ---- 4: prime-level positivity (+ ingested identity when data given) ----
  {
    bool pass = true;
    double most_negative = 1e300;
    for (long long q : {5LL, 7LL, 11LL})
      for (int k : {12, 16}) {
        const auto recs = oracle::level1_eigenforms(k, 1000);
        const auto geo = orb2::secondmoment_geometric(params_for(k, q, 1, 1e-8));
        const auto spec = oracle::spectral_secondmoment(k, q, 1, recs, {});
        const double predicted = geo.total() - spec.old_part;
        const double scale = std::max(std::fabs(geo.total()), 1.0);
        most_negative = std::min(most_negative, predicted / scale);
        if (predicted < -1e-6 * scale) pass = false;
      }
    char minbuf[48];
    std::snprintf(minbuf, sizeof minbuf, "%.4f", most_negative);
    std::string detail = std::string("min(predicted new)/scale = ") + minbuf;
    if (const char* ingest = std::getenv("RTFVERIFY_INGEST")) {
      harness::RunConfig cfg;
      cfg.command = "verify-second";
      cfg.weights = {12, 16};
      cfg.levels = {5, 7, 11};
      cfg.hecke = {1};
      cfg.tol = 1e-3;
      cfg.ingest_path = ingest;
      const auto res = harness::run_command(cfg);
      pass = pass && res.ok;
      detail += res.ok ? "; ingested identity < 1e-3" : "; ingested identity FAILED";
    } else {
      detail += "; ingest check skipped (set RTFVERIFY_INGEST to run; data-dependent)";
    }
    report(4, "prime-level positivity", pass, detail);
  }

  // ---- 5: proportion constants ---------------------------------------------
  {
    bool pass = true;
    pass &= moll::regime_limit(moll::Regime::level_aspect).num == 1 &&
            moll::regime_limit(moll::Regime::level_aspect).den == 4;
    pass &= moll::regime_limit(moll::Regime::weight_aspect).num == 1 &&
            moll::regime_limit(moll::Regime::weight_aspect).den == 5;
    pass &= moll::regime_limit(moll::Regime::double_limit).num == 1 &&
            moll::regime_limit(moll::Regime::double_limit).den == 10;
    // Eq.-(1.4)-style rational at sampled prime norms
    for (long long nq : {2LL, 3LL, 5LL, 101LL}) {
      const auto r = moll::regime_limit(moll::Regime::fixed_q, nq);
      const double x = 1.0 / static_cast<double>(nq);
      pass &= std::fabs(r.value() - std::pow(1.0 - x, 3.0) / (10.0 * (1.0 + x))) < 1e-15;
    }
    // grid minimum over the uniform window, N(q)||k|| up to 1e6; the
    // degenerate branch q = O_F with delta_k = 0 (identically vanishing
    // central values, M1 = 0) is excluded from the sample
    const nf::Field f = field_q();
    double grid_min = 1.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (long long nq : {1LL, 2LL, 3LL, 5LL, 11LL, 31LL, 101LL, 1009LL, 10007LL, 100003LL}) {
      for (int kv = 4; kv <= 1000; kv += 2) {
        const double knorm = kv;
        if (nq * knorm > 1e6) break;
        const int dk = (kv / 2) % 2 == 0 ? 1 : 0;
        if (nq == 1 && dk == 0) continue;
        const auto q = nq == 1 ? nf::IdealData::unit() : nf::IdealData::from_integer(f, nq);
        const double xi = std::max(std::sqrt(static_cast<double>(nq)) * std::pow(knorm, 0.25), 1.02);
        grid_min = std::min(grid_min, moll::proportion_bound({kv}, q, xi, f));
      }
    }
    pass &= grid_min >= 0.01;
    char buf[160];
    std::snprintf(buf, sizeof buf, "limits 1/4, 1/5, 1/10, (1-x)^3/(10(1+x)); grid min %.4f in %.2fs",
                  grid_min, seconds_since(t0));
    report(5, "proportion constants", pass, buf);
  }

  // ---- 6: Euler-product / brute-force equivalence --------------------------
  {
    const nf::Field f = field_q();
    moll::MollifierSpec spec{f, 10.0, nf::IdealData::unit(), moll::default_rho()};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ure(1.75, 2.5);
    std::uniform_real_distribution<double> uim(-0.5, 0.5);
    double worst = 0.0;
    bool pass = true;
    for (int i = 0; i < 10; ++i) {
      const moll::cplx s{ure(rng) - 0.25, uim(rng)};
      const moll::cplx s1{ure(rng), uim(rng)};
      const moll::cplx s2{ure(rng), uim(rng)};
      const auto brute = moll::triple_series_brute(s, s1, s2, spec, 3000.0);
      const auto euler = moll::triple_series_euler(s, s1, s2, spec);
      const double rel = std::abs(brute - euler) / std::abs(euler);
      worst = std::max(worst, rel);
      if (rel >= 1e-8) pass = false;
    }
    double worst_e = 0.0;
    {
      const double zeta2 = M_PI * M_PI / 6.0;
      worst_e = std::fabs(moll::triple_series_E000(spec) - 1.0 / zeta2) * zeta2;
      for (long long nq : {2LL, 5LL}) {
        moll::MollifierSpec sq{f, 10.0, nf::IdealData::from_integer(f, nq), moll::default_rho()};
        const double x = 1.0 / static_cast<double>(nq);
        const double closed =
            std::pow(1.0 / (1.0 - x), 3.0) * std::pow(1.0 - x * x, 2.0) / zeta2;
        worst_e = std::max(worst_e, std::fabs(moll::triple_series_E000(sq) - closed) / closed);
      }
      if (worst_e >= 1e-12) pass = false;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst brute/Euler rel %.2e, worst E(0,0,0) rel %.2e", worst, worst_e);
    report(6, "Euler-product equivalence", pass, buf);
  }

  // ---- 7: special-function suite -------------------------------------------
  {
    const auto t0 = std::chrono::steady_clock::now();
    harness::RunConfig cfg;
    cfg.command = "specfun-check";
    const auto res = harness::run_command(cfg);
    const double secs = seconds_since(t0);
    const bool pass = res.ok && secs < 60.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "all suites clean in %.2fs", secs);
    report(7, "special-function suite", pass, buf);
  }

  // ---- 8: harmonic-count trend ---------------------------------------------
  {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    for (int k : {40, 60, 80}) {
      const auto recs = oracle::level1_eigenforms(k, 1000);
      double s = 0.0;
      for (const auto& r : recs) s += 1.0 / r.adjoint_value;
      const double ratio = s / (2.0 * (k - 1.0) / (4.0 * M_PI * M_PI));
      char rbuf[64];
      std::snprintf(rbuf, sizeof rbuf, "k=%d: %.10f  ", k, ratio);
      detail += rbuf;
      if (ratio < 0.8 || ratio > 1.2) pass = false;
    }
    const double secs = seconds_since(t0);
    pass &= secs < 600.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "in %.1fs", secs);
    report(8, "harmonic-count trend", pass, detail + buf);
  }

  // ---- 9: determinism across thread counts ---------------------------------
  {
    bool pass = true;
    for (const char* cmd : {"verify-second", "verify-first"}) {
      harness::RunConfig cfg;
      cfg.command = cmd;
      cfg.weights = {12, 16};
      cfg.levels = {1, 5};
      cfg.hecke = {1, 2};
      cfg.tol = 1e-4;
      cfg.threads = 1;
      const auto r1 = harness::run_command(cfg);
      cfg.threads = 8;
      const auto r8 = harness::run_command(cfg);
      if (r1.report.dump() != r8.report.dump()) pass = false;
    }
    report(9, "thread-count determinism", pass, "threads 1 vs 8 reports bitwise identical");
  }

  std::printf("%s\n", failures == 0 ? "acceptance: ALL CRITERIA PASS" : "acceptance: FAILURES");
  return failures == 0 ? 0 : 1;
}
