#include "oracle/records.hpp"

#include "oracle/lfunctions.hpp"
#include "oracle/victor_miller.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rtf::oracle {

namespace {

// Coordinates of a cusp form in the echelon basis are its coefficients a(1..d).
// The Hecke matrix and eigenbasis are assembled from the exact expansions.
struct EigenSplit {
  std::vector<std::vector<double>> combos; // combos[f][i]: weight of basis form i in eigenform f
  std::vector<double> lambda_p;            // eigenvalue of the diagonalized T_p, normalized
  long long p = 2;
};

EigenSplit diagonalize(const std::vector<Series>& basis, int k, int nmax) {
  const int d = static_cast<int>(basis.size());
  EigenSplit out;
  if (d == 1) {
    out.combos = {{1.0}};
    out.lambda_p = {normalized_coeff(basis[0][2], 2, k)};
    out.p = 2;
    return out;
  }
  for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL}) {
    if (p * d > nmax) break;
    mpz_class pk1;
    mpz_ui_pow_ui(pk1.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k - 1));
    // Matrix of T_p on the echelon coordinates (coordinate j of a form is its
    // j-th coefficient): M[j][i] = g_i[p j] + p^{k-1} g_i[j/p]. Conjugated by
    // diag(j^{(k-1)/2}) and divided by p^{(k-1)/2} so that the entries and the
    // eigenvalues sit at lambda scale.
    const double half = 0.5 * (k - 1);
    Eigen::MatrixXd A(d, d);
    for (int i = 1; i <= d; ++i) {
      for (int j = 1; j <= d; ++j) {
        mpz_class c = basis[static_cast<size_t>(i - 1)][static_cast<size_t>(p * j)];
        if (j % p == 0) c += pk1 * basis[static_cast<size_t>(i - 1)][static_cast<size_t>(j / p)];
        double entry = 0.0;
        if (c != 0) {
          signed long e2 = 0;
          const double mant = mpz_get_d_2exp(&e2, c.get_mpz_t());
          const double scale = half * (std::log2(static_cast<double>(i)) -
                                       std::log2(static_cast<double>(j)) -
                                       std::log2(static_cast<double>(p)));
          entry = mant * std::exp2(static_cast<double>(e2) + scale);
        }
        A(j - 1, i - 1) = entry;
      }
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) continue;
    std::vector<double> evs(static_cast<size_t>(d));
    bool real_ok = true;
    for (int i = 0; i < d; ++i) {
      evs[static_cast<size_t>(i)] = es.eigenvalues()(i).real();
      if (std::fabs(es.eigenvalues()(i).imag()) > 1e-8) real_ok = false;
    }
    if (!real_ok) continue;
    double mindiff = 1e308;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        mindiff = std::min(mindiff, std::fabs(evs[static_cast<size_t>(i)] - evs[static_cast<size_t>(j)]));
    if (mindiff < 1e-9) continue;
    out.p = p;
    out.lambda_p = evs;
    out.combos.resize(static_cast<size_t>(d));
    const Eigen::MatrixXcd vecs = es.eigenvectors();
    for (int f = 0; f < d; ++f) {
      const Eigen::VectorXcd v = vecs.col(f);
      std::vector<double> combo(static_cast<size_t>(d));
      for (int j = 1; j <= d; ++j)
        combo[static_cast<size_t>(j - 1)] =
            v(j - 1).real() * std::exp2(half * std::log2(static_cast<double>(j)));
      const double c1 = combo[0];
      for (auto& c : combo) c /= c1;
      out.combos[static_cast<size_t>(f)] = std::move(combo);
    }
    return out;
  }
  throw std::runtime_error("diagonalize: no Hecke operator with distinct eigenvalues found");
}

std::string cache_path(const std::string& dir, int k, int nmax) {
  return dir + "/level1/k" + std::to_string(k) + "_n" + std::to_string(nmax) + ".csv";
}

} // namespace

void check_multiplicativity(const NewformRecord& rec, double tol) {
  const int n_max = rec.n_max();
  const double scale = 64.0; // |lambda| <= d(n); relation residuals compared at this scale
  for (long long m = 2; m * m <= n_max; ++m)
    for (long long n = m; m * n <= n_max; ++n) {
      if (std::gcd(m, n) != 1) continue;
      const double res = std::fabs(rec.lam(m * n) - rec.lam(m) * rec.lam(n));
      if (res > tol * scale) {
        std::ostringstream os;
        os << "multiplicativity violated at (m,n)=(" << m << "," << n << "): residual " << res;
        throw std::runtime_error(os.str());
      }
    }
  for (long long p = 2; p * p <= n_max; ++p) {
    bool prime = true;
    for (long long q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    for (long long pr = p; pr * p <= n_max; pr *= p) {
      const double lhs = rec.lam(pr * p);
      const double rhs = rec.lam(p) * rec.lam(pr) - (pr == p ? 1.0 : rec.lam(pr / p)) *
                         (rec.level % p == 0 ? 0.0 : 1.0);
      if (std::fabs(lhs - rhs) > tol * scale) {
        std::ostringstream os;
        os << "Hecke relation violated at p=" << p << " n=" << pr * p;
        throw std::runtime_error(os.str());
      }
    }
  }
}

bool deligne_ok(const NewformRecord& rec) {
  for (long long p = 2; p <= rec.n_max(); ++p) {
    bool prime = true;
    for (long long q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    if (std::fabs(rec.lam(p)) > 2.0 + 1e-9) return false;
  }
  return true;
}

std::vector<NewformRecord> level1_eigenforms(int k, int n_max, const std::string& cache_dir) {
  if (k % 2 != 0 || k < 12) return {};
  const int d = dim_cusp_level1(k);
  if (d == 0) return {};

  if (!cache_dir.empty()) {
    const std::string path = cache_path(cache_dir, k, n_max);
    if (std::filesystem::exists(path)) {
      auto recs = ingest_newforms(path);
      bool ok = static_cast<int>(recs.size()) == d;
      for (auto& r : recs) {
        r.source = Source::computed;
        if (r.weight != k || r.level != 1) ok = false;
      }
      if (ok) return recs;
    }
  }

  const auto basis = miller_cusp_basis(k, std::max(n_max, 2 * d + 2));
  const auto split = diagonalize(basis, k, std::max(n_max, 2 * d + 2));

  std::vector<NewformRecord> recs;
  for (int f = 0; f < d; ++f) {
    NewformRecord rec;
    rec.weight = k;
    rec.level = 1;
    rec.source = Source::computed;
    rec.root_number = (k % 4 == 0) ? 1 : -1;
    rec.lambda.assign(static_cast<size_t>(n_max) + 1, 0.0);
    for (long long n = 1; n <= n_max; ++n) {
      double acc = 0.0;
      for (int i = 0; i < d; ++i)
        acc += split.combos[static_cast<size_t>(f)][static_cast<size_t>(i)] *
               normalized_coeff(basis[static_cast<size_t>(i)][static_cast<size_t>(n)], n, k);
      rec.lambda[static_cast<size_t>(n)] = acc;
    }
    if (!deligne_ok(rec)) throw std::runtime_error("level1_eigenforms: Deligne bound violated");
    check_multiplicativity(rec, 1e-10);
    rec.central_value = central_value(rec);
    rec.adjoint_value = adjoint_value(rec);
    recs.push_back(std::move(rec));
  }
  std::sort(recs.begin(), recs.end(),
            [](const NewformRecord& a, const NewformRecord& b) { return a.lam(2) < b.lam(2); });

  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir + "/level1");
    const std::string path = cache_path(cache_dir, k, n_max);
    const std::string tmp = path + ".tmp";
    std::ofstream os(tmp, std::ios::trunc);
    for (const auto& r : recs) {
      os << "# weight=" << k << " level=1 nmax=" << n_max << " normalization=analytic\n";
      for (long long n = 1; n <= n_max; ++n) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%lld,%.17g\n", n, r.lam(n));
        os << buf;
      }
    }
    os.close();
    std::filesystem::rename(tmp, path); // last writer wins
  }
  return recs;
}

void write_eigen_csv(const std::string& path, const NewformRecord& rec) {
  std::ofstream os(path, std::ios::trunc);
  os << "# weight=" << rec.weight << " level=" << rec.level << " nmax=" << rec.n_max()
     << " normalization=analytic\n";
  for (long long n = 1; n <= rec.n_max(); ++n) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%lld,%.17g\n", n, rec.lam(n));
    os << buf;
  }
}

std::vector<NewformRecord> ingest_newforms(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("ingest_newforms: cannot open " + path);
  std::vector<NewformRecord> recs;
  std::string line;
  NewformRecord cur;
  bool have = false;
  long long expect = 1;
  int lineno = 0;
  auto flush = [&]() {
    if (!have) return;
    if (static_cast<long long>(cur.lambda.size()) != expect)
      throw std::runtime_error("ingest_newforms: missing rows before line " + std::to_string(lineno));
    if (cur.n_max() == 0) { // header-only block: declares no form
      have = false;
      return;
    }
    check_multiplicativity(cur, 1e-7);
    if (cur.level == 1) {
      cur.root_number = (cur.weight % 4 == 0) ? 1 : -1;
    } else {
      // global root number -i^k lambda(q) sqrt(q) for prime level q
      const double eps = -((cur.weight % 4 == 0) ? 1.0 : -1.0) * cur.lam(cur.level) *
                         std::sqrt(static_cast<double>(cur.level));
      cur.root_number = eps >= 0.0 ? 1 : -1;
    }
    if (!deligne_ok(cur))
      std::fprintf(stderr, "warning: ingested weight-%d level-%lld record exceeds the Ramanujan bound\n",
                   cur.weight, cur.level);
    cur.central_value = central_value(cur);
    cur.adjoint_value = adjoint_value(cur);
    cur.source = Source::ingested;
    recs.push_back(cur);
    have = false;
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      flush();
      cur = NewformRecord{};
      int k = 0, nmax = 0;
      long long level = 0;
      char norm[32] = {0};
      if (std::sscanf(line.c_str(), "# weight=%d level=%lld nmax=%d normalization=%31s", &k, &level,
                      &nmax, norm) != 4)
        throw std::runtime_error("ingest_newforms: bad header at line " + std::to_string(lineno));
      if (std::string(norm) != "analytic")
        throw std::runtime_error("ingest_newforms: normalization tag must be 'analytic'");
      cur.weight = k;
      cur.level = level;
      cur.lambda.assign(1, 0.0);
      expect = nmax + 1;
      have = true;
      continue;
    }
    long long n = 0;
    double lam = 0.0;
    if (std::sscanf(line.c_str(), "%lld,%lf", &n, &lam) != 2)
      throw std::runtime_error("ingest_newforms: malformed row at line " + std::to_string(lineno));
    if (!have || n != static_cast<long long>(cur.lambda.size()))
      throw std::runtime_error("ingest_newforms: rows out of order at line " + std::to_string(lineno));
    cur.lambda.push_back(lam);
  }
  ++lineno;
  flush();
  return recs;
}

} // namespace rtf::oracle
