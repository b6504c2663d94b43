#pragma once

#include <string>
#include <vector>

namespace rtf::oracle {

enum class Source { computed, ingested };

// One newform pi: analytically normalized Hecke eigenvalues lambda(n) = a(n)/n^{(k-1)/2},
// central value L(1/2,pi), adjoint value L(1,pi,Ad), root number.
struct NewformRecord {
  int weight = 0;
  long long level = 1;  // 1 or a prime
  std::vector<double> lambda;  // lambda[n], index 0 unused, n <= n_max
  double central_value = 0.0;
  double adjoint_value = 0.0;
  int root_number = 1;
  Source source = Source::computed;

  int n_max() const { return static_cast<int>(lambda.size()) - 1; }
  double lam(long long n) const { return lambda[static_cast<size_t>(n)]; }
};

struct RecordError {
  std::string message;
};

// Level-1 eigenforms of weight k with eigenvalues to n_max, deterministic
// ordering by lambda(2) ascending; L-values filled in. Uses the on-disk cache
// when cache_dir is nonempty.
std::vector<NewformRecord> level1_eigenforms(int k, int n_max, const std::string& cache_dir = "");

// Eigenvalue data file IO (header: "# weight=<k> level=<N> nmax=<n> normalization=analytic").
void write_eigen_csv(const std::string& path, const NewformRecord& rec);
std::vector<NewformRecord> ingest_newforms(const std::string& path);

// Validation helpers (multiplicativity to tol; Deligne bound soft check).
void check_multiplicativity(const NewformRecord& rec, double tol);
bool deligne_ok(const NewformRecord& rec);

} // namespace rtf::oracle
