#pragma once

#include "nf/field.hpp"

#include <string>
#include <vector>

namespace rtf::nf {

// A prime ideal of O_F, identified by the rational prime below it plus a tag
// distinguishing the two primes of a split pair.
struct PrimeIdeal {
  long long p = 0;
  int f = 1;       // residue degree
  int e = 1;       // ramification index
  int which = -1;  // -1 untagged; 0/1 for the two primes of a split pair
  double norm() const { return std::pow(static_cast<double>(p), f); }
  friend bool operator<(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p != b.p ? a.p < b.p : a.which < b.which;
  }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.p == b.p && a.which == b.which;
  }
};

// Integral or fractional ideal in factored form.
class IdealData {
public:
  IdealData() = default;
  static IdealData unit() { return {}; }
  static IdealData from_integer(const Field& f, long long n); // n > 0, ideal (n)
  static IdealData prime(const PrimeIdeal& p, int exponent = 1);
  static IdealData parse(const Field& f, const std::string& text);

  const std::vector<std::pair<PrimeIdeal, int>>& factors() const { return factors_; }
  bool is_unit_ideal() const { return factors_.empty(); }
  bool integral() const;
  bool coprime(const IdealData& other) const;
  double norm() const;
  int valuation(const PrimeIdeal& p) const;
  IdealData times(const IdealData& other) const;
  IdealData power(int m) const;
  std::string to_string() const;

  void set(const PrimeIdeal& p, int e);

private:
  std::vector<std::pair<PrimeIdeal, int>> factors_; // sorted, nonzero exponents
};

// tau(n) = prod (e_v(n)+1); requires integral n.
long long tau(const IdealData& n);

// Moebius function; requires integral n.
int moebius(const IdealData& n);

// rho(n) = prod_{p | n} (1 + N(p)^{-1})^{-1}; depends only on the radical.
double rho(const IdealData& n);

// The prime ideals above a rational prime p.
std::vector<PrimeIdeal> primes_above(const Field& f, long long p);

// All integral ideals of norm <= bound, sorted by (norm, string key).
std::vector<IdealData> ideals_up_to(const Field& f, double bound);

} // namespace rtf::nf
