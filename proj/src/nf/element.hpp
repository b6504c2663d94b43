#pragma once

#include "nf/field.hpp"
#include "nf/ideal.hpp"

#include <utility>
#include <vector>

namespace rtf::nf {

// Field element (x + y*omega)/den in lowest terms, den > 0; y = 0 over Q.
struct FieldElement {
  long long x = 0, y = 0, den = 1;

  static FieldElement from_rational(long long num, long long den);
  static FieldElement integer_combo(long long x, long long y) { return {x, y, 1}; }

  bool is_zero() const { return x == 0 && y == 0; }
  void reduce();

  FieldElement plus_one(const Field& f) const;
  FieldElement negate() const { return {-x, -y, den}; }
  FieldElement times(const Field& f, const FieldElement& o) const;
  FieldElement inverse(const Field& f) const;

  double embedding(const Field& f, int v) const;
  // Absolute norm as an exact reduced rational (num may be negative).
  std::pair<long long, long long> norm_rational(const Field& f) const;
  // Exact valuation at a prime ideal.
  int valuation(const Field& f, const PrimeIdeal& p) const;

  friend bool operator<(const FieldElement& a, const FieldElement& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.den < b.den;
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.x == b.x && a.y == b.y && a.den == b.den;
  }
};

// A generator of the (principal, h = 1) fractional ideal a.
FieldElement ideal_generator(const Field& f, const IdealData& a);

// Nonzero u in the fractional ideal a with |u_v| <= box[v] for every
// archimedean place, each element exactly once. Throws if more than cap
// elements would be produced.
std::vector<FieldElement> enumerate_elements(const Field& f, const IdealData& a,
                                             const std::vector<double>& box,
                                             long long cap = 50'000'000);

} // namespace rtf::nf
