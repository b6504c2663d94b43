#include "nf/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rtf::nf {

void IdealData::set(const PrimeIdeal& p, int e) {
  for (auto it = factors_.begin(); it != factors_.end(); ++it) {
    if (it->first == p) {
      if (e == 0) factors_.erase(it);
      else it->second = e;
      return;
    }
  }
  if (e == 0) return;
  factors_.push_back({p, e});
  std::sort(factors_.begin(), factors_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

IdealData IdealData::from_integer(const Field& f, long long n) {
  if (n <= 0) throw std::invalid_argument("IdealData::from_integer: n must be positive");
  IdealData out;
  for (long long p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    for (const auto& pr : primes_above(f, p)) out.set(pr, e * pr.e);
  }
  if (n > 1)
    for (const auto& pr : primes_above(f, n)) out.set(pr, pr.e);
  return out;
}

IdealData IdealData::prime(const PrimeIdeal& p, int exponent) {
  IdealData out;
  out.set(p, exponent);
  return out;
}

bool IdealData::integral() const {
  for (const auto& [p, e] : factors_)
    if (e < 0) return false;
  return true;
}

bool IdealData::coprime(const IdealData& other) const {
  for (const auto& [p, e] : factors_)
    if (other.valuation(p) != 0) return false;
  return true;
}

double IdealData::norm() const {
  double n = 1.0;
  for (const auto& [p, e] : factors_) n *= std::pow(p.norm(), e);
  return n;
}

int IdealData::valuation(const PrimeIdeal& p) const {
  for (const auto& [q, e] : factors_)
    if (q == p) return e;
  return 0;
}

IdealData IdealData::times(const IdealData& other) const {
  IdealData out = *this;
  for (const auto& [p, e] : other.factors_) out.set(p, out.valuation(p) + e);
  return out;
}

IdealData IdealData::power(int m) const {
  IdealData out;
  for (const auto& [p, e] : factors_) out.set(p, e * m);
  return out;
}

std::string IdealData::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : factors_) {
    if (!s.empty()) s += '*';
    s += std::to_string(p.p);
    if (p.f == 2) s += 'i';
    else if (p.e == 2) s += 'r';
    else if (p.which >= 0) s += (p.which == 0 ? 'a' : 'b');
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

IdealData IdealData::parse(const Field& f, const std::string& text) {
  IdealData out;
  if (text == "1") return out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t star = text.find('*', pos);
    if (star == std::string::npos) star = text.size();
    std::string part = text.substr(pos, star - pos);
    int exp = 1;
    const size_t caret = part.find('^');
    if (caret != std::string::npos) {
      exp = std::stoi(part.substr(caret + 1));
      part = part.substr(0, caret);
    }
    int which = 0;
    char tag = 0;
    if (!part.empty() && (part.back() == 'a' || part.back() == 'b' || part.back() == 'i' || part.back() == 'r')) {
      tag = part.back();
      part.pop_back();
      if (tag == 'b') which = 1;
    }
    const long long p = std::stoll(part);
    const auto above = primes_above(f, p);
    bool placed = false;
    for (const auto& pr : above) {
      if ((tag == 'i' && pr.f == 2) || (tag == 'r' && pr.e == 2) ||
          ((tag == 'a' || tag == 'b') && pr.f == 1 && pr.e == 1 && pr.which == which) ||
          (tag == 0 && above.size() == 1)) {
        out.set(pr, out.valuation(pr) + exp);
        placed = true;
        break;
      }
    }
    if (!placed) throw std::invalid_argument("IdealData::parse: ambiguous or bad prime " + part);
    pos = star + 1;
  }
  return out;
}

long long tau(const IdealData& n) {
  if (!n.integral()) throw std::domain_error("tau: fractional ideal");
  long long t = 1;
  for (const auto& [p, e] : n.factors()) t *= (e + 1);
  return t;
}

int moebius(const IdealData& n) {
  if (!n.integral()) throw std::domain_error("moebius: fractional ideal");
  int mu = 1;
  for (const auto& [p, e] : n.factors()) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

double rho(const IdealData& n) {
  double r = 1.0;
  for (const auto& [p, e] : n.factors()) r /= (1.0 + 1.0 / p.norm());
  return r;
}

std::vector<PrimeIdeal> primes_above(const Field& f, long long p) {
  std::vector<PrimeIdeal> out;
  if (f.is_rational()) {
    out.push_back({p, 1, 1, -1});
    return out;
  }
  const int c = f.chi(p);
  if (c == 1) {
    out.push_back({p, 1, 1, 0});
    out.push_back({p, 1, 1, 1});
  } else if (c == -1) {
    out.push_back({p, 2, 1, -1});
  } else {
    out.push_back({p, 1, 2, -1});
  }
  return out;
}

std::vector<IdealData> ideals_up_to(const Field& f, double bound) {
  std::vector<PrimeIdeal> ps;
  for (long long p : primes_upto(static_cast<long long>(bound) + 1)) {
    for (const auto& pr : primes_above(f, p))
      if (pr.norm() <= bound) ps.push_back(pr);
  }
  std::sort(ps.begin(), ps.end());
  std::vector<IdealData> out{IdealData::unit()};
  for (const auto& pr : ps) {
    const size_t existing = out.size();
    for (size_t i = 0; i < existing; ++i) {
      IdealData cur = out[i];
      double n = cur.norm() * pr.norm();
      int e = 1;
      while (n <= bound) {
        IdealData next = cur.times(IdealData::prime(pr, e));
        out.push_back(next);
        n *= pr.norm();
        ++e;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IdealData& a, const IdealData& b) {
    if (a.norm() != b.norm()) return a.norm() < b.norm();
    return a.to_string() < b.to_string();
  });
  return out;
}

} // namespace rtf::nf
