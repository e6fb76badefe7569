#include "logmap/integer.hpp"
#include "logmap/error.hpp"

#include <algorithm>
#include <cassert>

namespace logmap {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::InvalidArgument: return "InvalidArgument";
  case ErrorKind::NotSharp: return "NotSharp";
  case ErrorKind::CapExceeded: return "CapExceeded";
  case ErrorKind::NotAFace: return "NotAFace";
  case ErrorKind::InvalidSpec: return "InvalidSpec";
  case ErrorKind::ResultInvalid: return "ResultInvalid";
  case ErrorKind::RelationViolated: return "RelationViolated";
  case ErrorKind::LimitExceeded: return "LimitExceeded";
  case ErrorKind::DegreeMismatch: return "DegreeMismatch";
  case ErrorKind::Disconnected: return "Disconnected";
  case ErrorKind::SchemaViolation: return "SchemaViolation";
  case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = 1;
  return v;
}

bool is_zero(std::span<const Integer> v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

Integer dot(std::span<const Integer> a, std::span<const Integer> b) {
  assert(a.size() == b.size());
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

Vector operator+(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vector operator-(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vector operator-(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Vector operator*(const Integer& k, const Vector& v) {
  Vector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = k * v[i];
  return r;
}

Integer content(std::span<const Integer> v) {
  Integer g = 0;
  for (const auto& x : v) {
    if (sgn(x) != 0) g = gcd(g, x);
    if (g == 1) break;
  }
  return g;
}

Vector primitive(Vector v) {
  Integer g = content(v);
  if (g > 1) {
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return v;
}

std::strong_ordering lex_compare(std::span<const Integer> a,
                                 std::span<const Integer> b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

void sort_unique(std::vector<Vector>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Vector from_ints(std::initializer_list<long> xs) {
  Vector v;
  v.reserve(xs.size());
  for (long x : xs) v.emplace_back(x);
  return v;
}

std::string to_string(std::span<const Integer> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

} // namespace logmap
