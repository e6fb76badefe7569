#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace logmap {

using Integer = mpz_class;
using Rational = mpq_class;

/// Dense integer vector; all lattice points in the library use this type.
using Vector = std::vector<Integer>;

Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);

bool is_zero(std::span<const Integer> v);
Integer dot(std::span<const Integer> a, std::span<const Integer> b);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(const Integer& k, const Vector& v);

/// Non-negative gcd of the entries (0 for the zero vector).
Integer content(std::span<const Integer> v);

/// Divide by the content; the zero vector is returned unchanged.
Vector primitive(Vector v);

/// Lexicographic three-way comparison.
std::strong_ordering lex_compare(std::span<const Integer> a,
                                 std::span<const Integer> b);

struct LexLess {
  bool operator()(const Vector& a, const Vector& b) const {
    return lex_compare(a, b) < 0;
  }
};

/// Sort lexicographically and drop duplicates.
void sort_unique(std::vector<Vector>& vs);

/// Floor division for arbitrary signs.
Integer floor_div(const Integer& a, const Integer& b);

Vector from_ints(std::initializer_list<long> xs);

std::string to_string(std::span<const Integer> v);

} // namespace logmap
