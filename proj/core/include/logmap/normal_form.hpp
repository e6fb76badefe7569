#pragma once

#include "logmap/integer.hpp"
#include "logmap/matrix.hpp"

#include <cstddef>
#include <vector>

namespace logmap {

/// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ...
/// The inverses of U and V are tracked alongside so callers never invert.
struct SmithForm {
  IntMatrix U, D, V;
  IntMatrix U_inv, V_inv;
  std::size_t rank = 0;

  /// Diagonal entries d_1..d_rank (all positive).
  std::vector<Integer> invariants() const;
};

SmithForm smith_normal_form(const IntMatrix& a);

/// Row-style Hermite normal form: H = W * A with W unimodular. Pivots are
/// positive, entries above a pivot lie in [0, pivot), zero rows come last.
struct HermiteForm {
  IntMatrix H, W;
  std::size_t rank = 0;
};

HermiteForm hermite_normal_form(const IntMatrix& a);

/// Inverse of a unimodular matrix; throws InvalidArgument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// S with S * M = I for an integer matrix whose rows generate Z^cols
/// (a surjective lattice map); throws InvalidArgument otherwise.
IntMatrix left_inverse(const IntMatrix& m);

/// Basis (as rows) of the saturated lattice {x : x * M = 0}.
std::vector<Vector> integer_kernel(const IntMatrix& m);

/// Splits Z^n along the saturated sublattice S = span_Q(vs) ∩ Z^n.
/// Coordinates x*V put S in the first `dim` slots and a complement in the
/// rest; `outer` is therefore the quotient map Z^n -> Z^n / S.
class LatticeSplit {
public:
  LatticeSplit(const std::vector<Vector>& vs, std::size_t ambient);

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return dim_; }

  Vector inner(std::span<const Integer> x) const;
  Vector outer(std::span<const Integer> x) const;
  Vector from_inner(std::span<const Integer> y) const;
  Vector from_outer(std::span<const Integer> y) const;

  /// Matrix of the quotient map (ambient x (ambient - dim)).
  IntMatrix outer_matrix() const;
  /// Section of the quotient map ((ambient - dim) x ambient).
  IntMatrix outer_section() const;

private:
  std::size_t ambient_;
  std::size_t dim_ = 0;
  IntMatrix V_, V_inv_;
};

} // namespace logmap
