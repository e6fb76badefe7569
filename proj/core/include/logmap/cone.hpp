#pragma once

#include "logmap/integer.hpp"
#include "logmap/matrix.hpp"

#include <cstddef>
#include <vector>

namespace logmap::cone {

/// H-description of cone(gens) ⊂ Q^d: primitive integer normals h with
/// cone = {x : <h,x> >= 0 for all h}, sorted lexicographically. When the
/// cone is not full-dimensional the orthogonal complement of its span shows
/// up as +/- pairs.
std::vector<Vector> normals(const std::vector<Vector>& gens, std::size_t d);

bool in_cone(const std::vector<Vector>& normals, std::span<const Integer> x);

/// Sum of the normals; strictly positive on a pointed cone minus the origin.
Vector grading(const std::vector<Vector>& normals, std::size_t d);

/// True when the normals span Q^d, i.e. the cone contains no line.
bool is_pointed(const std::vector<Vector>& normals, std::size_t d);

/// Primitive generators of the extremal rays of a pointed cone, sorted.
std::vector<Vector> extremal_rays(const std::vector<Vector>& gens,
                                  const std::vector<Vector>& normals,
                                  std::size_t d);

/// Placing triangulation of a full-dimensional pointed cone over its rays.
/// Each simplex is a list of d indices into `rays`.
std::vector<std::vector<std::size_t>> triangulate(const std::vector<Vector>& rays,
                                                  std::size_t d);

/// Nonzero lattice points of the half-open parallelepiped
/// {sum l_i v_i : 0 <= l_i < 1} spanned by d linearly independent rays.
std::vector<Vector> parallelepiped_points(const std::vector<Vector>& simplex_rays,
                                          std::size_t d);

/// Hilbert basis of cone(gens) ∩ Z^d for a pointed cone (any dimension).
std::vector<Vector> hilbert_basis_pointed(const std::vector<Vector>& gens, std::size_t d);

/// Drops every candidate that is a sum of another candidate and a cone
/// point. Assumes the candidates generate the saturated monoid.
std::vector<Vector> minimalize(std::vector<Vector> candidates,
                               const std::vector<Vector>& normals, std::size_t d);

} // namespace logmap::cone
