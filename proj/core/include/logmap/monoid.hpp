#pragma once

#include "logmap/integer.hpp"
#include "logmap/matrix.hpp"
#include "logmap/normal_form.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace logmap {

/// Generators and additive relations lhs = rhs with non-negative
/// coefficients over the generators.
struct MonoidPresentation {
  struct Relation {
    Vector lhs, rhs;
    std::string label;
  };

  std::vector<std::string> generators;
  std::vector<Relation> relations;

  /// Checks lengths and signs; throws InvalidArgument.
  void check() const;
  /// One row lhs - rhs per relation.
  IntMatrix relation_matrix() const;
};

/// M^gp = Z^n / relations, split as Z^r ⊕ torsion.
struct GroupData {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion_invariants;
  /// Image of each generator in Z^r = M^gp / T, basis fixed by Hermite
  /// reduction of the projection matrix.
  std::vector<Vector> projection;
  /// Coset of each generator in ⊕ Z/d_i (entries reduced into [0, d_i)).
  std::vector<Vector> torsion_part;
  /// r x n integer matrix with lift * projection = identity.
  IntMatrix lift;

  IntMatrix projection_matrix() const;
};

/// A finitely generated submonoid of Z^r. Cone data is computed at
/// construction; saturated monoids also carry their minimal generators.
class AffineMonoid {
public:
  AffineMonoid() = default;
  AffineMonoid(std::size_t rank, std::vector<Vector> generators);

  std::size_t rank() const noexcept { return rank_; }
  const std::vector<Vector>& generators() const noexcept { return generators_; }
  const std::vector<Vector>& normals() const noexcept { return normals_; }
  bool sharp() const noexcept { return sharp_; }
  /// True when this value was produced by saturate().
  bool saturated() const noexcept { return saturated_; }
  /// Extremal rays; throws NotSharp.
  const std::vector<Vector>& extremal_rays() const;
  /// Hilbert basis; throws NotSharp, or InvalidArgument when not saturated.
  const std::vector<Vector>& hilbert_basis() const;
  /// Strictly positive on the monoid minus 0 when sharp.
  const Vector& grading() const noexcept { return grading_; }

  bool in_cone(std::span<const Integer> x) const;

private:
  friend AffineMonoid saturate(const AffineMonoid&);

  std::size_t rank_ = 0;
  std::vector<Vector> generators_;
  std::vector<Vector> normals_;
  std::vector<Vector> rays_;
  Vector grading_;
  bool sharp_ = true;
  bool saturated_ = false;
};

/// Lattice map realizing a monoid morphism; acts on row vectors.
struct MonoidMorphism {
  AffineMonoid source, target;
  /// Image of each source generator.
  std::vector<Vector> generator_images;
  /// source.rank() x target.rank().
  IntMatrix group_matrix;

  /// Images agree with the matrix and lie in the target cone.
  bool well_formed() const;
  Vector operator()(std::span<const Integer> x) const { return image_of(x, group_matrix); }
};

struct MembershipResult {
  bool member = false;
  /// Coefficients over the monoid's generators when member.
  std::vector<Integer> certificate;
};

struct MultipleResult {
  Integer multiple;
  std::vector<Integer> certificate;
};

inline constexpr long kDefaultMultipleCap = 256;


GroupData groupify(const MonoidPresentation& p);
AffineMonoid affine_image(const MonoidPresentation& p);
AffineMonoid affine_image(const GroupData& g);

std::vector<Vector> dual_description(const AffineMonoid& n);
bool is_sharp(const AffineMonoid& n);
AffineMonoid saturate(const AffineMonoid& n);
/// Full check that the monoid generated by n's generators is saturated.
bool is_saturated(const AffineMonoid& n);
std::vector<Vector> hilbert_basis(const AffineMonoid& n);
std::vector<Vector> extremal_rays(const AffineMonoid& n);

MembershipResult contains(const AffineMonoid& n, std::span<const Integer> x);
MultipleResult multiple_in_unsaturated(const AffineMonoid& n, std::span<const Integer> a,
                                       long cap = kDefaultMultipleCap);

/// Smallest face of a saturated sharp monoid containing the given points,
/// reported as the Hilbert basis elements lying in it.
std::vector<Vector> smallest_face(const AffineMonoid& n, const std::vector<Vector>& points);

struct FaceQuotient {
  AffineMonoid quotient;
  MonoidMorphism map;
};

FaceQuotient face_quotient(const AffineMonoid& n, const std::vector<Vector>& face_generators);

bool is_isomorphism(const MonoidMorphism& phi);
MonoidMorphism compose(const MonoidMorphism& first, const MonoidMorphism& second);
MonoidMorphism identity_morphism(const AffineMonoid& n);

} // namespace logmap
