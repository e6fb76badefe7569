#include "logmap/monoid.hpp"
#include "logmap/cone.hpp"
#include "logmap/error.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <utility>

namespace logmap {

void MonoidPresentation::check() const {
  const std::size_t n = generators.size();
  for (const auto& r : relations) {
    if (r.lhs.size() != n || r.rhs.size() != n)
      throw Error(ErrorKind::InvalidArgument,
                  "relation '" + r.label + "' has the wrong number of coefficients");
    auto negative = [](const Vector& v) {
      return std::any_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) < 0; });
    };
    if (negative(r.lhs) || negative(r.rhs))
      throw Error(ErrorKind::InvalidArgument,
                  "relation '" + r.label + "' has a negative coefficient");
  }
}

IntMatrix MonoidPresentation::relation_matrix() const {
  IntMatrix m(relations.size(), generators.size());
  for (std::size_t i = 0; i < relations.size(); ++i)
    for (std::size_t j = 0; j < generators.size(); ++j)
      m(i, j) = relations[i].lhs[j] - relations[i].rhs[j];
  return m;
}

IntMatrix GroupData::projection_matrix() const {
  return IntMatrix::from_rows(projection, free_rank);
}

GroupData groupify(const MonoidPresentation& p) {
  p.check();
  const std::size_t n = p.generators.size();
  GroupData g;
  IntMatrix proj, lift;
  std::size_t s = 0;
  if (p.relations.empty()) {
    proj = IntMatrix::identity(n);
    lift = IntMatrix::identity(n);
    g.torsion_part.assign(n, Vector{});
  } else {
    SmithForm snf = smith_normal_form(p.relation_matrix());
    s = snf.rank;
    std::vector<std::size_t> torsion_cols;
    for (std::size_t j = 0; j < s; ++j) {
      if (snf.D(j, j) > 1) {
        torsion_cols.push_back(j);
        g.torsion_invariants.push_back(snf.D(j, j));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      Vector t;
      for (std::size_t j : torsion_cols) {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), snf.V(i, j).get_mpz_t(), snf.D(j, j).get_mpz_t());
        t.push_back(r);
      }
      g.torsion_part.push_back(std::move(t));
    }
    proj = snf.V.col_slice(s, n);
    lift = snf.V_inv.row_slice(s, n);
  }
  g.free_rank = n - s;

  // Fix the basis of Z^r: Hermite form of the transposed projection.
  HermiteForm h = hermite_normal_form(proj.transpose());
  IntMatrix canonical = h.H.transpose();
  IntMatrix w_inv = unimodular_inverse(h.W);
  g.lift = w_inv.transpose() * lift;
  g.projection = canonical.row_vectors();
  return g;
}

AffineMonoid affine_image(const GroupData& g) { return AffineMonoid(g.free_rank, g.projection); }

AffineMonoid affine_image(const MonoidPresentation& p) { return affine_image(groupify(p)); }

AffineMonoid::AffineMonoid(std::size_t rank, std::vector<Vector> generators)
    : rank_(rank), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.size() != rank_)
      throw Error(ErrorKind::InvalidArgument, "generator " + to_string(g) +
                                                  " does not live in Z^" + std::to_string(rank_));
  normals_ = cone::normals(generators_, rank_);
  sharp_ = cone::is_pointed(normals_, rank_);
  grading_ = cone::grading(normals_, rank_);
  if (sharp_) rays_ = cone::extremal_rays(generators_, normals_, rank_);
}

const std::vector<Vector>& AffineMonoid::extremal_rays() const {
  if (!sharp_) throw Error(ErrorKind::NotSharp, "extremal rays requested for a non-sharp monoid");
  return rays_;
}

const std::vector<Vector>& AffineMonoid::hilbert_basis() const {
  if (!sharp_) throw Error(ErrorKind::NotSharp, "Hilbert basis requested for a non-sharp monoid");
  if (!saturated_)
    throw Error(ErrorKind::InvalidArgument, "Hilbert basis requested for an unsaturated monoid");
  return generators_;
}

bool AffineMonoid::in_cone(std::span<const Integer> x) const {
  return x.size() == rank_ && cone::in_cone(normals_, x);
}

std::vector<Vector> dual_description(const AffineMonoid& n) { return n.normals(); }

bool is_sharp(const AffineMonoid& n) { return n.sharp(); }

AffineMonoid saturate(const AffineMonoid& n) {
  if (n.saturated()) return n;
  const std::size_t d = n.rank();
  std::vector<Vector> gens;
  if (n.sharp()) {
    gens = cone::hilbert_basis_pointed(n.generators(), d);
  } else {
    // Split off the lineality lattice; the saturation is that lattice plus
    // lifts of the Hilbert basis of the pointed quotient.
    IntMatrix nt(d, n.normals().size());
    for (std::size_t j = 0; j < n.normals().size(); ++j)
      for (std::size_t i = 0; i < d; ++i) nt(i, j) = n.normals()[j][i];
    std::vector<Vector> lineality =
        n.normals().empty() ? IntMatrix::identity(d).row_vectors() : integer_kernel(nt);
    LatticeSplit split(lineality, d);
    std::vector<Vector> quotient;
    for (const auto& g : n.generators()) quotient.push_back(split.outer(g));
    for (const auto& y : cone::hilbert_basis_pointed(quotient, d - split.dim()))
      gens.push_back(split.from_outer(y));
    for (const auto& l : lineality) {
      gens.push_back(l);
      gens.push_back(-l);
    }
    sort_unique(gens);
  }
  AffineMonoid out(d, std::move(gens));
  out.saturated_ = true;
  return out;
}

bool is_saturated(const AffineMonoid& n) {
  if (n.saturated()) return true;
  if (!n.sharp()) throw Error(ErrorKind::NotSharp, "saturation test needs a sharp monoid");
  const AffineMonoid sat = saturate(n);
  for (const auto& h : sat.generators())
    if (!contains(n, h).member) return false;
  return true;
}

std::vector<Vector> hilbert_basis(const AffineMonoid& n) {
  if (!n.sharp()) throw Error(ErrorKind::NotSharp, "Hilbert basis requested for a non-sharp monoid");
  return n.saturated() ? n.generators() : saturate(n).generators();
}

std::vector<Vector> extremal_rays(const AffineMonoid& n) { return n.extremal_rays(); }

namespace {

class MembershipSearch {
public:
  MembershipSearch(const AffineMonoid& n) : n_(n) {
    std::set<Vector, LexLess> seen;
    for (std::size_t i = 0; i < n.generators().size(); ++i) {
      const Vector& g = n.generators()[i];
      if (is_zero(g) || !seen.insert(g).second) continue;
      order_.push_back(i);
      degree_.push_back(dot(n.grading(), g));
    }
    std::vector<std::size_t> perm(order_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::stable_sort(perm.begin(), perm.end(),
                     [&](std::size_t a, std::size_t b) { return degree_[a] > degree_[b]; });
    std::vector<std::size_t> o;
    std::vector<Integer> d;
    for (std::size_t p : perm) {
      o.push_back(order_[p]);
      d.push_back(degree_[p]);
    }
    order_ = std::move(o);
    degree_ = std::move(d);
  }

  MembershipResult run(const Vector& x) {
    MembershipResult res;
    res.certificate.assign(n_.generators().size(), Integer(0));
    counts_.assign(order_.size(), Integer(0));
    failed_.clear();
    if (search(0, x, dot(n_.grading(), x))) {
      res.member = true;
      for (std::size_t k = 0; k < order_.size(); ++k) res.certificate[order_[k]] = counts_[k];
    }
    return res;
  }

private:
  bool search(std::size_t pos, const Vector& rem, const Integer& deg) {
    if (sgn(deg) == 0) return is_zero(rem);
    if (pos == order_.size()) return false;
    auto key = std::make_pair(pos, rem);
    if (failed_.count(key)) return false;

    const Vector& g = n_.generators()[order_[pos]];
    const Integer& dg = degree_[pos];
    Integer most = floor_div(deg, dg);
    for (Integer c = most; sgn(c) >= 0; --c) {
      Vector next = rem - c * g;
      if (!n_.in_cone(next)) continue;
      if (search(pos + 1, next, deg - c * dg)) {
        counts_[pos] = c;
        return true;
      }
    }
    failed_.insert(std::move(key));
    return false;
  }

  struct KeyLess {
    bool operator()(const std::pair<std::size_t, Vector>& a,
                    const std::pair<std::size_t, Vector>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return lex_compare(a.second, b.second) < 0;
    }
  };

  const AffineMonoid& n_;
  std::vector<std::size_t> order_;
  std::vector<Integer> degree_;
  std::vector<Integer> counts_;
  std::set<std::pair<std::size_t, Vector>, KeyLess> failed_;
};

} // namespace

MembershipResult contains(const AffineMonoid& n, std::span<const Integer> x) {
  if (!n.sharp())
    throw Error(ErrorKind::NotSharp, "membership search needs a positive grading");
  if (x.size() != n.rank())
    throw Error(ErrorKind::InvalidArgument, "point " + to_string(x) + " has the wrong rank");
  if (!n.in_cone(x)) {
    MembershipResult r;
    r.certificate.assign(n.generators().size(), Integer(0));
    return r;
  }
  MembershipSearch search(n);
  return search.run(Vector(x.begin(), x.end()));
}

MultipleResult multiple_in_unsaturated(const AffineMonoid& n, std::span<const Integer> a,
                                       long cap) {
  if (cap < 1) throw Error(ErrorKind::InvalidArgument, "cap must be at least 1");
  if (!n.sharp())
    throw Error(ErrorKind::NotSharp, "membership search needs a positive grading");
  if (a.size() != n.rank() || !n.in_cone(a))
    throw Error(ErrorKind::InvalidArgument,
                "point " + to_string(a) + " is not in the saturation");
  MembershipSearch search(n);
  const Vector base(a.begin(), a.end());
  for (long m = 1; m <= cap; ++m) {
    MembershipResult r = search.run(Integer(m) * base);
    if (r.member) return MultipleResult{Integer(m), std::move(r.certificate)};
  }
  throw Error(ErrorKind::CapExceeded,
              "no multiple m <= " + std::to_string(cap) + " of " + to_string(a) +
                  " lies in the monoid");
}

std::vector<Vector> smallest_face(const AffineMonoid& n, const std::vector<Vector>& points) {
  if (!n.sharp()) throw Error(ErrorKind::NotSharp, "faces need a sharp monoid");
  std::vector<const Vector*> tight;
  for (const auto& h : n.normals()) {
    bool all = std::all_of(points.begin(), points.end(),
                           [&](const Vector& p) { return sgn(dot(h, p)) == 0; });
    if (all) tight.push_back(&h);
  }
  std::vector<Vector> face;
  for (const auto& g : hilbert_basis(n)) {
    bool in = std::all_of(tight.begin(), tight.end(),
                          [&](const Vector* h) { return sgn(dot(*h, g)) == 0; });
    if (in) face.push_back(g);
  }
  return face;
}

FaceQuotient face_quotient(const AffineMonoid& n, const std::vector<Vector>& face_generators) {
  if (!n.sharp()) throw Error(ErrorKind::NotSharp, "face quotient needs a sharp monoid");
  if (!n.saturated())
    throw Error(ErrorKind::InvalidArgument, "face quotient needs a saturated monoid");
  const auto& hb = n.hilbert_basis();
  std::vector<Vector> requested = face_generators;
  sort_unique(requested);
  for (const auto& g : requested)
    if (!std::binary_search(hb.begin(), hb.end(), g, LexLess{}))
      throw Error(ErrorKind::NotAFace, to_string(g) + " is not a Hilbert basis element");
  if (smallest_face(n, requested) != requested)
    throw Error(ErrorKind::NotAFace, "the given elements do not cut out a face");

  const std::size_t d = n.rank();
  LatticeSplit split(requested, d);
  IntMatrix q = split.outer_matrix();
  const std::size_t rq = d - split.dim();

  // Canonical basis for the quotient lattice.
  IntMatrix images(hb.size(), rq);
  for (std::size_t i = 0; i < hb.size(); ++i) {
    Vector y = image_of(hb[i], q);
    for (std::size_t j = 0; j < rq; ++j) images(i, j) = y[j];
  }
  HermiteForm h = hermite_normal_form(images.transpose());
  q = q * h.W.transpose();

  std::vector<Vector> image_list;
  for (const auto& g : hb) image_list.push_back(image_of(g, q));
  AffineMonoid quotient = saturate(AffineMonoid(rq, image_list));
  MonoidMorphism map{n, quotient, std::move(image_list), std::move(q)};
  return FaceQuotient{std::move(quotient), std::move(map)};
}

bool MonoidMorphism::well_formed() const {
  if (group_matrix.rows() != source.rank() || group_matrix.cols() != target.rank()) return false;
  if (generator_images.size() != source.generators().size()) return false;
  for (std::size_t i = 0; i < generator_images.size(); ++i) {
    if (image_of(source.generators()[i], group_matrix) != generator_images[i]) return false;
    if (!target.in_cone(generator_images[i])) return false;
    if (!target.saturated() && target.sharp() && !contains(target, generator_images[i]).member)
      return false;
  }
  return true;
}

bool is_isomorphism(const MonoidMorphism& phi) {
  const std::size_t r = phi.source.rank();
  if (phi.target.rank() != r) return false;
  if (phi.group_matrix.rows() != r || phi.group_matrix.cols() != r) return false;
  if (abs(determinant(phi.group_matrix)) != 1) return false;
  if (!phi.source.sharp() || !phi.target.sharp()) return false;
  std::vector<Vector> mapped;
  for (const auto& g : hilbert_basis(phi.source)) mapped.push_back(image_of(g, phi.group_matrix));
  sort_unique(mapped);
  return mapped == hilbert_basis(phi.target);
}

MonoidMorphism compose(const MonoidMorphism& first, const MonoidMorphism& second) {
  if (first.target.rank() != second.source.rank())
    throw Error(ErrorKind::InvalidArgument, "morphisms are not composable");
  IntMatrix m = first.group_matrix * second.group_matrix;
  std::vector<Vector> images;
  for (const auto& g : first.source.generators()) images.push_back(image_of(g, m));
  return MonoidMorphism{first.source, second.target, std::move(images), std::move(m)};
}

MonoidMorphism identity_morphism(const AffineMonoid& n) {
  return MonoidMorphism{n, n, n.generators(), IntMatrix::identity(n.rank())};
}

} // namespace logmap
