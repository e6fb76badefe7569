#include "logmap/cone.hpp"
#include "logmap/normal_form.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <numeric>
#include <utility>

namespace logmap::cone {
namespace {

/// Incidence set over the constraints processed so far.
class Bits {
public:
  void set(std::size_t i) {
    if (words_.size() <= i / 64) words_.resize(i / 64 + 1, 0);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  Bits operator&(const Bits& o) const {
    Bits r;
    r.words_.resize(std::min(words_.size(), o.words_.size()));
    for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool contains(const Bits& o) const {
    for (std::size_t i = 0; i < o.words_.size(); ++i) {
      std::uint64_t mine = i < words_.size() ? words_[i] : 0;
      if ((o.words_[i] & ~mine) != 0) return false;
    }
    return true;
  }

private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vector v;
  Bits tight;
};

// a0 * x - a * l0, primitive.
Vector combine(const Integer& a0, const Vector& x, const Integer& a, const Vector& l0) {
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a0 * x[i] - a * l0[i];
  return primitive(std::move(r));
}

} // namespace

std::vector<Vector> normals(const std::vector<Vector>& gens, std::size_t d) {
  // Double description of the dual cone {h : <h,g> >= 0}: its extreme rays
  // are the facet normals, its lineality the complement of span(gens).
  std::vector<Vector> lin;
  for (std::size_t i = 0; i < d; ++i) lin.push_back(unit_vector(d, i));
  std::vector<Ray> rays;
  Bits all_previous;

  std::size_t idx = 0;
  for (const auto& g : gens) {
    if (is_zero(g)) continue;

    auto pivot = std::find_if(lin.begin(), lin.end(),
                              [&](const Vector& l) { return sgn(dot(g, l)) != 0; });
    if (pivot != lin.end()) {
      Vector l0 = *pivot;
      Integer a0 = dot(g, l0);
      if (sgn(a0) < 0) {
        l0 = -l0;
        a0 = -a0;
      }
      std::vector<Vector> next_lin;
      for (auto it = lin.begin(); it != lin.end(); ++it) {
        if (it == pivot) continue;
        Integer a = dot(g, *it);
        next_lin.push_back(sgn(a) == 0 ? *it : combine(a0, *it, a, l0));
      }
      for (auto& r : rays) {
        Integer a = dot(g, r.v);
        if (sgn(a) != 0) r.v = combine(a0, r.v, a, l0);
        r.tight.set(idx);
      }
      rays.push_back(Ray{std::move(l0), all_previous});
      lin = std::move(next_lin);
    } else {
      std::vector<std::size_t> pos, neg;
      std::vector<Integer> val(rays.size());
      std::vector<Ray> next;
      for (std::size_t i = 0; i < rays.size(); ++i) {
        val[i] = dot(g, rays[i].v);
        int s = sgn(val[i]);
        if (s > 0) {
          pos.push_back(i);
        } else if (s < 0) {
          neg.push_back(i);
        } else {
          next.push_back(rays[i]);
          next.back().tight.set(idx);
        }
      }
      for (std::size_t p : pos) {
        for (std::size_t n : neg) {
          Bits common = rays[p].tight & rays[n].tight;
          bool adjacent = true;
          for (std::size_t r = 0; r < rays.size() && adjacent; ++r)
            if (r != p && r != n && rays[r].tight.contains(common)) adjacent = false;
          if (!adjacent) continue;
          Ray nr{combine(val[p], rays[n].v, val[n], rays[p].v), common};
          nr.tight.set(idx);
          next.push_back(std::move(nr));
        }
      }
      for (std::size_t p : pos) next.push_back(std::move(rays[p]));
      rays = std::move(next);
    }
    all_previous.set(idx);
    ++idx;
  }

  std::vector<Vector> out;
  for (auto& r : rays) out.push_back(primitive(std::move(r.v)));
  if (!lin.empty()) {
    HermiteForm h = hermite_normal_form(IntMatrix::from_rows(lin, d));
    for (std::size_t i = 0; i < h.rank; ++i) {
      Vector l = primitive(h.H.row_vector(i));
      out.push_back(-l);
      out.push_back(std::move(l));
    }
  }
  sort_unique(out);
  return out;
}

bool in_cone(const std::vector<Vector>& normals, std::span<const Integer> x) {
  return std::all_of(normals.begin(), normals.end(),
                     [&](const Vector& h) { return sgn(dot(h, x)) >= 0; });
}

Vector grading(const std::vector<Vector>& normals, std::size_t d) {
  Vector g(d);
  for (const auto& h : normals)
    for (std::size_t i = 0; i < d; ++i) g[i] += h[i];
  return g;
}

bool is_pointed(const std::vector<Vector>& normals, std::size_t d) {
  if (d == 0) return true;
  if (normals.size() < d) return false;
  return rank(normals, d) == d;
}

std::vector<Vector> extremal_rays(const std::vector<Vector>& gens,
                                  const std::vector<Vector>& normals, std::size_t d) {
  std::vector<Vector> candidates;
  for (const auto& g : gens)
    if (!is_zero(g)) candidates.push_back(primitive(g));
  sort_unique(candidates);
  std::vector<Vector> out;
  for (const auto& c : candidates) {
    std::vector<Vector> tight;
    for (const auto& h : normals)
      if (sgn(dot(h, c)) == 0) tight.push_back(h);
    if (rank(tight, d) + 1 == d) out.push_back(c);
  }
  return out;
}

std::vector<std::vector<std::size_t>> triangulate(const std::vector<Vector>& rays,
                                                  std::size_t d) {
  assert(rays.size() >= d);
  std::vector<std::size_t> order, rest;
  std::vector<Vector> basis;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    if (basis.size() < d) {
      basis.push_back(rays[i]);
      if (rank(basis, d) == basis.size()) {
        order.push_back(i);
        continue;
      }
      basis.pop_back();
    }
    rest.push_back(i);
  }
  assert(order.size() == d);

  std::vector<std::vector<std::size_t>> simplices{order};
  std::vector<Vector> placed = basis;
  for (std::size_t v : rest) {
    const std::vector<Vector> facets = normals(placed, d);
    std::vector<std::vector<std::size_t>> added;
    for (const auto& sigma : simplices) {
      for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
        for (const auto& h : facets) {
          bool on_facet = true;
          for (std::size_t k = 0; k < sigma.size() && on_facet; ++k)
            if (k != drop && sgn(dot(h, rays[sigma[k]])) != 0) on_facet = false;
          if (!on_facet) continue;
          if (sgn(dot(h, rays[v])) < 0) {
            std::vector<std::size_t> s = sigma;
            s[drop] = v;
            std::sort(s.begin(), s.end());
            added.push_back(std::move(s));
          }
          break;
        }
      }
    }
    for (auto& s : added) simplices.push_back(std::move(s));
    placed.push_back(rays[v]);
  }
  return simplices;
}

std::vector<Vector> parallelepiped_points(const std::vector<Vector>& simplex_rays,
                                          std::size_t d) {
  IntMatrix a = IntMatrix::from_rows(simplex_rays, d);
  Integer det = determinant(a);
  assert(sgn(det) != 0);
  if (abs(det) == 1) return {};

  // Rational inverse by Gauss-Jordan.
  std::vector<std::vector<Rational>> m(d, std::vector<Rational>(2 * d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = a(i, j);
    m[i][d + i] = 1;
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (sgn(m[p][c]) == 0) ++p;
    std::swap(m[p], m[c]);
    Rational inv = 1 / m[c][c];
    for (auto& x : m[c]) x *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < 2 * d; ++j) m[i][j] -= f * m[c][j];
    }
  }

  SmithForm s = smith_normal_form(a);
  std::vector<Integer> inv = s.invariants();
  std::vector<Vector> out;
  Vector y(d);
  for (;;) {
    Vector x = image_of(y, s.V_inv);
    // lambda = x A^{-1}; subtract the integral parts.
    Vector reduced = x;
    for (std::size_t i = 0; i < d; ++i) {
      Rational lambda = 0;
      for (std::size_t k = 0; k < d; ++k)
        if (sgn(x[k]) != 0) lambda += Rational(x[k]) * m[k][d + i];
      Integer fl = floor_div(lambda.get_num(), lambda.get_den());
      if (sgn(fl) != 0)
        for (std::size_t j = 0; j < d; ++j) reduced[j] -= fl * a(i, j);
    }
    if (!is_zero(reduced)) out.push_back(std::move(reduced));

    std::size_t k = 0;
    while (k < d) {
      y[k] += 1;
      if (y[k] < inv[k]) break;
      y[k] = 0;
      ++k;
    }
    if (k == d) break;
  }
  return out;
}

std::vector<Vector> minimalize(std::vector<Vector> candidates,
                               const std::vector<Vector>& normals, std::size_t d) {
  sort_unique(candidates);
  const Vector grade = grading(normals, d);
  std::vector<std::pair<Integer, Vector>> by_degree;
  for (auto& c : candidates) {
    if (is_zero(c)) continue;
    by_degree.emplace_back(dot(grade, c), std::move(c));
  }
  std::stable_sort(by_degree.begin(), by_degree.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Vector> kept;
  std::vector<Integer> kept_degree;
  for (auto& [deg, x] : by_degree) {
    bool reducible = false;
    for (std::size_t i = 0; i < kept.size() && !reducible; ++i) {
      if (kept_degree[i] >= deg) break;
      if (in_cone(normals, x - kept[i])) reducible = true;
    }
    if (!reducible) {
      kept.push_back(std::move(x));
      kept_degree.push_back(deg);
    }
  }
  sort_unique(kept);
  return kept;
}

std::vector<Vector> hilbert_basis_pointed(const std::vector<Vector>& gens, std::size_t d) {
  std::vector<Vector> nonzero;
  for (const auto& g : gens)
    if (!is_zero(g)) nonzero.push_back(g);
  if (nonzero.empty()) return {};

  // Work inside the saturated lattice spanned by the cone.
  LatticeSplit split(nonzero, d);
  const std::size_t s = split.dim();
  std::vector<Vector> local;
  for (const auto& g : nonzero) local.push_back(split.inner(g));
  const std::vector<Vector> local_normals = normals(local, s);
  const std::vector<Vector> rays = extremal_rays(local, local_normals, s);

  std::vector<Vector> candidates = rays;
  for (const auto& simplex : triangulate(rays, s)) {
    std::vector<Vector> srays;
    for (std::size_t i : simplex) srays.push_back(rays[i]);
    for (auto& p : parallelepiped_points(srays, s)) candidates.push_back(std::move(p));
  }
  std::vector<Vector> hb;
  for (const auto& y : minimalize(std::move(candidates), local_normals, s))
    hb.push_back(split.from_inner(y));
  sort_unique(hb);
  return hb;
}

} // namespace logmap::cone
