#include "oracles.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace logmap::testing {
namespace {

std::int64_t det(std::vector<SmallVec> m) {
  // Bareiss on a small square matrix.
  const std::size_t n = m.size();
  std::int64_t sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Solves sum lambda_i s_i = x over the columns s_i using a nonsingular
// square minor; true when a non-negative solution exists.
bool nonneg_solution(const std::vector<const SmallVec*>& cols, const SmallVec& x) {
  const std::size_t k = cols.size(), r = x.size();
  if (k == 0) return std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; });
  std::vector<std::size_t> rows(r);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<bool> chooser(r, false);
  std::fill(chooser.begin(), chooser.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < r; ++i)
      if (chooser[i]) sel.push_back(i);
    std::vector<SmallVec> a(k, SmallVec(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) a[i][j] = (*cols[j])[sel[i]];
    const std::int64_t d = det(a);
    if (d == 0) continue;
    SmallVec num(k);
    for (std::size_t j = 0; j < k; ++j) {
      auto aj = a;
      for (std::size_t i = 0; i < k; ++i) aj[i][j] = x[sel[i]];
      num[j] = det(aj);
      if ((num[j] > 0 && d < 0) || (num[j] < 0 && d > 0)) return false;
    }
    for (std::size_t i = 0; i < r; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < k; ++j) s += num[j] * (*cols[j])[i];
      if (s != d * x[i]) return false;
    }
    return true;
  } while (std::prev_permutation(chooser.begin(), chooser.end()));
  return false;
}

std::size_t rank_of(const std::vector<const SmallVec*>& cols) {
  if (cols.empty()) return 0;
  const std::size_t r = cols[0]->size();
  for (std::size_t k = std::min(cols.size(), r); k > 0; --k) {
    std::vector<bool> rs(r, false), cs(cols.size(), false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        std::vector<SmallVec> a;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          SmallVec row;
          for (std::size_t j = 0; j < cols.size(); ++j)
            if (cs[j]) row.push_back((*cols[j])[i]);
          a.push_back(row);
        }
        if (det(a) != 0) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

std::size_t box_index(const SmallVec& x, std::int64_t bound) {
  std::size_t idx = 0;
  for (auto v : x) idx = idx * static_cast<std::size_t>(bound + 1) + static_cast<std::size_t>(v);
  return idx;
}

SmallVec box_point(std::size_t idx, std::size_t rank, std::int64_t bound) {
  SmallVec x(rank);
  for (std::size_t i = rank; i-- > 0;) {
    x[i] = static_cast<std::int64_t>(idx % static_cast<std::size_t>(bound + 1));
    idx /= static_cast<std::size_t>(bound + 1);
  }
  return x;
}

std::size_t box_size(std::size_t rank, std::int64_t bound) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < rank; ++i) n *= static_cast<std::size_t>(bound + 1);
  return n;
}

} // namespace

ConeOracle::ConeOracle(const std::vector<SmallVec>& gens) : gens_(gens) {
  std::vector<const SmallVec*> nz;
  for (const auto& g : gens_)
    if (std::any_of(g.begin(), g.end(), [](auto v) { return v != 0; })) nz.push_back(&g);
  const std::size_t n = nz.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<const SmallVec*> cols;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) cols.push_back(nz[i]);
    if (cols.size() > gens_[0].size() || rank_of(cols) != cols.size()) continue;
    bases_.push_back(std::move(cols));
  }
}

bool ConeOracle::contains(const SmallVec& x) const {
  if (std::all_of(x.begin(), x.end(), [](auto v) { return v == 0; })) return true;
  return std::any_of(bases_.begin(), bases_.end(),
                     [&](const auto& cols) { return nonneg_solution(cols, x); });
}

bool cone_contains(const std::vector<SmallVec>& gens, const SmallVec& x) {
  return ConeOracle(gens).contains(x);
}

std::vector<SmallVec> box_hilbert_basis(const std::vector<SmallVec>& gens, std::size_t rank,
                                        std::int64_t bound) {
  const std::size_t total = box_size(rank, bound);
  std::vector<bool> in(total, false);
  std::vector<std::size_t> points;
  const ConeOracle cone(gens);
  for (std::size_t i = 1; i < total; ++i) {
    if (cone.contains(box_point(i, rank, bound))) {
      in[i] = true;
      points.push_back(i);
    }
  }
  std::vector<SmallVec> out;
  for (std::size_t i : points) {
    const SmallVec x = box_point(i, rank, bound);
    bool reducible = false;
    for (std::size_t j : points) {
      if (j == i) continue;
      const SmallVec y = box_point(j, rank, bound);
      SmallVec z(rank);
      bool fits = true;
      for (std::size_t t = 0; t < rank && fits; ++t) {
        z[t] = x[t] - y[t];
        fits = z[t] >= 0;
      }
      if (fits && in[box_index(z, bound)]) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SmallVec> signed_box_hilbert_basis(const std::vector<SmallVec>& gens, std::size_t rank,
                                               std::int64_t bound) {
  const std::int64_t width = 2 * bound;
  const std::size_t total = box_size(rank, width);
  const ConeOracle cone(gens);
  const auto shift = [&](SmallVec x, std::int64_t by) {
    for (auto& v : x) v += by;
    return x;
  };
  std::vector<bool> in(total, false);
  std::vector<std::size_t> points;
  const std::size_t origin = box_index(SmallVec(rank, bound), width);
  for (std::size_t i = 0; i < total; ++i) {
    if (i == origin) continue;
    if (cone.contains(shift(box_point(i, rank, width), -bound))) {
      in[i] = true;
      points.push_back(i);
    }
  }
  std::vector<SmallVec> out;
  for (std::size_t i : points) {
    const SmallVec x = shift(box_point(i, rank, width), -bound);
    bool reducible = false;
    for (std::size_t j : points) {
      if (j == i) continue;
      const SmallVec y = shift(box_point(j, rank, width), -bound);
      SmallVec z(rank);
      bool fits = true;
      for (std::size_t t = 0; t < rank && fits; ++t) {
        z[t] = x[t] - y[t];
        fits = z[t] >= -bound && z[t] <= bound;
      }
      if (fits && in[box_index(shift(z, bound), width)]) {
        reducible = true;
        break;
      }
    }
    if (!reducible) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroupInvariants quotient_invariants(const std::vector<SmallVec>& rows, std::size_t n) {
  const std::size_t m = rows.size();
  std::vector<std::int64_t> minor_gcd;
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    std::int64_t g = 0;
    std::vector<bool> rs(m, false), cs(n, false);
    std::fill(rs.begin(), rs.begin() + static_cast<long>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<long>(k), true);
      do {
        std::vector<SmallVec> a;
        for (std::size_t i = 0; i < m; ++i) {
          if (!rs[i]) continue;
          SmallVec row;
          for (std::size_t j = 0; j < n; ++j)
            if (cs[j]) row.push_back(rows[i][j]);
          a.push_back(row);
        }
        g = std::gcd(g, det(a));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    if (g == 0) break;
    minor_gcd.push_back(g);
  }
  GroupInvariants out;
  out.free_rank = n - minor_gcd.size();
  std::int64_t prev = 1;
  for (auto g : minor_gcd) {
    const std::int64_t d = g / prev;
    if (d > 1) out.torsion.push_back(d);
    prev = g;
  }
  return out;
}

std::vector<bool> reachable_in_box(const std::vector<SmallVec>& gens, std::size_t rank,
                                   std::int64_t bound) {
  const std::size_t total = box_size(rank, bound);
  std::vector<bool> reach(total, false);
  reach[0] = true;
  // Index order is compatible with the componentwise order.
  for (std::size_t i = 0; i < total; ++i) {
    if (!reach[i]) continue;
    const SmallVec x = box_point(i, rank, bound);
    for (const auto& g : gens) {
      SmallVec y(rank);
      bool fits = true;
      for (std::size_t t = 0; t < rank && fits; ++t) {
        y[t] = x[t] + g[t];
        fits = y[t] <= bound;
      }
      if (fits) reach[box_index(y, bound)] = true;
    }
  }
  return reach;
}

Vector to_vector(const SmallVec& v) {
  Vector out;
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

SmallVec to_small(const Vector& v) {
  SmallVec out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

std::vector<Vector> to_vectors(const std::vector<SmallVec>& vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.push_back(to_vector(v));
  return out;
}

std::vector<SmallVec> random_rows(std::mt19937_64& rng, std::size_t m, std::size_t n,
                                  std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> dist(lo, hi);
  std::vector<SmallVec> out(m, SmallVec(n));
  for (auto& row : out)
    for (auto& x : row) x = dist(rng);
  return out;
}

} // namespace logmap::testing
