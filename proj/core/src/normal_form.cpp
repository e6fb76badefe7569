#include "logmap/normal_form.hpp"
#include "logmap/error.hpp"

#include <cassert>
#include <optional>
#include <utility>

namespace logmap {

std::vector<Integer> SmithForm::invariants() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D(i, i));
  return out;
}

namespace {

// Truncated quotient; the remainder then has smaller magnitude than b.
Integer tquot(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

struct SmithWork {
  SmithForm& f;

  void swap_rows(std::size_t a, std::size_t b) {
    f.D.swap_rows(a, b);
    f.U.swap_rows(a, b);
    f.U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    f.D.swap_cols(a, b);
    f.V.swap_cols(a, b);
    f.V_inv.swap_rows(a, b);
  }
  // row[dst] += k row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    f.D.add_row_multiple(dst, src, k);
    f.U.add_row_multiple(dst, src, k);
    f.U_inv.add_col_multiple(src, dst, -k);
  }
  // col[dst] += k col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    f.D.add_col_multiple(dst, src, k);
    f.V.add_col_multiple(dst, src, k);
    f.V_inv.add_row_multiple(src, dst, -k);
  }
  void negate_row(std::size_t i) {
    f.D.negate_row(i);
    f.U.negate_row(i);
    for (std::size_t r = 0; r < f.U_inv.rows(); ++r) f.U_inv(r, i) = -f.U_inv(r, i);
  }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SmithForm f{IntMatrix::identity(m), a, IntMatrix::identity(n),
              IntMatrix::identity(m), IntMatrix::identity(n), 0};
  SmithWork w{f};
  IntMatrix& d = f.D;

  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      // Pivot on the entry of least magnitude in the trailing block.
      std::optional<std::pair<std::size_t, std::size_t>> piv;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (sgn(d(i, j)) == 0) continue;
          if (!piv || mpz_cmpabs(d(i, j).get_mpz_t(), d(piv->first, piv->second).get_mpz_t()) < 0) piv = {i, j};
        }
      if (!piv) break;
      w.swap_rows(t, piv->first);
      w.swap_cols(t, piv->second);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(d(i, t)) == 0) continue;
        w.add_row(i, t, -tquot(d(i, t), d(t, t)));
        if (sgn(d(i, t)) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(d(t, j)) == 0) continue;
        w.add_col(j, t, -tquot(d(t, j), d(t, t)));
        if (sgn(d(t, j)) != 0) dirty = true;
      }
      if (dirty) continue;

      // Enforce d_t | every remaining entry.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      w.add_row(t, *bad_row, 1);
    }
    if (sgn(d(t, t)) == 0) break;
    if (sgn(d(t, t)) < 0) w.negate_row(t);
  }
  f.rank = t;
  return f;
}

HermiteForm hermite_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  HermiteForm h{a, IntMatrix::identity(m), 0};
  IntMatrix& H = h.H;
  IntMatrix& W = h.W;
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& k) {
    H.add_row_multiple(dst, src, k);
    W.add_row_multiple(dst, src, k);
  };
  auto swap_rows = [&](std::size_t x, std::size_t y) {
    H.swap_rows(x, y);
    W.swap_rows(x, y);
  };

  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    // Euclid on column c among rows r..m-1.
    for (;;) {
      std::optional<std::size_t> piv;
      for (std::size_t i = r; i < m; ++i) {
        if (sgn(H(i, c)) == 0) continue;
        if (!piv || mpz_cmpabs(H(i, c).get_mpz_t(), H(*piv, c).get_mpz_t()) < 0) piv = i;
      }
      if (!piv) break;
      swap_rows(r, *piv);
      bool dirty = false;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(H(i, c)) == 0) continue;
        add_row(i, r, -tquot(H(i, c), H(r, c)));
        if (sgn(H(i, c)) != 0) dirty = true;
      }
      if (!dirty) break;
    }
    if (sgn(H(r, c)) == 0) continue;
    if (sgn(H(r, c)) < 0) {
      H.negate_row(r);
      W.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(H(i, c)) == 0) continue;
      add_row(i, r, -floor_div(H(i, c), H(r, c)));
    }
    ++r;
  }
  h.rank = r;
  return h;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidArgument, "unimodular_inverse: not square");
  HermiteForm h = hermite_normal_form(m);
  if (h.H != IntMatrix::identity(m.rows()))
    throw Error(ErrorKind::InvalidArgument, "unimodular_inverse: matrix is not unimodular");
  return h.W;
}

IntMatrix left_inverse(const IntMatrix& m) {
  // U M V = [I; 0]  =>  (V [I | 0] U) M = I.
  SmithForm s = smith_normal_form(m);
  const std::size_t k = m.cols();
  if (s.rank != k)
    throw Error(ErrorKind::InvalidArgument, "left_inverse: map is not surjective");
  for (std::size_t i = 0; i < k; ++i)
    if (s.D(i, i) != 1)
      throw Error(ErrorKind::InvalidArgument, "left_inverse: map is not surjective");
  return s.V * s.U.row_slice(0, k);
}

std::vector<Vector> integer_kernel(const IntMatrix& m) {
  // x M = 0  <=>  (x U^-1)(U M V) = 0, and U M V = D kills exactly the
  // coordinates past the rank.
  SmithForm s = smith_normal_form(m);
  std::vector<Vector> basis;
  for (std::size_t i = s.rank; i < m.rows(); ++i) basis.push_back(s.U.row_vector(i));
  return basis;
}

LatticeSplit::LatticeSplit(const std::vector<Vector>& vs, std::size_t ambient)
    : ambient_(ambient) {
  if (vs.empty()) {
    V_ = IntMatrix::identity(ambient);
    V_inv_ = IntMatrix::identity(ambient);
    return;
  }
  SmithForm s = smith_normal_form(IntMatrix::from_rows(vs, ambient));
  dim_ = s.rank;
  V_ = std::move(s.V);
  V_inv_ = std::move(s.V_inv);
}

Vector LatticeSplit::inner(std::span<const Integer> x) const {
  Vector y = image_of(x, V_);
  y.resize(dim_);
  return y;
}

Vector LatticeSplit::outer(std::span<const Integer> x) const {
  Vector y = image_of(x, V_);
  return Vector(y.begin() + static_cast<std::ptrdiff_t>(dim_), y.end());
}

Vector LatticeSplit::from_inner(std::span<const Integer> y) const {
  assert(y.size() == dim_);
  Vector full(ambient_);
  for (std::size_t i = 0; i < dim_; ++i) full[i] = y[i];
  return image_of(full, V_inv_);
}

Vector LatticeSplit::from_outer(std::span<const Integer> y) const {
  assert(y.size() == ambient_ - dim_);
  Vector full(ambient_);
  for (std::size_t i = 0; i < y.size(); ++i) full[dim_ + i] = y[i];
  return image_of(full, V_inv_);
}

IntMatrix LatticeSplit::outer_matrix() const { return V_.col_slice(dim_, ambient_); }

IntMatrix LatticeSplit::outer_section() const { return V_inv_.row_slice(dim_, ambient_); }

} // namespace logmap
