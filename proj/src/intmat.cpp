#include "heightcount/intmat.hpp"

#include "heightcount/error.hpp"
#include "heightcount/ratmat.hpp"

#include <algorithm>

namespace hc {

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<std::vector<long>>& rows) {
  IntMat m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < m.rows; ++i) {
    require(rows[i].size() == m.cols, "ragged integer matrix");
    for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMat IntMat::from_columns(const std::vector<IntVec>& cols, std::size_t dim) {
  IntMat m(dim, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == dim, "generator has wrong length");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

IntVec IntMat::column(std::size_t j) const {
  IntVec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

IntMat IntMat::transpose() const {
  IntMat t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::columns_subset(std::size_t first, std::size_t count) const {
  IntMat s(rows, count);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < count; ++j) s(i, j) = (*this)(i, first + j);
  return s;
}

IntMat operator*(const IntMat& x, const IntMat& y) {
  require(x.cols == y.rows, "matrix shape mismatch");
  IntMat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

namespace {

// (col_a, col_b) <- (s col_a + t col_b, u col_a + v col_b)
void col_combine(IntMat& m, std::size_t ca, std::size_t cb, const Int& s, const Int& t, const Int& u,
                 const Int& v) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    Int x = m(i, ca), y = m(i, cb);
    m(i, ca) = s * x + t * y;
    m(i, cb) = u * x + v * y;
  }
}

void col_axpy(IntMat& m, std::size_t dst, std::size_t src, const Int& q) {
  for (std::size_t i = 0; i < m.rows; ++i)
    if (m(i, src) != 0) m(i, dst) -= q * m(i, src);
}

void col_negate(IntMat& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows; ++i) m(i, c) = -m(i, c);
}

HnfResult hnf_impl(const IntMat& m, bool track) {
  HnfResult res;
  res.h = m;
  if (track) res.u = IntMat::identity(m.cols);
  IntMat& h = res.h;
  std::size_t k = 0;
  for (std::size_t i = 0; i < h.rows && k < h.cols; ++i) {
    for (std::size_t j = k + 1; j < h.cols; ++j) {
      if (h(i, j) == 0) continue;
      Int a = h(i, k), b = h(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Int u = -b / g, v = a / g;
      col_combine(h, k, j, s, t, u, v);
      if (track) col_combine(res.u, k, j, s, t, u, v);
    }
    if (h(i, k) == 0) continue;
    if (h(i, k) < 0) {
      col_negate(h, k);
      if (track) col_negate(res.u, k);
    }
    const Int p = h(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), p.get_mpz_t());
      if (q == 0) continue;
      col_axpy(h, j, k, q);
      if (track) col_axpy(res.u, j, k, q);
    }
    ++k;
  }
  res.rank = k;
  return res;
}

}  // namespace

IntMat hnf(const IntMat& m) { return hnf_impl(m, false).h; }

HnfResult hnf_with_transform(const IntMat& m) { return hnf_impl(m, true); }

std::size_t rank(const IntMat& m) { return hnf_impl(m, false).rank; }

Int det_bareiss(const IntMat& in) {
  require(in.rows == in.cols, "determinant of non-square matrix");
  const std::size_t n = in.rows;
  if (n == 0) return 1;
  IntMat m = in;
  Int prev = 1;
  int sgn_ = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sgn_ = -sgn_;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sgn_ * m(n - 1, n - 1);
}

IntVec smith_invariants(const IntMat& in) {
  IntMat m = in;
  IntVec out;
  const std::size_t n = std::min(m.rows, m.cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      Int best;
      for (std::size_t i = t; i < m.rows; ++i)
        for (std::size_t j = t; j < m.cols; ++j)
          if (m(i, j) != 0 && (!found || abs(m(i, j)) < best)) {
            found = true;
            best = abs(m(i, j));
            pi = i;
            pj = j;
          }
      if (!found) {
        std::sort(out.begin(), out.end());
        return out;
      }
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(t, j), m(pi, j));
      for (std::size_t i = 0; i < m.rows; ++i) std::swap(m(i, t), m(i, pj));
      bool clean = true;
      for (std::size_t i = t + 1; i < m.rows; ++i) {
        if (m(i, t) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, t).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t j = t; j < m.cols; ++j) m(i, j) -= q * m(t, j);
        if (m(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m.cols; ++j) {
        if (m(t, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m(t, j).get_mpz_t(), m(t, t).get_mpz_t());
        for (std::size_t i = t; i < m.rows; ++i) m(i, j) -= q * m(i, t);
        if (m(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < m.rows && divides; ++i)
        for (std::size_t j = t + 1; j < m.cols; ++j)
          if (m(i, j) % m(t, t) != 0) {
            for (std::size_t k = t; k < m.cols; ++k) m(t, k) += m(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(m(t, t)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMat integer_kernel(const IntMat& m) {
  auto r = hnf_with_transform(m);
  return r.u.columns_subset(r.rank, m.cols - r.rank);
}

std::optional<Int> lattice_index(const IntMat& gens) {
  auto r = hnf_impl(gens, false);
  if (r.rank < gens.rows) return std::nullopt;
  Int idx = 1;
  for (std::size_t j = 0; j < r.rank; ++j) idx *= r.h(j, j);
  return idx;
}

std::optional<Int> lattice_index(const std::vector<IntVec>& gens, std::size_t dim) {
  return lattice_index(IntMat::from_columns(gens, dim));
}

// ---------------------------------------------------------------- RatLattice

RatLattice RatLattice::from_generators(const std::vector<RatVec>& gens, std::size_t dim) {
  RatLattice L;
  L.dim_ = dim;
  Int den = 1;
  for (const auto& g : gens) {
    require(g.size() == dim, "lattice generator has wrong length");
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), lcm_den(g).get_mpz_t());
  }
  IntMat m(dim, gens.size());
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (std::size_t i = 0; i < dim; ++i) {
      Rat s = gens[j][i] * den;
      m(i, j) = s.get_num();
    }
  auto r = hnf_impl(m, false);
  IntMat b = r.h.columns_subset(0, r.rank);
  Int g = den;
  for (const auto& x : b.a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g != 1) {
    den /= g;
    for (auto& x : b.a) x /= g;
  }
  L.den_ = den;
  L.basis_ = std::move(b);
  return L;
}

std::vector<RatVec> RatLattice::basis() const {
  std::vector<RatVec> out(rank(), RatVec(dim_));
  for (std::size_t j = 0; j < rank(); ++j)
    for (std::size_t i = 0; i < dim_; ++i) out[j][i] = make_rat(basis_(i, j), den_);
  return out;
}

bool RatLattice::contains(const RatVec& v) const {
  require(v.size() == dim_, "vector has wrong length");
  IntVec w(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Rat s = v[i] * den_;
    if (s.get_den() != 1) return false;
    w[i] = s.get_num();
  }
  std::size_t row = 0;
  for (std::size_t j = 0; j < rank(); ++j) {
    while (basis_(row, j) == 0) {
      if (w[row] != 0) return false;
      ++row;
    }
    const Int& p = basis_(row, j);
    if (w[row] % p != 0) return false;
    Int q = w[row] / p;
    for (std::size_t i = row; i < dim_; ++i) w[i] -= q * basis_(i, j);
    ++row;
  }
  for (std::size_t i = row; i < dim_; ++i)
    if (w[i] != 0) return false;
  return true;
}

Rat RatLattice::covolume() const {
  require(full_rank(), "covolume of a lattice that is not full rank");
  Int d = 1;
  for (std::size_t j = 0; j < dim_; ++j) d *= basis_(j, j);
  return make_rat(d, pow_int(den_, dim_));
}

RatLattice RatLattice::dual() const {
  require(full_rank(), "dual of a lattice that is not full rank");
  RatMat b(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) b(i, j) = make_rat(basis_(i, j), den_);
  auto inv = inverse(b);
  if (!inv) fail(ErrorCode::Internal, "singular lattice basis");
  RatMat t = inv->transpose();
  std::vector<RatVec> gens;
  for (std::size_t j = 0; j < dim_; ++j) gens.push_back(t.column(j));
  return from_generators(gens, dim_);
}

RatLattice RatLattice::operator+(const RatLattice& o) const {
  require(dim_ == o.dim_, "lattice dimension mismatch");
  auto g = basis();
  auto h = o.basis();
  g.insert(g.end(), h.begin(), h.end());
  return from_generators(g, dim_);
}

RatLattice RatLattice::intersect(const RatLattice& o) const {
  require(dim_ == o.dim_, "lattice dimension mismatch");
  Int e;
  mpz_lcm(e.get_mpz_t(), den_.get_mpz_t(), o.den_.get_mpz_t());
  Int fa = e / den_, fb = e / o.den_;
  const std::size_t ra = rank(), rb = o.rank();
  IntMat m(dim_, ra + rb);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < ra; ++j) m(i, j) = basis_(i, j) * fa;
    for (std::size_t j = 0; j < rb; ++j) m(i, ra + j) = -o.basis_(i, j) * fb;
  }
  IntMat ker = integer_kernel(m);
  std::vector<RatVec> gens;
  for (std::size_t c = 0; c < ker.cols; ++c) {
    RatVec v(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      Int s = 0;
      for (std::size_t j = 0; j < ra; ++j) s += basis_(i, j) * ker(j, c);
      v[i] = make_rat(s, den_);
    }
    gens.push_back(std::move(v));
  }
  return from_generators(gens, dim_);
}

bool RatLattice::operator==(const RatLattice& o) const {
  return dim_ == o.dim_ && den_ == o.den_ && basis_ == o.basis_;
}

bool RatLattice::subset_of(const RatLattice& o) const {
  for (const auto& b : basis())
    if (!o.contains(b)) return false;
  return true;
}

}  // namespace hc
