#include "heightcount/ratmat.hpp"

#include "heightcount/error.hpp"

namespace hc {

RatMat RatMat::identity(std::size_t n) {
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMat RatMat::transpose() const {
  RatMat t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatVec RatMat::column(std::size_t j) const {
  RatVec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

RatVec RatMat::row(std::size_t i) const {
  return RatVec(a.begin() + static_cast<long>(i * cols), a.begin() + static_cast<long>((i + 1) * cols));
}

RatMat operator*(const RatMat& x, const RatMat& y) {
  require(x.cols == y.rows, "matrix shape mismatch");
  RatMat z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

RatVec operator*(const RatMat& x, const RatVec& v) {
  require(x.cols == v.size(), "matrix-vector shape mismatch");
  RatVec out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) out[i] += x(i, k) * v[k];
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (std::size_t k = 0; k < m.cols; ++k) std::swap(m(p, k), m(r, k));
    Rat inv = 1 / m(r, c);
    for (std::size_t k = c; k < m.cols; ++k) m(r, k) *= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t k = c; k < m.cols; ++k) m(i, k) -= f * m(r, k);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

Rat det(RatMat m) {
  require(m.rows == m.cols, "determinant of non-square matrix");
  std::vector<std::vector<Rat>> rows(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) rows[i] = m.row(i);
  return det_field<Rat>(std::move(rows), Rat(0), Rat(1));
}

std::size_t rank(const RatMat& m) {
  RatMat c = m;
  return rref(c).size();
}

std::optional<RatMat> inverse(const RatMat& m) {
  require(m.rows == m.cols, "inverse of non-square matrix");
  const std::size_t n = m.rows;
  RatMat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

RatMat kernel(const RatMat& m) {
  RatMat c = m;
  auto piv = rref(c);
  std::vector<bool> is_piv(m.cols, false);
  for (auto p : piv) is_piv[p] = true;
  RatMat k(m.cols, m.cols - piv.size());
  std::size_t col = 0;
  for (std::size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    k(f, col) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], col) = -c(r, f);
    ++col;
  }
  return k;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  require(m.rows == b.size(), "solve shape mismatch");
  RatMat aug(m.rows, m.cols + 1);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  RatVec x(m.cols);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
  return x;
}

}  // namespace hc
