#pragma once

#include "heightcount/rational.hpp"

#include <optional>
#include <vector>

namespace hc {

struct RatMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Rat> a;

  RatMat() = default;
  RatMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static RatMat identity(std::size_t n);
  Rat& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  RatMat transpose() const;
  RatVec column(std::size_t j) const;
  RatVec row(std::size_t i) const;
};

RatMat operator*(const RatMat& x, const RatMat& y);
RatVec operator*(const RatMat& x, const RatVec& v);
Rat det(RatMat m);
std::size_t rank(const RatMat& m);
std::optional<RatMat> inverse(const RatMat& m);
// Columns form a basis of the right kernel.
RatMat kernel(const RatMat& m);
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

// Determinant over any field type with +, -, *, /, == 0.
template <class F>
F det_field(std::vector<std::vector<F>> m, const F& zero, const F& one) {
  const std::size_t n = m.size();
  F acc = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == zero) ++p;
    if (p == n) return zero;
    if (p != c) {
      std::swap(m[p], m[c]);
      acc = zero - acc;
    }
    acc = acc * m[c][c];
    F inv = one / m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == zero) continue;
      F f = m[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
    }
  }
  return acc;
}

}  // namespace hc
