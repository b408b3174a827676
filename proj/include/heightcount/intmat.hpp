#pragma once

#include "heightcount/rational.hpp"

#include <optional>
#include <vector>

namespace hc {

struct IntMat {
  std::size_t rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  static IntMat identity(std::size_t n);
  static IntMat from_rows(const std::vector<std::vector<long>>& rows);
  static IntMat from_columns(const std::vector<IntVec>& cols, std::size_t dim);

  Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  IntVec column(std::size_t j) const;
  IntMat transpose() const;
  IntMat columns_subset(std::size_t first, std::size_t count) const;
  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMat operator*(const IntMat& x, const IntMat& y);

struct HnfResult {
  IntMat h;  // rows x cols, trailing columns zero
  IntMat u;  // unimodular cols x cols with m * u = h
  std::size_t rank = 0;
};

// Column-style Hermite normal form: lower triangular (staircase) with
// positive pivots, pivot rows strictly increasing, and entries to the left
// of each pivot reduced into [0, pivot).
IntMat hnf(const IntMat& m);
HnfResult hnf_with_transform(const IntMat& m);
std::size_t rank(const IntMat& m);
Int det_bareiss(const IntMat& m);
// Nonzero invariant factors d_1 | d_2 | ... of the Smith form.
IntVec smith_invariants(const IntMat& m);
// Columns form a basis of {x in Z^cols : m x = 0}.
IntMat integer_kernel(const IntMat& m);
// Index of the span of the columns in Z^rows; nullopt when infinite.
std::optional<Int> lattice_index(const IntMat& gens);
std::optional<Int> lattice_index(const std::vector<IntVec>& gens, std::size_t dim);

// A Z-lattice in Q^k stored as (1/den) * HNF(basis).
class RatLattice {
 public:
  RatLattice() = default;
  static RatLattice from_generators(const std::vector<RatVec>& gens, std::size_t dim);
  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return basis_.cols; }
  const IntMat& scaled_basis() const { return basis_; }
  const Int& denominator() const { return den_; }
  std::vector<RatVec> basis() const;
  bool contains(const RatVec& v) const;
  bool full_rank() const { return rank() == dim_; }
  // Covolume of a full-rank lattice relative to Z^k.
  Rat covolume() const;
  RatLattice dual() const;
  RatLattice operator+(const RatLattice& o) const;
  RatLattice intersect(const RatLattice& o) const;
  bool operator==(const RatLattice& o) const;
  bool subset_of(const RatLattice& o) const;

 private:
  std::size_t dim_ = 0;
  Int den_ = 1;
  IntMat basis_;
};

}  // namespace hc
