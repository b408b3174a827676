#pragma once

#include "heightcount/intmat.hpp"
#include "heightcount/quadsurd.hpp"
#include "heightcount/ratmat.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hc {

using CertMat = std::vector<std::vector<CertReal>>;

// A lattice in R^N given by an N x L basis (columns are basis vectors).
class RealLattice {
 public:
  RealLattice() = default;
  static RealLattice from_rational(const RatMat& basis);
  static RealLattice from_columns(const std::vector<RatVec>& cols);
  static RealLattice from_cert(CertMat basis);

  std::size_t ambient_dim() const { return n_; }
  std::size_t rank() const { return l_; }
  const CertMat& basis() const { return b_; }
  bool is_rational() const { return rat_.has_value(); }
  const std::optional<RatMat>& rational_basis() const { return rat_; }
  bool is_integral() const;
  // sqrt(det(B^t B)); exact rational square root when possible
  Real det() const;
  // det(B^t B)
  CertReal gram_det() const;
  std::vector<CertReal> point(const IntVec& coeffs) const;
  CertReal sup_norm(const IntVec& coeffs) const;

 private:
  std::size_t n_ = 0, l_ = 0;
  CertMat b_;
  std::optional<RatMat> rat_;
};

// Optional split of the work: only coefficient vectors whose first
// enumerated coordinate lies in slot `part` modulo `parts` are visited.
struct Partition {
  unsigned part = 0, parts = 1;
};

// Visits every coefficient vector m with |B m|_inf <= R (closed cube).
// Returning false from fn stops the walk.
void enumerate_cube(const RealLattice& lat, const Rat& R, const std::function<bool(const IntVec&)>& fn,
                    Partition part = {});
// Same with a separate closed bound per ambient coordinate.
void enumerate_box(const RealLattice& lat, const std::vector<Rat>& bounds, const std::function<bool(const IntVec&)>& fn,
                   Partition part = {});
std::vector<IntVec> enumerate_cube(const RealLattice& lat, const Rat& R, Partition part = {});
std::uint64_t count_cube(const RealLattice& lat, const Rat& R, Partition part = {});

struct SupMin {
  CertReal c;
  IntVec witness;
};
SupMin supnorm_min(const RealLattice& lat);

// Upper bound: minimum over the applicable branches.
Real bound_upper(std::size_t N, std::size_t L, const Real& det, const Real& c, const Rat& R, bool integral);
// Lower bound; throws NotApplicable below the threshold.
Real bound_lower(std::size_t L, const Real& det, const Real& c, const Rat& R);
Real lower_threshold(std::size_t L, const Real& det, const Real& c);

struct MaxGrassmann {
  RealLattice omega;
  CertReal det_omega;
  std::vector<std::size_t> rows;
};
MaxGrassmann max_grassmann_sublattice(const RealLattice& lat);

// Determinant by cofactor expansion (no division), for CertReal entries.
CertReal cert_det(const CertMat& m);

}  // namespace hc
