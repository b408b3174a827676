#pragma once

#include "heightcount/algreal.hpp"
#include "heightcount/intmat.hpp"
#include "heightcount/quadsurd.hpp"
#include "heightcount/ratmat.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hc {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;
class NfElement;

class NumberField {
 public:
  // minpoly: monic integer polynomial, constant term first.
  // basis: d rows, the integral basis expressed in the power basis of theta.
  static FieldPtr create(const Poly& minpoly, const std::vector<RatVec>& basis, const std::string& name = "");
  static FieldPtr rationals();
  // Q(sqrt m) with its maximal order, theta = sqrt m.
  static FieldPtr quadratic(long m);

  int degree() const { return d_; }
  int r1() const { return r1_; }
  int r2() const { return r2_; }
  int places() const { return r1_ + r2_; }
  // local degree d_v of archimedean place v
  int local_degree(int v) const { return v < r1_ ? 1 : 2; }
  bool totally_real() const { return r2_ == 0; }
  bool is_quadratic() const { return d_ == 2; }
  const Int& discriminant() const { return disc_; }
  const Poly& minpoly() const { return minpoly_; }
  const RatMat& basis() const { return basis_; }
  const RatMat& basis_inverse() const { return basis_inv_; }
  const std::string& name() const { return name_; }
  // Squarefree m with K = Q(sqrt m) for quadratic fields.
  const Int& quadratic_radicand() const { return m_; }
  // Real roots (channel order) for totally real fields.
  const std::vector<AlgReal>& real_roots() const { return roots_; }
  // Power-basis coefficients of theta^k for k < 2d - 1.
  const std::vector<RatVec>& power_table() const { return powers_; }
  std::string describe() const;

  NumberField() = default;

 private:
  friend class NfElement;
  Poly minpoly_;
  RatMat basis_, basis_inv_;
  int d_ = 0, r1_ = 0, r2_ = 0;
  Int disc_;
  Int p_, q_, delta_, m_, msq_;  // quadratic data: minpoly x^2 + p x + q, delta = msq^2 m
  std::vector<AlgReal> roots_;
  std::vector<RatVec> powers_;
  std::string name_;
};

class NfElement {
 public:
  NfElement() = default;
  NfElement(FieldPtr K, RatVec power_coeffs);
  static NfElement from_rat(FieldPtr K, const Rat& q);
  static NfElement theta(FieldPtr K);
  // element with the given coordinates in the integral basis
  static NfElement from_integral(FieldPtr K, const RatVec& coords);

  const FieldPtr& field() const { return K_; }
  const RatVec& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  NfElement operator+(const NfElement& o) const;
  NfElement operator-(const NfElement& o) const;
  NfElement operator*(const NfElement& o) const;
  NfElement operator/(const NfElement& o) const;
  NfElement operator-() const;
  NfElement operator*(const Rat& q) const;
  bool operator==(const NfElement& o) const { return c_ == o.c_; }
  bool operator!=(const NfElement& o) const { return c_ != o.c_; }
  NfElement inv() const;
  NfElement pow(long e) const;

  // multiplication-by-this matrix on the power basis (columns a * theta^j)
  RatMat mult_matrix() const;
  // multiplication matrix on integral-basis coordinates
  RatMat mult_matrix_integral() const;
  Rat norm() const;
  Rat trace() const;
  RatVec int_coords() const;
  bool is_integral() const;
  Int denominator() const;
  // Galois conjugate; quadratic fields only.
  NfElement conjugate() const;

  // Channel k in the order r1 real embeddings, then (Re, Im) pairs.
  CertReal channel(int k) const;
  std::vector<CertReal> channels() const;
  // |a|_v^{d_v} for archimedean place v (squares at complex places).
  CertReal place_abs_pow(int v) const;
  std::string str() const;

 private:
  FieldPtr K_;
  RatVec c_;
};

class FracIdeal {
 public:
  FracIdeal() = default;
  static FracIdeal from_generators(const FieldPtr& K, const std::vector<NfElement>& gens);
  static FracIdeal unit(const FieldPtr& K);
  static FracIdeal principal(const NfElement& a);

  const FieldPtr& field() const { return K_; }
  // Z-lattice of integral-basis coordinates.
  const RatLattice& lattice() const { return lat_; }
  std::vector<NfElement> z_basis() const;
  Rat norm() const;
  bool contains(const NfElement& a) const;
  bool is_integral() const;
  FracIdeal operator+(const FracIdeal& o) const;
  FracIdeal operator*(const FracIdeal& o) const;
  bool operator==(const FracIdeal& o) const { return lat_ == o.lat_; }
  FracIdeal inverse() const;
  FracIdeal intersect(const FracIdeal& o) const;
  std::string str() const;

 private:
  FieldPtr K_;
  RatLattice lat_;
};

// Fundamental unit eps > 1 (first real channel) of a real quadratic field
// whose basis is the maximal order.
NfElement fundamental_unit(const FieldPtr& K);
// Convenience: Q(sqrt m), m squarefree > 1.
NfElement fundamental_unit_real_quadratic(long m);
// Roots of unity count.
int roots_of_unity_count(const FieldPtr& K);
std::vector<NfElement> roots_of_unity(const FieldPtr& K);
// Generator g with I = (g), for d = 1 and quadratic fields with the
// maximal order. nullopt means the ideal is not principal.
std::optional<NfElement> principal_generator(const FracIdeal& I);
// Minkowski-bound test for d <= 2.
bool class_number_one(const FieldPtr& K);

}  // namespace hc
