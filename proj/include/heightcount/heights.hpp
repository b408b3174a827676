#pragma once

#include "heightcount/numberfield.hpp"

#include <string>
#include <vector>

namespace hc {

using NfVec = std::vector<NfElement>;
// rows of NfElements
using NfMat = std::vector<NfVec>;

// A height carried in power form: value^root = finite * arch.
struct HeightValue {
  Rat finite = 1;
  CertReal arch = CertReal(1);
  int root = 1;

  Rat power_finite() const { return finite; }
  // finite * arch
  CertReal power() const { return CertReal(finite) * arch; }
  Real value() const;
  Ball eval(mpfr_prec_t prec) const { return value().eval(prec); }
  double to_double() const;
  // Sign of value - R, decided on value^root vs R^root.
  Cmp compare_to(const Rat& R) const;
  std::string str(int digits = 20) const;
};

Cmp compare(const HeightValue& a, const HeightValue& b);

// prod_v max_i |x_i|_v^{d_v}
CertReal arch_max_power(const NfVec& x);
// prod_v (sum_i |x_i|_v^2)^{d_v}: the square of the Euclidean archimedean part
CertReal arch_euclid_power2(const NfVec& x);
FracIdeal content_ideal(const NfVec& x);

HeightValue height_H(const NfVec& x);
HeightValue height_h(const NfVec& x);
HeightValue height_H2(const NfVec& x);
std::vector<NfElement> grassmann(const NfMat& X);
HeightValue subspace_height(const NfMat& X);
Rat hfin_integral(const NfVec& x);
Rat hfin_matrix(const NfMat& C);
HeightValue form_height(const NfMat& B);

struct IntegralScaling {
  NfElement a;
  NfVec ax;
  HeightValue H;  // H(x) = h(ax)
};
IntegralScaling find_integral_scaling(const NfVec& x, int unit_range = 16);

NfElement nf_det(NfMat m);

}  // namespace hc
