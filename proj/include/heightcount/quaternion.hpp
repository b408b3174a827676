#pragma once

#include "heightcount/heights.hpp"
#include "heightcount/modules.hpp"

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hc {

class QuatAlgebra;
using AlgebraPtr = std::shared_ptr<const QuatAlgebra>;

// D = (alpha, beta / K) over a totally real K, alpha and beta integral and
// totally negative.
class QuatAlgebra {
 public:
  static AlgebraPtr create(FieldPtr K, const NfElement& alpha, const NfElement& beta);

  const FieldPtr& field() const { return K_; }
  int degree() const { return K_->degree(); }
  const NfElement& alpha() const { return alpha_; }
  const NfElement& beta() const { return beta_; }
  // s_v^2 and t_v^2 per channel, exact
  const std::vector<CertReal>& s_sq() const { return s_sq_; }
  const std::vector<CertReal>& t_sq() const { return t_sq_; }
  // s = prod_v s_v, t = prod_v t_v and their squares
  CertReal s_prod_sq() const;
  CertReal t_prod_sq() const;
  Real s() const { return sqrt(s_prod_sq().approx); }
  Real t() const { return sqrt(t_prod_sq().approx); }
  std::string describe() const;

 private:
  FieldPtr K_;
  NfElement alpha_, beta_;
  std::vector<CertReal> s_sq_, t_sq_;
};

class QuatElement {
 public:
  QuatElement() = default;
  QuatElement(AlgebraPtr A, std::array<NfElement, 4> c);
  static QuatElement scalar(AlgebraPtr A, const NfElement& a);
  static QuatElement scalar(AlgebraPtr A, const Rat& a);
  // 1, i, j, k for m = 0..3
  static QuatElement unit_vector(AlgebraPtr A, int m);

  const AlgebraPtr& algebra() const { return A_; }
  const NfElement& operator[](int m) const { return c_[m]; }
  const std::array<NfElement, 4>& components() const { return c_; }
  bool is_zero() const;

  QuatElement operator+(const QuatElement& o) const;
  QuatElement operator-(const QuatElement& o) const;
  QuatElement operator*(const QuatElement& o) const;
  QuatElement operator*(const NfElement& a) const;
  QuatElement operator-() const;
  bool operator==(const QuatElement& o) const { return c_ == o.c_; }
  bool operator!=(const QuatElement& o) const { return !(*this == o); }
  QuatElement conj() const;
  NfElement trace() const;
  NfElement nrm() const;
  QuatElement inv() const;
  std::string str() const;

 private:
  AlgebraPtr A_;
  std::array<NfElement, 4> c_;
};

using DVec = std::vector<QuatElement>;
using DMat = std::vector<DVec>;

// sigma_n(N(x)) = |x|_{v_n}^2
CertReal local_norm_sq(const QuatElement& x, int n);
Real arch_abs(const QuatElement& x, int n);

// [x] in K^{4N} and back
NfVec bracket(const DVec& x);
DVec bracket_inv(const AlgebraPtr& A, const NfVec& y);

// Elements a + b sqrt(alpha) of E = K(sqrt alpha).
class EElement {
 public:
  EElement() = default;
  EElement(NfElement a, NfElement b, NfElement alpha) : a_(std::move(a)), b_(std::move(b)), alpha_(std::move(alpha)) {}
  const NfElement& re() const { return a_; }
  const NfElement& im() const { return b_; }
  const NfElement& alpha() const { return alpha_; }
  EElement operator+(const EElement& o) const;
  EElement operator-(const EElement& o) const;
  EElement operator*(const EElement& o) const;
  EElement operator/(const EElement& o) const;
  bool operator==(const EElement& o) const { return a_ == o.a_ && b_ == o.b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  // N_{E/K} = a^2 - alpha b^2, the squared complex modulus at every channel
  NfElement norm() const;

 private:
  NfElement a_, b_, alpha_;
};

using EMat = std::vector<std::vector<EElement>>;
EMat rho(const QuatElement& x);
// block matrix, 2 rows and 2 columns per entry
EMat rho(const DMat& C);
EElement e_det(const EMat& m);

DMat conj_transpose(const DMat& C);
DMat mat_mul(const DMat& a, const DMat& b);

class QuatOrder {
 public:
  // O_D = O_K + O_K i + O_K j + O_K k
  static QuatOrder standard(const AlgebraPtr& A);
  // 4d elements; closure under products is validated
  static QuatOrder from_z_basis(const AlgebraPtr& A, std::vector<QuatElement> basis);

  const AlgebraPtr& algebra() const { return A_; }
  const std::vector<QuatElement>& z_basis() const { return basis_; }
  bool is_standard() const { return standard_; }
  // coordinates in the Z-basis
  RatVec coords(const QuatElement& x) const;
  bool contains(const QuatElement& x) const;
  // least positive integer a with a x in O^N
  Int clearing_denominator(const DVec& x) const;
  // N(Delta_O), from the reduced-trace discriminant over Z
  Rat disc_norm() const;

 private:
  AlgebraPtr A_;
  std::vector<QuatElement> basis_;
  RatMat inv_;  // Q-coordinates (power basis) -> Z-basis coordinates
  bool standard_ = false;
};

// Q-coordinates of x in the power basis, 4d entries
RatVec quat_qcoords(const QuatElement& x);

// Heights on D^N. All carry root 2d or 4d as recorded in the value.
HeightValue height_Hinf(const DVec& x);
HeightValue height_hinf(const DVec& x);
// h(x) = h_inf(x) H_fin([1, x]); equals h_inf on O_D^N
HeightValue height_hD(const DVec& x);
// [O : O x_1 + ... + O x_N], coordinates in O
Rat hfin_index(const DVec& x, const QuatOrder& O);
HeightValue height_HO(const DVec& x, const QuatOrder& O);

class DSubspace {
 public:
  static DSubspace from_basis(DMat X);                     // N x L, columns span Z
  static DSubspace from_constraints(DMat C, std::size_t N);  // (N-L) x N, Z = ker C
  std::size_t ambient() const { return N_; }
  std::size_t dim() const { return L_; }
  const AlgebraPtr& algebra() const { return A_; }
  // available forms; computed on demand when missing
  DMat basis() const;
  std::optional<DMat> constraints() const;
  // Z^perp = { y : x^* y = 0 for x in Z }
  DSubspace orthogonal() const;

 private:
  AlgebraPtr A_;
  std::size_t N_ = 0, L_ = 0;
  std::optional<DMat> X_, C_;
};

// Left D-rank of the rows of C
std::size_t left_rank(const DMat& C);
// Columns span the right kernel {x : C x = 0}
DMat right_kernel(const DMat& C, std::size_t N);
// Rows span the left annihilator {c : c X = 0}
DMat left_annihilator(const DMat& X);

// H_inf(C) from det rho(C C^*), root 4d
HeightValue hinf_C(const DMat& C);
// Sum over D-minors of |det rho(C_0)|^2, root 2d
HeightValue hinf_C_minors(const DMat& C);
// Weighted sum over the E-minors of rho(C), root 4d
HeightValue hinf_C_weighted(const DMat& C);
// [O^{N-L} : C(O^N)], generalised to a covolume for non-integral C
Rat hfin_index_C(const DMat& C, const QuatOrder& O);
HeightValue subspace_height_C(const DMat& C, const QuatOrder& O);
// Basis form: X^t(O^N) index and det rho(X^* X)
HeightValue subspace_height_X(const DMat& X, const QuatOrder& O);
HeightValue subspace_height(const DSubspace& Z, const QuatOrder& O);

// Hermitian forms F(x, y) = sum conj(x_m) f_ml y_l
class HermitianForm {
 public:
  explicit HermitianForm(DMat F);
  const DMat& matrix() const { return F_; }
  std::size_t size() const { return F_.size(); }
  QuatElement value(const DVec& x, const DVec& y) const;
  NfElement value(const DVec& x) const;

 private:
  DMat F_;
};
// 4x4 block of f in the trace matrix
NfMat trace_block(const QuatElement& f);
NfMat trace_form(const HermitianForm& F);
NfElement quad_value(const NfMat& B, const NfVec& z);
// H_inf(F) of the coefficient matrix as a vector in D^{N^2}
HeightValue form_height_inf(const HermitianForm& F);

struct OrderConstants {
  Rat disc_norm;  // N(Delta_O)
  Rat n4ab;       // |N(4 alpha beta)|
  Real frak_M;
};
OrderConstants order_constants(const QuatOrder& O);

// M_Z = [Z cap O^N] as a module over O_K in K^{4N}
OkModule bracket_module(const DSubspace& Z, const QuatOrder& O);
struct SubspaceConstants {
  ModuleConstant c, z;
};
SubspaceConstants subspace_constants(const DSubspace& Z, const QuatOrder& O);

// Exact sets of bounded height
struct DCount {
  std::uint64_t count = 0;
  std::uint64_t candidates = 0;
  std::vector<NfVec> points;  // [x], when collected
};
// S_{D,N}(R) through integral projective representatives (D-side filter)
DCount exact_count_D(const AlgebraPtr& A, std::size_t N, const Rat& R, bool collect = false,
                     std::uint64_t budget = 200000000);
// same set via S_{K,4N}(R / t) and exact h on D
DCount exact_count_D_via_K(const AlgebraPtr& A, std::size_t N, const Rat& R, bool collect = false,
                           std::uint64_t budget = 200000000);
// {y in K^n : h(y) <= R'} with R'^{2d} given exactly
DCount points_K_bounded(const FieldPtr& K, std::size_t n, const CertReal& R2d, bool collect = false,
                        std::uint64_t budget = 200000000);
// |{x in Z cap O^N : h(x) <= R}|
std::uint64_t exact_count_ZO(const DSubspace& Z, const QuatOrder& O, const Rat& R, std::uint64_t budget = 200000000);
// Size of an explicit subset certified by the archimedean upper estimate;
// Z must be spanned by one vector with entries in O_K and O = O_D.
Int certified_count_ZO(const DSubspace& Z, const QuatOrder& O, const Rat& R);

}  // namespace hc
