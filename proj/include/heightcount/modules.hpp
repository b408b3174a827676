#pragma once

#include "heightcount/heights.hpp"
#include "heightcount/lattice.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace hc {

struct PseudoElement {
  NfVec y;
  FracIdeal ideal;
};

// M = { sum beta_n y_n : beta_n in I_n } inside K^N.
class OkModule {
 public:
  OkModule() = default;
  OkModule(FieldPtr K, std::size_t N, std::vector<PseudoElement> pb);
  // Raw generators; only K = Q is supported (pseudo-basis by HNF over Z).
  static OkModule from_generators(FieldPtr K, const std::vector<NfVec>& gens);
  static OkModule free_module(FieldPtr K, std::size_t N);
  // Module known only through a Z-basis (d * L vectors). No pseudo-basis is
  // attached, so discriminant and determinant formulas are unavailable.
  static OkModule from_z_basis(FieldPtr K, std::size_t N, std::size_t L, std::vector<NfVec> zb);

  const FieldPtr& field() const { return K_; }
  std::size_t ambient() const { return n_; }
  std::size_t rank() const { return rank_; }
  bool has_pseudo_basis() const { return !pb_.empty(); }
  const std::vector<PseudoElement>& pseudo_basis() const { return pb_; }
  // Z-basis gamma_{n,j} y_n, in the order n-major.
  const std::vector<NfVec>& z_basis() const { return zb_; }
  NfVec element(const IntVec& coeffs) const;
  bool integral() const { return integral_; }

 private:
  FieldPtr K_;
  std::size_t n_ = 0, rank_ = 0;
  std::vector<PseudoElement> pb_;
  std::vector<NfVec> zb_;
  bool integral_ = false;
};

// Channel-major: sigma_1 on every coordinate, then sigma_2, ...
std::vector<CertReal> sigma_embed(const NfVec& x);
RealLattice module_lattice(const OkModule& M);
Rat module_discriminant(const OkModule& M);
FracIdeal scaling_ideal(const OkModule& M);

// 2^{-L r2} |D_K(M)|^{L/2}, as displayed for the determinant of the lattice
Real module_det_displayed(const OkModule& M);
// 2^{-L r2} |D_K|^{L/2} prod N(I_n) prod_v H2_v(Y)^{d_v}
Real module_det_corrected(const OkModule& M);

struct ModuleConstant {
  HeightValue value;  // for z: carried as h(a) h(1/a) with root d
  NfElement witness;
};
ModuleConstant module_c(const OkModule& M, std::uint64_t budget = 50000000);
ModuleConstant module_z(const OkModule& M, std::uint64_t budget = 50000000);

struct ModuleCount {
  std::uint64_t count = 0;
  std::uint64_t candidates = 0;
};
// |{x in M : h(x) <= R}| with closed boundary decisions.
ModuleCount exact_count_module(const OkModule& M, const Rat& R, std::uint64_t budget = 200000000,
                               Partition part = {});
ModuleCount exact_count_module(const OkModule& M, const CertReal& R, std::uint64_t budget = 200000000,
                               Partition part = {});
// Calls fn(x, h(x)) on every element with h(x) <= R.
void enumerate_module(const OkModule& M, const Rat& R, const std::function<bool(const NfVec&, const HeightValue&)>& fn,
                      std::uint64_t budget = 200000000, Partition part = {});

}  // namespace hc
