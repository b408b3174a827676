#pragma once

#include "heightcount/bounds.hpp"
#include "heightcount/lattice.hpp"
#include "heightcount/numberfield.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hc {

struct SPrime {
  FracIdeal ideal;
  NfElement generator;  // (generator) = ideal
  Int norm;             // N(p)
};

class SUnitContext {
 public:
  // prime_gens generate the finite places of S. Empty unit_gens asks for the
  // automatic choice (d = 1 or quadratic with class number one).
  static SUnitContext create(const FieldPtr& K, const std::vector<NfElement>& prime_gens,
                             const std::vector<NfElement>& unit_gens = {},
                             std::optional<long> class_number = std::nullopt, bool weighted = false);
  static SUnitContext from_ideals(const FieldPtr& K, const std::vector<FracIdeal>& primes,
                                  const std::vector<NfElement>& unit_gens = {},
                                  std::optional<long> class_number = std::nullopt, bool weighted = false);

  const FieldPtr& field() const { return K_; }
  const std::vector<SPrime>& finite() const { return S1_; }
  // fundamental units first, then the S_1 generators
  const std::vector<NfElement>& generators() const { return gens_; }
  std::size_t unit_count() const { return units_; }
  const std::vector<NfElement>& roots_of_unity() const { return mu_; }
  int omega() const { return static_cast<int>(mu_.size()); }
  const std::optional<long>& class_number() const { return h_; }
  bool weighted() const { return weighted_; }
  // n = |S|: archimedean places plus t
  std::size_t n() const { return static_cast<std::size_t>(K_->places()) + S1_.size(); }
  std::string describe() const;

 private:
  FieldPtr K_;
  std::vector<SPrime> S1_;
  std::vector<NfElement> gens_, mu_;
  std::size_t units_ = 0;
  std::optional<long> h_;
  bool weighted_ = false;
};

// Prime ideals above the rational prime p (d = 1 or quadratic).
std::vector<FracIdeal> primes_above(const FieldPtr& K, long p);

// ord_p(a) for the prime (pi), a != 0
long valuation(const NfElement& a, const NfElement& pi);
bool is_s_unit(const SUnitContext& ctx, const NfElement& a);

// (log|a|_v)_{v in S}: archimedean places in field order, then S_1.
std::vector<CertReal> log_embed(const SUnitContext& ctx, const NfElement& a);
std::vector<CertReal> log_embed(const SUnitContext& ctx, const NfElement& a, bool weighted);
Real s_height(const SUnitContext& ctx, const NfElement& a);

struct LogLattice {
  RealLattice lattice;  // n x (n-1); empty when n = 1
  Real regulator;       // covolume det L_S
  Real classical;       // |(n-1)-minor| of the weighted embedding, last row dropped
  Real unit_regulator;  // R_K
  CertReal hsk;         // H_{S,K}; 0 in rank 0
  IntVec hsk_witness;
  std::size_t rank() const { return lattice.rank(); }
};
LogLattice build_log_lattice(const SUnitContext& ctx);

// omega_K |C_n(B) cap L_S|
std::uint64_t count_sunits_lattice(const SUnitContext& ctx, const LogLattice& L, const Rat& B);
// a = zeta prod g_i^{e_i} over an exponent box, filtered by H_S(a) <= B
std::uint64_t count_sunits_direct(const SUnitContext& ctx, const LogLattice& L, const Rat& B);
// box half-widths on exponents guaranteeing |phi(a)|_inf <= B is covered
std::vector<long> exponent_box(const LogLattice& L, const Rat& B);

struct SUnitBounds {
  BoundReport lower, upper;
};
Real sunit_lower_threshold(const LogLattice& L, std::size_t n);
SUnitBounds lemma_sunit_bounds(const SUnitContext& ctx, const LogLattice& L, const Rat& B, const Int& exact,
                               const std::string& id = "");

struct RegulatorCheck {
  Real RS;                        // classical S-regulator
  Real middle_up, outer_up;       // R_K h_K prod log N(p),  R_K h_K (d log* P)^t
  Real middle_low, outer_low;     // R_K prod log N(p),  0.2052 (log 2)^d log* P
  bool up_holds = false, up_outer_holds = false;
  bool low_holds = false, low_outer_holds = false;
  bool all() const { return up_holds && up_outer_holds && low_holds && low_outer_holds; }
};
// needs a class number on the context
RegulatorCheck regulator_bounds(const SUnitContext& ctx, const LogLattice& L);

}  // namespace hc
