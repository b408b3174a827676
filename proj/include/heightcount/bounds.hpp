#pragma once

#include "heightcount/modules.hpp"
#include "heightcount/quaternion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hc {

enum class BoundKind { Lower, Upper };
enum class Verdict { Holds, Violated, Inconclusive };

const char* bound_kind_name(BoundKind k);
const char* verdict_name(Verdict v);

struct BoundReport {
  std::string instance;
  std::string theorem;
  BoundKind kind = BoundKind::Lower;
  Rat R;
  Int exact;
  Real bound;
  Real threshold;
  bool applicable = true;
  Verdict verdict = Verdict::Inconclusive;
  std::string count_mode = "exact";
  std::string inputs;  // short descriptor of the instance parameters
};

// LOWER holds when bound <= exact, UPPER when exact <= bound. VIOLATED only
// when the enclosure separates strictly.
Verdict judge(BoundKind kind, const Int& exact, const Real& bound, const PrecisionPolicy& p = default_precision());
// |a - b| <= 2^-200 max(|a|, |b|) at 320 bits
bool real_agree(const Real& a, const Real& b);

// value^k for a height value of any root
Real height_pow(const HeightValue& h, long k);

struct ConstE12 {
  Real E1, E2;
};
ConstE12 const_E1_E2(const FieldPtr& K, const Real& c, const Real& z, std::size_t L);
Real thm1_threshold(const ConstE12& e, const Real& disc, std::size_t L);
Real thm1_bound(const FieldPtr& K, const ConstE12& e, const Real& disc, std::size_t L, const Rat& R);
Real thm1_threshold_for(const OkModule& M);
BoundReport thm1_lower(const OkModule& M, const Rat& R, const std::string& id = "",
                       std::uint64_t budget = 200000000);

struct ConstE34 {
  Real E3, E4, E3p;
};
ConstE34 const_E3_E4(const AlgebraPtr& A, const Rat& disc_norm, const Real& c, const Real& z, std::size_t L);
Real main1_threshold(const ConstE34& e, const Real& HZ4d);
Real main1_bound(const ConstE34& e, const Real& HZ4d, int d, std::size_t L, const Rat& R);

Real main1_threshold_for(const DSubspace& Z, const QuatOrder& O);

enum class CountMode { Exact, CertifiedLower };
BoundReport thm_main1_lower(const DSubspace& Z, const QuatOrder& O, const Rat& R, CountMode mode,
                            const std::string& id = "", std::uint64_t budget = 200000000);

struct DetMZCheck {
  Real lattice_det;
  Real displayed;  // (sqrt N(Delta) / 16)^L H^O(Z)^{4d}
  Real corrected;  // |D_K|^{2L} (sqrt N(Delta) / N(4 alpha beta))^L H^O(Z)^{4d}
  bool displayed_holds = false;
  bool corrected_holds = false;
};
DetMZCheck det_MZ_check(const DSubspace& Z, const QuatOrder& O);

// (1088 d log d)^n R^{(n+1) d}; d = 1 is rejected
Real loher_masser_upper(int d, std::size_t n, const Real& R);
Real main2_bound(const AlgebraPtr& A, std::size_t N, const Rat& R);
BoundReport thm_main2_upper(const AlgebraPtr& A, std::size_t N, const Rat& R, const std::string& id = "",
                            std::uint64_t budget = 200000000);

// bracket transfer inclusions, on explicitly enumerated sets
struct InclusionCheck {
  std::uint64_t sd = 0;          // |S_{D,N}(R)|
  std::uint64_t sk_s = 0;        // |S_{K,4N}(R/s)|
  std::uint64_t sk_2s = 0;       // |S_{K,4N}(R/(2s))|
  std::uint64_t sk_t = 0;        // |S_{K,4N}(R/t)|
  std::uint64_t miss_s = 0;      // points of S_K(R/s) outside [S_D(R)]
  std::uint64_t miss_2s = 0;
  std::uint64_t miss_t = 0;      // points of [S_D(R)] outside S_K(R/t)
  bool lower_displayed() const { return miss_s == 0; }
  bool lower_2s() const { return miss_2s == 0; }
  bool upper() const { return miss_t == 0; }
};
InclusionCheck bracket_inclusions(const AlgebraPtr& A, std::size_t N, const Rat& R,
                                 std::uint64_t budget = 200000000);

// r_v(j) for real or complex v, j >= 1
Real r_v(bool complex_place, long j);
Real const_TK(const FieldPtr& K, long l, long j);
Real const_A(const AlgebraPtr& A, const Real& frak_M, std::size_t N, std::size_t L, std::size_t M, std::size_t J);
Real mn1_bound(const AlgebraPtr& A, const Real& frak_M, std::size_t N, std::size_t L, std::size_t M, std::size_t J,
               const HeightValue& HZ);
Real mn2_bound(const Real& Aconst, const HeightValue& HinfF, const HeightValue& HZ, std::size_t L);

struct SearchConfig {
  Rat start = 1;       // first cube radius on the bracket side
  unsigned steps = 5;  // radius doubles at most this many times
  std::uint64_t budget = 2000000;
};

struct B1Result {
  bool found = false;
  std::vector<DVec> basis;
  std::vector<HeightValue> heights;
  Real bound;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t candidates = 0;
  Rat radius;
};
B1Result thmB1_search(const DSubspace& Z, const QuatOrder& O, const std::vector<DSubspace>& U,
                      const std::vector<HermitianForm>& G, const SearchConfig& cfg = {});

struct B2Result {
  bool found = false;
  DVec point;
  HeightValue height;
  Real bound;
  Verdict verdict = Verdict::Inconclusive;
  std::uint64_t candidates = 0;
  Rat radius;
};
B2Result thmB2_search(const HermitianForm& F, const DSubspace& Z, const QuatOrder& O, const std::vector<DSubspace>& U,
                      const std::vector<HermitianForm>& G, const SearchConfig& cfg = {});

}  // namespace hc
