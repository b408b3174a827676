#pragma once

#include "heightcount/bounds.hpp"
#include "heightcount/lattice.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hc {

enum class CurveModel { Genus0, Genus1 };

// A point of P^1 (x = a, or infinity) or of y^2 = x^3 + a x + b.
struct CurvePoint {
  bool inf = false;
  long x = 0, y = 0;
  bool operator==(const CurvePoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator<(const CurvePoint& o) const;
};
std::string point_str(const CurvePoint& p);

inline constexpr long kMaxFieldSize = 2048;

class CurveContext {
 public:
  static CurveContext projective_line(long q, const std::vector<CurvePoint>& P);
  static CurveContext elliptic(long q, long a, long b, const std::vector<CurvePoint>& P);

  long q() const { return q_; }
  CurveModel model() const { return model_; }
  int genus() const { return model_ == CurveModel::Genus0 ? 0 : 1; }
  long a() const { return a_; }
  long b() const { return b_; }
  const std::vector<CurvePoint>& points() const { return X_; }  // X(F_q)
  const std::vector<CurvePoint>& support() const { return P_; }
  std::size_t n() const { return P_.size(); }
  std::string describe() const;

 private:
  long q_ = 0, a_ = 0, b_ = 0;
  CurveModel model_ = CurveModel::Genus0;
  std::vector<CurvePoint> X_, P_;
  void set_support(const std::vector<CurvePoint>& P);
};

std::vector<CurvePoint> rational_points(CurveModel m, long q, long a = 0, long b = 0);
bool on_curve(const CurveContext& c, const CurvePoint& p);
CurvePoint ec_neg(const CurveContext& c, const CurvePoint& p);
CurvePoint ec_add(const CurveContext& c, const CurvePoint& p, const CurvePoint& r);
// sum of e_i p_i in the group of a genus-1 context
CurvePoint ec_combination(const CurveContext& c, const IntVec& e);

struct DivisorLattice {
  std::vector<IntVec> basis;  // n-1 vectors of Z^n
  RealLattice lattice;
  Int jxp;                    // |J_{X,P}|
  Int det_sq;                 // det(L_P)^2 from the Gram matrix
  std::size_t rank() const { return basis.size(); }
};
DivisorLattice build_divisor_lattice(const CurveContext& c);
bool in_divisor_lattice(const CurveContext& c, const IntVec& a);
long p_height(const CurveContext& c, const IntVec& a);

// (q - 1) |C_n(B) cap L_P|
std::uint64_t count_supported_lattice(const CurveContext& c, const DivisorLattice& L, long B);
// P^1: functions c prod (x - a)^{e_a} built and factored; genus 1: all degree-0
// vectors in the cube tested in the group law
std::uint64_t count_supported_direct(const CurveContext& c, long B);
// |A_{n-1} cap C_n(B)|
Int root_lattice_cube_count(std::size_t n, long B);

struct DivisorChecks {
  bool det_formula = false;  // det^2 = n |J|^2
  bool det_lower = false;    // sqrt n <= det
  bool det_upper = false;    // det <= sqrt n (1 + q + (|X| - q - 1)/g)^g, genus 1
  long min_norm = 0;
  bool min_norm_ok = false;  // |x| >= max{1, sqrt(2|X|/(q+1))/n}
  bool all() const { return det_formula && det_lower && det_upper && min_norm_ok; }
};
DivisorChecks divisor_checks(const CurveContext& c, const DivisorLattice& L);

struct PCountBounds {
  BoundReport lower, upper;
};
Real pcount_lower_threshold(const CurveContext& c, const DivisorLattice& L);
PCountBounds lemma_pcount_bounds(const CurveContext& c, const DivisorLattice& L, long B, const Int& exact,
                                 const std::string& id = "");

}  // namespace hc
