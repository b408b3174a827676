#include "heightcount/bounds.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hc {

namespace {

Real two() { return Real(2); }
Real lr(std::size_t v) { return Real(static_cast<long>(v)); }
Real pow2(const Rat& e) { return pow(two(), e); }

// integer powers of possibly negative values
Real ipow(const Real& x, long e) {
  Real r(1), b = x;
  for (; e > 0; e >>= 1) {
    if (e & 1) r = r * b;
    b = b * b;
  }
  return r;
}

CertReal cpow(const CertReal& x, int e) {
  CertReal r(1);
  for (int i = 0; i < e; ++i) r = r * x;
  return r;
}

// (R / (f sqrt(sq)))^{2d}, exactly when sq is quadratic
CertReal scaled_bound(const Rat& R, const CertReal& sq, const Rat& f, int d) {
  CertReal den = CertReal(pow_rat(f, 2 * d)) * cpow(sq, d);
  Rat num = pow_rat(R, 2 * d);
  if (den.exact) return CertReal(QuadSurd(num) / *den.exact);
  return CertReal(Real(num) / den.approx);
}

// Gamma(t / 2) for a positive integer t
Real gamma_half(long t) {
  if (t % 2 == 0) {
    Int f = 1;
    for (long k = 2; k < t / 2; ++k) f *= k;
    return Real(Rat(f));
  }
  long n = (t - 1) / 2;
  Int num = 1, nf = 1;
  for (long k = 2; k <= 2 * n; ++k) num *= k;
  for (long k = 2; k <= n; ++k) nf *= k;
  Int four = 1;
  for (long k = 0; k < n; ++k) four *= 4;
  return Real(make_rat(num, four * nf)) * sqrt(Real::pi());
}

bool in_subspace(const DSubspace& U, const DVec& x) {
  auto C = U.constraints();
  if (!C) return true;  // U = D^N
  for (const auto& row : *C) {
    QuatElement s = QuatElement::scalar(U.algebra(), Rat(0));
    for (std::size_t i = 0; i < row.size(); ++i) s = s + row[i] * x[i];
    if (!s.is_zero()) return false;
  }
  return true;
}

bool allowed(const DVec& x, const std::vector<DSubspace>& U, const std::vector<HermitianForm>& G) {
  for (const auto& u : U)
    if (in_subspace(u, x)) return false;
  for (const auto& g : G)
    if (g.value(x).is_zero()) return false;
  return true;
}

struct Candidate {
  DVec x;
  HeightValue h;
  double key = 0;
};

// points of Z cap O_D^N in the bracket-side cube of radius B, by increasing h
std::vector<Candidate> candidates_in_cube(const DSubspace& Z, const Rat& B, std::uint64_t budget) {
  QuatOrder OD = QuatOrder::standard(Z.algebra());
  OkModule M = bracket_module(Z, OD);
  RealLattice lat = module_lattice(M);
  std::vector<Candidate> out;
  std::uint64_t seen = 0;
  enumerate_cube(lat, B, [&](const IntVec& m) {
    if (++seen > budget) fail(ErrorCode::BudgetExhausted, "search budget exhausted");
    NfVec y = M.element(m);
    bool zero = std::all_of(y.begin(), y.end(), [](const NfElement& c) { return c.is_zero(); });
    if (zero) return true;
    DVec x = bracket_inv(Z.algebra(), y);
    // x lies in O_D^N, where h = h_inf
    HeightValue h = height_hinf(x);
    double key = h.to_double();
    out.push_back({std::move(x), h, key});
    return true;
  });
  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (std::fabs(a.key - b.key) > 1e-9 * (1 + a.key)) return a.key < b.key;
    return compare(a.h, b.h) == Cmp::Less;
  });
  return out;
}

Verdict judge_height(const HeightValue& h, const Real& bound) {
  auto c = try_compare(h.value(), bound);
  if (!c) return Verdict::Inconclusive;
  return *c == Cmp::Greater ? Verdict::Violated : Verdict::Holds;
}

}  // namespace

const char* bound_kind_name(BoundKind k) { return k == BoundKind::Lower ? "LOWER" : "UPPER"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "HOLDS";
    case Verdict::Violated:
      return "VIOLATED";
    default:
      return "INCONCLUSIVE";
  }
}

Verdict judge(BoundKind kind, const Int& exact, const Real& bound, const PrecisionPolicy& p) {
  auto c = try_compare(Real(Rat(exact)), bound, p);
  if (!c) return Verdict::Inconclusive;
  if (kind == BoundKind::Lower) return *c == Cmp::Less ? Verdict::Violated : Verdict::Holds;
  return *c == Cmp::Greater ? Verdict::Violated : Verdict::Holds;
}

bool real_agree(const Real& a, const Real& b) {
  Ball x = a.eval(320), y = b.eval(320);
  Rat m = std::max({abs_rat(x.lower()), abs_rat(x.upper()), abs_rat(y.lower()), abs_rat(y.upper())});
  Rat gap = std::max(abs_rat(x.upper() - y.lower()), abs_rat(y.upper() - x.lower()));
  Rat tol = m / pow_rat(Rat(2), 200);
  return gap <= tol;
}

Real height_pow(const HeightValue& h, long k) {
  if (k % h.root == 0) {
    CertReal p = h.power();
    Real r(1);
    for (long i = 0; i < k / h.root; ++i) r = r * p.approx;
    return r;
  }
  return pow(h.value(), Rat(k));
}

ConstE12 const_E1_E2(const FieldPtr& K, const Real& c, const Real& z, std::size_t L) {
  const long d = K->degree();
  const long Ld = static_cast<long>(L) * d;
  Real E1 = pow2(make_rat(static_cast<long>(L) * K->r1() - 3, 2)) * Real(Ld) * z *
            (Ld > 1 ? pow(c, Rat(Ld - 1)) : Real(1));
  Real E2 = two() * sqrt(two()) * c / (Real(Ld) * z);
  return {E1, E2};
}

Real thm1_threshold(const ConstE12& e, const Real& disc, std::size_t L) {
  return e.E1 * pow(disc, make_rat(static_cast<long>(L), 2));
}

Real thm1_bound(const FieldPtr& K, const ConstE12& e, const Real& disc, std::size_t L, const Rat& R) {
  const long Ld = static_cast<long>(L) * K->degree();
  Real r(R);
  Real first = r / thm1_threshold(e, disc, L) - Real(1);
  return first * ipow(e.E2 * r - Real(1), Ld - 1);
}

Real thm1_threshold_for(const OkModule& M) {
  Real c = module_c(M).value.value(), z = module_z(M).value.value();
  ConstE12 e = const_E1_E2(M.field(), c, z, M.rank());
  return thm1_threshold(e, Real(abs_rat(module_discriminant(M))), M.rank());
}

BoundReport thm1_lower(const OkModule& M, const Rat& R, const std::string& id, std::uint64_t budget) {
  const FieldPtr& K = M.field();
  const std::size_t L = M.rank();
  Real c = module_c(M).value.value(), z = module_z(M).value.value();
  ConstE12 e = const_E1_E2(K, c, z, L);
  Real disc(abs_rat(module_discriminant(M)));
  BoundReport r;
  r.instance = id;
  r.theorem = "module-count";
  r.kind = BoundKind::Lower;
  r.R = R;
  r.threshold = thm1_threshold(e, disc, L);
  auto ok = try_compare(Real(R), r.threshold);
  r.applicable = ok && *ok != Cmp::Less;
  r.bound = thm1_bound(K, e, disc, L, R);
  r.exact = Int(static_cast<unsigned long>(exact_count_module(M, R, budget).count));
  r.verdict = judge(r.kind, r.exact, r.bound);
  std::ostringstream s;
  s << "K=" << K->name() << " N=" << M.ambient() << " L=" << L;
  r.inputs = s.str();
  return r;
}

ConstE34 const_E3_E4(const AlgebraPtr& A, const Rat& disc_norm, const Real& c, const Real& z, std::size_t L) {
  const long d = A->degree(), l = static_cast<long>(L);
  const long Ld = l * d;
  Real s = A->s(), nd = pow(Real(disc_norm), make_rat(l, 2));
  Real E3 = pow2(make_rat(4 * l * (d - 2) + 3, 2)) * Real(Ld) * s * z * pow(c, Rat(4 * Ld - 1)) * nd;
  Real E4 = c / (two() * sqrt(two()) * Real(Ld) * s * z);
  Real E3p = Real(1) / (pow2(Rat(4 * l * (2 * d - 1))) * pow(Real(Ld) * s * z, Rat(4 * Ld)) * nd);
  return {E3, E4, E3p};
}

Real main1_threshold(const ConstE34& e, const Real& HZ4d) { return e.E3 * HZ4d; }

Real main1_bound(const ConstE34& e, const Real& HZ4d, int d, std::size_t L, const Rat& R) {
  Real r(R);
  Real first = r / main1_threshold(e, HZ4d) - Real(1);
  return first * ipow(e.E4 * r - Real(1), 4 * static_cast<long>(L) * d - 1);
}

Real main1_threshold_for(const DSubspace& Z, const QuatOrder& O) {
  const AlgebraPtr& A = O.algebra();
  SubspaceConstants sc = subspace_constants(Z, O);
  ConstE34 e = const_E3_E4(A, O.disc_norm(), sc.c.value.value(), sc.z.value.value(), Z.dim());
  return main1_threshold(e, height_pow(subspace_height(Z, O), 4 * A->degree()));
}

BoundReport thm_main1_lower(const DSubspace& Z, const QuatOrder& O, const Rat& R, CountMode mode,
                            const std::string& id, std::uint64_t budget) {
  const AlgebraPtr& A = O.algebra();
  const int d = A->degree();
  SubspaceConstants sc = subspace_constants(Z, O);
  ConstE34 e = const_E3_E4(A, O.disc_norm(), sc.c.value.value(), sc.z.value.value(), Z.dim());
  Real HZ4d = height_pow(subspace_height(Z, O), 4 * d);
  BoundReport r;
  r.instance = id;
  r.theorem = "subspace-count";
  r.kind = BoundKind::Lower;
  r.R = R;
  r.threshold = main1_threshold(e, HZ4d);
  auto ok = try_compare(Real(R), r.threshold);
  r.applicable = ok && *ok != Cmp::Less;
  r.bound = main1_bound(e, HZ4d, d, Z.dim(), R);
  if (mode == CountMode::Exact) {
    r.exact = Int(static_cast<unsigned long>(exact_count_ZO(Z, O, R, budget)));
  } else {
    r.exact = certified_count_ZO(Z, O, R);
    r.count_mode = "certified_lower";
  }
  r.verdict = judge(r.kind, r.exact, r.bound);
  std::ostringstream s;
  s << "D=" << A->describe() << " N=" << Z.ambient() << " L=" << Z.dim();
  r.inputs = s.str();
  return r;
}

DetMZCheck det_MZ_check(const DSubspace& Z, const QuatOrder& O) {
  const AlgebraPtr& A = O.algebra();
  const FieldPtr& K = A->field();
  const long L = static_cast<long>(Z.dim()), d = K->degree();
  OrderConstants oc = order_constants(O);
  Real HZ4d = height_pow(subspace_height(Z, O), 4 * d);
  Real root = sqrt(Real(oc.disc_norm));
  DetMZCheck out;
  out.lattice_det = module_lattice(bracket_module(Z, O)).det();
  out.displayed = pow(root / Real(16), Rat(L)) * HZ4d;
  Real DK(abs_rat(Rat(K->discriminant())));
  out.corrected = pow(DK, Rat(2 * L)) * pow(root / Real(oc.n4ab), Rat(L)) * HZ4d;
  out.displayed_holds = real_agree(out.lattice_det, out.displayed);
  out.corrected_holds = real_agree(out.lattice_det, out.corrected);
  return out;
}

Real loher_masser_upper(int d, std::size_t n, const Real& R) {
  if (d < 2) fail(ErrorCode::Domain, "requires degree >= 2");
  Real f = Real(1088L * d) * log(Real(d));
  return pow(f, Rat(static_cast<long>(n))) * pow(R, Rat((static_cast<long>(n) + 1) * d));
}

Real main2_bound(const AlgebraPtr& A, std::size_t N, const Rat& R) {
  return loher_masser_upper(A->degree(), 4 * N, Real(R) / A->t());
}

BoundReport thm_main2_upper(const AlgebraPtr& A, std::size_t N, const Rat& R, const std::string& id,
                            std::uint64_t budget) {
  BoundReport r;
  r.instance = id;
  r.theorem = "quaternion-count";
  r.kind = BoundKind::Upper;
  r.R = R;
  r.bound = main2_bound(A, N, R);
  r.threshold = Real(0);
  r.exact = Int(static_cast<unsigned long>(exact_count_D(A, N, R, false, budget).count));
  r.verdict = judge(r.kind, r.exact, r.bound);
  std::ostringstream s;
  s << "D=" << A->describe() << " N=" << N;
  r.inputs = s.str();
  return r;
}

InclusionCheck bracket_inclusions(const AlgebraPtr& A, std::size_t N, const Rat& R, std::uint64_t budget) {
  const int d = A->degree();
  const FieldPtr& K = A->field();
  InclusionCheck out;
  DCount sd = exact_count_D(A, N, R, true, budget);
  out.sd = sd.count;
  // t h([x]) <= R, as h([x])^{2d} t^{2d} <= R^{2d}
  CertReal t2d = cpow(A->t_prod_sq(), d);
  CertReal R2d(pow_rat(R, 2 * d));
  for (const auto& y : sd.points) {
    CertReal p = height_h(y).power();
    if (compare(p * p * t2d, R2d) == Cmp::Greater) ++out.miss_t;
  }
  out.sk_t = points_K_bounded(K, 4 * N, scaled_bound(R, A->t_prod_sq(), Rat(1), d), false, budget).count;
  auto sweep = [&](const Rat& f, std::uint64_t& size, std::uint64_t& miss) {
    DCount s = points_K_bounded(K, 4 * N, scaled_bound(R, A->s_prod_sq(), f, d), true, budget);
    size = s.count;
    for (const auto& y : s.points)
      if (height_hD(bracket_inv(A, y)).compare_to(R) == Cmp::Greater) ++miss;
  };
  sweep(Rat(1), out.sk_s, out.miss_s);
  sweep(Rat(2), out.sk_2s, out.miss_2s);
  return out;
}

Real r_v(bool complex_place, long j) {
  if (j < 1) fail(ErrorCode::Domain, "r_v(j) needs j >= 1; T_K is undefined for l = 1");
  if (!complex_place) return pow(Real::pi(), make_rat(-1, 2)) * pow(gamma_half(j + 2), make_rat(1, j));
  return pow(two() * Real::pi(), make_rat(-1, 2)) * pow(gamma_half(2 * j + 2), make_rat(1, 2 * j));
}

Real const_TK(const FieldPtr& K, long l, long j) {
  if (l < 1 || j < 1) fail(ErrorCode::Domain, "T_K needs l, j >= 1");
  const long d = K->degree(), r1 = K->r1(), r2 = K->r2();
  const long m9 = std::max(l, 9L);
  const long q = l * (9 * l + 14);
  Real DK(abs_rat(Rat(K->discriminant())));
  Real prod(1);
  for (int v = 0; v < K->places(); ++v) prod = prod * pow(r_v(v >= r1, l - 1), make_rat(K->local_degree(v), d));
  Real t = Real(27) * pow(Real(1) / Real::pi(), make_rat(r2 * q, 2 * d)) *
           pow2(make_rat(r2 * q + (21 * l - 21) * d + 5 * r1 + 4, 2 * d) + Rat(m9)) *
           pow(Real(l), make_rat(27 * l + 51, 2)) * pow(Real(j), make_rat(2, d)) * pow(Real(j + 2), make_rat(3, d));
  return t * pow(DK, make_rat(q + 14, 2 * d) + Rat(m9)) * pow(prod, Rat(m9));
}

Real const_A(const AlgebraPtr& A, const Real& frak_M, std::size_t N, std::size_t L, std::size_t M, std::size_t J) {
  if (L > N) fail(ErrorCode::InvalidArgument, "need L <= N");
  const long l = static_cast<long>(L);
  Real s = A->s(), t = A->t();
  Real num = pow2(make_rat(9 * l + 13, 2)) * pow(s, Rat(9 * l + 12));
  Real den = pow(t, make_rat(9 * l + 11, 2));
  Real fm = pow(frak_M, Rat(4 * static_cast<long>(N - L) * (9 * l + 12)));
  return num / den * fm * const_TK(A->field(), l, static_cast<long>(M + 2 * J + 1));
}

Real mn1_bound(const AlgebraPtr& A, const Real& frak_M, std::size_t N, std::size_t L, std::size_t M, std::size_t J,
               const HeightValue& HZ) {
  const FieldPtr& K = A->field();
  const long d = K->degree(), l = static_cast<long>(L);
  Real DK(abs_rat(Rat(K->discriminant())));
  return Real(4) * lr(L) * pow(lr(M + 2 * J + 1), make_rat(1, d)) * pow(DK, make_rat(l + 1, 2 * d)) * A->s() *
         pow(frak_M, Rat(4 * static_cast<long>(N - L))) * height_pow(HZ, 4);
}

Real mn2_bound(const Real& Aconst, const HeightValue& HinfF, const HeightValue& HZ, std::size_t L) {
  const long l = static_cast<long>(L);
  return Aconst * pow(HinfF.value(), make_rat(9 * l + 11, 2)) * height_pow(HZ, 4 * (9 * l + 12));
}

B1Result thmB1_search(const DSubspace& Z, const QuatOrder& O, const std::vector<DSubspace>& U,
                      const std::vector<HermitianForm>& G, const SearchConfig& cfg) {
  const AlgebraPtr& A = Z.algebra();
  const std::size_t N = Z.ambient(), L = Z.dim();
  B1Result out;
  out.bound = mn1_bound(A, order_constants(O).frak_M, N, L, U.size(), G.size(), subspace_height(Z, O));
  Rat B = cfg.start;
  for (unsigned step = 0; step <= cfg.steps; ++step, B *= 2) {
    auto cands = candidates_in_cube(Z, B, cfg.budget);
    out.candidates = cands.size();
    out.radius = B;
    out.basis.clear();
    out.heights.clear();
    for (const auto& c : cands) {
      if (!allowed(c.x, U, G)) continue;
      DMat Y(N);
      for (std::size_t i = 0; i < N; ++i) {
        for (const auto& b : out.basis) Y[i].push_back(b[i]);
        Y[i].push_back(c.x[i]);
      }
      // right independence of the columns is left independence of Y^*
      if (left_rank(conj_transpose(Y)) < out.basis.size() + 1) continue;
      out.basis.push_back(c.x);
      out.heights.push_back(c.h);
      if (out.basis.size() == L) break;
    }
    if (out.basis.size() == L) {
      out.found = true;
      out.verdict = judge_height(out.heights.back(), out.bound);
      return out;
    }
  }
  return out;
}

B2Result thmB2_search(const HermitianForm& F, const DSubspace& Z, const QuatOrder& O, const std::vector<DSubspace>& U,
                      const std::vector<HermitianForm>& G, const SearchConfig& cfg) {
  const AlgebraPtr& A = Z.algebra();
  const std::size_t N = Z.ambient(), L = Z.dim();
  B2Result out;
  NfMat QF = trace_form(F);
  Rat B = cfg.start;
  for (unsigned step = 0; step <= cfg.steps; ++step, B *= 2) {
    auto cands = candidates_in_cube(Z, B, cfg.budget);
    out.candidates = cands.size();
    out.radius = B;
    for (const auto& c : cands) {
      if (!allowed(c.x, U, G)) continue;
      if (!quad_value(QF, bracket(c.x)).is_zero()) continue;
      out.found = true;
      out.point = c.x;
      out.height = c.h;
      Real a = const_A(A, order_constants(O).frak_M, N, L, U.size(), G.size());
      out.bound = mn2_bound(a, form_height_inf(F), subspace_height(Z, O), L);
      out.verdict = judge_height(c.h, out.bound);
      return out;
    }
  }
  return out;
}

}  // namespace hc
