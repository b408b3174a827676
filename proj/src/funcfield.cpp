#include "heightcount/funcfield.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hc {

namespace {

long md(long x, long q) { return ((x % q) + q) % q; }

long md_pow(long x, long e, long q) {
  long r = 1 % q;
  x = md(x, q);
  while (e > 0) {
    if (e & 1) r = r * x % q;
    x = x * x % q;
    e >>= 1;
  }
  return r;
}

long md_inv(long x, long q) {
  if (md(x, q) == 0) fail(ErrorCode::Domain, "inverse of 0 in F_q");
  return md_pow(x, q - 2, q);
}

bool is_prime(long q) {
  if (q < 2) return false;
  for (long d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

void check_field(long q) {
  if (q > kMaxFieldSize) fail(ErrorCode::BudgetExhausted, "q exceeds the point-scan cap " + std::to_string(kMaxFieldSize));
  if (!is_prime(q)) fail(ErrorCode::Unsupported, "only prime q is supported");
}

// polynomials over F_q, constant term first
using FqPoly = std::vector<long>;

void trim(FqPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

FqPoly mul_linear(const FqPoly& f, long a, long q) {  // f * (x - a)
  FqPoly g(f.size() + 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    g[i + 1] = md(g[i + 1] + f[i], q);
    g[i] = md(g[i] - a * f[i], q);
  }
  return g;
}

// divide out (x - a) as often as possible; returns the multiplicity
long strip_root(FqPoly& f, long a, long q) {
  long k = 0;
  while (f.size() > 1) {
    // synthetic division
    FqPoly g(f.size() - 1);
    long carry = 0;
    for (std::size_t i = f.size(); i-- > 1;) {
      carry = md(f[i] + carry * a, q);
      g[i - 1] = carry;
    }
    long rem = md(f[0] + carry * a, q);
    if (rem != 0) break;
    f = g;
    ++k;
  }
  return k;
}

struct PointLess {
  bool operator()(const CurvePoint& a, const CurvePoint& b) const { return a < b; }
};

}  // namespace

bool CurvePoint::operator<(const CurvePoint& o) const {
  if (inf != o.inf) return o.inf;
  if (inf) return false;
  return x != o.x ? x < o.x : y < o.y;
}

std::string point_str(const CurvePoint& p) {
  if (p.inf) return "inf";
  return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::vector<CurvePoint> rational_points(CurveModel m, long q, long a, long b) {
  check_field(q);
  std::vector<CurvePoint> out;
  if (m == CurveModel::Genus0) {
    for (long x = 0; x < q; ++x) out.push_back({false, x, 0});
  } else {
    for (long x = 0; x < q; ++x) {
      long rhs = md(x * x % q * x + a * x + b, q);
      for (long y = 0; y < q; ++y)
        if (y * y % q == rhs) out.push_back({false, x, y});
    }
  }
  out.push_back({true, 0, 0});
  return out;
}

void CurveContext::set_support(const std::vector<CurvePoint>& P) {
  if (P.empty()) fail(ErrorCode::InvalidArgument, "support P must be nonempty");
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (std::find(X_.begin(), X_.end(), P[i]) == X_.end())
      fail(ErrorCode::InvalidArgument, "point " + point_str(P[i]) + " is not on the curve");
    for (std::size_t j = 0; j < i; ++j)
      if (P[i] == P[j]) fail(ErrorCode::InvalidArgument, "support points must be distinct");
  }
  P_ = P;
}

CurveContext CurveContext::projective_line(long q, const std::vector<CurvePoint>& P) {
  CurveContext c;
  c.q_ = q;
  c.model_ = CurveModel::Genus0;
  c.X_ = rational_points(CurveModel::Genus0, q);
  std::vector<CurvePoint> norm;
  for (auto p : P) {
    if (!p.inf) p.y = 0;
    norm.push_back(p);
  }
  c.set_support(norm);
  return c;
}

CurveContext CurveContext::elliptic(long q, long a, long b, const std::vector<CurvePoint>& P) {
  check_field(q);
  if (q < 5) fail(ErrorCode::Unsupported, "short Weierstrass models need q >= 5");
  CurveContext c;
  c.q_ = q;
  c.model_ = CurveModel::Genus1;
  c.a_ = md(a, q);
  c.b_ = md(b, q);
  if (md(4 * c.a_ * c.a_ % q * c.a_ + 27 * c.b_ % q * c.b_, q) == 0)
    fail(ErrorCode::InvalidArgument, "singular model: 4a^3 + 27b^2 = 0");
  c.X_ = rational_points(CurveModel::Genus1, q, c.a_, c.b_);
  c.set_support(P);
  return c;
}

std::string CurveContext::describe() const {
  std::ostringstream s;
  if (model_ == CurveModel::Genus0)
    s << "P1/F_" << q_;
  else
    s << "y^2=x^3+" << a_ << "x+" << b_ << "/F_" << q_;
  s << " P={";
  for (std::size_t i = 0; i < P_.size(); ++i) s << (i ? "," : "") << point_str(P_[i]);
  s << "}";
  return s.str();
}

bool on_curve(const CurveContext& c, const CurvePoint& p) {
  return std::find(c.points().begin(), c.points().end(), p) != c.points().end();
}

CurvePoint ec_neg(const CurveContext& c, const CurvePoint& p) {
  if (p.inf) return p;
  return {false, p.x, md(-p.y, c.q())};
}

CurvePoint ec_add(const CurveContext& c, const CurvePoint& p, const CurvePoint& r) {
  if (c.model() != CurveModel::Genus1) fail(ErrorCode::NotApplicable, "group law needs a genus-1 model");
  if (p.inf) return r;
  if (r.inf) return p;
  const long q = c.q();
  long lam;
  if (p.x == r.x) {
    if (md(p.y + r.y, q) == 0) return {true, 0, 0};
    lam = md((3 * p.x % q * p.x + c.a()) % q * md_inv(2 * p.y, q), q);
  } else {
    lam = md(md(r.y - p.y, q) * md_inv(r.x - p.x, q), q);
  }
  long x3 = md(lam * lam - p.x - r.x, q);
  long y3 = md(lam * md(p.x - x3, q) - p.y, q);
  return {false, x3, y3};
}

namespace {

CurvePoint ec_mul(const CurveContext& c, CurvePoint p, Int k) {
  if (k < 0) {
    p = ec_neg(c, p);
    k = -k;
  }
  CurvePoint acc{true, 0, 0};
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = ec_add(c, acc, p);
    p = ec_add(c, p, p);
    k >>= 1;
  }
  return acc;
}

RatMat basis_matrix(const std::vector<IntVec>& basis, std::size_t n) {
  RatMat B(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) B(i, j) = Rat(basis[j][i]);
  return B;
}

}  // namespace

CurvePoint ec_combination(const CurveContext& c, const IntVec& e) {
  if (e.size() != c.n()) fail(ErrorCode::InvalidArgument, "coefficient vector has the wrong length");
  CurvePoint acc{true, 0, 0};
  for (std::size_t i = 0; i < e.size(); ++i) acc = ec_add(c, acc, ec_mul(c, c.support()[i], e[i]));
  return acc;
}

DivisorLattice build_divisor_lattice(const CurveContext& c) {
  const std::size_t n = c.n();
  DivisorLattice L;
  L.jxp = 1;
  // relation vectors in the coordinates of e_i - e_n, i < n - 1
  std::vector<IntVec> rel;
  if (c.model() == CurveModel::Genus0) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      IntVec r(n - 1, Int(0));
      r[i] = 1;
      rel.push_back(r);
    }
  } else {
    // subgroup generated so far, with a coefficient vector for each element
    std::map<CurvePoint, IntVec, PointLess> H;
    H[CurvePoint{true, 0, 0}] = IntVec(n - 1, Int(0));
    const CurvePoint pn = c.support()[n - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) {
      CurvePoint g = ec_add(c, c.support()[i], ec_neg(c, pn));
      CurvePoint acc = g;
      long k = 1;
      while (!H.count(acc)) {
        acc = ec_add(c, acc, g);
        ++k;
      }
      IntVec r(n - 1, Int(0));
      for (std::size_t j = 0; j < n - 1; ++j) r[j] = -H[acc][j];
      r[i] += k;
      rel.push_back(r);
      L.jxp *= k;
      std::map<CurvePoint, IntVec, PointLess> next;
      for (const auto& [h, coeff] : H) {
        CurvePoint x = h;
        for (long j = 0; j < k; ++j) {
          IntVec cf = coeff;
          cf[i] += j;
          next.emplace(x, cf);
          x = ec_add(c, x, g);
        }
      }
      H.swap(next);
    }
  }
  for (const auto& r : rel) {
    IntVec v(n, Int(0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      v[i] = r[i];
      v[n - 1] -= r[i];
    }
    L.basis.push_back(v);
  }
  if (L.rank() == 0) {
    L.det_sq = 1;
    return L;
  }
  RatMat B = basis_matrix(L.basis, n);
  L.lattice = RealLattice::from_rational(B);
  L.det_sq = det(B.transpose() * B).get_num();
  return L;
}

bool in_divisor_lattice(const CurveContext& c, const IntVec& a) {
  if (a.size() != c.n()) return false;
  Int s = 0;
  for (const auto& x : a) s += x;
  if (s != 0) return false;
  if (c.model() == CurveModel::Genus0) return true;
  return ec_combination(c, a).inf;
}

long p_height(const CurveContext& c, const IntVec& a) {
  if (!in_divisor_lattice(c, a)) fail(ErrorCode::InvalidArgument, "vector is not a principal divisor supported on P");
  long h = 0;
  for (const auto& x : a) h = std::max(h, Int(abs(x)).get_si());
  return h;
}

std::uint64_t count_supported_lattice(const CurveContext& c, const DivisorLattice& L, long B) {
  if (B < 0) fail(ErrorCode::InvalidArgument, "B must be nonnegative");
  const auto units = static_cast<std::uint64_t>(c.q() - 1);
  if (L.rank() == 0) return units;
  return units * count_cube(L.lattice, Rat(B));
}

std::uint64_t count_supported_direct(const CurveContext& c, long B) {
  if (B < 0) fail(ErrorCode::InvalidArgument, "B must be nonnegative");
  const long q = c.q();
  const std::size_t n = c.n();
  std::uint64_t count = 0;
  if (c.model() == CurveModel::Genus1) {
    IntVec e(n, Int(-B));
    while (true) {
      Int s = 0;
      for (const auto& x : e) s += x;
      if (s == 0 && ec_combination(c, e).inf) ++count;
      std::size_t i = 0;
      while (i < n && e[i] == B) e[i] = -B, ++i;
      if (i == n) break;
      ++e[i];
    }
    return count * static_cast<std::uint64_t>(q - 1);
  }
  std::vector<long> roots;
  for (const auto& p : c.support())
    if (!p.inf) roots.push_back(p.x);
  const std::size_t m = roots.size();
  std::vector<long> e(m, -B);
  while (true) {
    FqPoly num{1}, den{1};
    for (std::size_t i = 0; i < m; ++i)
      for (long k = 0; k < std::abs(e[i]); ++k) {
        if (e[i] > 0)
          num = mul_linear(num, roots[i], q);
        else
          den = mul_linear(den, roots[i], q);
      }
    trim(num);
    trim(den);
    long deg_num = static_cast<long>(num.size()) - 1, deg_den = static_cast<long>(den.size()) - 1;
    // divisor on all of P^1(F_q)
    bool supported = true;
    long h = 0;
    for (const auto& p : c.points()) {
      long ord = p.inf ? deg_den - deg_num : strip_root(num, p.x, q) - strip_root(den, p.x, q);
      bool inP = std::find(c.support().begin(), c.support().end(), p) != c.support().end();
      if (!inP && ord != 0) supported = false;
      h = std::max(h, std::abs(ord));
    }
    // leftover factors would be zeros or poles at non-rational places
    if (num.size() != 1 || den.size() != 1) supported = false;
    if (supported && h <= B) ++count;
    std::size_t i = 0;
    while (i < m && e[i] == B) e[i] = -B, ++i;
    if (i == m) break;
    ++e[i];
  }
  return count * static_cast<std::uint64_t>(q - 1);
}

Int root_lattice_cube_count(std::size_t n, long B) {
  if (n == 0) return 1;
  // ways[s + n B] = number of partial vectors with sum s
  const long span = static_cast<long>(n) * B;
  std::vector<Int> ways(2 * span + 1, Int(0));
  ways[static_cast<std::size_t>(span)] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Int> next(ways.size(), Int(0));
    for (long s = -span; s <= span; ++s) {
      const Int& w = ways[static_cast<std::size_t>(s + span)];
      if (w == 0) continue;
      for (long x = -B; x <= B; ++x) {
        long t = s + x;
        if (t < -span || t > span) continue;
        next[static_cast<std::size_t>(t + span)] += w;
      }
    }
    ways.swap(next);
  }
  return ways[static_cast<std::size_t>(span)];
}

DivisorChecks divisor_checks(const CurveContext& c, const DivisorLattice& L) {
  DivisorChecks d;
  const Int n(static_cast<unsigned long>(c.n()));
  const Int X(static_cast<unsigned long>(c.points().size()));
  d.det_formula = L.det_sq == n * L.jxp * L.jxp;
  d.det_lower = L.det_sq >= n;
  if (c.genus() == 1)
    d.det_upper = L.det_sq <= n * X * X;  // (1 + q + |X| - q - 1)^1 = |X|
  else
    d.det_upper = L.det_sq <= n;  // J(P^1) is trivial
  if (L.rank() == 0) {
    d.min_norm_ok = true;
    return d;
  }
  SupMin s = supnorm_min(L.lattice);
  if (!s.c.exact) fail(ErrorCode::Internal, "integer lattice gave an inexact norm");
  Rat m = s.c.exact->a();
  d.min_norm = m.get_num().get_si();
  const Int qq(c.q() + 1);
  Int lhs = n * n * Int(d.min_norm) * Int(d.min_norm) * qq;
  d.min_norm_ok = d.min_norm >= 1 && lhs >= 2 * X;
  return d;
}

Real pcount_lower_threshold(const CurveContext& c, const DivisorLattice& L) {
  const long n = static_cast<long>(c.n());
  return Real(make_rat(n - 1, 2)) * Real::sqrt_of(Rat(n)) * Real(Rat(L.jxp));
}

PCountBounds lemma_pcount_bounds(const CurveContext& c, const DivisorLattice& L, long B, const Int& exact,
                                 const std::string& id) {
  const long n = static_cast<long>(c.n());
  const Real units{Rat(c.q() - 1)}, Br{Rat(B)}, J{Rat(L.jxp)};
  PCountBounds out;
  for (BoundReport* r : {&out.lower, &out.upper}) {
    r->instance = id;
    r->theorem = "supported-count";
    r->R = Rat(B);
    r->exact = exact;
    r->inputs = c.describe();
  }
  out.lower.kind = BoundKind::Lower;
  out.upper.kind = BoundKind::Upper;
  if (n == 1) {
    for (BoundReport* r : {&out.lower, &out.upper}) {
      r->bound = units;
      r->threshold = Real(0);
      r->verdict = judge(r->kind, exact, units);
    }
    return out;
  }
  auto pw = [](const Real& x, long e) {
    Real p(1);
    for (long i = 0; i < e; ++i) p = p * x;
    return p;
  };
  Real nm1(n - 1), two(2), one(1);
  out.upper.bound = units * (two * Br / J + one) * pw(two * Br + one, n - 2);
  out.upper.threshold = Real(0);
  out.upper.verdict = judge(BoundKind::Upper, exact, out.upper.bound);
  Real first = two * Br / (nm1 * Real::sqrt_of(Rat(n)) * J) - one;
  Real second = two * Br / nm1 - one;
  out.lower.bound = units * first * pw(second, n - 2);
  out.lower.threshold = pcount_lower_threshold(c, L);
  auto ok = try_compare(Br, out.lower.threshold);
  out.lower.applicable = ok && *ok != Cmp::Less;
  out.lower.verdict = judge(BoundKind::Lower, exact, out.lower.bound);
  return out;
}

}  // namespace hc
