#include "heightcount/sunits.hpp"

#include "heightcount/error.hpp"

#include <cmath>
#include <sstream>

namespace hc {

namespace {

bool is_prime_long(const Int& n) { return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 30) != 0; }

// roots of x^2 - tr x + nm mod p for the second integral basis element
int omega_roots_mod(const FieldPtr& K, long p) {
  NfElement w = NfElement::from_integral(K, RatVec{Rat(0), Rat(1)});
  Int tr = w.trace().get_num(), nm = w.norm().get_num();
  int roots = 0;
  for (long r = 0; r < p; ++r) {
    Int v = Int(r) * r - tr * r + nm;
    Int m = v % p;
    if (m == 0) ++roots;
  }
  return roots;
}

bool is_prime_ideal(const FieldPtr& K, const FracIdeal& I) {
  if (!I.is_integral()) return false;
  Rat n = I.norm();
  if (n.get_den() != 1) return false;
  Int N = n.get_num();
  if (is_prime_long(N)) return true;
  if (K->degree() != 2) return false;
  Int p = sqrt(N);
  if (p * p != N || !is_prime_long(p)) return false;
  return I == FracIdeal::principal(NfElement::from_rat(K, Rat(p))) && omega_roots_mod(K, p.get_si()) == 0;
}

bool is_unit(const NfElement& u) { return !u.is_zero() && u.is_integral() && u.inv().is_integral(); }

long vint(NfElement y, const NfElement& pi) {
  long k = 0;
  while (true) {
    NfElement q = y / pi;
    if (!q.is_integral()) return k;
    y = q;
    ++k;
  }
}

CertReal exact_zero() { return CertReal(Rat(0)); }

// columns: log embeddings of the given elements
CertMat embed_columns(const SUnitContext& ctx, const std::vector<NfElement>& gens, bool weighted) {
  const std::size_t n = ctx.n();
  CertMat B(n, std::vector<CertReal>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    auto col = log_embed(ctx, gens[j], weighted);
    for (std::size_t i = 0; i < n; ++i) B[i][j] = col[i];
  }
  return B;
}

// |det| of the top square block after dropping the last `drop` rows
Real top_minor(const CertMat& B, std::size_t rows) {
  if (rows == 0) return Real(1);
  CertMat m(rows, std::vector<CertReal>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) m[i][j] = B[i][j];
  return abs(cert_det(m).approx);
}

bool certified_le(const Real& a, const Real& b) {
  auto c = try_compare(a, b);
  if (c) return *c != Cmp::Greater;
  return real_agree(a, b);
}

// Small dense solve in doubles; used only for the exponent box.
std::vector<std::vector<double>> pseudo_inverse(const std::vector<std::vector<double>>& G) {
  const std::size_t n = G.size(), r = G[0].size();
  std::vector<std::vector<double>> M(r, std::vector<double>(r + n, 0.0));
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t i = 0; i < n; ++i) M[a][b] += G[i][a] * G[i][b];
    for (std::size_t i = 0; i < n; ++i) M[a][r + i] = G[i][a];
  }
  for (std::size_t c = 0; c < r; ++c) {
    std::size_t piv = c;
    for (std::size_t a = c + 1; a < r; ++a)
      if (std::fabs(M[a][c]) > std::fabs(M[piv][c])) piv = a;
    std::swap(M[c], M[piv]);
    if (std::fabs(M[c][c]) < 1e-300) fail(ErrorCode::Internal, "singular log lattice");
    for (std::size_t a = 0; a < r; ++a) {
      if (a == c) continue;
      double f = M[a][c] / M[c][c];
      for (std::size_t b = c; b < r + n; ++b) M[a][b] -= f * M[c][b];
    }
  }
  std::vector<std::vector<double>> P(r, std::vector<double>(n));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < n; ++i) P[a][i] = M[a][r + i] / M[a][a];
  return P;
}

}  // namespace

std::vector<FracIdeal> primes_above(const FieldPtr& K, long p) {
  if (p < 2 || !is_prime_long(Int(p))) fail(ErrorCode::InvalidArgument, "primes_above needs a rational prime");
  NfElement P = NfElement::from_rat(K, Rat(p));
  if (K->degree() == 1) return {FracIdeal::principal(P)};
  if (K->degree() != 2) fail(ErrorCode::Unsupported, "prime decomposition needs d <= 2");
  NfElement w = NfElement::from_integral(K, RatVec{Rat(0), Rat(1)});
  Int tr = w.trace().get_num(), nm = w.norm().get_num();
  std::vector<FracIdeal> out;
  for (long r = 0; r < p; ++r) {
    Int v = Int(r) * r - tr * r + nm;
    if (v % p != 0) continue;
    FracIdeal I = FracIdeal::from_generators(K, {P, w - NfElement::from_rat(K, Rat(r))});
    bool dup = false;
    for (const auto& J : out) dup = dup || J == I;
    if (!dup) out.push_back(I);
  }
  if (out.empty()) out.push_back(FracIdeal::principal(P));
  return out;
}

SUnitContext SUnitContext::create(const FieldPtr& K, const std::vector<NfElement>& prime_gens,
                                  const std::vector<NfElement>& unit_gens, std::optional<long> class_number,
                                  bool weighted) {
  SUnitContext c;
  c.K_ = K;
  c.weighted_ = weighted;
  for (const auto& g : prime_gens) {
    if (g.field() != K || g.is_zero()) fail(ErrorCode::InvalidArgument, "S_1 generator must be a nonzero field element");
    FracIdeal I = FracIdeal::principal(g);
    if (!is_prime_ideal(K, I)) fail(ErrorCode::InvalidArgument, "S_1 generator " + g.str() + " does not generate a prime");
    for (const auto& q : c.S1_)
      if (q.ideal == I) fail(ErrorCode::InvalidArgument, "S_1 lists the same prime twice");
    c.S1_.push_back({I, g, I.norm().get_num()});
  }
  const int want = K->places() - 1;
  std::vector<NfElement> units = unit_gens;
  bool automatic = units.empty() && want > 0;
  if (automatic) {
    if (!(K->is_quadratic() && K->r1() == 2))
      fail(ErrorCode::Unsupported, "unit generators must be supplied for this field");
    units.push_back(fundamental_unit(K));
  }
  if (static_cast<int>(units.size()) != want)
    fail(ErrorCode::InvalidArgument, "expected " + std::to_string(want) + " unit generators");
  for (const auto& u : units)
    if (u.field() != K || !is_unit(u)) fail(ErrorCode::InvalidArgument, "unit generator " + u.str() + " is not a unit");
  c.units_ = units.size();
  c.gens_ = units;
  for (const auto& q : c.S1_) c.gens_.push_back(q.generator);
  c.mu_ = hc::roots_of_unity(K);
  if (class_number) {
    if (*class_number < 1) fail(ErrorCode::InvalidArgument, "class number must be positive");
    c.h_ = class_number;
  } else if (K->degree() == 1 || (K->degree() == 2 && class_number_one(K))) {
    c.h_ = 1;
  }
  if (!c.gens_.empty()) {
    RealLattice lat = RealLattice::from_cert(embed_columns(c, c.gens_, true));
    bool ok = false;
    try {
      ok = compare(lat.gram_det(), CertReal(Rat(0))) == Cmp::Greater;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) fail(ErrorCode::InvalidArgument, "generators are multiplicatively dependent");
  }
  return c;
}

SUnitContext SUnitContext::from_ideals(const FieldPtr& K, const std::vector<FracIdeal>& primes,
                                       const std::vector<NfElement>& unit_gens, std::optional<long> class_number,
                                       bool weighted) {
  std::vector<NfElement> gens;
  for (const auto& I : primes) {
    auto g = principal_generator(I);
    if (!g) fail(ErrorCode::Unsupported, "S_1 ideal " + I.str() + " is not principal");
    gens.push_back(*g);
  }
  return create(K, gens, unit_gens, class_number, weighted);
}

std::string SUnitContext::describe() const {
  std::ostringstream s;
  s << "K=" << K_->name() << " S_1={";
  for (std::size_t i = 0; i < S1_.size(); ++i) s << (i ? "," : "") << S1_[i].generator.str();
  s << "} n=" << n() << " omega=" << omega();
  return s.str();
}

long valuation(const NfElement& a, const NfElement& pi) {
  if (a.is_zero()) fail(ErrorCode::Domain, "valuation of zero");
  Int den = a.denominator();
  NfElement x = a * Rat(den);
  return vint(x, pi) - vint(NfElement::from_rat(a.field(), Rat(den)), pi);
}

bool is_s_unit(const SUnitContext& ctx, const NfElement& a) {
  if (a.is_zero() || a.field() != ctx.field()) return false;
  NfElement b = a;
  for (const auto& q : ctx.finite()) b = b * q.generator.pow(-valuation(a, q.generator));
  return is_unit(b);
}

std::vector<CertReal> log_embed(const SUnitContext& ctx, const NfElement& a) {
  return log_embed(ctx, a, ctx.weighted());
}

std::vector<CertReal> log_embed(const SUnitContext& ctx, const NfElement& a, bool weighted) {
  if (!is_s_unit(ctx, a)) fail(ErrorCode::InvalidArgument, a.str() + " is not an S-unit");
  const FieldPtr& K = ctx.field();
  std::vector<CertReal> out;
  for (int v = 0; v < K->places(); ++v) {
    CertReal p = a.place_abs_pow(v);
    if (p.exact && *p.exact == QuadSurd(Rat(1))) {
      out.push_back(exact_zero());
      continue;
    }
    Real l = log(p.approx);
    if (!weighted && K->local_degree(v) == 2) l = l / Real(2);
    out.emplace_back(l);
  }
  for (const auto& q : ctx.finite()) {
    long k = valuation(a, q.generator);
    if (k == 0)
      out.push_back(exact_zero());
    else
      out.emplace_back(Real(Rat(-k)) * log(Real(Rat(q.norm))));
  }
  return out;
}

Real s_height(const SUnitContext& ctx, const NfElement& a) {
  Real h(0);
  for (const auto& x : log_embed(ctx, a)) h = max(h, abs(x.approx));
  return h;
}

LogLattice build_log_lattice(const SUnitContext& ctx) {
  LogLattice L;
  const std::size_t r = ctx.generators().size();
  L.regulator = Real(1);
  L.classical = Real(1);
  L.unit_regulator = Real(1);
  L.hsk = CertReal(Rat(0));
  if (r == 0) return L;
  L.lattice = RealLattice::from_cert(embed_columns(ctx, ctx.generators(), ctx.weighted()));
  L.regulator = L.lattice.det();
  CertMat W = embed_columns(ctx, ctx.generators(), true);
  L.classical = top_minor(W, r);
  if (ctx.unit_count() > 0) {
    std::vector<NfElement> units(ctx.generators().begin(), ctx.generators().begin() + ctx.unit_count());
    L.unit_regulator = top_minor(embed_columns(ctx, units, true), ctx.unit_count());
  }
  SupMin m = supnorm_min(L.lattice);
  L.hsk = m.c;
  L.hsk_witness = m.witness;
  return L;
}

std::uint64_t count_sunits_lattice(const SUnitContext& ctx, const LogLattice& L, const Rat& B) {
  if (B <= 0) fail(ErrorCode::InvalidArgument, "B must be positive");
  const auto w = static_cast<std::uint64_t>(ctx.omega());
  if (L.rank() == 0) return w;
  return w * count_cube(L.lattice, B);
}

std::vector<long> exponent_box(const LogLattice& L, const Rat& B) {
  const auto& b = L.lattice.basis();
  std::vector<std::vector<double>> G(b.size(), std::vector<double>(L.rank()));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) G[i][j] = b[i][j].to_double();
  auto P = pseudo_inverse(G);
  std::vector<long> box;
  const double Bd = B.get_d();
  for (const auto& row : P) {
    double s = 0;
    for (double x : row) s += std::fabs(x);
    box.push_back(static_cast<long>(std::floor(s * Bd * (1 + 1e-6) + 1e-6)));
  }
  return box;
}

std::uint64_t count_sunits_direct(const SUnitContext& ctx, const LogLattice& L, const Rat& B) {
  if (B <= 0) fail(ErrorCode::InvalidArgument, "B must be positive");
  const FieldPtr& K = ctx.field();
  const Real Br(B);
  auto within = [&](const NfElement& a) { return compare(s_height(ctx, a), Br) != Cmp::Greater; };
  std::uint64_t count = 0;
  if (L.rank() == 0) {
    for (const auto& z : ctx.roots_of_unity()) count += within(z) ? 1 : 0;
    return count;
  }
  auto box = exponent_box(L, B);
  const auto& g = ctx.generators();
  std::vector<std::vector<NfElement>> pw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (long e = -box[i]; e <= box[i]; ++e) pw[i].push_back(g[i].pow(e));
  std::vector<long> e(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) e[i] = -box[i];
  while (true) {
    NfElement a = NfElement::from_rat(K, Rat(1));
    for (std::size_t i = 0; i < g.size(); ++i) a = a * pw[i][static_cast<std::size_t>(e[i] + box[i])];
    for (const auto& z : ctx.roots_of_unity()) count += within(z * a) ? 1 : 0;
    std::size_t i = 0;
    while (i < e.size() && e[i] == box[i]) e[i] = -box[i], ++i;
    if (i == e.size()) break;
    ++e[i];
  }
  return count;
}

Real sunit_lower_threshold(const LogLattice& L, std::size_t n) {
  if (n < 2) fail(ErrorCode::NotApplicable, "rank-0 log lattice has no threshold");
  const long k = static_cast<long>(n);
  Real H = L.hsk.approx;
  return Real(make_rat(k - 1, 2)) * max(L.regulator / pow(H, Rat(k - 2)), H);
}

SUnitBounds lemma_sunit_bounds(const SUnitContext& ctx, const LogLattice& L, const Rat& B, const Int& exact,
                               const std::string& id) {
  const std::size_t n = ctx.n();
  const long k = static_cast<long>(n);
  const Real w(ctx.omega()), Br(B);
  SUnitBounds out;
  for (BoundReport* r : {&out.lower, &out.upper}) {
    r->instance = id;
    r->theorem = "sunit-count";
    r->R = B;
    r->exact = exact;
    r->inputs = ctx.describe();
  }
  out.lower.kind = BoundKind::Lower;
  out.upper.kind = BoundKind::Upper;
  if (n == 1) {
    // nothing to count beyond the roots of unity
    for (BoundReport* r : {&out.lower, &out.upper}) {
      r->bound = w;
      r->threshold = Real(0);
      r->verdict = judge(r->kind, exact, w);
    }
    return out;
  }
  Real H = L.hsk.approx;
  auto pw = [](const Real& x, long e) {
    Real p(1);
    for (long i = 0; i < e; ++i) p = p * x;
    return p;
  };
  out.upper.bound = w * pw(Real(2) * Br / H + Real(1), k - 1);
  out.upper.threshold = Real(0);
  out.upper.verdict = judge(BoundKind::Upper, exact, out.upper.bound);
  Real first = Real(2) * Br * pw(H, k - 2) / (Real(k - 1) * L.regulator) - Real(1);
  Real second = Real(2) * Br / (Real(k - 1) * H) - Real(1);
  out.lower.bound = w * first * pw(second, k - 2);
  out.lower.threshold = sunit_lower_threshold(L, n);
  auto ok = try_compare(Br, out.lower.threshold);
  out.lower.applicable = ok && *ok != Cmp::Less;
  out.lower.verdict = judge(BoundKind::Lower, exact, out.lower.bound);
  return out;
}

RegulatorCheck regulator_bounds(const SUnitContext& ctx, const LogLattice& L) {
  if (!ctx.class_number()) fail(ErrorCode::InvalidArgument, "regulator bounds need the class number");
  RegulatorCheck c;
  c.RS = L.classical;
  Real prod(1);
  Int P = 0;
  for (const auto& q : ctx.finite()) {
    prod = prod * log(Real(Rat(q.norm)));
    // rational prime below p
    Int p = q.norm;
    Int r = sqrt(p);
    if (!is_prime_long(p) && r * r == p) p = r;
    if (p > P) P = p;
  }
  const int d = ctx.field()->degree();
  const long t = static_cast<long>(ctx.finite().size());
  Real logstar = P > 0 ? max(log(Real(Rat(P))), Real(1)) : Real(1);
  Real h(Rat(*ctx.class_number()));
  c.middle_up = L.unit_regulator * h * prod;
  Real dl(1);
  for (long i = 0; i < t; ++i) dl = dl * Real(d) * logstar;
  c.outer_up = L.unit_regulator * h * dl;
  c.middle_low = L.unit_regulator * prod;
  Real l2 = log(Real(2)), l2d(1);
  for (int i = 0; i < d; ++i) l2d = l2d * l2;
  c.outer_low = Real(make_rat(2052, 10000)) * l2d * logstar;
  c.up_holds = certified_le(c.RS, c.middle_up);
  c.up_outer_holds = certified_le(c.middle_up, c.outer_up);
  c.low_holds = certified_le(c.middle_low, c.RS);
  c.low_outer_holds = certified_le(c.outer_low, c.middle_low);
  return c;
}

}  // namespace hc
