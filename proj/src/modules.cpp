#include "heightcount/modules.hpp"

#include "heightcount/error.hpp"

#include <algorithm>

namespace hc {

namespace {

NfElement zero_of(const FieldPtr& K) { return NfElement::from_rat(K, Rat(0)); }

Rat ball_upper(const CertReal& x) { return x.eval(128).upper(); }

// h(x)^d from the embedded coordinates (channel-major) and a finite part.
CertReal height_power_from_channels(const NumberField& K, std::size_t N, const std::vector<CertReal>& ch) {
  CertReal p(1);
  for (int v = 0; v < K.places(); ++v) {
    CertReal m(1);
    if (v < K.r1()) {
      for (std::size_t i = 0; i < N; ++i) m = max(m, abs(ch[v * N + i]));
    } else {
      std::size_t re = (K.r1() + 2 * (v - K.r1())) * N;
      for (std::size_t i = 0; i < N; ++i) {
        const CertReal& a = ch[re + i];
        const CertReal& b = ch[re + N + i];
        m = max(m, a * a + b * b);
      }
    }
    p = p * m;
  }
  return p;
}

template <class Fn>
void search_ideal(const FracIdeal& U, const Rat& bound, std::uint64_t budget, Fn fn) {
  const FieldPtr& K = U.field();
  CertMat b(K->degree(), std::vector<CertReal>(K->degree()));
  auto zb = U.z_basis();
  for (int j = 0; j < K->degree(); ++j) {
    auto ch = zb[j].channels();
    for (int k = 0; k < K->degree(); ++k) b[k][j] = ch[k];
  }
  RealLattice lat = RealLattice::from_cert(b);
  std::uint64_t seen = 0;
  enumerate_cube(lat, bound, [&](const IntVec& m) {
    if (++seen > budget) fail(ErrorCode::BudgetExhausted, "constant search exceeded its budget");
    NfElement a = zero_of(K);
    for (int j = 0; j < K->degree(); ++j)
      if (m[j] != 0) a = a + zb[j] * Rat(m[j]);
    if (!a.is_zero()) fn(a);
    return true;
  });
}

HeightValue hz_value(const NfElement& a) {
  HeightValue h1 = height_h({a}), h2 = height_h({a.inv()});
  HeightValue z;
  z.finite = h1.finite * h2.finite;
  z.arch = h1.arch * h2.arch;
  z.root = h1.root;
  return z;
}

}  // namespace

OkModule::OkModule(FieldPtr K, std::size_t N, std::vector<PseudoElement> pb) : K_(std::move(K)), n_(N), rank_(pb.size()), pb_(std::move(pb)) {
  if (pb_.empty() || pb_.size() > n_) fail(ErrorCode::InvalidArgument, "module rank must be in [1, N]");
  NfMat Y(n_, NfVec(pb_.size(), zero_of(K_)));
  for (std::size_t n = 0; n < pb_.size(); ++n) {
    if (pb_[n].y.size() != n_) fail(ErrorCode::InvalidArgument, "pseudo-basis vector has the wrong length");
    for (std::size_t i = 0; i < n_; ++i) Y[i][n] = pb_[n].y[i];
  }
  grassmann(Y);  // throws on dependence
  integral_ = true;
  for (const auto& p : pb_) {
    for (const auto& g : p.ideal.z_basis()) {
      NfVec v;
      for (const auto& c : p.y) {
        v.push_back(g * c);
        integral_ = integral_ && v.back().is_integral();
      }
      zb_.push_back(v);
    }
  }
}

OkModule OkModule::from_generators(FieldPtr K, const std::vector<NfVec>& gens) {
  if (K->degree() != 1) fail(ErrorCode::Unsupported, "pseudo-basis from generators is implemented for K = Q only");
  if (gens.empty()) fail(ErrorCode::InvalidArgument, "no generators");
  std::size_t N = gens[0].size();
  std::vector<RatVec> vs;
  for (const auto& g : gens) {
    if (g.size() != N) fail(ErrorCode::InvalidArgument, "generators of different lengths");
    RatVec v;
    for (const auto& c : g) v.push_back(c.coeffs()[0]);
    vs.push_back(v);
  }
  RatLattice lat = RatLattice::from_generators(vs, N);
  std::vector<PseudoElement> pb;
  for (const auto& b : lat.basis()) {
    NfVec y;
    for (const auto& q : b) y.push_back(NfElement::from_rat(K, q));
    pb.push_back({y, FracIdeal::unit(K)});
  }
  return OkModule(K, N, pb);
}

OkModule OkModule::from_z_basis(FieldPtr K, std::size_t N, std::size_t L, std::vector<NfVec> zb) {
  if (L == 0 || L > N) fail(ErrorCode::InvalidArgument, "module rank must be in [1, N]");
  if (zb.size() != L * static_cast<std::size_t>(K->degree()))
    fail(ErrorCode::InvalidArgument, "Z-basis size must be d * L");
  OkModule M;
  M.K_ = std::move(K);
  M.n_ = N;
  M.rank_ = L;
  M.integral_ = true;
  for (const auto& v : zb) {
    if (v.size() != N) fail(ErrorCode::InvalidArgument, "Z-basis vector has the wrong length");
    for (const auto& c : v) M.integral_ = M.integral_ && c.is_integral();
  }
  const std::size_t d = static_cast<std::size_t>(M.K_->degree());
  RatMat Q(zb.size(), N * d);
  for (std::size_t r = 0; r < zb.size(); ++r)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < d; ++k) Q(r, i * d + k) = zb[r][i].coeffs()[k];
  if (hc::rank(Q) != zb.size()) fail(ErrorCode::InvalidArgument, "Z-basis is dependent");
  M.zb_ = std::move(zb);
  return M;
}

OkModule OkModule::free_module(FieldPtr K, std::size_t N) {
  std::vector<PseudoElement> pb;
  for (std::size_t n = 0; n < N; ++n) {
    NfVec e(N, zero_of(K));
    e[n] = NfElement::from_rat(K, Rat(1));
    pb.push_back({e, FracIdeal::unit(K)});
  }
  return OkModule(K, N, pb);
}

NfVec OkModule::element(const IntVec& m) const {
  NfVec x(n_, zero_of(K_));
  for (std::size_t j = 0; j < zb_.size(); ++j) {
    if (m[j] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i) x[i] = x[i] + zb_[j][i] * Rat(m[j]);
  }
  return x;
}

std::vector<CertReal> sigma_embed(const NfVec& x) {
  if (x.empty()) return {};
  const int d = x[0].field()->degree();
  std::vector<CertReal> out;
  out.reserve(x.size() * d);
  std::vector<std::vector<CertReal>> ch;
  for (const auto& c : x) ch.push_back(c.channels());
  for (int k = 0; k < d; ++k)
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back(ch[i][k]);
  return out;
}

RealLattice module_lattice(const OkModule& M) {
  const auto& zb = M.z_basis();
  std::size_t rows = M.ambient() * M.field()->degree();
  CertMat b(rows, std::vector<CertReal>(zb.size()));
  for (std::size_t j = 0; j < zb.size(); ++j) {
    auto s = sigma_embed(zb[j]);
    for (std::size_t i = 0; i < rows; ++i) b[i][j] = s[i];
  }
  return RealLattice::from_cert(b);
}

Rat module_discriminant(const OkModule& M) {
  if (!M.has_pseudo_basis()) fail(ErrorCode::Unsupported, "module has no pseudo-basis");
  Rat D = pow_rat(Rat(M.field()->discriminant()), static_cast<long>(M.rank()));
  for (const auto& p : M.pseudo_basis()) D *= p.ideal.norm() * p.ideal.norm();
  return D;
}

FracIdeal scaling_ideal(const OkModule& M) {
  std::optional<FracIdeal> U;
  if (!M.has_pseudo_basis()) {
    // a M in O_K^N iff a g in O_K^N for every Z-basis vector g
    for (const auto& g : M.z_basis())
      for (const auto& c : g) {
        if (c.is_zero()) continue;
        FracIdeal J = FracIdeal::principal(c.inv());
        U = U ? U->intersect(J) : J;
      }
    return *U;
  }
  for (const auto& p : M.pseudo_basis())
    for (const auto& c : p.y) {
      if (c.is_zero()) continue;
      FracIdeal J = (p.ideal * FracIdeal::principal(c)).inverse();
      U = U ? U->intersect(J) : J;
    }
  return *U;
}

Real module_det_displayed(const OkModule& M) {
  const FieldPtr& K = M.field();
  long L = static_cast<long>(M.rank());
  Real D = Real(abs_rat(module_discriminant(M)));
  return Real(pow_rat(Rat(2), -L * K->r2())) * pow(D, Rat(L, 2));
}

Real module_det_corrected(const OkModule& M) {
  if (!M.has_pseudo_basis()) fail(ErrorCode::Unsupported, "module has no pseudo-basis");
  const FieldPtr& K = M.field();
  long L = static_cast<long>(M.rank());
  Rat base = pow_rat(Rat(2), -L * K->r2());
  for (const auto& p : M.pseudo_basis()) base *= p.ideal.norm();
  Real v = Real(base) * pow(Real(abs_rat(Rat(K->discriminant()))), Rat(L, 2));
  NfMat Y(M.ambient(), NfVec(M.rank(), zero_of(K)));
  for (std::size_t n = 0; n < M.rank(); ++n)
    for (std::size_t i = 0; i < M.ambient(); ++i) Y[i][n] = M.pseudo_basis()[n].y[i];
  // prod_v H2_v(Y)^{d_v}, squared in arch_euclid_power2
  return v * sqrt(arch_euclid_power2(grassmann(Y)).approx);
}

ModuleConstant module_c(const OkModule& M, std::uint64_t budget) {
  FracIdeal U = scaling_ideal(M);
  std::optional<ModuleConstant> best;
  for (const auto& a : U.z_basis()) {
    HeightValue h = height_h({a});
    if (!best || compare(h, best->value) == Cmp::Less) best = ModuleConstant{h, a};
  }
  // h(a)^d bounds every channel of a
  search_ideal(U, ball_upper(best->value.power()), budget, [&](const NfElement& a) {
    HeightValue h = height_h({a});
    if (compare(h, best->value) == Cmp::Less) best = ModuleConstant{h, a};
  });
  return *best;
}

ModuleConstant module_z(const OkModule& M, std::uint64_t budget) {
  FracIdeal U = scaling_ideal(M);
  std::optional<ModuleConstant> best;
  for (const auto& a : U.z_basis()) {
    HeightValue h = hz_value(a);
    if (!best || compare(h, best->value) == Cmp::Less) best = ModuleConstant{h, a};
  }
  // h(a) <= h(a) h(1/a), so the same box applies
  search_ideal(U, ball_upper(best->value.power()), budget, [&](const NfElement& a) {
    HeightValue h = hz_value(a);
    if (compare(h, best->value) == Cmp::Less) best = ModuleConstant{h, a};
  });
  return *best;
}

namespace {

// Walks candidates of Lambda_K(M) that can have h <= R and reports the
// accepted ones with h^d. Real quadratic fields use dyadic boxes in the
// first channel so the hyperbolic region is covered without the full cube.
template <class Fn>
std::uint64_t walk_module(const OkModule& M, const CertReal& Rd, std::uint64_t budget, Partition part, Fn on_accept) {
  const NumberField& K = *M.field();
  const std::size_t N = M.ambient(), rows = N * K.degree();
  RealLattice lat = module_lattice(M);
  const Rat T = ball_upper(Rd);
  std::uint64_t seen = 0;

  auto accept = [&](const IntVec& m, const std::vector<CertReal>& ch) {
    CertReal hp = height_power_from_channels(K, N, ch);
    if (!M.integral()) {
      HeightValue h = height_h(M.element(m));
      hp = h.power();
    }
    if (compare(hp, Rd) != Cmp::Greater) on_accept(m, hp);
  };

  if (K.degree() == 2 && K.r1() == 2) {
    for (long k = 0;; ++k) {
      Rat lo_s1 = k == 0 ? Rat(0) : pow_rat(Rat(2), k - 1);
      if (k > 0 && lo_s1 >= T) break;
      Rat b1 = pow_rat(Rat(2), k);
      Rat b2 = k == 0 ? T : T / lo_s1;
      std::vector<Rat> bounds(rows);
      for (std::size_t i = 0; i < N; ++i) bounds[i] = b1, bounds[N + i] = b2;
      enumerate_box(
          lat, bounds,
          [&](const IntVec& m) {
            if (++seen > budget) fail(ErrorCode::BudgetExhausted, "module count exceeded its candidate budget");
            auto ch = lat.point(m);
            CertReal s1(0);
            for (std::size_t i = 0; i < N; ++i) s1 = max(s1, abs(ch[i]));
            // canonical box: s1 <= 1 for k = 0, 2^{k-1} < s1 otherwise
            if (k == 0 ? compare(s1, CertReal(1)) == Cmp::Greater : compare(s1, CertReal(lo_s1)) != Cmp::Greater)
              return true;
            accept(m, ch);
            return true;
          },
          part);
    }
    return seen;
  }

  std::vector<Rat> bounds(rows, T);
  if (K.r2() > 0) {
    // |Re|, |Im| <= |tau| <= R^{d/2}; here d = 2 so R^{d/2} = sqrt of the power
    Ball s = sqrt(Rd.eval(128));
    for (std::size_t i = static_cast<std::size_t>(K.r1()) * N; i < rows; ++i) bounds[i] = s.upper();
  }
  enumerate_box(
      lat, bounds,
      [&](const IntVec& m) {
        if (++seen > budget) fail(ErrorCode::BudgetExhausted, "module count exceeded its candidate budget");
        accept(m, lat.point(m));
        return true;
      },
      part);
  return seen;
}

CertReal power_of(const CertReal& R, int d) {
  CertReal p(1);
  for (int i = 0; i < d; ++i) p = p * R;
  return p;
}

}  // namespace

ModuleCount exact_count_module(const OkModule& M, const Rat& R, std::uint64_t budget, Partition part) {
  return exact_count_module(M, CertReal(R), budget, part);
}

ModuleCount exact_count_module(const OkModule& M, const CertReal& R, std::uint64_t budget, Partition part) {
  ModuleCount c;
  if (compare(R, CertReal(1)) == Cmp::Less) return c;  // h >= 1 everywhere
  CertReal Rd = power_of(R, M.field()->degree());
  c.candidates = walk_module(M, Rd, budget, part, [&](const IntVec&, const CertReal&) { ++c.count; });
  return c;
}

void enumerate_module(const OkModule& M, const Rat& R, const std::function<bool(const NfVec&, const HeightValue&)>& fn,
                      std::uint64_t budget, Partition part) {
  if (R < 1) return;
  const int d = M.field()->degree();
  CertReal Rd = power_of(CertReal(R), d);
  walk_module(M, Rd, budget, part, [&](const IntVec& m, const CertReal& hp) {
    HeightValue h;
    h.arch = hp;
    h.root = d;
    fn(M.element(m), h);
  });
}

}  // namespace hc
