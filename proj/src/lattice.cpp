#include "heightcount/lattice.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <cmath>

namespace hc {

namespace {

bool all_rational(const CertMat& m) {
  for (const auto& r : m)
    for (const auto& x : r)
      if (!x.exact || !x.exact->is_rational()) return false;
  return true;
}

bool common_surd(const CertMat& m) {
  Int D = 1;
  for (const auto& r : m)
    for (const auto& x : r) {
      if (!x.exact) return false;
      if (x.exact->D() == 1) continue;
      if (D == 1) D = x.exact->D();
      if (x.exact->D() != D) return false;
    }
  return true;
}

CertReal laplace(const CertMat& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t n = m.size();
  if (row == n) return CertReal(1);
  CertReal acc(0);
  int s = 1;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    std::size_t c = cols[k];
    if (m[row][c].exact && m[row][c].exact->sign() == 0) {
      s = -s;
      continue;
    }
    cols.erase(cols.begin() + k);
    CertReal minor = laplace(m, cols, row + 1);
    cols.insert(cols.begin() + k, c);
    CertReal term = m[row][c] * minor;
    acc = s > 0 ? acc + term : acc - term;
    s = -s;
  }
  return acc;
}

// Coefficient bounds from the inverse of a square block (doubles, padded).
std::vector<long> coefficient_box(const std::vector<std::vector<double>>& omega, const std::vector<double>& R) {
  const std::size_t L = omega.size();
  std::vector<std::vector<double>> m = omega, inv(L, std::vector<double>(L, 0.0));
  for (std::size_t i = 0; i < L; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < L; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < L; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    if (m[p][c] == 0) fail(ErrorCode::Internal, "singular lattice block");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    double s = m[c][c];
    for (std::size_t k = 0; k < L; ++k) m[c][k] /= s, inv[c][k] /= s;
    for (std::size_t r = 0; r < L; ++r) {
      if (r == c) continue;
      double f = m[r][c];
      if (f == 0) continue;
      for (std::size_t k = 0; k < L; ++k) m[r][k] -= f * m[c][k], inv[r][k] -= f * inv[c][k];
    }
  }
  std::vector<long> b(L);
  for (std::size_t i = 0; i < L; ++i) {
    double s = 0;
    for (std::size_t k = 0; k < L; ++k) s += std::fabs(inv[i][k]) * R[k];
    double v = s * (1 + 1e-9) + 1e-9;
    if (v > 4e18) fail(ErrorCode::BudgetExhausted, "coefficient box too large");
    b[i] = static_cast<long>(std::floor(v));
  }
  return b;
}

template <class T>
struct HnfWalker {
  std::size_t N, L;
  std::vector<std::vector<T>> h;  // N x L
  std::vector<std::size_t> pivot;
  std::vector<std::vector<T>> u;  // L x L
  std::vector<T> R;  // per-row bounds
  Partition part;
  const std::function<bool(const IntVec&)>* fn;
  std::vector<T> m, x;
  bool stop = false;

  static T fdiv(const T& a, const T& b) {  // floor(a / b), b > 0
    T q = a / b;
    if ((a % b != 0) && (a < 0)) q -= 1;
    return q;
  }
  static T cdiv(const T& a, const T& b) { return -fdiv(-a, b); }

  void emit() {
    IntVec out(L);
    for (std::size_t i = 0; i < L; ++i) {
      T s = 0;
      for (std::size_t j = 0; j < L; ++j) s += u[i][j] * m[j];
      out[i] = to_int(s);
    }
    if (!(*fn)(out)) stop = true;
  }
  static Int to_int(const T& v) {
    if constexpr (std::is_same_v<T, Int>) {
      return v;
    } else {
      return Int(static_cast<long>(v));
    }
  }

  bool rows_ok(std::size_t k) {
    // rows strictly after pivot k up to the next pivot depend only on m_0..m_k
    std::size_t end = k + 1 < L ? pivot[k + 1] : N;
    for (std::size_t r = pivot[k] + 1; r < end; ++r) {
      T s = 0;
      for (std::size_t j = 0; j <= k; ++j) s += h[r][j] * m[j];
      if (s > R[r] || s < -R[r]) return false;
    }
    return true;
  }

  void walk(std::size_t k) {
    if (stop) return;
    if (k == L) {
      emit();
      return;
    }
    std::size_t p = pivot[k];
    T base = 0;
    for (std::size_t j = 0; j < k; ++j) base += h[p][j] * m[j];
    const T& piv = h[p][k];
    T lo = cdiv(-R[p] - base, piv), hi = fdiv(R[p] - base, piv);
    for (T v = lo; v <= hi && !stop; v += 1) {
      if (k == 0 && part.parts > 1) {
        T mod = v % T(part.parts);
        if (mod < 0) mod += T(part.parts);
        if (mod != T(part.part)) continue;
      }
      m[k] = v;
      if (rows_ok(k)) walk(k + 1);
    }
  }
};

template <class T>
void run_hnf_walk(const HnfResult& hr, std::size_t N, std::size_t L, const std::vector<Int>& Rs, Partition part,
                  const std::function<bool(const IntVec&)>& fn) {
  HnfWalker<T> w;
  w.N = N;
  w.L = L;
  w.h.assign(N, std::vector<T>(L));
  w.u.assign(L, std::vector<T>(L));
  auto conv = [](const Int& v) -> T {
    if constexpr (std::is_same_v<T, Int>) {
      return v;
    } else {
      return static_cast<T>(v.get_si());
    }
  };
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < L; ++j) w.h[i][j] = conv(hr.h(i, j));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j) w.u[i][j] = conv(hr.u(i, j));
  for (std::size_t j = 0; j < L; ++j) {
    std::size_t r = 0;
    while (r < N && hr.h(r, j) == 0) ++r;
    w.pivot.push_back(r);
  }
  for (const auto& r : Rs) w.R.push_back(conv(r));
  w.part = part;
  w.fn = &fn;
  w.m.assign(L, T(0));
  w.walk(0);
}

void enumerate_rational(const RatMat& B, const std::vector<Rat>& R, const std::function<bool(const IntVec&)>& fn,
                        Partition part) {
  const std::size_t N = B.rows, L = B.cols;
  Int den = lcm_den(B.a);
  IntMat M(N, L);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < L; ++j) M(i, j) = Rat(B(i, j) * Rat(den)).get_num();
  HnfResult hr = hnf_with_transform(M);
  if (hr.rank != L) fail(ErrorCode::InvalidArgument, "lattice basis is not linearly independent");
  std::vector<Int> Rv;
  Int Rs = 0;
  for (const auto& r : R) {
    Rv.push_back(floor_rat(r * Rat(den)));
    if (Rv.back() < 0) return;
    Rs = std::max(Rs, Rv.back());
  }
  // int64 is safe when every partial sum stays far below 2^62
  Int maxh = 0, maxu = 0;
  for (const auto& v : hr.h.a) maxh = std::max(maxh, Int(abs(v)));
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < L; ++j) maxu = std::max(maxu, Int(abs(hr.u(i, j))));
  bool small = fits_int64(Rs) && Rs < Int(1L << 40) && maxh < Int(1L << 20) && maxu < Int(1L << 20) && L <= 16;
  if (small) {
    // |m_j| <= (2R) * maxh^j roughly; check the worst case directly
    Int mb = Rs + 1, acc = 0;
    for (std::size_t j = 0; j < L; ++j) {
      acc += maxh * mb;
      mb = (Rs + acc) + 1;
    }
    small = (mb * maxh * Int(L) < Int(1L << 62)) && (mb * maxu * Int(L) < Int(1L << 62));
  }
  if (small) {
    run_hnf_walk<long long>(hr, N, L, Rv, part, fn);
  } else {
    run_hnf_walk<Int>(hr, N, L, Rv, part, fn);
  }
}

void enumerate_real(const RealLattice& lat, const std::vector<Rat>& R, const std::function<bool(const IntVec&)>& fn,
                    Partition part) {
  const std::size_t N = lat.ambient_dim(), L = lat.rank();
  MaxGrassmann mg = max_grassmann_sublattice(lat);
  std::vector<std::vector<double>> omega(L, std::vector<double>(L));
  std::vector<std::vector<double>> bd(N, std::vector<double>(L));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < L; ++j) bd[i][j] = lat.basis()[i][j].to_double();
  for (std::size_t i = 0; i < L; ++i) omega[i] = bd[mg.rows[i]];
  std::vector<double> Rd;
  for (const auto& r : R) Rd.push_back(r.get_d());
  std::vector<double> Rom;
  for (auto i : mg.rows) Rom.push_back(Rd[i]);
  std::vector<long> box = coefficient_box(omega, Rom);
  // rest[j][i]: largest |sum_{k >= j} b_ik m_k| over the coefficient box
  std::vector<std::vector<double>> rest(L + 1, std::vector<double>(N, 0.0));
  for (std::size_t j = L; j-- > 0;)
    for (std::size_t i = 0; i < N; ++i) rest[j][i] = rest[j + 1][i] + std::fabs(bd[i][j]) * static_cast<double>(box[j]);
  std::vector<long> m(L);
  std::vector<double> partial(N, 0.0), mag(N, 0.0);
  IntVec mi(L);
  bool stop = false;
  // columns with a nonzero entry in each row
  std::vector<std::vector<std::size_t>> nz(N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < L; ++j) {
      const CertReal& b = lat.basis()[i][j];
      if (!(b.exact && b.exact->sign() == 0)) nz[i].push_back(j);
    }

  auto leaf = [&]() {
    for (std::size_t i = 0; i < N; ++i) {
      double tol = 1e-9 * (1 + mag[i]);
      double a = std::fabs(partial[i]);
      if (a < Rd[i] - tol) continue;
      if (a > Rd[i] + tol) return;
      CertReal x(0);
      for (auto j : nz[i])
        if (m[j] != 0) x = x + lat.basis()[i][j] * CertReal(Rat(m[j]));
      if (compare(abs(x), CertReal(R[i])) == Cmp::Greater) return;
    }
    for (std::size_t j = 0; j < L; ++j) mi[j] = m[j];
    if (!fn(mi)) stop = true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (stop) return;
    if (j == L) {
      leaf();
      return;
    }
    // interval of m_j compatible with every row, given the remaining slack
    double lo = -static_cast<double>(box[j]), hi = static_cast<double>(box[j]);
    for (std::size_t i = 0; i < N; ++i) {
      double b = bd[i][j];
      double slack = Rd[i] + rest[j + 1][i] + 1e-9 * (1 + mag[i] + rest[j][i]);
      if (std::fabs(b) < 1e-300) {
        if (std::fabs(partial[i]) > slack) return;
        continue;
      }
      double u = (slack - partial[i]) / b, v = (-slack - partial[i]) / b;
      if (u > v) std::swap(u, v);
      lo = std::max(lo, u);
      hi = std::min(hi, v);
    }
    long a = static_cast<long>(std::ceil(lo - 1e-9)), z = static_cast<long>(std::floor(hi + 1e-9));
    a = std::max(a, -box[j]);
    z = std::min(z, box[j]);
    for (long v = a; v <= z && !stop; ++v) {
      if (j == 0 && part.parts > 1 && ((v % static_cast<long>(part.parts)) + part.parts) % part.parts != part.part)
        continue;
      m[j] = v;
      for (std::size_t i = 0; i < N; ++i) {
        double t = bd[i][j] * static_cast<double>(v);
        partial[i] += t;
        mag[i] += std::fabs(t);
      }
      rec(j + 1);
      for (std::size_t i = 0; i < N; ++i) {
        double t = bd[i][j] * static_cast<double>(v);
        partial[i] -= t;
        mag[i] -= std::fabs(t);
      }
    }
  };
  rec(0);
}

}  // namespace

CertReal cert_det(const CertMat& m) {
  const std::size_t n = m.size();
  if (n == 0) return CertReal(1);
  for (const auto& r : m)
    if (r.size() != n) fail(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  if (all_rational(m)) {
    RatMat r(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r(i, j) = m[i][j].exact->a();
    return CertReal(det(r));
  }
  if (common_surd(m)) {
    std::vector<std::vector<QuadSurd>> q(n, std::vector<QuadSurd>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q[i][j] = *m[i][j].exact;
    return CertReal(det_field(q, QuadSurd(0), QuadSurd(1)));
  }
  if (n > 8) fail(ErrorCode::Unsupported, "cofactor determinant limited to size 8");
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  return laplace(m, cols, 0);
}

RealLattice RealLattice::from_rational(const RatMat& basis) {
  RealLattice l;
  l.n_ = basis.rows;
  l.l_ = basis.cols;
  if (l.l_ == 0 || l.l_ > l.n_) fail(ErrorCode::InvalidArgument, "lattice rank must be in [1, N]");
  if (hc::rank(basis) != l.l_) fail(ErrorCode::InvalidArgument, "lattice basis is not linearly independent");
  l.b_.assign(l.n_, std::vector<CertReal>(l.l_));
  for (std::size_t i = 0; i < l.n_; ++i)
    for (std::size_t j = 0; j < l.l_; ++j) l.b_[i][j] = CertReal(basis(i, j));
  l.rat_ = basis;
  return l;
}

RealLattice RealLattice::from_columns(const std::vector<RatVec>& cols) {
  if (cols.empty()) fail(ErrorCode::InvalidArgument, "lattice needs a basis");
  RatMat b(cols[0].size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != b.rows) fail(ErrorCode::InvalidArgument, "basis vectors of different lengths");
    for (std::size_t i = 0; i < b.rows; ++i) b(i, j) = cols[j][i];
  }
  return from_rational(b);
}

RealLattice RealLattice::from_cert(CertMat basis) {
  if (all_rational(basis)) {
    RatMat r(basis.size(), basis.empty() ? 0 : basis[0].size());
    for (std::size_t i = 0; i < r.rows; ++i)
      for (std::size_t j = 0; j < r.cols; ++j) r(i, j) = basis[i][j].exact->a();
    return from_rational(r);
  }
  RealLattice l;
  l.n_ = basis.size();
  l.l_ = l.n_ ? basis[0].size() : 0;
  if (l.l_ == 0 || l.l_ > l.n_) fail(ErrorCode::InvalidArgument, "lattice rank must be in [1, N]");
  l.b_ = std::move(basis);
  CertReal g = l.gram_det();
  if (g.exact ? g.exact->sign() == 0 : !g.eval(256).positive())
    fail(ErrorCode::InvalidArgument, "lattice basis is not linearly independent");
  return l;
}

bool RealLattice::is_integral() const {
  if (!rat_) return false;
  for (const auto& q : rat_->a)
    if (q.get_den() != 1) return false;
  return true;
}

CertReal RealLattice::gram_det() const {
  CertMat g(l_, std::vector<CertReal>(l_));
  for (std::size_t i = 0; i < l_; ++i)
    for (std::size_t j = i; j < l_; ++j) {
      CertReal s(0);
      for (std::size_t k = 0; k < n_; ++k) s = s + b_[k][i] * b_[k][j];
      g[i][j] = g[j][i] = s;
    }
  return cert_det(g);
}

Real RealLattice::det() const {
  CertReal g = gram_det();
  if (g.exact && g.exact->is_rational()) return Real::sqrt_of(g.exact->a());
  return sqrt(g.approx);
}

std::vector<CertReal> RealLattice::point(const IntVec& m) const {
  std::vector<CertReal> out(n_, CertReal(0));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < l_; ++j)
      if (m[j] != 0) out[i] = out[i] + b_[i][j] * CertReal(Rat(m[j]));
  return out;
}

CertReal RealLattice::sup_norm(const IntVec& m) const {
  CertReal s(0);
  for (const auto& x : point(m)) s = max(s, abs(x));
  return s;
}

void enumerate_box(const RealLattice& lat, const std::vector<Rat>& bounds, const std::function<bool(const IntVec&)>& fn,
                   Partition part) {
  if (bounds.size() != lat.ambient_dim()) fail(ErrorCode::InvalidArgument, "need one bound per coordinate");
  for (const auto& r : bounds)
    if (r < 0) fail(ErrorCode::InvalidArgument, "box bounds must be nonnegative");
  if (part.parts == 0 || part.part >= part.parts) fail(ErrorCode::InvalidArgument, "bad partition");
  if (lat.is_rational()) {
    enumerate_rational(*lat.rational_basis(), bounds, fn, part);
  } else {
    enumerate_real(lat, bounds, fn, part);
  }
}

void enumerate_cube(const RealLattice& lat, const Rat& R, const std::function<bool(const IntVec&)>& fn,
                    Partition part) {
  if (R < 0) fail(ErrorCode::InvalidArgument, "cube half-side must be nonnegative");
  enumerate_box(lat, std::vector<Rat>(lat.ambient_dim(), R), fn, part);
}

std::vector<IntVec> enumerate_cube(const RealLattice& lat, const Rat& R, Partition part) {
  std::vector<IntVec> out;
  enumerate_cube(
      lat, R,
      [&](const IntVec& m) {
        out.push_back(m);
        return true;
      },
      part);
  return out;
}

std::uint64_t count_cube(const RealLattice& lat, const Rat& R, Partition part) {
  std::uint64_t n = 0;
  enumerate_cube(
      lat, R,
      [&](const IntVec&) {
        ++n;
        return true;
      },
      part);
  return n;
}

SupMin supnorm_min(const RealLattice& lat) {
  // the shortest basis column bounds the minimum, so one cube suffices
  std::size_t best = 0;
  std::vector<double> norms;
  for (std::size_t j = 0; j < lat.rank(); ++j) {
    double s = 0;
    for (std::size_t i = 0; i < lat.ambient_dim(); ++i) s = std::max(s, std::fabs(lat.basis()[i][j].to_double()));
    norms.push_back(s);
    if (s < norms[best]) best = j;
  }
  IntVec e(lat.rank(), Int(0));
  e[best] = 1;
  Rat R = Rat(norms[best]) * Rat(1 + 1e-9) + Rat(1, 1000000000);
  SupMin res{lat.sup_norm(e), e};
  enumerate_cube(lat, R, [&](const IntVec& m) {
    bool zero = std::all_of(m.begin(), m.end(), [](const Int& v) { return v == 0; });
    if (zero) return true;
    // -m has the same norm
    auto lead = std::find_if(m.begin(), m.end(), [](const Int& v) { return v != 0; });
    if (*lead < 0) return true;
    CertReal s = lat.sup_norm(m);
    if (s.to_double() > res.c.to_double() * (1 + 1e-6) + 1e-300) return true;
    if (s.exact && res.c.exact) {
      if (compare(s, res.c) == Cmp::Less) res = SupMin{s, m};
      return true;
    }
    // an unresolved comparison means equal norms up to the cap; keep either
    auto c = try_compare(s.approx, res.c.approx);
    if (c && *c == Cmp::Less) res = SupMin{s, m};
    return true;
  });
  return res;
}

Real bound_upper(std::size_t N, std::size_t L, const Real& det, const Real& c, const Rat& R, bool integral) {
  if (L == 0 || L > N) fail(ErrorCode::InvalidArgument, "need 1 <= L <= N");
  Real r(R), one(1), two(2);
  std::optional<Real> best;
  auto consider = [&](const Real& v) {
    if (!best) {
      best = v;
      return;
    }
    best = min(*best, v);
  };
  if (L == N) {
    Real cpow = N > 1 ? pow(c, Rat(static_cast<long>(N - 1))) : one;
    Real f2 = N > 1 ? pow(two * r / c + one, Rat(static_cast<long>(N - 1))) : one;
    consider((two * r * cpow / det + one) * f2);
  } else {
    consider(pow(two * r / c + one, Rat(static_cast<long>(N - 1))));
  }
  if (integral) {
    Real b = Real::sqrt_of(Rat(binomial(N, L)));
    Real f2 = L > 1 ? pow(two * r + one, Rat(static_cast<long>(L - 1))) : one;
    consider((two * b * r / det + one) * f2);
  }
  return *best;
}

Real lower_threshold(std::size_t L, const Real& det, const Real& c) {
  Real cpow = L > 1 ? pow(c, Rat(static_cast<long>(L - 1))) : Real(1);
  return Real(Rat(static_cast<long>(L), 2)) * max(det / cpow, c);
}

Real bound_lower(std::size_t L, const Real& det, const Real& c, const Rat& R) {
  if (L == 0) fail(ErrorCode::InvalidArgument, "rank must be positive");
  Real thr = lower_threshold(L, det, c);
  auto cmp = try_compare(Real(R), thr);
  if (!cmp || *cmp == Cmp::Less) fail(ErrorCode::NotApplicable, "lower bound not applicable below the threshold");
  Real r(R), one(1), two(2), l(static_cast<long>(L));
  Real cpow = L > 1 ? pow(c, Rat(static_cast<long>(L - 1))) : one;
  Real f2 = L > 1 ? pow(two * r / (l * c) - one, Rat(static_cast<long>(L - 1))) : one;
  return (two * r * cpow / (l * det) - one) * f2;
}

MaxGrassmann max_grassmann_sublattice(const RealLattice& lat) {
  const std::size_t N = lat.ambient_dim(), L = lat.rank();
  std::vector<std::size_t> idx(L);
  for (std::size_t i = 0; i < L; ++i) idx[i] = i;
  std::optional<MaxGrassmann> best;
  while (true) {
    CertMat sub;
    for (auto i : idx) sub.push_back(lat.basis()[i]);
    CertReal m = abs(cert_det(sub));
    bool nonzero = m.exact ? m.exact->sign() != 0 : m.eval(256).positive();
    bool better = !best;
    if (nonzero && best) {
      // unresolved ties keep the earlier block; any nonsingular block is valid
      if (m.exact && best->det_omega.exact) {
        better = compare(m, best->det_omega) == Cmp::Greater;
      } else {
        auto c = try_compare(m.approx, best->det_omega.approx);
        better = c && *c == Cmp::Greater;
      }
    }
    if (nonzero && better) best = MaxGrassmann{RealLattice{}, m, idx};
    std::size_t k = L;
    while (k > 0 && idx[k - 1] == N - L + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < L; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!best) fail(ErrorCode::InvalidArgument, "lattice basis is rank deficient");
  CertMat sub;
  for (auto i : best->rows) sub.push_back(lat.basis()[i]);
  best->omega = RealLattice::from_cert(sub);
  return *best;
}

}  // namespace hc
