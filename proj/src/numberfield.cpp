#include "heightcount/numberfield.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hc {

namespace {

RatVec reduce_product(const NumberField& K, const std::vector<Rat>& conv) {
  const int d = K.degree();
  RatVec out(d, Rat(0));
  const auto& pw = K.power_table();
  for (std::size_t k = 0; k < conv.size(); ++k) {
    if (conv[k] == 0) continue;
    if (static_cast<int>(k) < d) {
      out[k] += conv[k];
      continue;
    }
    for (int i = 0; i < d; ++i) out[i] += conv[k] * pw[k][i];
  }
  return out;
}

// Coefficients of prod (x - r_i) for the given balls, constant term first.
std::vector<Ball> product_poly(const std::vector<Ball>& rs, mpfr_prec_t prec) {
  std::vector<Ball> c{Ball::from_int(1, prec)};
  for (const auto& r : rs) {
    std::vector<Ball> n(c.size() + 1, Ball::from_int(0, prec));
    for (std::size_t i = 0; i < c.size(); ++i) {
      n[i + 1] = n[i + 1] + c[i];
      n[i] = n[i] - c[i] * r;
    }
    c = std::move(n);
  }
  return c;
}

// Exhaustive factor search over subsets of the real roots.
bool has_factor_from_roots(const Poly& f, const std::vector<AlgReal>& roots) {
  const int d = static_cast<int>(roots.size());
  const PrecisionPolicy pol = default_precision();
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    int k = __builtin_popcount(mask);
    if (k > d / 2) continue;
    for (mpfr_prec_t prec = std::max<mpfr_prec_t>(pol.start, 64);; prec *= 2) {
      if (prec > pol.cap) fail(ErrorCode::PrecisionExhausted, "irreducibility test needs more precision");
      std::vector<Ball> rs;
      for (int i = 0; i < d; ++i)
        if (mask & (1u << i)) rs.push_back(roots[i].to_ball(prec));
      auto c = product_poly(rs, prec);
      bool ambiguous = false, impossible = false;
      Poly cand;
      for (const auto& b : c) {
        Int lo = ceil_rat(b.lower()), hi = floor_rat(b.upper());
        if (lo > hi) {
          impossible = true;
          break;
        }
        if (lo != hi) {
          ambiguous = true;
          break;
        }
        cand.push_back(lo);
      }
      if (impossible) break;
      if (ambiguous) continue;
      if (poly_divides(cand, f, nullptr)) return true;
      break;
    }
  }
  return false;
}

std::vector<std::vector<double>> channel_matrix(const std::vector<NfElement>& basis) {
  const std::size_t d = basis.size();
  std::vector<std::vector<double>> m(d, std::vector<double>(d));
  for (std::size_t j = 0; j < d; ++j) {
    auto ch = basis[j].channels();
    for (std::size_t k = 0; k < d; ++k) m[k][j] = ch[k].to_double();
  }
  return m;
}

std::vector<std::vector<double>> invert(std::vector<std::vector<double>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[p][c])) p = r;
    if (m[p][c] == 0.0) fail(ErrorCode::Internal, "singular channel matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    double s = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= s;
      inv[c][k] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0.0) continue;
      double f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

// Calls fn on every integer combination of basis whose channels could lie
// within the given radii (a superset; fn filters exactly).
template <class Fn>
void scan_box(const std::vector<NfElement>& basis, const std::vector<double>& radii, long budget, Fn fn) {
  auto inv = invert(channel_matrix(basis));
  const std::size_t d = basis.size();
  std::vector<long> bound(d);
  double total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    double b = 0;
    for (std::size_t k = 0; k < d; ++k) b += std::fabs(inv[j][k]) * radii[k];
    bound[j] = static_cast<long>(std::floor(b * (1 + 1e-9) + 1e-9));
    total *= 2.0 * bound[j] + 1;
  }
  if (total > static_cast<double>(budget)) fail(ErrorCode::BudgetExhausted, "generator search box too large");
  std::vector<long> t(d);
  for (std::size_t j = 0; j < d; ++j) t[j] = -bound[j];
  while (true) {
    NfElement x = basis[0] * Rat(t[0]);
    for (std::size_t j = 1; j < d; ++j) x = x + basis[j] * Rat(t[j]);
    if (fn(x)) return;
    std::size_t j = 0;
    while (j < d && t[j] == bound[j]) t[j] = -bound[j], ++j;
    if (j == d) return;
    ++t[j];
  }
}

}  // namespace

// ------------------------------------------------------------ NumberField

FieldPtr NumberField::create(const Poly& minpoly, const std::vector<RatVec>& basis, const std::string& name) {
  Poly f = poly_trim(minpoly);
  const int d = poly_degree(f);
  if (d < 1) fail(ErrorCode::InvalidArgument, "minimal polynomial must have degree >= 1");
  if (f.back() != 1) fail(ErrorCode::InvalidArgument, "minimal polynomial must be monic");
  if (static_cast<int>(basis.size()) != d) fail(ErrorCode::InvalidArgument, "integral basis must have d rows");
  for (const auto& r : basis)
    if (static_cast<int>(r.size()) != d) fail(ErrorCode::InvalidArgument, "integral basis rows must have length d");

  auto K = std::make_shared<NumberField>();
  K->minpoly_ = f;
  K->d_ = d;
  K->name_ = name;

  K->powers_.assign(std::max(2 * d - 1, 1), RatVec(d, Rat(0)));
  K->powers_[0][0] = 1;
  for (int k = 1; k < 2 * d - 1; ++k) {
    RatVec prev = K->powers_[k - 1];
    RatVec cur(d, Rat(0));
    for (int i = 0; i + 1 < d; ++i) cur[i + 1] = prev[i];
    Rat top = prev[d - 1];
    for (int i = 0; i < d; ++i) cur[i] -= top * Rat(f[i]);
    K->powers_[k] = cur;
  }

  if (poly_degree(poly_gcd(f, poly_derivative(f))) > 0) fail(ErrorCode::InvalidArgument, "minimal polynomial is reducible");
  auto roots = isolate_real_roots(f);
  K->r1_ = static_cast<int>(roots.size());
  K->r2_ = (d - K->r1_) / 2;
  if (d >= 2) {
    for (const auto& r : roots)
      if (r.is_rational()) fail(ErrorCode::InvalidArgument, "minimal polynomial is reducible");
  }
  if (d >= 3) {
    if (K->r2_ > 0) fail(ErrorCode::Unsupported, "only totally real fields are supported in degree >= 3");
    if (has_factor_from_roots(f, roots)) fail(ErrorCode::InvalidArgument, "minimal polynomial is reducible");
  }
  // channel order: descending real roots
  std::reverse(roots.begin(), roots.end());
  K->roots_ = roots;

  if (d == 2) {
    K->p_ = f[1];
    K->q_ = f[0];
    K->delta_ = K->p_ * K->p_ - 4 * K->q_;
    K->m_ = squarefree_part(K->delta_);
    Int f2 = K->delta_ / K->m_;
    is_perfect_square(f2, &K->msq_);
  } else {
    K->m_ = 1;
  }

  RatMat B(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) B(i, j) = basis[i][j];
  auto Binv = inverse(B);
  if (!Binv) fail(ErrorCode::InvalidArgument, "integral basis rows are linearly dependent");
  K->basis_ = B;
  K->basis_inv_ = *Binv;

  FieldPtr Kc = K;
  NfElement one = NfElement::from_rat(Kc, Rat(1));
  if (!one.is_integral()) fail(ErrorCode::InvalidArgument, "basis not a ring: 1 is not in its span");
  std::vector<NfElement> w;
  for (int i = 0; i < d; ++i) w.emplace_back(Kc, basis[i]);
  RatMat T(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      NfElement pr = w[i] * w[j];
      if (!pr.is_integral()) fail(ErrorCode::InvalidArgument, "basis not a ring: products leave the span");
      T(i, j) = T(j, i) = pr.trace();
    }
  Rat disc = det(T);
  if (disc.get_den() != 1) fail(ErrorCode::Internal, "non-integral discriminant");
  K->disc_ = disc.get_num();
  return K;
}

FieldPtr NumberField::rationals() {
  return create(Poly{Int(-1), Int(1)}, {RatVec{Rat(1)}}, "Q");
}

FieldPtr NumberField::quadratic(long m) {
  if (m == 0 || m == 1 || Int(squarefree_part(Int(m))) != m)
    fail(ErrorCode::InvalidArgument, "quadratic field needs a squarefree m != 0, 1");
  Poly f{Int(-m), Int(0), Int(1)};
  long r = ((m % 4) + 4) % 4;
  std::vector<RatVec> basis{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  if (r == 1) basis[1] = {Rat(1, 2), Rat(1, 2)};
  return create(f, basis, "Q(sqrt " + std::to_string(m) + ")");
}

std::string NumberField::describe() const {
  std::ostringstream os;
  os << (name_.empty() ? "Q[x]/(" + poly_str(minpoly_) + ")" : name_) << " d=" << d_ << " (r1,r2)=(" << r1_ << ","
     << r2_ << ") D=" << to_string(disc_);
  return os.str();
}

// ------------------------------------------------------------ NfElement

NfElement::NfElement(FieldPtr K, RatVec power_coeffs) : K_(std::move(K)), c_(std::move(power_coeffs)) {
  if (!K_) fail(ErrorCode::InvalidArgument, "element without a field");
  if (static_cast<int>(c_.size()) != K_->degree())
    fail(ErrorCode::InvalidArgument, "element needs exactly d coefficients");
}

NfElement NfElement::from_rat(FieldPtr K, const Rat& q) {
  RatVec c(K->degree(), Rat(0));
  c[0] = q;
  return NfElement(std::move(K), c);
}

NfElement NfElement::theta(FieldPtr K) {
  if (K->degree() == 1) return from_rat(K, -Rat(K->minpoly()[0]));
  RatVec c(K->degree(), Rat(0));
  c[1] = 1;
  return NfElement(std::move(K), c);
}

NfElement NfElement::from_integral(FieldPtr K, const RatVec& coords) {
  const int d = K->degree();
  if (static_cast<int>(coords.size()) != d) fail(ErrorCode::InvalidArgument, "need d integral-basis coordinates");
  RatVec c(d, Rat(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) c[j] += coords[i] * K->basis()(i, j);
  return NfElement(std::move(K), c);
}

bool NfElement::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat& q) { return q == 0; });
}

bool NfElement::is_rational() const {
  return std::all_of(c_.begin() + 1, c_.end(), [](const Rat& q) { return q == 0; });
}

NfElement NfElement::operator+(const NfElement& o) const {
  RatVec c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return NfElement(K_, c);
}

NfElement NfElement::operator-(const NfElement& o) const {
  RatVec c = c_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
  return NfElement(K_, c);
}

NfElement NfElement::operator-() const {
  RatVec c = c_;
  for (auto& q : c) q = -q;
  return NfElement(K_, c);
}

NfElement NfElement::operator*(const Rat& q) const {
  RatVec c = c_;
  for (auto& x : c) x *= q;
  return NfElement(K_, c);
}

NfElement NfElement::operator*(const NfElement& o) const {
  if (K_ != o.K_ && K_->minpoly() != o.K_->minpoly()) fail(ErrorCode::InvalidArgument, "elements of different fields");
  const std::size_t d = c_.size();
  std::vector<Rat> conv(2 * d - 1, Rat(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) conv[i + j] += c_[i] * o.c_[j];
  }
  return NfElement(K_, reduce_product(*K_, conv));
}

RatMat NfElement::mult_matrix() const {
  const int d = K_->degree();
  RatMat m(d, d);
  NfElement col = *this;
  NfElement th = theta(K_);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m(i, j) = col.c_[i];
    if (j + 1 < d) col = col * th;
  }
  return m;
}

RatMat NfElement::mult_matrix_integral() const {
  const int d = K_->degree();
  RatMat m(d, d);
  for (int j = 0; j < d; ++j) {
    NfElement w(K_, K_->basis().row(j));
    RatVec t = (*this * w).int_coords();
    for (int i = 0; i < d; ++i) m(i, j) = t[i];
  }
  return m;
}

NfElement NfElement::inv() const {
  if (is_zero()) fail(ErrorCode::Domain, "division by zero in K");
  RatVec e(K_->degree(), Rat(0));
  e[0] = 1;
  auto y = solve(mult_matrix(), e);
  if (!y) fail(ErrorCode::Internal, "singular multiplication matrix");
  return NfElement(K_, *y);
}

NfElement NfElement::operator/(const NfElement& o) const { return *this * o.inv(); }

NfElement NfElement::pow(long e) const {
  NfElement base = e < 0 ? inv() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  NfElement acc = from_rat(K_, Rat(1));
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

Rat NfElement::norm() const { return det(mult_matrix()); }

Rat NfElement::trace() const {
  RatMat m = mult_matrix();
  Rat t = 0;
  for (std::size_t i = 0; i < m.rows; ++i) t += m(i, i);
  return t;
}

RatVec NfElement::int_coords() const {
  const int d = K_->degree();
  RatVec t(d, Rat(0));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) t[j] += c_[i] * K_->basis_inverse()(i, j);
  return t;
}

bool NfElement::is_integral() const {
  for (const auto& q : int_coords())
    if (q.get_den() != 1) return false;
  return true;
}

Int NfElement::denominator() const { return lcm_den(int_coords()); }

NfElement NfElement::conjugate() const {
  if (!K_->is_quadratic()) fail(ErrorCode::Unsupported, "conjugation is implemented for quadratic fields");
  RatVec c{c_[0] - c_[1] * Rat(K_->p_), -c_[1]};
  return NfElement(K_, c);
}

CertReal NfElement::channel(int k) const {
  const NumberField& K = *K_;
  const int d = K.degree();
  if (k < 0 || k >= d) fail(ErrorCode::InvalidArgument, "channel index out of range");
  if (d == 1) return CertReal(c_[0]);
  if (d == 2) {
    Rat re = c_[0] - c_[1] * Rat(K.p_) / 2;
    Rat im = c_[1] * Rat(K.msq_) / 2;
    if (K.r1() == 2) return CertReal(QuadSurd(re, k == 0 ? im : -im, K.m_));
    if (k == 0) return CertReal(re);
    return CertReal(QuadSurd(Rat(0), im, -K.m_));
  }
  AlgReal root = K.roots_[k];
  RatVec c = c_;
  if (root.is_rational()) {
    Rat acc = 0;
    for (int i = d - 1; i >= 0; --i) acc = acc * root.lo() + c[i];
    return CertReal(acc);
  }
  return CertReal(Real([root, c](mpfr_prec_t p) {
    Ball r = root.to_ball(p);
    Ball acc = Ball::from_rat(c.back(), p);
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) acc = acc * r + c[i];
    return acc;
  }));
}

std::vector<CertReal> NfElement::channels() const {
  std::vector<CertReal> out;
  for (int k = 0; k < K_->degree(); ++k) out.push_back(channel(k));
  return out;
}

CertReal NfElement::place_abs_pow(int v) const {
  const NumberField& K = *K_;
  if (v < 0 || v >= K.places()) fail(ErrorCode::InvalidArgument, "place index out of range");
  if (v < K.r1()) return abs(channel(v));
  // complex places exist only for imaginary quadratic fields here
  return CertReal(abs_rat(norm()));
}

std::string NfElement::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << to_string(c_[i]);
  os << "]";
  return os.str();
}

// ------------------------------------------------------------ FracIdeal

FracIdeal FracIdeal::from_generators(const FieldPtr& K, const std::vector<NfElement>& gens) {
  const int d = K->degree();
  std::vector<RatVec> vs;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    for (int j = 0; j < d; ++j) vs.push_back((g * NfElement(K, K->basis().row(j))).int_coords());
  }
  if (vs.empty()) fail(ErrorCode::InvalidArgument, "ideal generators are all zero");
  FracIdeal I;
  I.K_ = K;
  I.lat_ = RatLattice::from_generators(vs, d);
  if (!I.lat_.full_rank()) fail(ErrorCode::InvalidArgument, "ideal basis is rank-deficient");
  return I;
}

FracIdeal FracIdeal::unit(const FieldPtr& K) { return from_generators(K, {NfElement::from_rat(K, Rat(1))}); }

FracIdeal FracIdeal::principal(const NfElement& a) { return from_generators(a.field(), {a}); }

std::vector<NfElement> FracIdeal::z_basis() const {
  std::vector<NfElement> out;
  for (const auto& v : lat_.basis()) out.push_back(NfElement::from_integral(K_, v));
  return out;
}

Rat FracIdeal::norm() const { return lat_.covolume(); }

bool FracIdeal::contains(const NfElement& a) const { return lat_.contains(a.int_coords()); }

bool FracIdeal::is_integral() const {
  for (const auto& v : lat_.basis())
    for (const auto& q : v)
      if (q.get_den() != 1) return false;
  return true;
}

FracIdeal FracIdeal::operator+(const FracIdeal& o) const {
  FracIdeal I;
  I.K_ = K_;
  I.lat_ = lat_ + o.lat_;
  return I;
}

FracIdeal FracIdeal::operator*(const FracIdeal& o) const {
  std::vector<NfElement> gens;
  auto a = z_basis(), b = o.z_basis();
  for (const auto& x : a)
    for (const auto& y : b) gens.push_back(x * y);
  return from_generators(K_, gens);
}

FracIdeal FracIdeal::intersect(const FracIdeal& o) const {
  FracIdeal I;
  I.K_ = K_;
  I.lat_ = lat_.intersect(o.lat_);
  return I;
}

FracIdeal FracIdeal::inverse() const {
  // x in I^-1 iff x*b in O_K for each Z-basis element b; rows of the
  // multiplication maps span a lattice whose dual is I^-1.
  const int d = K_->degree();
  std::vector<RatVec> rows;
  for (const auto& b : z_basis()) {
    RatMat m = b.mult_matrix_integral();
    for (int i = 0; i < d; ++i) rows.push_back(m.row(i));
  }
  FracIdeal I;
  I.K_ = K_;
  I.lat_ = RatLattice::from_generators(rows, d).dual();
  return I;
}

std::string FracIdeal::str() const {
  std::ostringstream os;
  os << "<";
  auto b = z_basis();
  for (std::size_t i = 0; i < b.size(); ++i) os << (i ? ", " : "") << b[i].str();
  os << ">";
  return os.str();
}

// ------------------------------------------------------------ units

NfElement fundamental_unit(const FieldPtr& K) {
  if (!K->is_quadratic() || K->r1() != 2) fail(ErrorCode::Unsupported, "fundamental unit needs a real quadratic field");
  const Int D = K->discriminant();
  // smallest solution of x^2 - D y^2 = +-1 via the continued fraction of sqrt D
  Int a0 = isqrt_floor(D);
  Int m = 0, dd = 1, a = a0;
  Int p0 = 1, p1 = a0, q0 = 0, q1 = 1;
  while (true) {
    Int n = p1 * p1 - D * q1 * q1;
    if (n == 1 || n == -1) break;
    m = dd * a - m;
    dd = (D - m * m) / dd;
    a = (a0 + m) / dd;
    Int p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1, p1 = p2, q0 = q1, q1 = q2;
  }
  // eps0 = p1 + q1 sqrt D lies in the order; its root of index 1, 2 or 3 may too.
  const Int msq = squarefree_part(D);
  Int f;
  is_perfect_square(D / msq, &f);
  NfElement th = NfElement::theta(K);
  Int kp = K->minpoly()[1];
  Int kdelta = kp * kp - 4 * K->minpoly()[0];
  Int kf;
  is_perfect_square(kdelta / msq, &kf);
  NfElement sqrt_m = (th * Rat(2) + NfElement::from_rat(K, Rat(kp))) * make_rat(1, kf);
  auto to_elem = [&](const Rat& x, const Rat& y) {  // x + y sqrt D
    return NfElement::from_rat(K, x) + sqrt_m * (y * Rat(f));
  };
  NfElement eps0 = to_elem(Rat(p1), Rat(q1));
  QuadSurd e0(Rat(p1), Rat(q1), D);
  for (int k : {3, 2}) {
    Ball e = e0.to_ball(256);
    Ball u = exp(log(e) / Rat(k));
    for (int s : {1, -1}) {
      Ball ub = Ball::from_int(s, 256) / u;
      Int x = floor_rat((u + ub).mid() + Rat(1, 2));
      Ball yb = (u - ub) / sqrt(Ball::from_rat(Rat(D), 256));
      Int y = floor_rat(yb.mid() + Rat(1, 2));
      QuadSurd cand(make_rat(x, 2), make_rat(y, 2), D);
      QuadSurd pw = cand;
      for (int i = 1; i < k; ++i) pw = pw * cand;
      if (pw == e0) {
        NfElement c = to_elem(make_rat(x, 2), make_rat(y, 2));
        if (c.is_integral()) return c;
      }
    }
  }
  return eps0;
}

NfElement fundamental_unit_real_quadratic(long m) {
  if (m <= 1) fail(ErrorCode::InvalidArgument, "real quadratic field needs m > 1");
  return fundamental_unit(NumberField::quadratic(m));
}

std::vector<NfElement> roots_of_unity(const FieldPtr& K) {
  std::vector<NfElement> out{NfElement::from_rat(K, Rat(1)), NfElement::from_rat(K, Rat(-1))};
  if (K->r1() > 0) return out;
  out.clear();
  std::vector<NfElement> basis;
  for (int j = 0; j < K->degree(); ++j) basis.emplace_back(K, K->basis().row(j));
  scan_box(basis, std::vector<double>(K->degree(), 1.0), 1000000, [&](const NfElement& x) {
    if (!x.is_zero() && x.norm() == 1) out.push_back(x);
    return false;
  });
  return out;
}

int roots_of_unity_count(const FieldPtr& K) { return static_cast<int>(roots_of_unity(K).size()); }

std::optional<NfElement> principal_generator(const FracIdeal& I) {
  const FieldPtr& K = I.field();
  const Rat n = I.norm();
  auto basis = I.z_basis();
  if (K->degree() == 1) return basis[0];
  if (!K->is_quadratic()) fail(ErrorCode::Unsupported, "principal generator search needs d <= 2");
  double radius;
  if (K->r1() == 2) {
    double eps = fundamental_unit(K).channel(0).to_double();
    radius = std::sqrt(n.get_d() * eps);
  } else {
    radius = std::sqrt(n.get_d());
  }
  std::optional<NfElement> found;
  scan_box(basis, {radius, radius}, 20000000, [&](const NfElement& x) {
    if (x.is_zero() || abs_rat(x.norm()) != n) return false;
    if (FracIdeal::principal(x) == I) {
      found = x;
      return true;
    }
    return false;
  });
  return found;
}

}  // namespace hc

namespace hc {

bool class_number_one(const FieldPtr& K) {
  if (K->degree() == 1) return true;
  if (!K->is_quadratic()) fail(ErrorCode::Unsupported, "class number test needs d <= 2");
  // every class meets an integral ideal of norm below the Minkowski bound
  double mk = 0.5 * std::sqrt(std::abs(K->discriminant().get_d()));
  if (K->r2() > 0) mk *= 4.0 / M_PI;
  NfElement w = NfElement::from_integral(K, {Rat(0), Rat(1)});
  Int tr = w.trace().get_num(), nm = w.norm().get_num();
  for (long p = 2; p <= static_cast<long>(mk); ++p) {
    bool prime = true;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    for (long r = 0; r < p; ++r) {
      Int v = Int(r * r) - tr * r + nm;
      if (v % p != 0) continue;
      FracIdeal P = FracIdeal::from_generators(K, {NfElement::from_rat(K, Rat(p)), w - NfElement::from_rat(K, Rat(r))});
      if (!principal_generator(P)) return false;
    }
  }
  return true;
}

}  // namespace hc
