#include "heightcount/quaternion.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace hc {

namespace {

NfElement kzero(const FieldPtr& K) { return NfElement::from_rat(K, Rat(0)); }
NfElement kone(const FieldPtr& K) { return NfElement::from_rat(K, Rat(1)); }

CertReal cpow(const CertReal& x, int e) {
  CertReal p(1);
  for (int i = 0; i < e; ++i) p = p * x;
  return p;
}

double to_d(const CertReal& x) { return x.approx.eval(64).to_double(); }

const AlgebraPtr& algebra_of(const DVec& x) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "empty vector over D");
  return x[0].algebra();
}

const AlgebraPtr& algebra_of(const DMat& m) {
  if (m.empty() || m[0].empty()) fail(ErrorCode::InvalidArgument, "empty matrix over D");
  return m[0][0].algebra();
}

QuatElement qzero(const AlgebraPtr& A) { return QuatElement::scalar(A, Rat(0)); }

RatVec qcoords(const DVec& x) {
  RatVec out;
  for (const auto& e : x) {
    RatVec c = quat_qcoords(e);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

QuatElement quat_from_q(const AlgebraPtr& A, const RatVec& q, std::size_t off) {
  const std::size_t d = static_cast<std::size_t>(A->degree());
  std::array<NfElement, 4> c;
  for (int m = 0; m < 4; ++m) {
    RatVec p(q.begin() + off + m * d, q.begin() + off + (m + 1) * d);
    c[m] = NfElement(A->field(), p);
  }
  return QuatElement(A, c);
}

DVec dvec_from_q(const AlgebraPtr& A, const RatVec& q, std::size_t N) {
  DVec x;
  const std::size_t d = static_cast<std::size_t>(A->degree());
  for (std::size_t l = 0; l < N; ++l) x.push_back(quat_from_q(A, q, l * 4 * d));
  return x;
}

// theta^k times 1, i, j, k: a Q-basis of D
std::vector<QuatElement> q_basis(const AlgebraPtr& A) {
  std::vector<QuatElement> out;
  const FieldPtr& K = A->field();
  for (int m = 0; m < 4; ++m)
    for (int k = 0; k < K->degree(); ++k) {
      RatVec p(K->degree(), Rat(0));
      p[k] = 1;
      out.push_back(QuatElement::unit_vector(A, m) * NfElement(K, p));
    }
  return out;
}

RatMat rows_to_mat(const std::vector<RatVec>& rows, std::size_t cols) {
  RatMat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

// Q-span of the right D-span of the given vectors
std::vector<RatVec> right_span_q(const std::vector<DVec>& vs) {
  std::vector<RatVec> out;
  for (const auto& v : vs) {
    for (const auto& t : q_basis(algebra_of(v))) {
      DVec w;
      for (const auto& e : v) w.push_back(e * t);
      out.push_back(qcoords(w));
    }
  }
  return out;
}

std::vector<RatVec> left_span_q(const std::vector<DVec>& vs) {
  std::vector<RatVec> out;
  for (const auto& v : vs) {
    for (const auto& t : q_basis(algebra_of(v))) {
      DVec w;
      for (const auto& e : v) w.push_back(t * e);
      out.push_back(qcoords(w));
    }
  }
  return out;
}

std::size_t q_rank(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  return hc::rank(rows_to_mat(rows, rows[0].size()));
}

// Greedy D-basis from Q-vectors of a D-space (right or left action).
std::vector<DVec> pick_d_basis(const AlgebraPtr& A, const std::vector<RatVec>& qs, std::size_t N, bool right) {
  std::vector<DVec> chosen;
  std::size_t r = 0;
  for (const auto& q : qs) {
    DVec v = dvec_from_q(A, q, N);
    auto trial = chosen;
    trial.push_back(v);
    std::size_t nr = q_rank(right ? right_span_q(trial) : left_span_q(trial));
    if (nr > r) {
      chosen = trial;
      r = nr;
    }
  }
  return chosen;
}

Rat index_of(const std::vector<RatVec>& gens, std::size_t dim) {
  RatLattice lat = RatLattice::from_generators(gens, dim);
  if (!lat.full_rank()) fail(ErrorCode::InvalidArgument, "image does not have full rank");
  return lat.covolume();
}

RatVec order_coords(const QuatOrder& O, const DVec& v) {
  RatVec out;
  for (const auto& e : v) {
    RatVec c = O.coords(e);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- algebra

AlgebraPtr QuatAlgebra::create(FieldPtr K, const NfElement& alpha, const NfElement& beta) {
  if (!K->totally_real()) fail(ErrorCode::InvalidArgument, "quaternion base field must be totally real");
  if (!alpha.is_integral() || !beta.is_integral()) fail(ErrorCode::InvalidArgument, "alpha and beta must be integral");
  auto A = std::make_shared<QuatAlgebra>();
  A->K_ = K;
  A->alpha_ = alpha;
  A->beta_ = beta;
  NfElement ab = alpha * beta;
  for (int n = 0; n < K->degree(); ++n) {
    CertReal a = alpha.channel(n), b = beta.channel(n);
    if (compare(a, CertReal(0)) != Cmp::Less || compare(b, CertReal(0)) != Cmp::Less)
      fail(ErrorCode::InvalidArgument, "alpha and beta must be totally negative");
    CertReal aa = abs(a), bb = abs(b), p = abs(ab.channel(n));
    A->s_sq_.push_back(max(max(CertReal(1), aa), max(bb, p)));
    CertReal lo = CertReal(1);
    for (const auto& c : {aa, bb, p})
      if (compare(c, lo) == Cmp::Less) lo = c;
    A->t_sq_.push_back(lo);
  }
  return A;
}

CertReal QuatAlgebra::s_prod_sq() const {
  CertReal p(1);
  for (const auto& s : s_sq_) p = p * s;
  return p;
}

CertReal QuatAlgebra::t_prod_sq() const {
  CertReal p(1);
  for (const auto& t : t_sq_) p = p * t;
  return p;
}

std::string QuatAlgebra::describe() const {
  std::ostringstream os;
  os << "(" << alpha_.str() << ", " << beta_.str() << " / " << K_->describe() << ")";
  return os.str();
}

// ---------------------------------------------------------------- elements

QuatElement::QuatElement(AlgebraPtr A, std::array<NfElement, 4> c) : A_(std::move(A)), c_(std::move(c)) {}

QuatElement QuatElement::scalar(AlgebraPtr A, const NfElement& a) {
  const FieldPtr& K = A->field();
  return QuatElement(A, {a, kzero(K), kzero(K), kzero(K)});
}

QuatElement QuatElement::scalar(AlgebraPtr A, const Rat& a) {
  NfElement e = NfElement::from_rat(A->field(), a);
  return scalar(std::move(A), e);
}

QuatElement QuatElement::unit_vector(AlgebraPtr A, int m) {
  const FieldPtr& K = A->field();
  std::array<NfElement, 4> c{kzero(K), kzero(K), kzero(K), kzero(K)};
  c[m] = kone(K);
  return QuatElement(A, c);
}

bool QuatElement::is_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

QuatElement QuatElement::operator+(const QuatElement& o) const {
  return QuatElement(A_, {c_[0] + o.c_[0], c_[1] + o.c_[1], c_[2] + o.c_[2], c_[3] + o.c_[3]});
}

QuatElement QuatElement::operator-(const QuatElement& o) const {
  return QuatElement(A_, {c_[0] - o.c_[0], c_[1] - o.c_[1], c_[2] - o.c_[2], c_[3] - o.c_[3]});
}

QuatElement QuatElement::operator-() const { return QuatElement(A_, {-c_[0], -c_[1], -c_[2], -c_[3]}); }

QuatElement QuatElement::operator*(const QuatElement& o) const {
  const NfElement& al = A_->alpha();
  const NfElement& be = A_->beta();
  const auto& a = c_;
  const auto& b = o.c_;
  NfElement ab = al * be;
  return QuatElement(A_, {a[0] * b[0] + al * a[1] * b[1] + be * a[2] * b[2] - ab * a[3] * b[3],
                          a[0] * b[1] + a[1] * b[0] - be * a[2] * b[3] + be * a[3] * b[2],
                          a[0] * b[2] + a[2] * b[0] + al * a[1] * b[3] - al * a[3] * b[1],
                          a[0] * b[3] + a[3] * b[0] + a[1] * b[2] - a[2] * b[1]});
}

QuatElement QuatElement::operator*(const NfElement& s) const {
  return QuatElement(A_, {c_[0] * s, c_[1] * s, c_[2] * s, c_[3] * s});
}

QuatElement QuatElement::conj() const { return QuatElement(A_, {c_[0], -c_[1], -c_[2], -c_[3]}); }

NfElement QuatElement::trace() const { return c_[0] * Rat(2); }

NfElement QuatElement::nrm() const {
  const NfElement& al = A_->alpha();
  const NfElement& be = A_->beta();
  return c_[0] * c_[0] - al * c_[1] * c_[1] - be * c_[2] * c_[2] + al * be * c_[3] * c_[3];
}

QuatElement QuatElement::inv() const {
  if (is_zero()) fail(ErrorCode::Domain, "zero has no inverse");
  return conj() * nrm().inv();
}

std::string QuatElement::str() const {
  static const char* names[4] = {"", "i", "j", "k"};
  std::ostringstream os;
  bool first = true;
  for (int m = 0; m < 4; ++m) {
    if (c_[m].is_zero()) continue;
    if (!first) os << " + ";
    os << "(" << c_[m].str() << ")" << names[m];
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

RatVec quat_qcoords(const QuatElement& x) {
  RatVec out;
  for (int m = 0; m < 4; ++m) {
    const RatVec& c = x[m].coeffs();
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

CertReal local_norm_sq(const QuatElement& x, int n) { return x.nrm().channel(n); }

Real arch_abs(const QuatElement& x, int n) { return sqrt(local_norm_sq(x, n).approx); }

NfVec bracket(const DVec& x) {
  NfVec out;
  for (const auto& e : x)
    for (int m = 0; m < 4; ++m) out.push_back(e[m]);
  return out;
}

DVec bracket_inv(const AlgebraPtr& A, const NfVec& y) {
  if (y.size() % 4 != 0) fail(ErrorCode::InvalidArgument, "bracket inverse needs a multiple of 4 coordinates");
  DVec x;
  for (std::size_t l = 0; l < y.size(); l += 4) x.push_back(QuatElement(A, {y[l], y[l + 1], y[l + 2], y[l + 3]}));
  return x;
}

// ---------------------------------------------------------------- E = K(sqrt alpha)

EElement EElement::operator+(const EElement& o) const { return EElement(a_ + o.a_, b_ + o.b_, alpha_); }
EElement EElement::operator-(const EElement& o) const { return EElement(a_ - o.a_, b_ - o.b_, alpha_); }
EElement EElement::operator*(const EElement& o) const {
  return EElement(a_ * o.a_ + alpha_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_, alpha_);
}
EElement EElement::operator/(const EElement& o) const {
  NfElement n = o.norm();
  if (n.is_zero()) fail(ErrorCode::Domain, "division by zero in E");
  EElement oc(o.a_, -o.b_, alpha_);
  EElement p = *this * oc;
  NfElement ni = n.inv();
  return EElement(p.a_ * ni, p.b_ * ni, alpha_);
}
NfElement EElement::norm() const { return a_ * a_ - alpha_ * b_ * b_; }

EMat rho(const QuatElement& x) {
  const NfElement& al = x.algebra()->alpha();
  const NfElement& be = x.algebra()->beta();
  return {{EElement(x[0], x[1], al), EElement(x[2], x[3], al)},
          {EElement(be * x[2], -(be * x[3]), al), EElement(x[0], -x[1], al)}};
}

EMat rho(const DMat& C) {
  const std::size_t r = C.size(), c = C[0].size();
  EMat out(2 * r, std::vector<EElement>(2 * c));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < c; ++b) {
      EMat blk = rho(C[a][b]);
      for (int u = 0; u < 2; ++u)
        for (int v = 0; v < 2; ++v) out[2 * a + u][2 * b + v] = blk[u][v];
    }
  return out;
}

EElement e_det(const EMat& m) {
  if (m.empty()) fail(ErrorCode::InvalidArgument, "empty matrix over E");
  const EElement& s = m[0][0];
  const FieldPtr& K = s.re().field();
  EElement zero(kzero(K), kzero(K), s.alpha()), one(kone(K), kzero(K), s.alpha());
  return det_field(m, zero, one);
}

DMat conj_transpose(const DMat& C) {
  DMat out(C[0].size(), DVec(C.size()));
  for (std::size_t a = 0; a < C.size(); ++a)
    for (std::size_t b = 0; b < C[0].size(); ++b) out[b][a] = C[a][b].conj();
  return out;
}

DMat mat_mul(const DMat& a, const DMat& b) {
  const AlgebraPtr& A = algebra_of(a);
  DMat out(a.size(), DVec(b[0].size(), qzero(A)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] = out[i][j] + a[i][k] * b[k][j];
  return out;
}

// ---------------------------------------------------------------- orders

QuatOrder QuatOrder::standard(const AlgebraPtr& A) {
  const FieldPtr& K = A->field();
  std::vector<QuatElement> basis;
  for (int m = 0; m < 4; ++m)
    for (int j = 0; j < K->degree(); ++j) {
      RatVec e(K->degree(), Rat(0));
      e[j] = 1;
      basis.push_back(QuatElement::unit_vector(A, m) * NfElement::from_integral(K, e));
    }
  QuatOrder O = from_z_basis(A, basis);
  O.standard_ = true;
  return O;
}

QuatOrder QuatOrder::from_z_basis(const AlgebraPtr& A, std::vector<QuatElement> basis) {
  const std::size_t n = 4 * static_cast<std::size_t>(A->degree());
  if (basis.size() != n) fail(ErrorCode::InvalidArgument, "an order needs 4d basis elements");
  std::vector<RatVec> rows;
  for (const auto& b : basis) rows.push_back(quat_qcoords(b));
  auto inv = inverse(rows_to_mat(rows, n));
  if (!inv) fail(ErrorCode::InvalidArgument, "order basis is not a Q-basis of D");
  QuatOrder O;
  O.A_ = A;
  O.basis_ = std::move(basis);
  O.inv_ = inv->transpose();
  if (!O.contains(QuatElement::scalar(A, Rat(1)))) fail(ErrorCode::InvalidArgument, "order does not contain 1");
  for (const auto& a : O.basis_)
    for (const auto& b : O.basis_)
      if (!O.contains(a * b)) fail(ErrorCode::InvalidArgument, "basis is not closed under multiplication");
  return O;
}

RatVec QuatOrder::coords(const QuatElement& x) const { return inv_ * quat_qcoords(x); }

bool QuatOrder::contains(const QuatElement& x) const {
  for (const auto& c : coords(x))
    if (c.get_den() != 1) return false;
  return true;
}

Int QuatOrder::clearing_denominator(const DVec& x) const {
  Int a = 1;
  for (const auto& e : x)
    for (const auto& c : coords(e)) a = lcm(a, Int(c.get_den()));
  return a;
}

Rat QuatOrder::disc_norm() const {
  const std::size_t n = basis_.size();
  RatMat G(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G(a, b) = (basis_[a] * basis_[b]).trace().trace();
  Rat D = abs_rat(Rat(A_->field()->discriminant()));
  return abs_rat(det(G)) / pow_rat(D, 4);
}

// ---------------------------------------------------------------- heights

HeightValue height_Hinf(const DVec& x) {
  const AlgebraPtr& A = algebra_of(x);
  bool nz = false;
  for (const auto& e : x) nz = nz || !e.is_zero();
  if (!nz) fail(ErrorCode::InvalidArgument, "zero vector has no projective height");
  HeightValue h;
  for (int n = 0; n < A->degree(); ++n) {
    CertReal m(0);
    for (const auto& e : x) m = max(m, local_norm_sq(e, n));
    h.arch = h.arch * m;
  }
  h.root = 2 * A->degree();
  return h;
}

HeightValue height_hinf(const DVec& x) {
  if (x.empty()) return HeightValue{};
  DVec y{QuatElement::scalar(algebra_of(x), Rat(1))};
  y.insert(y.end(), x.begin(), x.end());
  return height_Hinf(y);
}

HeightValue height_hD(const DVec& x) {
  HeightValue h = height_hinf(x);
  if (x.empty()) return h;
  NfVec y{kone(algebra_of(x)->field())};
  for (const auto& c : bracket(x)) y.push_back(c);
  Rat n = content_ideal(y).norm();
  h.finite = 1 / (n * n);
  return h;
}

Rat hfin_index(const DVec& x, const QuatOrder& O) {
  std::vector<RatVec> gens;
  bool nz = false;
  for (const auto& e : x) {
    if (!O.contains(e)) fail(ErrorCode::InvalidArgument, "coordinate is not in the order");
    if (e.is_zero()) continue;
    nz = true;
    for (const auto& w : O.z_basis()) gens.push_back(O.coords(w * e));
  }
  if (!nz) fail(ErrorCode::InvalidArgument, "zero vector has no finite height");
  return index_of(gens, O.z_basis().size());
}

HeightValue height_HO(const DVec& x, const QuatOrder& O) {
  Int a = O.clearing_denominator(x);
  DVec y;
  NfElement s = NfElement::from_rat(O.algebra()->field(), Rat(a));
  for (const auto& e : x) y.push_back(e * s);
  HeightValue hi = height_Hinf(y);
  HeightValue h;
  h.arch = hi.arch * hi.arch;
  h.finite = 1 / hfin_index(y, O);
  h.root = 4 * O.algebra()->degree();
  return h;
}

// ---------------------------------------------------------------- subspaces

std::size_t left_rank(const DMat& C) {
  std::vector<DVec> rows(C.begin(), C.end());
  return q_rank(left_span_q(rows)) / (4 * static_cast<std::size_t>(algebra_of(C)->degree()));
}

DMat right_kernel(const DMat& C, std::size_t N) {
  const AlgebraPtr& A = algebra_of(C);
  const std::size_t qd = 4 * static_cast<std::size_t>(A->degree());
  // columns: images of the Q-basis of D^N
  std::vector<RatVec> cols;
  for (std::size_t l = 0; l < N; ++l)
    for (const auto& t : q_basis(A)) {
      DVec img;
      for (const auto& row : C) img.push_back(row[l] * t);
      cols.push_back(qcoords(img));
    }
  RatMat M(C.size() * qd, N * qd);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) M(i, j) = cols[j][i];
  RatMat ker = kernel(M);
  std::vector<RatVec> qs;
  for (std::size_t j = 0; j < ker.cols; ++j) qs.push_back(ker.column(j));
  auto basis = pick_d_basis(A, qs, N, true);
  DMat X(N, DVec(basis.size(), qzero(A)));
  for (std::size_t m = 0; m < basis.size(); ++m)
    for (std::size_t l = 0; l < N; ++l) X[l][m] = basis[m][l];
  return X;
}

DMat left_annihilator(const DMat& X) {
  const AlgebraPtr& A = algebra_of(X);
  const std::size_t N = X.size(), L = X[0].size();
  const std::size_t qd = 4 * static_cast<std::size_t>(A->degree());
  std::vector<RatVec> cols;
  for (std::size_t l = 0; l < N; ++l)
    for (const auto& t : q_basis(A)) {
      DVec img;
      for (std::size_t m = 0; m < L; ++m) img.push_back(t * X[l][m]);
      cols.push_back(qcoords(img));
    }
  RatMat M(L * qd, N * qd);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) M(i, j) = cols[j][i];
  RatMat ker = kernel(M);
  std::vector<RatVec> qs;
  for (std::size_t j = 0; j < ker.cols; ++j) qs.push_back(ker.column(j));
  auto rows = pick_d_basis(A, qs, N, false);
  return DMat(rows.begin(), rows.end());
}

DSubspace DSubspace::from_basis(DMat X) {
  DSubspace Z;
  Z.A_ = algebra_of(X);
  Z.N_ = X.size();
  Z.L_ = X[0].size();
  std::vector<DVec> cols(Z.L_);
  for (std::size_t m = 0; m < Z.L_; ++m)
    for (std::size_t l = 0; l < Z.N_; ++l) cols[m].push_back(X[l][m]);
  if (q_rank(right_span_q(cols)) != 4 * Z.L_ * Z.A_->degree())
    fail(ErrorCode::InvalidArgument, "basis columns are not right independent");
  Z.X_ = std::move(X);
  return Z;
}

DSubspace DSubspace::from_constraints(DMat C, std::size_t N) {
  DSubspace Z;
  Z.A_ = algebra_of(C);
  Z.N_ = N;
  for (const auto& r : C)
    if (r.size() != N) fail(ErrorCode::InvalidArgument, "constraint row has the wrong length");
  if (left_rank(C) != C.size()) fail(ErrorCode::InvalidArgument, "constraint rows are not left independent");
  if (C.size() >= N) fail(ErrorCode::InvalidArgument, "constraints leave no subspace");
  Z.L_ = N - C.size();
  Z.C_ = std::move(C);
  return Z;
}

DMat DSubspace::basis() const {
  if (X_) return *X_;
  return right_kernel(*C_, N_);
}

std::optional<DMat> DSubspace::constraints() const {
  if (C_) return C_;
  if (L_ == N_) return std::nullopt;
  return left_annihilator(*X_);
}

DSubspace DSubspace::orthogonal() const {
  if (L_ == N_) fail(ErrorCode::InvalidArgument, "the whole space has no orthogonal complement");
  if (X_) return from_constraints(conj_transpose(*X_), N_);
  return from_basis(conj_transpose(*C_));
}

HeightValue hinf_C(const DMat& C) {
  const AlgebraPtr& A = algebra_of(C);
  EElement dt = e_det(rho(mat_mul(C, conj_transpose(C))));
  if (!dt.im().is_zero()) fail(ErrorCode::Internal, "det rho(C C^*) is not in K");
  HeightValue h;
  for (int n = 0; n < A->degree(); ++n) h.arch = h.arch * abs(dt.re().channel(n));
  h.root = 4 * A->degree();
  return h;
}

namespace {

void for_subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t j = k;
    while (j > 0 && idx[j - 1] == n - k + j - 1) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

HeightValue hinf_C_minors(const DMat& C) {
  const AlgebraPtr& A = algebra_of(C);
  const std::size_t r = C.size(), N = C[0].size();
  NfElement S = kzero(A->field());
  for_subsets(N, r, [&](const std::vector<std::size_t>& cols) {
    DMat C0(r);
    for (std::size_t a = 0; a < r; ++a)
      for (auto c : cols) C0[a].push_back(C[a][c]);
    S = S + e_det(rho(C0)).norm();
  });
  HeightValue h;
  for (int n = 0; n < A->degree(); ++n) h.arch = h.arch * S.channel(n);
  h.root = 2 * A->degree();
  return h;
}

HeightValue hinf_C_weighted(const DMat& C) {
  const AlgebraPtr& A = algebra_of(C);
  const std::size_t r = C.size(), N = C[0].size();
  EMat R = rho(C);
  NfElement mb = -A->beta();
  NfElement S = kzero(A->field());
  // rho(conj x) = S rho(x)^dagger S^{-1} with S = diag(1, -beta)
  for_subsets(2 * N, 2 * r, [&](const std::vector<std::size_t>& cols) {
    EMat sub(2 * r);
    NfElement w = kone(A->field());
    for (auto c : cols)
      if (c % 2 == 1) w = w * mb;
    for (std::size_t a = 0; a < 2 * r; ++a)
      for (auto c : cols) sub[a].push_back(R[a][c]);
    S = S + w * e_det(sub).norm();
  });
  S = S * mb.pow(-static_cast<long>(r));
  HeightValue h;
  for (int n = 0; n < A->degree(); ++n) h.arch = h.arch * abs(S.channel(n));
  h.root = 4 * A->degree();
  return h;
}

Rat hfin_index_C(const DMat& C, const QuatOrder& O) {
  std::vector<RatVec> gens;
  const std::size_t N = C[0].size();
  for (std::size_t l = 0; l < N; ++l)
    for (const auto& w : O.z_basis()) {
      DVec img;
      for (const auto& row : C) img.push_back(row[l] * w);
      gens.push_back(order_coords(O, img));
    }
  return index_of(gens, C.size() * O.z_basis().size());
}

HeightValue subspace_height_C(const DMat& C, const QuatOrder& O) {
  HeightValue h = hinf_C(C);
  h.finite = 1 / hfin_index_C(C, O);
  return h;
}

HeightValue subspace_height_X(const DMat& X, const QuatOrder& O) {
  const AlgebraPtr& A = algebra_of(X);
  EElement dt = e_det(rho(mat_mul(conj_transpose(X), X)));
  if (!dt.im().is_zero()) fail(ErrorCode::Internal, "det rho(X^* X) is not in K");
  HeightValue h;
  for (int n = 0; n < A->degree(); ++n) h.arch = h.arch * abs(dt.re().channel(n));
  h.root = 4 * A->degree();
  // the map y -> (sum_l conj(X_lm) y_l)_m into O^L; its kernel is Z^perp
  h.finite = 1 / hfin_index_C(conj_transpose(X), O);
  return h;
}

HeightValue subspace_height(const DSubspace& Z, const QuatOrder& O) {
  auto C = Z.constraints();
  if (C) return subspace_height_C(*C, O);
  return subspace_height_X(Z.basis(), O);
}

// ---------------------------------------------------------------- hermitian forms

HermitianForm::HermitianForm(DMat F) : F_(std::move(F)) {
  const std::size_t n = F_.size();
  for (const auto& r : F_)
    if (r.size() != n) fail(ErrorCode::InvalidArgument, "form matrix must be square");
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l)
      if (F_[m][l] != F_[l][m].conj()) fail(ErrorCode::InvalidArgument, "form matrix is not hermitian");
}

QuatElement HermitianForm::value(const DVec& x, const DVec& y) const {
  QuatElement s = qzero(algebra_of(F_));
  for (std::size_t m = 0; m < F_.size(); ++m)
    for (std::size_t l = 0; l < F_.size(); ++l) s = s + x[m].conj() * F_[m][l] * y[l];
  return s;
}

NfElement HermitianForm::value(const DVec& x) const {
  QuatElement v = value(x, x);
  if (!v[1].is_zero() || !v[2].is_zero() || !v[3].is_zero()) fail(ErrorCode::Internal, "F(x) is not in K");
  return v[0];
}

NfMat trace_block(const QuatElement& f) {
  const NfElement& a = f.algebra()->alpha();
  const NfElement& b = f.algebra()->beta();
  NfElement ab = a * b;
  Rat two(2);
  return {{f[0] * two, a * f[1] * two, b * f[2] * two, -(ab * f[3] * two)},
          {-(a * f[1] * two), -(a * f[0] * two), -(ab * f[3] * two), ab * f[2] * two},
          {-(b * f[2] * two), ab * f[3] * two, -(b * f[0] * two), -(ab * f[1] * two)},
          {ab * f[3] * two, -(ab * f[2] * two), ab * f[1] * two, ab * f[0] * two}};
}

NfMat trace_form(const HermitianForm& F) {
  const std::size_t n = F.size();
  const FieldPtr& K = algebra_of(F.matrix())->field();
  NfMat B(4 * n, NfVec(4 * n, kzero(K)));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t l = 0; l < n; ++l) {
      NfMat blk = trace_block(F.matrix()[m][l]);
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) B[4 * m + u][4 * l + v] = blk[u][v];
    }
  return B;
}

NfElement quad_value(const NfMat& B, const NfVec& z) {
  NfElement s = kzero(z[0].field());
  for (std::size_t a = 0; a < z.size(); ++a) {
    if (z[a].is_zero()) continue;
    for (std::size_t b = 0; b < z.size(); ++b)
      if (!z[b].is_zero() && !B[a][b].is_zero()) s = s + z[a] * B[a][b] * z[b];
  }
  return s;
}

HeightValue form_height_inf(const HermitianForm& F) {
  DVec flat;
  for (const auto& r : F.matrix()) flat.insert(flat.end(), r.begin(), r.end());
  return height_Hinf(flat);
}

// ---------------------------------------------------------------- constants

OrderConstants order_constants(const QuatOrder& O) {
  OrderConstants c;
  const AlgebraPtr& A = O.algebra();
  c.disc_norm = O.disc_norm();
  c.n4ab = abs_rat((A->alpha() * A->beta() * Rat(4)).norm());
  Real sd = sqrt(Real(c.disc_norm));
  Real q = sd / Real(c.n4ab);
  c.frak_M = max(q, Real(1) / q);
  return c;
}

OkModule bracket_module(const DSubspace& Z, const QuatOrder& O) {
  const AlgebraPtr& A = Z.algebra();
  const std::size_t N = Z.ambient(), L = Z.dim();
  const std::size_t qd = 4 * static_cast<std::size_t>(A->degree()), dim = N * qd;
  DMat X = Z.basis();
  std::vector<DVec> cols(L);
  for (std::size_t m = 0; m < L; ++m)
    for (std::size_t l = 0; l < N; ++l) cols[m].push_back(X[l][m]);
  RatMat V = rows_to_mat(right_span_q(cols), dim);
  RatMat W = kernel(V);  // y in Z iff y W = 0
  std::vector<RatVec> brows;  // Z-basis of O^N in Q-coordinates
  for (std::size_t l = 0; l < N; ++l)
    for (const auto& w : O.z_basis()) {
      DVec v(N, qzero(A));
      v[l] = w;
      brows.push_back(qcoords(v));
    }
  std::vector<RatVec> zb;
  if (W.cols == 0) {
    zb = brows;
  } else {
    RatMat BW = rows_to_mat(brows, dim) * W;
    // integer m with m BW = 0
    Int den = 1;
    for (const auto& q : BW.a) den = lcm(den, Int(q.get_den()));
    IntMat T(BW.cols, BW.rows);
    for (std::size_t i = 0; i < BW.rows; ++i)
      for (std::size_t j = 0; j < BW.cols; ++j) T(j, i) = Rat(BW(i, j) * Rat(den)).get_num();
    IntMat ker = integer_kernel(T);
    for (std::size_t j = 0; j < ker.cols; ++j) {
      RatVec v(dim, Rat(0));
      for (std::size_t i = 0; i < ker.rows; ++i)
        if (ker(i, j) != 0)
          for (std::size_t c = 0; c < dim; ++c) v[c] += Rat(ker(i, j)) * brows[i][c];
      zb.push_back(v);
    }
  }
  std::vector<NfVec> out;
  for (const auto& q : zb) out.push_back(bracket(dvec_from_q(A, q, N)));
  return OkModule::from_z_basis(A->field(), 4 * N, 4 * L, out);
}

SubspaceConstants subspace_constants(const DSubspace& Z, const QuatOrder& O) {
  OkModule M = bracket_module(Z, O);
  return SubspaceConstants{module_c(M), module_z(M)};
}

// ---------------------------------------------------------------- counting

namespace {

// One max-term of the channel measure: sum of weight * component^2.
struct Block {
  std::vector<std::size_t> comps;
  std::vector<NfElement> wt;
};

struct ProjSpec {
  FieldPtr K;
  std::size_t ncomp = 0;       // w_0 plus the affine coordinates
  std::vector<Block> blocks;   // cover every component once
  CertReal bound;              // prod_v m_v^2 <= bound
  std::uint64_t budget = 0;
};

// Elements of O_K with |sigma_v c| <= b_v, with cached channel doubles.
struct KElt {
  NfElement e;
  std::vector<double> ch;
};

std::vector<KElt> box_elements(const FieldPtr& K, const std::vector<Rat>& b) {
  const int d = K->degree();
  CertMat B(d, std::vector<CertReal>(d));
  std::vector<NfElement> basis;
  for (int j = 0; j < d; ++j) {
    RatVec e(d, Rat(0));
    e[j] = 1;
    basis.push_back(NfElement::from_integral(K, e));
    auto ch = basis.back().channels();
    for (int k = 0; k < d; ++k) B[k][j] = ch[k];
  }
  std::vector<KElt> out;
  enumerate_box(RealLattice::from_cert(B), b, [&](const IntVec& m) {
    NfElement x = kzero(K);
    for (int j = 0; j < d; ++j)
      if (m[j] != 0) x = x + basis[j] * Rat(m[j]);
    KElt k{x, {}};
    for (int v = 0; v < d; ++v) k.ch.push_back(to_d(x.channel(v)));
    out.push_back(std::move(k));
    return true;
  });
  return out;
}

Rat upper_of(const Real& r) { return r.eval(128).upper() * Rat(1000001, 1000000); }

// Primitive integral representatives (w_0, w) of points y = w / w_0 with
// prod_v m_v^2 <= bound, one per orbit of the unit group.
void walk_projective(const ProjSpec& S, DCount& out, bool collect,
                     const std::function<bool(const std::vector<NfElement>&)>& extra = nullptr) {
  const FieldPtr& K = S.K;
  const int d = K->degree();
  if (d > 2 || K->r2() > 0) fail(ErrorCode::Unsupported, "point counts need K = Q or a real quadratic field");
  if (!class_number_one(K)) fail(ErrorCode::Unsupported, "point counts need class number one");
  // per-channel bounds on m_v
  std::vector<Real> mb(d);
  std::optional<NfElement> eps;
  CertReal eps4(1);
  if (d == 1) {
    mb[0] = sqrt(S.bound.approx);
  } else {
    eps = fundamental_unit(K);
    CertReal e1 = eps->channel(0);
    eps4 = cpow(e1, 4);
    Real r4 = sqrt(sqrt(S.bound.approx));
    mb[1] = r4;
    mb[0] = r4 * e1.approx * e1.approx;
  }
  // component -> (block, weight); per-component element lists
  std::vector<std::size_t> blk_of(S.ncomp);
  std::vector<NfElement> wt_of(S.ncomp);
  for (std::size_t b = 0; b < S.blocks.size(); ++b)
    for (std::size_t t = 0; t < S.blocks[b].comps.size(); ++t) {
      blk_of[S.blocks[b].comps[t]] = b;
      wt_of[S.blocks[b].comps[t]] = S.blocks[b].wt[t];
    }
  std::vector<std::vector<KElt>> lists(S.ncomp);
  std::vector<std::vector<double>> wtd(S.ncomp, std::vector<double>(d));
  for (std::size_t c = 0; c < S.ncomp; ++c) {
    std::vector<Rat> b(d);
    for (int v = 0; v < d; ++v) {
      CertReal w = wt_of[c].channel(v);
      wtd[c][v] = to_d(w);
      b[v] = upper_of(mb[v] / sqrt(w.approx));
    }
    bool reuse = false;
    for (std::size_t p = 0; p < c && !reuse; ++p)
      if (wt_of[p] == wt_of[c] && p > 0) {
        lists[c] = lists[p];
        reuse = true;
      }
    if (!reuse) lists[c] = box_elements(K, b);
  }
  const double bd = to_d(S.bound) * (1 + 1e-9) + 1e-12;
  const double b2 = d == 2 ? std::sqrt(to_d(S.bound)) * (1 + 1e-9) + 1e-12 : 0;
  std::vector<std::vector<double>> part(S.blocks.size(), std::vector<double>(d, 0.0));
  std::vector<const KElt*> cur(S.ncomp);

  auto leaf = [&]() {
    if (++out.candidates > S.budget) fail(ErrorCode::BudgetExhausted, "point count exceeded its candidate budget");
    std::vector<CertReal> m2(d, CertReal(0));
    std::vector<NfElement> bv(S.blocks.size(), kzero(K));
    for (std::size_t c = 0; c < S.ncomp; ++c)
      if (!cur[c]->e.is_zero()) bv[blk_of[c]] = bv[blk_of[c]] + wt_of[c] * cur[c]->e * cur[c]->e;
    for (auto& b : bv)
      for (int v = 0; v < d; ++v) m2[v] = max(m2[v], b.channel(v));
    CertReal prod(1);
    for (int v = 0; v < d; ++v) prod = prod * m2[v];
    if (compare(prod, S.bound) == Cmp::Greater) return;
    if (d == 2) {
      // unit orbit: 1 <= m_1 / m_2 < eps^2
      if (compare(m2[0], m2[1]) == Cmp::Less) return;
      if (compare(m2[0], eps4 * m2[1]) != Cmp::Less) return;
    }
    std::vector<NfElement> w;
    for (std::size_t c = 0; c < S.ncomp; ++c) w.push_back(cur[c]->e);
    std::vector<NfElement> nz;
    for (const auto& e : w)
      if (!e.is_zero()) nz.push_back(e);
    if (d == 1) {
      Int g = 0;
      for (const auto& e : nz) g = gcd(g, Int(e.coeffs()[0].get_num()));
      if (g != 1) return;
    } else if (!(FracIdeal::from_generators(K, nz) == FracIdeal::unit(K))) {
      return;
    }
    if (extra && !extra(w)) return;
    ++out.count;
    if (collect) {
      NfElement inv0 = w[0].inv();
      NfVec y;
      for (std::size_t c = 1; c < S.ncomp; ++c) y.push_back(w[c] * inv0);
      out.points.push_back(std::move(y));
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == S.ncomp) {
      leaf();
      return;
    }
    const std::size_t b = blk_of[c];
    for (const auto& e : lists[c]) {
      if (c == 0) {
        if (e.e.is_zero() || e.ch[0] <= 0) continue;  // w_0 != 0, sign fixed
      }
      std::vector<double> saved = part[b];
      double prod = 1;
      bool ok = true;
      for (int v = 0; v < d; ++v) part[b][v] += wtd[c][v] * e.ch[v] * e.ch[v];
      for (int v = 0; v < d; ++v) {
        double mv = 0;
        for (const auto& p : part) mv = std::max(mv, p[v]);
        prod *= mv;
        if (d == 2 && v == 1 && mv > b2) ok = false;
      }
      if (ok && prod <= bd) {
        cur[c] = &e;
        rec(c + 1);
      }
      part[b] = saved;
    }
  };
  rec(0);
}

}  // namespace

DCount points_K_bounded(const FieldPtr& K, std::size_t n, const CertReal& R2d, bool collect, std::uint64_t budget) {
  ProjSpec S;
  S.K = K;
  S.ncomp = n + 1;
  for (std::size_t c = 0; c <= n; ++c) S.blocks.push_back(Block{{c}, {kone(K)}});
  S.bound = R2d;
  S.budget = budget;
  DCount out;
  walk_projective(S, out, collect);
  return out;
}

DCount exact_count_D(const AlgebraPtr& A, std::size_t N, const Rat& R, bool collect, std::uint64_t budget) {
  DCount out;
  if (R < 1) return out;
  const FieldPtr& K = A->field();
  ProjSpec S;
  S.K = K;
  S.ncomp = 1 + 4 * N;
  S.blocks.push_back(Block{{0}, {kone(K)}});
  NfElement ab = A->alpha() * A->beta();
  std::vector<NfElement> w{kone(K), -A->alpha(), -A->beta(), ab};
  for (std::size_t l = 0; l < N; ++l) S.blocks.push_back(Block{{1 + 4 * l, 2 + 4 * l, 3 + 4 * l, 4 + 4 * l}, w});
  // h(x)^{2d} = prod_v max(|w_0|_v^2, max_l N_v(W_l)) with x = W / w_0 primitive
  S.bound = CertReal(pow_rat(R, 2 * K->degree()));
  S.budget = budget;
  walk_projective(S, out, collect);
  return out;
}

DCount exact_count_D_via_K(const AlgebraPtr& A, std::size_t N, const Rat& R, bool collect, std::uint64_t budget) {
  DCount out;
  if (R < 1) return out;
  const int d = A->degree();
  // [S_D(R)] lies in S_K(R / t)
  CertReal R2d = CertReal(pow_rat(R, 2 * d));
  CertReal t2d = cpow(A->t_prod_sq(), d);
  // R2d / t2d, formed exactly when t2d is rational
  CertReal bound = t2d.exact ? CertReal(QuadSurd(pow_rat(R, 2 * d)) / *t2d.exact) : CertReal(R2d.approx / t2d.approx);
  DCount K = points_K_bounded(A->field(), 4 * N, bound, true, budget);
  out.candidates = K.candidates;
  for (auto& y : K.points) {
    if (height_hD(bracket_inv(A, y)).compare_to(R) == Cmp::Greater) continue;
    ++out.count;
    if (collect) out.points.push_back(std::move(y));
  }
  return out;
}

std::uint64_t exact_count_ZO(const DSubspace& Z, const QuatOrder& O, const Rat& R, std::uint64_t budget) {
  if (R < 1) return 0;
  const AlgebraPtr& A = O.algebra();
  const int d = A->degree();
  OkModule M = bracket_module(Z, O);
  RealLattice lat = module_lattice(M);
  const std::size_t n = M.ambient();
  // h(x)^d >= max(1, |x_l|_v) >= t_v |sigma_v(y_i)|
  Rat Rd = pow_rat(R, d);
  std::vector<Rat> bounds(n * d);
  for (int v = 0; v < d; ++v) {
    Rat b = upper_of(Real(Rd) / sqrt(A->t_sq()[v].approx));
    for (std::size_t i = 0; i < n; ++i) bounds[v * n + i] = b;
  }
  // double prefilter on prod_v max(1, t_v max_i |sigma_v y_i|) <= R^d
  const std::size_t L = lat.rank();
  std::vector<std::vector<double>> bd(n * d, std::vector<double>(L));
  for (std::size_t r = 0; r < n * d; ++r)
    for (std::size_t j = 0; j < L; ++j) bd[r][j] = lat.basis()[r][j].approx.eval(64).to_double();
  std::vector<double> tv(d);
  for (int v = 0; v < d; ++v) tv[v] = std::sqrt(A->t_sq()[v].approx.eval(64).to_double());
  const double cap = Rd.get_d() * (1 + 1e-9);
  std::uint64_t count = 0, seen = 0;
  enumerate_box(lat, bounds, [&](const IntVec& m) {
    if (++seen > budget) fail(ErrorCode::BudgetExhausted, "count exceeded its candidate budget");
    double prod = 1;
    for (int v = 0; v < d; ++v) {
      double mx = 0;
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < L; ++j) s += bd[v * n + i][j] * m[j].get_d();
        mx = std::max(mx, std::fabs(s));
      }
      prod *= std::max(1.0, tv[v] * mx);
    }
    if (prod > cap) return true;
    DVec x = bracket_inv(A, M.element(m));
    HeightValue h = M.integral() ? height_hinf(x) : height_hD(x);
    if (h.compare_to(R) != Cmp::Greater) ++count;
    return true;
  });
  return count;
}

Int certified_count_ZO(const DSubspace& Z, const QuatOrder& O, const Rat& R) {
  const AlgebraPtr& A = O.algebra();
  const FieldPtr& K = A->field();
  const int d = K->degree();
  if (!O.is_standard()) fail(ErrorCode::Unsupported, "certified count needs O = O_D");
  if (Z.dim() != 1) fail(ErrorCode::Unsupported, "certified count needs a line");
  if (R < 1) return 0;
  DMat X = Z.basis();
  // x = X u with u in O_D; |c u|_v <= |c|_v 2 s_v max_m |u(m)|_v
  std::vector<Rat> b(d);
  for (int v = 0; v < d; ++v) {
    CertReal cmax(0);
    for (const auto& row : X) {
      const QuatElement& c = row[0];
      if (!c[1].is_zero() || !c[2].is_zero() || !c[3].is_zero() || !c[0].is_integral())
        fail(ErrorCode::Unsupported, "certified count needs a spanning vector over O_K");
      cmax = max(cmax, abs(c[0].channel(v)));
    }
    Real bv = Real(R) / (Real(2) * sqrt(A->s_sq()[v].approx) * cmax.approx);
    b[v] = bv.eval(128).lower();
  }
  // prod_v max(1, 2 s_v C_v B_v) = R^d, so every such u has h(X u) <= R
  CertMat Bm(d, std::vector<CertReal>(d));
  for (int j = 0; j < d; ++j) {
    RatVec e(d, Rat(0));
    e[j] = 1;
    auto ch = NfElement::from_integral(K, e).channels();
    for (int k = 0; k < d; ++k) Bm[k][j] = ch[k];
  }
  std::uint64_t n = 0;
  enumerate_box(RealLattice::from_cert(Bm), b, [&](const IntVec&) {
    ++n;
    return true;
  });
  Int per = static_cast<unsigned long>(n);
  return per * per * per * per;
}

}  // namespace hc
