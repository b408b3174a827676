#include "heightcount/heights.hpp"

#include "heightcount/error.hpp"

#include <sstream>

namespace hc {

namespace {

void require_nonzero(const NfVec& x) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "empty vector");
  for (const auto& c : x)
    if (!c.is_zero()) return;
  fail(ErrorCode::InvalidArgument, "zero vector has no projective height");
}

const FieldPtr& field_of(const NfVec& x) {
  if (x.empty()) fail(ErrorCode::InvalidArgument, "empty vector");
  return x[0].field();
}

CertReal place_max(const NfVec& x, int v) {
  CertReal m(0);
  for (const auto& c : x) m = max(m, c.place_abs_pow(v));
  return m;
}

}  // namespace

Real HeightValue::value() const {
  Real p = power().approx;
  if (root == 1) return p;
  return pow(p, Rat(1, root));
}

double HeightValue::to_double() const { return value().eval(64).to_double(); }

Cmp HeightValue::compare_to(const Rat& R) const {
  if (R < 0) return Cmp::Greater;
  return compare(power(), CertReal(pow_rat(R, root)));
}

std::string HeightValue::str(int digits) const { return value().eval(128).mid_str(digits); }

Cmp compare(const HeightValue& a, const HeightValue& b) {
  if (a.root == b.root) return compare(a.power(), b.power());
  return compare(a.value(), b.value());
}

CertReal arch_max_power(const NfVec& x) {
  const FieldPtr& K = field_of(x);
  CertReal p(1);
  for (int v = 0; v < K->places(); ++v) p = p * place_max(x, v);
  return p;
}

CertReal arch_euclid_power2(const NfVec& x) {
  const FieldPtr& K = field_of(x);
  CertReal p(1);
  for (int v = 0; v < K->places(); ++v) {
    CertReal s(0);
    for (const auto& c : x) {
      if (v < K->r1()) {
        CertReal ch = c.channel(v);
        s = s + ch * ch;
      } else {
        s = s + c.place_abs_pow(v);
      }
    }
    p = p * (v < K->r1() ? s : s * s);
  }
  return p;
}

FracIdeal content_ideal(const NfVec& x) {
  require_nonzero(x);
  return FracIdeal::from_generators(field_of(x), x);
}

HeightValue height_H(const NfVec& x) {
  HeightValue h;
  h.finite = 1 / content_ideal(x).norm();
  h.arch = arch_max_power(x);
  h.root = field_of(x)->degree();
  return h;
}

HeightValue height_h(const NfVec& x) {
  if (x.empty()) return HeightValue{};
  NfVec y{NfElement::from_rat(field_of(x), Rat(1))};
  y.insert(y.end(), x.begin(), x.end());
  return height_H(y);
}

HeightValue height_H2(const NfVec& x) {
  HeightValue h;
  Rat n = content_ideal(x).norm();
  h.finite = 1 / (n * n);
  h.arch = arch_euclid_power2(x);
  h.root = 2 * field_of(x)->degree();
  return h;
}

NfElement nf_det(NfMat m) {
  if (m.empty()) fail(ErrorCode::InvalidArgument, "empty matrix");
  const FieldPtr& K = m[0][0].field();
  return det_field(std::move(m), NfElement::from_rat(K, Rat(0)), NfElement::from_rat(K, Rat(1)));
}

std::vector<NfElement> grassmann(const NfMat& X) {
  const std::size_t N = X.size();
  if (N == 0) fail(ErrorCode::InvalidArgument, "empty matrix");
  const std::size_t L = X[0].size();
  if (L == 0 || L > N) fail(ErrorCode::InvalidArgument, "need 1 <= L <= N");
  std::vector<std::size_t> idx(L);
  for (std::size_t i = 0; i < L; ++i) idx[i] = i;
  std::vector<NfElement> out;
  bool any = false;
  while (true) {
    NfMat sub;
    for (auto i : idx) sub.push_back(X[i]);
    NfElement m = nf_det(sub);
    any = any || !m.is_zero();
    out.push_back(m);
    std::size_t k = L;
    while (k > 0 && idx[k - 1] == N - L + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < L; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!any) fail(ErrorCode::InvalidArgument, "matrix is rank deficient");
  return out;
}

HeightValue subspace_height(const NfMat& X) { return height_H2(grassmann(X)); }

Rat hfin_integral(const NfVec& x) {
  for (const auto& c : x)
    if (!c.is_integral()) fail(ErrorCode::InvalidArgument, "hfin_integral needs integral coordinates");
  return 1 / content_ideal(x).norm();
}

Rat hfin_matrix(const NfMat& C) {
  if (C.empty() || C[0].empty()) fail(ErrorCode::InvalidArgument, "empty matrix");
  const FieldPtr& K = C[0][0].field();
  const std::size_t rows = C.size(), cols = C[0].size();
  const int d = K->degree();
  std::vector<IntVec> gens;
  for (std::size_t j = 0; j < cols; ++j)
    for (int k = 0; k < d; ++k) {
      NfElement w(K, K->basis().row(k));
      IntVec g;
      for (std::size_t r = 0; r < rows; ++r) {
        for (const auto& q : (C[r][j] * w).int_coords()) {
          if (q.get_den() != 1) fail(ErrorCode::InvalidArgument, "hfin_matrix needs entries in O_K");
          g.push_back(q.get_num());
        }
      }
      gens.push_back(g);
    }
  auto idx = lattice_index(gens, rows * d);
  if (!idx) fail(ErrorCode::InvalidArgument, "matrix does not have full row rank");
  return make_rat(1, *idx);
}

HeightValue form_height(const NfMat& B) {
  std::size_t n = B.size();
  NfVec flat;
  for (std::size_t i = 0; i < n; ++i) {
    if (B[i].size() != n) fail(ErrorCode::InvalidArgument, "form matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (B[i][j] != B[j][i]) fail(ErrorCode::InvalidArgument, "form matrix must be symmetric");
      flat.push_back(B[i][j]);
    }
  }
  return height_H(flat);
}

IntegralScaling find_integral_scaling(const NfVec& x, int unit_range) {
  const FieldPtr& K = field_of(x);
  FracIdeal I = content_ideal(x);
  NfElement one = NfElement::from_rat(K, Rat(1));
  NfElement a = one;
  if (!(I == FracIdeal::unit(K))) {
    if (K->degree() > 2) fail(ErrorCode::Unsupported, "unsupported class: generator search needs d <= 2");
    auto g = principal_generator(I);
    if (!g) fail(ErrorCode::Unsupported, "unsupported class: content ideal is not principal");
    a = g->inv();
  }
  auto sups_ok = [&](const NfElement& s) {
    for (int v = 0; v < K->places(); ++v) {
      NfVec y;
      for (const auto& c : x) y.push_back(s * c);
      if (compare(place_max(y, v), CertReal(1)) == Cmp::Less) return false;
    }
    return true;
  };
  std::vector<NfElement> candidates{a};
  if (K->r1() == 2 && K->degree() == 2) {
    NfElement eps = fundamental_unit(K);
    for (int k = 1; k <= unit_range; ++k) {
      candidates.push_back(a * eps.pow(k));
      candidates.push_back(a * eps.pow(-k));
    }
  }
  HeightValue Hx = height_H(x);
  for (const auto& c : candidates) {
    for (const auto& s : {c, -c}) {
      if (!sups_ok(s)) continue;
      NfVec ax;
      for (const auto& v : x) ax.push_back(s * v);
      HeightValue hax = height_h(ax);
      if (compare(hax, Hx) != Cmp::Equal) fail(ErrorCode::Internal, "scaling does not preserve the height");
      return IntegralScaling{s, ax, Hx};
    }
  }
  fail(ErrorCode::BudgetExhausted, "unit adjustment search exhausted");
}

}  // namespace hc
