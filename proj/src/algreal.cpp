#include "heightcount/algreal.hpp"

#include "heightcount/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hc {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

Rat poly_eval(const Poly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

Ball poly_eval(const Poly& p, const Ball& x) {
  Ball acc = Ball::from_int(0, x.prec());
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

Poly poly_derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Int(static_cast<unsigned long>(i)));
  return poly_trim(d);
}

Poly poly_primitive(const Poly& p) {
  Poly q = poly_trim(p);
  if (q.empty()) return q;
  Int g = gcd_all(q);
  if (q.back() < 0) g = -g;
  for (auto& c : q) c /= g;
  return q;
}

namespace {

using QPoly = std::vector<Rat>;

QPoly to_q(const Poly& p) { return QPoly(p.begin(), p.end()); }

Poly from_q(QPoly q) {
  while (!q.empty() && q.back() == 0) q.pop_back();
  std::vector<Rat> tmp = q;
  Int l = lcm_den(tmp);
  Poly out;
  for (auto& c : q) out.push_back(Rat(c * Rat(l)).get_num());
  return poly_primitive(out);
}

// remainder of a modulo b over Q
QPoly qrem(QPoly a, const QPoly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    if (a.back() == 0) {
      a.pop_back();
      continue;
    }
    Rat f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  QPoly x = to_q(poly_trim(a)), y = to_q(poly_trim(b));
  while (!y.empty()) {
    QPoly r = qrem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return from_q(x);
}

Poly poly_squarefree(const Poly& p) {
  Poly q = poly_primitive(p);
  if (poly_degree(q) <= 0) return q;
  Poly g = poly_gcd(q, poly_derivative(q));
  if (poly_degree(g) <= 0) return q;
  Poly quot;
  if (!poly_divides(g, q, &quot)) fail(ErrorCode::Internal, "squarefree division failed");
  return poly_primitive(quot);
}

bool poly_divides(const Poly& bq, const Poly& aq, Poly* quotient) {
  Poly a = poly_trim(aq), b = poly_trim(bq);
  if (b.empty()) return false;
  if (a.empty()) {
    if (quotient) quotient->clear();
    return true;
  }
  if (a.size() < b.size()) return false;
  Poly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Int& top = a[k + b.size() - 1];
    if (top % b.back() != 0) return false;
    q[k] = top / b.back();
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= q[k] * b[i];
  }
  for (const auto& c : a)
    if (c != 0) return false;
  if (quotient) *quotient = poly_trim(q);
  return true;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return poly_trim(c);
}

namespace {

std::vector<Int> divisors(Int n) {
  n = abs(n);
  std::vector<Int> out;
  if (n > Int(1000000000)) fail(ErrorCode::Unsupported, "rational root search on large coefficients");
  for (Int d = 1; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  return out;
}

}  // namespace

std::vector<Rat> rational_roots(const Poly& in) {
  Poly p = poly_primitive(in);
  std::set<Rat> roots;
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  if (low > 0) roots.insert(Rat(0));
  Poly q(p.begin() + static_cast<long>(low), p.end());
  if (poly_degree(q) >= 1) {
    for (const auto& num : divisors(q.front()))
      for (const auto& den : divisors(q.back()))
        for (int s : {1, -1}) {
          Rat r = make_rat(s * num, den);
          if (poly_eval(q, r) == 0) roots.insert(r);
        }
  }
  return {roots.begin(), roots.end()};
}

std::string poly_str(const Poly& p) {
  std::string s;
  for (int i = poly_degree(p); i >= 0; --i) {
    const Int& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Int a = abs(c);
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

// ------------------------------------------------------------ AlgReal

AlgReal::AlgReal(Poly minpoly, Rat lo, Rat hi) : poly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
  require(lo_ <= hi_, "isolating interval reversed");
  sign_lo_ = sign(poly_eval(poly_, lo_));
}

AlgReal AlgReal::rational(const Rat& q) {
  Poly p{-q.get_num(), q.get_den()};
  return AlgReal(p, q, q);
}

AlgReal AlgReal::refined(long bits) const {
  if (is_rational()) return *this;
  Rat lo = lo_, hi = hi_;
  Rat target = Rat(1);
  mpq_div_2exp(target.get_mpq_t(), target.get_mpq_t(), static_cast<unsigned long>(std::max(bits, 0L)));
  while (hi - lo > target) {
    Rat m = (lo + hi) / 2;
    int s = sign(poly_eval(poly_, m));
    if (s == 0) return AlgReal::rational(m);
    if (s == sign_lo_)
      lo = m;
    else
      hi = m;
  }
  return AlgReal(poly_, lo, hi);
}

Ball AlgReal::to_ball(mpfr_prec_t prec) const {
  if (is_rational()) return Ball::from_rat(lo_, prec);
  Rat mag = std::max(abs_rat(lo_), abs_rat(hi_));
  long extra = mag > 1 ? static_cast<long>(mpz_sizeinbase(floor_rat(mag).get_mpz_t(), 2)) : 0;
  AlgReal r = refined(static_cast<long>(prec) + 4 - extra);
  return Ball::hull(r.lo_, r.hi_, prec);
}

Real AlgReal::to_real() const {
  if (is_rational()) return Real(lo_);
  AlgReal self = *this;
  return Real([self](mpfr_prec_t p) { return self.to_ball(p); });
}

double AlgReal::to_double() const { return to_ball(64).to_double(); }

namespace {

std::vector<QPoly> sturm_chain(const Poly& p) {
  std::vector<QPoly> chain{to_q(p), to_q(poly_derivative(p))};
  while (!chain.back().empty()) {
    QPoly r = qrem(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_changes(const std::vector<QPoly>& chain, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    Rat acc = 0;
    for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * x + *it;
    int s = sign(acc);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

void isolate(const Poly& p, const std::vector<QPoly>& chain, Rat lo, Rat hi, int vlo, int vhi,
             std::vector<AlgReal>& out) {
  // roots in (lo, hi]
  int n = vlo - vhi;
  if (n == 0) return;
  if (n == 1) {
    // tighten until neither endpoint is a root
    while (poly_eval(p, lo) == 0 || poly_eval(p, hi) == 0) {
      if (poly_eval(p, hi) == 0 && poly_eval(p, lo) != 0) {
        out.push_back(AlgReal::rational(hi));
        return;
      }
      Rat mid = (lo + hi) / 2;
      if (poly_eval(p, mid) == 0) {
        out.push_back(AlgReal::rational(mid));
        return;
      }
      int vm = sign_changes(chain, mid);
      if (vm - vhi == 1)
        lo = mid;
      else
        hi = mid;
    }
    out.emplace_back(p, lo, hi);
    return;
  }
  Rat mid = (lo + hi) / 2;
  int vm = sign_changes(chain, mid);
  isolate(p, chain, lo, mid, vlo, vm, out);
  isolate(p, chain, mid, hi, vm, vhi, out);
}

}  // namespace

std::vector<AlgReal> isolate_real_roots(const Poly& in) {
  Poly p = poly_trim(in);
  require(!p.empty(), "isolate_real_roots needs a nonzero polynomial");
  p = poly_squarefree(p);
  if (poly_degree(p) <= 0) return {};
  std::vector<AlgReal> out;
  try {
    for (const auto& q : rational_roots(p)) {
      out.push_back(AlgReal::rational(q));
      Poly lin{-q.get_num(), q.get_den()}, quot;
      if (poly_divides(lin, p, &quot)) p = quot;
    }
  } catch (const Error&) {
    // large coefficients: rational roots surface through bisection instead
  }
  if (poly_degree(p) >= 1) {
    Rat bound = 1;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, abs_rat(make_rat(p[i], p.back())));
    bound += 1;
    auto chain = sturm_chain(p);
    Rat lo = -bound, hi = bound;
    isolate(p, chain, lo, hi, sign_changes(chain, lo), sign_changes(chain, hi), out);
  }
  std::sort(out.begin(), out.end(), [](const AlgReal& a, const AlgReal& b) {
    if (a.lo() != b.lo()) return a.lo() < b.lo();
    return a.is_rational() && !b.is_rational();
  });
  return out;
}

Cmp compare_exact(const AlgReal& a, const Rat& q) {
  if (a.is_rational()) {
    int c = cmp(a.lo(), q);
    return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
  }
  // root lies strictly inside (lo, hi) or at hi
  if (q <= a.lo()) return Cmp::Greater;
  if (q > a.hi()) return Cmp::Less;
  int sq = sign(poly_eval(a.poly(), q));
  if (sq == 0) return Cmp::Equal;
  int slo = sign(poly_eval(a.poly(), a.lo()));
  // same sign as at lo: the root is to the right of q
  return sq == slo ? Cmp::Greater : Cmp::Less;
}

Cmp compare_exact(const AlgReal& a, const AlgReal& b) {
  if (a.is_rational()) {
    Cmp c = compare_exact(b, a.lo());
    return c == Cmp::Less ? Cmp::Greater : c == Cmp::Greater ? Cmp::Less : Cmp::Equal;
  }
  if (b.is_rational()) return compare_exact(a, b.lo());
  // A common factor g with exactly one root in the overlap of the two
  // open isolating intervals forces equality.
  Poly g = poly_gcd(a.poly(), b.poly());
  std::vector<QPoly> gchain;
  if (poly_degree(g) >= 1) gchain = sturm_chain(g);
  AlgReal x = a, y = b;
  for (long bits = 8; bits <= (1L << 16); bits *= 2) {
    if (x.is_rational() || y.is_rational()) return compare_exact(x, y);
    if (x.hi() <= y.lo()) return Cmp::Less;
    if (y.hi() <= x.lo()) return Cmp::Greater;
    if (!gchain.empty()) {
      Rat lo = std::max(x.lo(), y.lo()), hi = std::min(x.hi(), y.hi());
      if (sign_changes(gchain, lo) - sign_changes(gchain, hi) == 1) return Cmp::Equal;
    }
    x = x.refined(bits);
    y = y.refined(bits);
  }
  fail(ErrorCode::TieUnresolved, "algebraic comparison did not separate");
}

}  // namespace hc
