#include "heightcount/ball.hpp"

#include "heightcount/error.hpp"

#include <atomic>
#include <cmath>
#include <mutex>

namespace hc {

Ball::Ball(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Ball::Ball(const Ball& o) {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Ball::Ball(Ball&& o) noexcept {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Ball& Ball::operator=(const Ball& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, o.prec());
    mpfr_set_prec(hi_, o.prec());
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

Ball& Ball::operator=(Ball&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Ball::~Ball() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Ball Ball::from_rat(const Rat& q, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_set_q(b.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.hi_, q.get_mpq_t(), MPFR_RNDU);
  return b;
}

Ball Ball::from_int(long v, mpfr_prec_t prec) { return from_rat(Rat(v), prec); }

Ball Ball::hull(const Rat& lo, const Rat& hi, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_set_q(b.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(b.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return b;
}

Ball Ball::entire(mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_set_inf(b.lo_, -1);
  mpfr_set_inf(b.hi_, 1);
  return b;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_const_pi(b.lo_, MPFR_RNDD);
  mpfr_const_pi(b.hi_, MPFR_RNDU);
  return b;
}

Ball Ball::log2(mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_const_log2(b.lo_, MPFR_RNDD);
  mpfr_const_log2(b.hi_, MPFR_RNDU);
  return b;
}

bool Ball::finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

bool Ball::contains(const Rat& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Ball::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Ball::contains(const Ball& in) const {
  return mpfr_lessequal_p(lo_, in.lo_) && mpfr_greaterequal_p(hi_, in.hi_);
}

bool Ball::overlaps(const Ball& o) const {
  return mpfr_lessequal_p(lo_, o.hi_) && mpfr_lessequal_p(o.lo_, hi_);
}

bool Ball::positive() const { return mpfr_sgn(lo_) > 0; }
bool Ball::negative() const { return mpfr_sgn(hi_) < 0; }
bool Ball::nonnegative() const { return mpfr_sgn(lo_) >= 0; }

Rat Ball::lower() const {
  if (!finite()) fail(ErrorCode::Domain, "unbounded interval");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rat Ball::upper() const {
  if (!finite()) fail(ErrorCode::Domain, "unbounded interval");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

Rat Ball::mid() const { return (lower() + upper()) / 2; }
Rat Ball::rad() const { return (upper() - lower()) / 2; }

double Ball::to_double() const {
  if (!finite()) return std::nan("");
  return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN));
}

double Ball::width() const {
  if (!finite()) return INFINITY;
  mpfr_t w;
  mpfr_init2(w, 53);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double r = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

namespace {

std::string mpfr_format(const char* fmt, int digits, mpfr_srcptr x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt, digits, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace

std::string Ball::mid_str(int digits) const {
  if (!finite()) return "nan";
  mpfr_t m;
  mpfr_init2(m, prec() + 8);
  Rat q = mid();
  mpfr_set_q(m, q.get_mpq_t(), MPFR_RNDN);
  std::string s = mpfr_format("%.*Rg", digits, m);
  mpfr_clear(m);
  return s;
}

std::string Ball::rad_str() const {
  if (!finite()) return "inf";
  mpfr_t r;
  mpfr_init2(r, 64);
  Rat q = rad();
  mpfr_set_q(r, q.get_mpq_t(), MPFR_RNDU);
  std::string s = mpfr_format("%.*RUe", 3, r);
  mpfr_clear(r);
  return s;
}

std::string Ball::str(int digits) const { return "[" + mid_str(digits) + " +/- " + rad_str() + "]"; }

Ball Ball::operator-() const {
  Ball b(prec());
  mpfr_neg(b.lo_, hi_, MPFR_RNDD);
  mpfr_neg(b.hi_, lo_, MPFR_RNDU);
  return b;
}

namespace {

mpfr_prec_t pmax(const Ball& x, const Ball& y) { return std::max(x.prec(), y.prec()); }

void fix_nan(Ball& b) {
  if (mpfr_nan_p(b.lo())) mpfr_set_inf(b.lo_mut(), -1);
  if (mpfr_nan_p(b.hi())) mpfr_set_inf(b.hi_mut(), 1);
}

}  // namespace

Ball operator+(const Ball& x, const Ball& y) {
  Ball b(pmax(x, y));
  mpfr_add(b.lo_mut(), x.lo(), y.lo(), MPFR_RNDD);
  mpfr_add(b.hi_mut(), x.hi(), y.hi(), MPFR_RNDU);
  fix_nan(b);
  return b;
}

Ball operator-(const Ball& x, const Ball& y) {
  Ball b(pmax(x, y));
  mpfr_sub(b.lo_mut(), x.lo(), y.hi(), MPFR_RNDD);
  mpfr_sub(b.hi_mut(), x.hi(), y.lo(), MPFR_RNDU);
  fix_nan(b);
  return b;
}

Ball operator*(const Ball& x, const Ball& y) {
  const mpfr_prec_t p = pmax(x, y);
  Ball b(p);
  mpfr_t t;
  mpfr_init2(t, p);
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_srcptr a = i ? x.hi() : x.lo();
      mpfr_srcptr c = j ? y.hi() : y.lo();
      mpfr_mul(t, a, c, MPFR_RNDD);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);  // 0 * inf inside a product of intervals
      if (first || mpfr_less_p(t, b.lo())) mpfr_set(b.lo_mut(), t, MPFR_RNDD);
      mpfr_mul(t, a, c, MPFR_RNDU);
      if (mpfr_nan_p(t)) mpfr_set_zero(t, 1);
      if (first || mpfr_greater_p(t, b.hi())) mpfr_set(b.hi_mut(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return b;
}

Ball operator/(const Ball& x, const Ball& y) {
  const mpfr_prec_t p = pmax(x, y);
  if (y.contains_zero()) return Ball::entire(p);
  Ball inv(p);
  mpfr_ui_div(inv.lo_mut(), 1, y.hi(), MPFR_RNDD);
  mpfr_ui_div(inv.hi_mut(), 1, y.lo(), MPFR_RNDU);
  return x * inv;
}

Ball operator+(const Ball& x, const Rat& y) { return x + Ball::from_rat(y, x.prec()); }
Ball operator-(const Ball& x, const Rat& y) { return x - Ball::from_rat(y, x.prec()); }
Ball operator*(const Ball& x, const Rat& y) { return x * Ball::from_rat(y, x.prec()); }
Ball operator/(const Ball& x, const Rat& y) { return x / Ball::from_rat(y, x.prec()); }

Ball sqrt(const Ball& x) {
  if (x.negative()) fail(ErrorCode::Domain, "square root of a negative interval");
  Ball b(x.prec());
  if (mpfr_sgn(x.lo()) <= 0)
    mpfr_set_zero(b.lo_mut(), 1);
  else
    mpfr_sqrt(b.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_sqrt(b.hi_mut(), x.hi(), MPFR_RNDU);
  return b;
}

Ball log(const Ball& x) {
  if (mpfr_sgn(x.hi()) <= 0) fail(ErrorCode::Domain, "logarithm of a non-positive interval");
  Ball b(x.prec());
  if (mpfr_sgn(x.lo()) <= 0)
    mpfr_set_inf(b.lo_mut(), -1);
  else
    mpfr_log(b.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_log(b.hi_mut(), x.hi(), MPFR_RNDU);
  return b;
}

Ball exp(const Ball& x) {
  Ball b(x.prec());
  mpfr_exp(b.lo_mut(), x.lo(), MPFR_RNDD);
  mpfr_exp(b.hi_mut(), x.hi(), MPFR_RNDU);
  return b;
}

Ball abs(const Ball& x) {
  if (x.nonnegative()) return x;
  if (x.negative()) return -x;
  Ball b(x.prec());
  mpfr_set_zero(b.lo_mut(), 1);
  if (mpfr_cmpabs(x.lo(), x.hi()) > 0)
    mpfr_neg(b.hi_mut(), x.lo(), MPFR_RNDU);
  else
    mpfr_set(b.hi_mut(), x.hi(), MPFR_RNDU);
  return b;
}

Ball max(const Ball& x, const Ball& y) {
  Ball b(pmax(x, y));
  mpfr_max(b.lo_mut(), x.lo(), y.lo(), MPFR_RNDD);
  mpfr_max(b.hi_mut(), x.hi(), y.hi(), MPFR_RNDU);
  return b;
}

Ball min(const Ball& x, const Ball& y) {
  Ball b(pmax(x, y));
  mpfr_min(b.lo_mut(), x.lo(), y.lo(), MPFR_RNDD);
  mpfr_min(b.hi_mut(), x.hi(), y.hi(), MPFR_RNDU);
  return b;
}

Ball pow_int(const Ball& x, long e) {
  if (e < 0) return Ball::from_int(1, x.prec()) / pow_int(x, -e);
  Ball r = Ball::from_int(1, x.prec());
  if (e % 2 == 0 && e > 0) {
    Ball a = abs(x);
    Ball base = a;
    long k = e;
    while (k) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return r;
  }
  Ball base = x;
  long k = e;
  while (k) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

Ball pow(const Ball& x, const Ball& y) {
  if (!x.positive()) {
    if (!(x.nonnegative() && y.positive())) fail(ErrorCode::Domain, "real power of a non-positive interval");
    // x in [0, hi]: the power lies in [0, hi^y] widened over the y corners
    Ball b(pmax(x, y));
    mpfr_t t;
    mpfr_init2(t, b.prec());
    mpfr_set_zero(b.lo_mut(), 1);
    mpfr_pow(b.hi_mut(), x.hi(), y.lo(), MPFR_RNDU);
    mpfr_pow(t, x.hi(), y.hi(), MPFR_RNDU);
    if (mpfr_greater_p(t, b.hi())) mpfr_set(b.hi_mut(), t, MPFR_RNDU);
    mpfr_clear(t);
    return b;
  }
  const mpfr_prec_t p = pmax(x, y);
  Ball b(p);
  mpfr_t t;
  mpfr_init2(t, p);
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_srcptr a = i ? x.hi() : x.lo();
      mpfr_srcptr c = j ? y.hi() : y.lo();
      mpfr_pow(t, a, c, MPFR_RNDD);
      if (first || mpfr_less_p(t, b.lo())) mpfr_set(b.lo_mut(), t, MPFR_RNDD);
      mpfr_pow(t, a, c, MPFR_RNDU);
      if (first || mpfr_greater_p(t, b.hi())) mpfr_set(b.hi_mut(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return b;
}

Ball pow(const Ball& x, const Rat& q) {
  if (q.get_den() == 1 && fits_int64(q.get_num())) return pow_int(x, q.get_num().get_si());
  return pow(x, Ball::from_rat(q, x.prec()));
}

Ball gamma_at(const Rat& x, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_t a;
  mpfr_init2(a, prec);
  Ball xb = Ball::from_rat(x, prec + 16);
  if (mpfr_equal_p(xb.lo(), xb.hi())) {
    mpfr_gamma(b.lo_mut(), xb.lo(), MPFR_RNDD);
    mpfr_gamma(b.hi_mut(), xb.hi(), MPFR_RNDU);
  } else {
    // Gamma is increasing on [1.5, inf).
    if (x < Rat(3, 2)) fail(ErrorCode::Unsupported, "gamma at a non-dyadic point below 3/2");
    mpfr_gamma(b.lo_mut(), xb.lo(), MPFR_RNDD);
    mpfr_gamma(b.hi_mut(), xb.hi(), MPFR_RNDU);
  }
  mpfr_clear(a);
  return b;
}

// ------------------------------------------------------------ lazy reals

namespace {
std::mutex g_policy_mu;
PrecisionPolicy g_policy;
}  // namespace

PrecisionPolicy default_precision() {
  std::lock_guard<std::mutex> lk(g_policy_mu);
  return g_policy;
}

void set_default_precision(const PrecisionPolicy& p) {
  require(p.start >= 16 && p.cap >= p.start, "precision policy needs 16 <= start <= cap");
  std::lock_guard<std::mutex> lk(g_policy_mu);
  g_policy = p;
}

Real::Real() : Real(Rat(0)) {}

Real::Real(const Rat& q)
    : f_(std::make_shared<const Eval>([q](mpfr_prec_t p) { return Ball::from_rat(q, p); })), exact_(q) {}

Real::Real(Eval f) : f_(std::make_shared<const Eval>(std::move(f))) {}

Real Real::pi() {
  return Real([](mpfr_prec_t p) { return Ball::pi(p); });
}

Real Real::sqrt_of(const Rat& q) {
  if (q < 0) fail(ErrorCode::Domain, "square root of a negative rational");
  Int rn, rd;
  if (is_perfect_square(q.get_num(), &rn) && is_perfect_square(q.get_den(), &rd)) return Real(make_rat(rn, rd));
  return Real([q](mpfr_prec_t p) { return hc::sqrt(Ball::from_rat(q, p)); });
}

Real operator+(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return Real(*x.exact() + *y.exact());
  return Real([x, y](mpfr_prec_t p) { return x.eval(p) + y.eval(p); });
}

Real operator-(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return Real(*x.exact() - *y.exact());
  return Real([x, y](mpfr_prec_t p) { return x.eval(p) - y.eval(p); });
}

Real operator-(const Real& x) {
  if (x.exact()) return Real(Rat(-*x.exact()));
  return Real([x](mpfr_prec_t p) { return -x.eval(p); });
}

Real operator*(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return Real(*x.exact() * *y.exact());
  return Real([x, y](mpfr_prec_t p) { return x.eval(p) * y.eval(p); });
}

Real operator/(const Real& x, const Real& y) {
  if (x.exact() && y.exact() && *y.exact() != 0) return Real(*x.exact() / *y.exact());
  return Real([x, y](mpfr_prec_t p) { return x.eval(p) / y.eval(p); });
}

Real sqrt(const Real& x) {
  if (x.exact()) return Real::sqrt_of(*x.exact());
  return Real([x](mpfr_prec_t p) { return hc::sqrt(x.eval(p)); });
}

Real log(const Real& x) {
  if (x.exact() && *x.exact() == 1) return Real(Rat(0));
  return Real([x](mpfr_prec_t p) { return hc::log(x.eval(p)); });
}

Real exp(const Real& x) {
  return Real([x](mpfr_prec_t p) { return hc::exp(x.eval(p)); });
}

Real abs(const Real& x) {
  if (x.exact()) return Real(abs_rat(*x.exact()));
  return Real([x](mpfr_prec_t p) { return hc::abs(x.eval(p)); });
}

Real max(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return Real(std::max(*x.exact(), *y.exact()));
  return Real([x, y](mpfr_prec_t p) { return hc::max(x.eval(p), y.eval(p)); });
}

Real min(const Real& x, const Real& y) {
  if (x.exact() && y.exact()) return Real(std::min(*x.exact(), *y.exact()));
  return Real([x, y](mpfr_prec_t p) { return hc::min(x.eval(p), y.eval(p)); });
}

Real pow(const Real& x, const Rat& q) {
  if (x.exact() && q.get_den() == 1 && fits_int64(q.get_num()) && (*x.exact() != 0 || q > 0))
    return Real(pow_rat(*x.exact(), q.get_num().get_si()));
  return Real([x, q](mpfr_prec_t p) { return hc::pow(x.eval(p), q); });
}

Real gamma_real(const Rat& x) {
  return Real([x](mpfr_prec_t p) { return gamma_at(x, p); });
}

std::optional<Cmp> try_compare(const Real& x, const Real& y, const PrecisionPolicy& pol) {
  if (x.exact() && y.exact()) {
    int c = cmp(*x.exact(), *y.exact());
    return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
  }
  for (mpfr_prec_t p = pol.start; p <= pol.cap; p *= 2) {
    Ball a = x.eval(p), b = y.eval(p);
    if (mpfr_less_p(a.hi(), b.lo())) return Cmp::Less;
    if (mpfr_greater_p(a.lo(), b.hi())) return Cmp::Greater;
    if (mpfr_equal_p(a.lo(), a.hi()) && mpfr_equal_p(b.lo(), b.hi()) && mpfr_equal_p(a.lo(), b.lo()))
      return Cmp::Equal;
  }
  return std::nullopt;
}

Cmp compare(const Real& x, const Real& y, const PrecisionPolicy& pol) {
  auto c = try_compare(x, y, pol);
  if (!c) fail(ErrorCode::PrecisionExhausted, "comparison undecided at " + std::to_string(pol.cap) + " bits");
  return *c;
}

Ball eval_to(const Real& x, long rel_bits, const PrecisionPolicy& pol) {
  Ball b = x.eval(pol.start);
  for (mpfr_prec_t p = pol.start; p <= pol.cap; p *= 2) {
    b = x.eval(p);
    if (!b.finite()) continue;
    if (mpfr_zero_p(b.lo()) && mpfr_zero_p(b.hi())) return b;
    mpfr_t w, m;
    mpfr_init2(w, 64);
    mpfr_init2(m, 64);
    mpfr_sub(w, b.hi(), b.lo(), MPFR_RNDU);
    mpfr_set(m, mpfr_cmpabs(b.lo(), b.hi()) > 0 ? b.lo() : b.hi(), MPFR_RNDN);
    mpfr_abs(m, m, MPFR_RNDN);
    mpfr_mul_2si(m, m, -rel_bits, MPFR_RNDN);
    bool ok = mpfr_lessequal_p(w, m);
    mpfr_clear(w);
    mpfr_clear(m);
    if (ok) return b;
  }
  return b;
}

}  // namespace hc
