#include "heightcount/quadsurd.hpp"

#include "heightcount/error.hpp"

#include <cmath>

namespace hc {

QuadSurd::QuadSurd(const Rat& a, const Rat& b, const Int& D) : a_(a), b_(b), d_(1) {
  if (b == 0 || D == 0) {
    b_ = 0;
    return;
  }
  if (D < 0) fail(ErrorCode::Domain, "quadratic surd with negative radicand");
  Int core = squarefree_part(D);
  Int f2 = D / core, f;
  is_perfect_square(f2, &f);
  if (core == 1) {
    a_ += b * Rat(f);
    b_ = 0;
    return;
  }
  b_ = b * Rat(f);
  d_ = core;
}

namespace {

Int common_radicand(const QuadSurd& x, const QuadSurd& y) {
  if (x.is_rational()) return y.D();
  if (y.is_rational()) return x.D();
  if (x.D() != y.D()) fail(ErrorCode::Internal, "mixing quadratic surds of different fields");
  return x.D();
}

}  // namespace

int QuadSurd::sign() const {
  int sa = hc::sign(a_), sb = hc::sign(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with b^2 D
  int c = cmp(a_ * a_, b_ * b_ * Rat(d_));
  return c > 0 ? sa : c < 0 ? sb : 0;
}

QuadSurd QuadSurd::inv() const {
  Rat n = norm();
  if (n == 0) fail(ErrorCode::Domain, "inverse of zero surd");
  return QuadSurd(a_ / n, -b_ / n, d_);
}

Ball QuadSurd::to_ball(mpfr_prec_t prec) const {
  Ball r = Ball::from_rat(a_, prec + 8);
  if (b_ != 0) r = r + hc::sqrt(Ball::from_rat(Rat(d_), prec + 8)) * b_;
  return r;
}

Real QuadSurd::to_real() const {
  if (b_ == 0) return Real(a_);
  QuadSurd self = *this;
  return Real([self](mpfr_prec_t p) { return self.to_ball(p); });
}

std::string QuadSurd::str() const {
  if (b_ == 0) return to_string(a_);
  std::string s = a_ == 0 ? "" : to_string(a_) + (b_ > 0 ? "+" : "");
  return s + to_string(b_) + "*sqrt(" + d_.get_str() + ")";
}

QuadSurd operator+(const QuadSurd& x, const QuadSurd& y) {
  return QuadSurd(x.a_ + y.a_, x.b_ + y.b_, common_radicand(x, y));
}

QuadSurd operator-(const QuadSurd& x, const QuadSurd& y) {
  return QuadSurd(x.a_ - y.a_, x.b_ - y.b_, common_radicand(x, y));
}

QuadSurd operator*(const QuadSurd& x, const QuadSurd& y) {
  Int D = common_radicand(x, y);
  return QuadSurd(x.a_ * y.a_ + x.b_ * y.b_ * Rat(D), x.a_ * y.b_ + x.b_ * y.a_, D);
}

QuadSurd operator/(const QuadSurd& x, const QuadSurd& y) { return x * y.inv(); }

int compare(const QuadSurd& x, const QuadSurd& y) { return (x - y).sign(); }
QuadSurd max(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) >= 0 ? x : y; }
QuadSurd min(const QuadSurd& x, const QuadSurd& y) { return compare(x, y) <= 0 ? x : y; }

// ------------------------------------------------------------ CertReal

double CertReal::to_double() const {
  if (exact) {
    double a = exact->a().get_d(), b = exact->b().get_d();
    return b == 0 ? a : a + b * std::sqrt(exact->D().get_d());
  }
  return approx.eval(64).to_double();
}

CertReal operator+(const CertReal& x, const CertReal& y) {
  if (x.exact && y.exact) return CertReal(*x.exact + *y.exact);
  return CertReal(x.approx + y.approx);
}

CertReal operator-(const CertReal& x, const CertReal& y) {
  if (x.exact && y.exact) return CertReal(*x.exact - *y.exact);
  return CertReal(x.approx - y.approx);
}

CertReal operator*(const CertReal& x, const CertReal& y) {
  if (x.exact && y.exact) return CertReal(*x.exact * *y.exact);
  return CertReal(x.approx * y.approx);
}

CertReal operator-(const CertReal& x) {
  if (x.exact) return CertReal(-*x.exact);
  return CertReal(-x.approx);
}

CertReal abs(const CertReal& x) {
  if (x.exact) return CertReal(x.exact->abs());
  return CertReal(abs(x.approx));
}

CertReal max(const CertReal& x, const CertReal& y) {
  if (x.exact && y.exact) return CertReal(max(*x.exact, *y.exact));
  return CertReal(max(x.approx, y.approx));
}

Cmp compare(const CertReal& x, const CertReal& y, const PrecisionPolicy& p) {
  if (x.exact && y.exact) {
    int c = compare(*x.exact, *y.exact);
    return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
  }
  auto c = try_compare(x.approx, y.approx, p);
  if (!c) fail(ErrorCode::TieUnresolved, "boundary comparison undecided at the precision cap");
  return *c;
}

}  // namespace hc
