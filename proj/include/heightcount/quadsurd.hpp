#pragma once

#include "heightcount/ball.hpp"
#include "heightcount/rational.hpp"

#include <optional>
#include <string>

namespace hc {

// a + b*sqrt(D) with D squarefree > 1, or a rational (b = 0, D = 1).
class QuadSurd {
 public:
  QuadSurd() : a_(0), b_(0), d_(1) {}
  QuadSurd(const Rat& a) : a_(a), b_(0), d_(1) {}
  QuadSurd(int a) : QuadSurd(Rat(a)) {}
  QuadSurd(const Rat& a, const Rat& b, const Int& D);

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Int& D() const { return d_; }
  bool is_rational() const { return b_ == 0; }
  int sign() const;
  QuadSurd conj() const { return QuadSurd(a_, -b_, d_); }
  // a^2 - b^2 D
  Rat norm() const { return a_ * a_ - b_ * b_ * Rat(d_); }
  QuadSurd abs() const { return sign() < 0 ? -*this : *this; }
  QuadSurd inv() const;
  Ball to_ball(mpfr_prec_t prec) const;
  Real to_real() const;
  std::string str() const;

  QuadSurd operator-() const { return QuadSurd(-a_, -b_, d_); }
  bool operator==(const QuadSurd& o) const { return (*this - o).sign() == 0; }

  friend QuadSurd operator+(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator-(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator*(const QuadSurd& x, const QuadSurd& y);
  friend QuadSurd operator/(const QuadSurd& x, const QuadSurd& y);

 private:
  Rat a_, b_;
  Int d_;
};

int compare(const QuadSurd& x, const QuadSurd& y);
QuadSurd max(const QuadSurd& x, const QuadSurd& y);
QuadSurd min(const QuadSurd& x, const QuadSurd& y);

// A certified real: always a lazy Real, plus the exact value when it is
// a quadratic surd.
struct CertReal {
  Real approx;
  std::optional<QuadSurd> exact;

  CertReal() : approx(Rat(0)), exact(QuadSurd()) {}
  CertReal(const Rat& q) : approx(q), exact(QuadSurd(q)) {}
  CertReal(int v) : CertReal(Rat(v)) {}
  CertReal(const QuadSurd& q) : approx(q.to_real()), exact(q) {}
  explicit CertReal(Real r) : approx(std::move(r)) {}

  Ball eval(mpfr_prec_t p) const { return approx.eval(p); }
  double to_double() const;
};

CertReal operator+(const CertReal& x, const CertReal& y);
CertReal operator-(const CertReal& x, const CertReal& y);
CertReal operator*(const CertReal& x, const CertReal& y);
CertReal operator-(const CertReal& x);
CertReal abs(const CertReal& x);
CertReal max(const CertReal& x, const CertReal& y);
// Exact when both sides are exact; otherwise refinement (may throw).
Cmp compare(const CertReal& x, const CertReal& y, const PrecisionPolicy& p = default_precision());

}  // namespace hc
