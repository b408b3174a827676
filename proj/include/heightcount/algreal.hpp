#pragma once

#include "heightcount/ball.hpp"
#include "heightcount/rational.hpp"

#include <vector>

namespace hc {

// Integer polynomial, coefficients from the constant term up.
using Poly = std::vector<Int>;

Poly poly_trim(Poly p);
int poly_degree(const Poly& p);
Rat poly_eval(const Poly& p, const Rat& x);
Ball poly_eval(const Poly& p, const Ball& x);
Poly poly_derivative(const Poly& p);
Poly poly_primitive(const Poly& p);
// Exact division over Q followed by clearing to a primitive integer polynomial.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_squarefree(const Poly& p);
// Returns the quotient when b divides a exactly over Z, else empty.
bool poly_divides(const Poly& b, const Poly& a, Poly* quotient);
Poly poly_mul(const Poly& a, const Poly& b);
std::vector<Rat> rational_roots(const Poly& p);
std::string poly_str(const Poly& p);

// A real root of a squarefree integer polynomial isolated by a rational
// interval [lo, hi]; lo == hi marks a rational root.
class AlgReal {
 public:
  AlgReal(Poly minpoly, Rat lo, Rat hi);
  static AlgReal rational(const Rat& q);

  const Poly& poly() const { return poly_; }
  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  // Bisects until the width is at most 2^-bits.
  AlgReal refined(long bits) const;
  Ball to_ball(mpfr_prec_t prec) const;
  Real to_real() const;
  double to_double() const;

 private:
  Poly poly_;
  Rat lo_, hi_;
  int sign_lo_ = 0;
};

std::vector<AlgReal> isolate_real_roots(const Poly& p);
Cmp compare_exact(const AlgReal& a, const Rat& q);
Cmp compare_exact(const AlgReal& a, const AlgReal& b);

}  // namespace hc
