#pragma once

#include "heightcount/rational.hpp"

#include <mpfr.h>

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace hc {

// Closed interval [lo, hi] with outward-rounded endpoints.
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec = 64);
  Ball(const Ball& o);
  Ball(Ball&& o) noexcept;
  Ball& operator=(const Ball& o);
  Ball& operator=(Ball&& o) noexcept;
  ~Ball();

  static Ball from_rat(const Rat& q, mpfr_prec_t prec);
  static Ball from_int(long v, mpfr_prec_t prec);
  static Ball hull(const Rat& lo, const Rat& hi, mpfr_prec_t prec);
  static Ball entire(mpfr_prec_t prec);
  static Ball pi(mpfr_prec_t prec);
  static Ball log2(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_t& lo_mut() { return lo_; }
  mpfr_t& hi_mut() { return hi_; }

  bool finite() const;
  bool contains(const Rat& q) const;
  bool contains_zero() const;
  bool contains(const Ball& inner) const;
  bool overlaps(const Ball& o) const;
  bool positive() const;  // lo > 0
  bool negative() const;  // hi < 0
  bool nonnegative() const;
  // Exact endpoints as rationals (finite balls only).
  Rat lower() const;
  Rat upper() const;
  Rat mid() const;
  Rat rad() const;
  double to_double() const;
  double width() const;
  // Decimal renderings; digits as significant digits.
  std::string mid_str(int digits = 25) const;
  std::string rad_str() const;
  std::string str(int digits = 20) const;

  Ball operator-() const;

 private:
  mpfr_t lo_, hi_;
};

Ball operator+(const Ball& x, const Ball& y);
Ball operator-(const Ball& x, const Ball& y);
Ball operator*(const Ball& x, const Ball& y);
Ball operator/(const Ball& x, const Ball& y);
Ball operator+(const Ball& x, const Rat& y);
Ball operator-(const Ball& x, const Rat& y);
Ball operator*(const Ball& x, const Rat& y);
Ball operator/(const Ball& x, const Rat& y);
Ball sqrt(const Ball& x);
Ball log(const Ball& x);
Ball exp(const Ball& x);
Ball abs(const Ball& x);
Ball max(const Ball& x, const Ball& y);
Ball min(const Ball& x, const Ball& y);
Ball pow_int(const Ball& x, long e);
// x^q for x > 0 and rational q; integral q allows any sign.
Ball pow(const Ball& x, const Rat& q);
Ball pow(const Ball& x, const Ball& y);
Ball gamma_at(const Rat& x, mpfr_prec_t prec);

// ------------------------------------------------------------ lazy reals

struct PrecisionPolicy {
  mpfr_prec_t start = 64;
  mpfr_prec_t cap = 8192;
};

PrecisionPolicy default_precision();
void set_default_precision(const PrecisionPolicy& p);

class Real {
 public:
  using Eval = std::function<Ball(mpfr_prec_t)>;
  Real();
  Real(const Rat& q);
  Real(int v) : Real(Rat(v)) {}
  Real(long v) : Real(Rat(v)) {}
  explicit Real(Eval f);
  Ball eval(mpfr_prec_t prec) const { return (*f_)(prec); }
  std::optional<Rat> exact() const { return exact_; }

  static Real pi();
  static Real sqrt_of(const Rat& q);

 private:
  std::shared_ptr<const Eval> f_;
  std::optional<Rat> exact_;
};

Real operator+(const Real& x, const Real& y);
Real operator-(const Real& x, const Real& y);
Real operator-(const Real& x);
Real operator*(const Real& x, const Real& y);
Real operator/(const Real& x, const Real& y);
Real sqrt(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real abs(const Real& x);
Real max(const Real& x, const Real& y);
Real min(const Real& x, const Real& y);
Real pow(const Real& x, const Rat& q);
Real gamma_real(const Rat& x);

enum class Cmp { Less = -1, Equal = 0, Greater = 1 };

// Refines until the intervals separate; throws PrecisionExhausted at the cap.
Cmp compare(const Real& x, const Real& y, const PrecisionPolicy& p = default_precision());
std::optional<Cmp> try_compare(const Real& x, const Real& y, const PrecisionPolicy& p = default_precision());
// Evaluates at the smallest precision whose radius is below 2^-bits relative.
Ball eval_to(const Real& x, long rel_bits, const PrecisionPolicy& p = default_precision());

}  // namespace hc
