#include "heightcount/rational.hpp"

#include "heightcount/error.hpp"

#include <cctype>

namespace hc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::PrecisionExhausted: return "precision exhausted";
    case ErrorCode::TieUnresolved: return "tie unresolved";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::BudgetExhausted: return "budget exhausted";
    case ErrorCode::NotApplicable: return "not applicable";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Internal: return "internal error";
  }
  return "unknown";
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::Domain, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  if (text.empty()) fail(ErrorCode::Parse, "empty rational");
  auto slash = text.find('/');
  auto dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      Int n(text.substr(0, slash), 10), d(text.substr(slash + 1), 10);
      return make_rat(n, d);
    }
    if (dot != std::string::npos) {
      std::string ip = text.substr(0, dot), fp = text.substr(dot + 1);
      bool neg = !ip.empty() && ip[0] == '-';
      if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip = ip.substr(1);
      if (ip.empty()) ip = "0";
      for (char c : fp)
        if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorCode::Parse, "bad decimal '" + raw + "'");
      Int den = pow_int(Int(10), fp.size());
      Int num = Int(ip, 10) * den + (fp.empty() ? Int(0) : Int(fp, 10));
      return make_rat(neg ? Int(-num) : num, den);
    }
    std::string t = text[0] == '+' ? text.substr(1) : text;
    return Rat(Int(t, 10));
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::Parse, "bad rational '" + raw + "'");
  }
}

std::string to_string(const Int& v) { return v.get_str(); }

std::string to_string(const Rat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Int floor_rat(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

Int ceil_rat(const Rat& v) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return q;
}

Rat abs_rat(const Rat& v) { return v < 0 ? Rat(-v) : v; }

Rat pow_rat(const Rat& base, long exp) {
  if (exp < 0) {
    if (base == 0) fail(ErrorCode::Domain, "zero to negative power");
    Rat inv = 1 / base;
    return pow_rat(inv, -exp);
  }
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exp));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exp));
  return make_rat(n, d);
}

Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int lcm_den(const std::vector<Rat>& xs) {
  Int l = 1;
  for (const auto& x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

Int gcd_all(const std::vector<Int>& xs) {
  Int g = 0;
  for (const auto& x : xs) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

int sign(const Rat& v) { return sgn(v); }
int sign(const Int& v) { return sgn(v); }

bool is_perfect_square(const Int& v, Int* root) {
  if (v < 0) return false;
  if (!mpz_perfect_square_p(v.get_mpz_t())) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), v.get_mpz_t());
  return true;
}

Int squarefree_part(const Int& v) {
  // Trial division is enough for the discriminants seen in practice.
  Int a = abs(v), out = 1;
  for (Int p = 2; p * p <= a; ++p) {
    int e = 0;
    while (a % p == 0) {
      a /= p;
      ++e;
    }
    if (e % 2) out *= p;
  }
  out *= a;
  return v < 0 ? Int(-out) : out;
}

bool fits_int64(const Int& v) { return mpz_fits_slong_p(v.get_mpz_t()) != 0; }

Int isqrt_floor(const Int& v) {
  if (v < 0) fail(ErrorCode::Domain, "isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

}  // namespace hc
