#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace hc {

using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
// Accepts "p", "-p/q" and terminating decimals such as "1.25".
Rat parse_rat(const std::string& text);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);

Int floor_rat(const Rat& v);
Int ceil_rat(const Rat& v);
Rat abs_rat(const Rat& v);
Rat pow_rat(const Rat& base, long exp);
Int pow_int(const Int& base, unsigned long exp);
Int binomial(unsigned long n, unsigned long k);
Int lcm_den(const std::vector<Rat>& xs);
Int gcd_all(const std::vector<Int>& xs);
int sign(const Rat& v);
int sign(const Int& v);
bool is_perfect_square(const Int& v, Int* root = nullptr);
Int squarefree_part(const Int& v);
bool fits_int64(const Int& v);
Int isqrt_floor(const Int& v);

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;

}  // namespace hc
