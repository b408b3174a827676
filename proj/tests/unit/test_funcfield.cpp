#include "doctest.h"

#include "heightcount/error.hpp"
#include "heightcount/funcfield.hpp"

#include <cmath>
#include <set>

using namespace hc;

namespace {

CurvePoint inf() { return {true, 0, 0}; }
CurvePoint pt(long x, long y = 0) { return {false, x, y}; }
double dbl(const Real& r) { return r.eval(128).to_double(); }

// 1 + sum_x (1 + chi(x^3 + a x + b)) with chi by Euler's criterion
long euler_count(long p, long a, long b) {
  long n = 1;
  for (long x = 0; x < p; ++x) {
    long r = ((x * x % p * x + a * x + b) % p + p) % p;
    if (r == 0) {
      n += 1;
      continue;
    }
    long e = (p - 1) / 2, acc = 1, base = r;
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    n += acc == 1 ? 2 : 0;
  }
  return n;
}

// image of the degree-0 vectors in the group, by closure
std::size_t brute_j(const CurveContext& c) {
  std::set<CurvePoint> img{inf()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::set<CurvePoint> add;
    for (const auto& x : img)
      for (std::size_t i = 1; i < c.n(); ++i) {
        CurvePoint d = ec_add(c, c.support()[i], ec_neg(c, c.support()[0]));
        for (const auto& y : {ec_add(c, x, d), ec_add(c, x, ec_neg(c, d))})
          if (!img.count(y)) add.insert(y);
      }
    if (!add.empty()) {
      grew = true;
      img.insert(add.begin(), add.end());
    }
  }
  return img.size();
}

// |{x in [-B, B]^n : sum x = 0}| by direct scan
long brute_root_count(std::size_t n, long B) {
  std::vector<long> e(n, -B);
  long c = 0;
  while (true) {
    long s = 0;
    for (long x : e) s += x;
    c += s == 0;
    std::size_t i = 0;
    while (i < n && e[i] == B) e[i] = -B, ++i;
    if (i == n) break;
    ++e[i];
  }
  return c;
}

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

CurveContext e5() { return CurveContext::elliptic(5, 1, 1, {inf(), pt(0, 1), pt(0, 4)}); }

}  // namespace

TEST_SUITE("funcfield") {
  TEST_CASE("rational points") {
    CHECK(rational_points(CurveModel::Genus0, 5).size() == 6);
    CHECK(rational_points(CurveModel::Genus1, 5, 1, 1).size() == 9);
    CHECK(rational_points(CurveModel::Genus1, 5, -1, 0).size() == 8);
    for (long p : {5L, 7L, 11L, 13L, 101L})
      for (long a = 0; a < 3; ++a)
        for (long b = 1; b < 3; ++b) {
          if ((4 * a * a * a + 27 * b * b) % p == 0) continue;
          auto c = CurveContext::elliptic(p, a, b, {inf()});
          CHECK(static_cast<long>(c.points().size()) == euler_count(p, a, b));
        }
    CHECK_THROWS_AS(rational_points(CurveModel::Genus0, 4096), Error);
    CHECK_THROWS_AS(CurveContext::projective_line(9, {inf()}), Error);
    CHECK_THROWS_AS(CurveContext::elliptic(5, 0, 0, {inf()}), Error);
    CHECK_THROWS_AS(CurveContext::elliptic(5, 1, 1, {pt(0, 2)}), Error);
    CHECK_THROWS_AS(CurveContext::projective_line(5, {pt(1), pt(1)}), Error);
    CHECK_THROWS_AS(CurveContext::projective_line(5, {}), Error);
  }

  TEST_CASE("group law") {
    for (long a : {1L, -1L}) {
      auto c = CurveContext::elliptic(5, a, a == 1 ? 1 : 0, {inf()});
      const auto& X = c.points();
      for (const auto& p : X) {
        CHECK(ec_add(c, p, inf()) == p);
        CHECK(ec_add(c, p, ec_neg(c, p)).inf);
        for (const auto& r : X) {
          CHECK(on_curve(c, ec_add(c, p, r)));
          CHECK(ec_add(c, p, r) == ec_add(c, r, p));
          for (const auto& s : X) CHECK(ec_add(c, ec_add(c, p, r), s) == ec_add(c, p, ec_add(c, r, s)));
        }
      }
    }
  }

  TEST_CASE("divisor lattices") {
    auto line = CurveContext::projective_line(5, {pt(0), inf()});
    auto L = build_divisor_lattice(line);
    REQUIRE(L.rank() == 1);
    CHECK(L.basis[0] == iv({1, -1}));
    CHECK(L.jxp == 1);
    for (std::size_t n = 2; n <= 5; ++n) {
      std::vector<CurvePoint> P;
      for (std::size_t i = 0; i < n; ++i) P.push_back(pt(static_cast<long>(i)));
      auto Ln = build_divisor_lattice(CurveContext::projective_line(7, P));
      CHECK(Ln.det_sq == Int(static_cast<unsigned long>(n)));
    }

    auto c = e5();
    auto E = build_divisor_lattice(c);
    CHECK(E.jxp == Int(static_cast<unsigned long>(brute_j(c))));
    CHECK(E.jxp == 9);
    CHECK(divisor_checks(c, E).all());
    for (const auto& b : E.basis) CHECK(in_divisor_lattice(c, b));

    std::vector<CurveContext> more{CurveContext::elliptic(5, -1, 0, {inf(), pt(0, 0), pt(1, 0)}),
                                   CurveContext::elliptic(7, 1, 3, {inf(), pt(4, 1), pt(5, 0), pt(6, 1)}),
                                   CurveContext::elliptic(11, 1, 1, {pt(0, 1), pt(0, 10)})};
    for (const auto& m : more) {
      auto D = build_divisor_lattice(m);
      CHECK(D.jxp == Int(static_cast<unsigned long>(brute_j(m))));
      CHECK(divisor_checks(m, D).all());
      // every small principal divisor lies in the span of the basis
      const std::size_t n = m.n();
      RatMat B(n, D.rank());
      for (std::size_t j = 0; j < D.rank(); ++j)
        for (std::size_t i = 0; i < n; ++i) B(i, j) = Rat(D.basis[j][i]);
      IntVec e(n, Int(-3));
      while (true) {
        if (in_divisor_lattice(m, e)) {
          RatVec rhs(e.begin(), e.end());
          auto sol = solve(B, rhs);
          REQUIRE(sol);
          for (const auto& x : *sol) CHECK(x.get_den() == 1);
        }
        std::size_t i = 0;
        while (i < n && e[i] == 3) e[i] = -3, ++i;
        if (i == n) break;
        ++e[i];
      }
    }
  }

  TEST_CASE("P-height") {
    auto two = CurveContext::projective_line(5, {pt(0), inf()});
    auto three = CurveContext::projective_line(5, {pt(0), pt(1), inf()});
    CHECK(p_height(two, iv({0, 0})) == 0);
    CHECK(p_height(two, iv({3, -3})) == 3);
    CHECK(p_height(three, iv({2, -1, -1})) == 2);
    CHECK_THROWS_AS(p_height(two, iv({1, 0})), Error);
    auto c = e5();
    CHECK_THROWS_AS(p_height(c, iv({0, 1, -1})), Error);
  }

  TEST_CASE("supported function counts") {
    auto two = CurveContext::projective_line(5, {pt(0), inf()});
    auto L = build_divisor_lattice(two);
    CHECK(count_supported_lattice(two, L, 3) == 28);
    CHECK(count_supported_direct(two, 3) == 28);
    CHECK(count_supported_lattice(two, L, 0) == 4);
    CHECK(count_supported_direct(two, 0) == 4);

    for (std::size_t n = 1; n <= 4; ++n)
      for (long B = 0; B <= 5; ++B) CHECK(root_lattice_cube_count(n, B) == brute_root_count(n, B));

    std::vector<std::vector<CurvePoint>> supports{
        {pt(0), inf()}, {pt(0), pt(1), inf()}, {pt(1), pt(2), pt(4)}, {pt(0), pt(1), pt(2), inf()}, {pt(3)}};
    for (const auto& P : supports) {
      auto c = CurveContext::projective_line(5, P);
      auto D = build_divisor_lattice(c);
      for (long B = 0; B <= 4; ++B) {
        auto a = count_supported_lattice(c, D, B);
        CHECK(a == count_supported_direct(c, B));
        CHECK(Int(static_cast<unsigned long>(a)) == 4 * root_lattice_cube_count(c.n(), B));
      }
    }
    auto c = e5();
    auto E = build_divisor_lattice(c);
    for (long B = 0; B <= 5; ++B) CHECK(count_supported_lattice(c, E, B) == count_supported_direct(c, B));
  }

  TEST_CASE("p-count sandwich") {
    auto two = CurveContext::projective_line(5, {pt(0), inf()});
    auto L = build_divisor_lattice(two);
    CHECK(dbl(pcount_lower_threshold(two, L)) == doctest::Approx(std::sqrt(2.0) / 2));
    auto r = lemma_pcount_bounds(two, L, 2, Int(20));
    CHECK(dbl(r.lower.bound) == doctest::Approx(4 * (2 * std::sqrt(2.0) - 1)));
    CHECK(dbl(r.upper.bound) == doctest::Approx(20.0));
    CHECK(r.lower.applicable);
    CHECK(r.lower.verdict == Verdict::Holds);
    CHECK(r.upper.verdict == Verdict::Holds);
    CHECK_FALSE(lemma_pcount_bounds(two, L, 0, Int(4)).lower.applicable);

    std::vector<CurveContext> ctxs{two, CurveContext::projective_line(5, {pt(0), pt(1), inf()}),
                                   CurveContext::projective_line(7, {pt(0), pt(1), pt(3), inf()}), e5(),
                                   CurveContext::elliptic(7, 1, 3, {inf(), pt(4, 1), pt(5, 0), pt(6, 1)})};
    for (const auto& c : ctxs) {
      auto D = build_divisor_lattice(c);
      for (long B = 1; B <= 12; ++B) {
        auto n = count_supported_lattice(c, D, B);
        auto b = lemma_pcount_bounds(c, D, B, Int(static_cast<unsigned long>(n)));
        CHECK(b.upper.verdict == Verdict::Holds);
        if (b.lower.applicable) CHECK(b.lower.verdict == Verdict::Holds);
      }
    }
  }
}
