#include "doctest.h"

#include "heightcount/bounds.hpp"
#include "heightcount/error.hpp"

#include <cmath>

using namespace hc;

namespace {

NfElement q(const FieldPtr& K, const Rat& r) { return NfElement::from_rat(K, r); }
AlgebraPtr algebra(const FieldPtr& K, long a, long b) { return QuatAlgebra::create(K, q(K, a), q(K, b)); }
double dbl(const Real& r) { return r.eval(128).to_double(); }

DSubspace axis(const AlgebraPtr& A) {
  return DSubspace::from_basis({{QuatElement::scalar(A, Rat(1))}, {QuatElement::scalar(A, Rat(0))}});
}

DSubspace whole(const AlgebraPtr& A) {
  auto one = QuatElement::scalar(A, Rat(1)), zero = QuatElement::scalar(A, Rat(0));
  return DSubspace::from_basis({{one, zero}, {zero, one}});
}

HermitianForm hyperbolic(const AlgebraPtr& A) {
  auto one = QuatElement::scalar(A, Rat(1)), zero = QuatElement::scalar(A, Rat(0));
  return HermitianForm(DMat{{zero, one}, {one, zero}});
}

// T_K(l, j) for a totally real field, in doubles
double tk_direct(int d, double DK, int l, int j) {
  double m9 = std::max(l, 9);
  double rv = std::pow(M_PI, -0.5) * std::pow(std::tgamma((l - 1) / 2.0 + 1), 1.0 / (l - 1));
  return 27 * std::pow(2.0, ((21.0 * l - 21) * d + 5.0 * d + 4) / (2 * d) + m9) * std::pow(l, (27.0 * l + 51) / 2) *
         std::pow(j, 2.0 / d) * std::pow(j + 2, 3.0 / d) * std::pow(DK, (l * (9.0 * l + 14) + 14) / (2 * d) + m9) *
         std::pow(rv, m9);
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("E1 and E2") {
    auto Q = NumberField::rationals();
    auto e = const_E1_E2(Q, Real(1), Real(1), 1);
    CHECK(dbl(e.E1) == doctest::Approx(0.5));
    CHECK(dbl(e.E2) == doctest::Approx(2 * std::sqrt(2.0)));
    auto K5 = NumberField::quadratic(5);
    e = const_E1_E2(K5, Real(1), Real(1), 1);
    CHECK(dbl(e.E1) == doctest::Approx(std::sqrt(2.0)));
    CHECK(dbl(e.E2) == doctest::Approx(std::sqrt(2.0)));
    auto e2 = const_E1_E2(K5, Real(1), Real(2), 1);
    CHECK(dbl(e2.E1) == doctest::Approx(2 * dbl(e.E1)));
    CHECK(dbl(e2.E2) == doctest::Approx(dbl(e.E2) / 2));
  }

  TEST_CASE("module lower bound") {
    auto Q = NumberField::rationals();
    auto r = thm1_lower(OkModule::free_module(Q, 1), Rat(3));
    CHECK(r.applicable);
    CHECK(dbl(r.bound) == doctest::Approx(5.0));
    CHECK(r.exact == 7);
    CHECK(r.verdict == Verdict::Holds);
    r = thm1_lower(OkModule::free_module(Q, 1), make_rat(1, 4));
    CHECK(!r.applicable);
    auto K5 = NumberField::quadratic(5);
    r = thm1_lower(OkModule::free_module(K5, 1), Rat(4));
    CHECK(r.applicable);
    CHECK(r.verdict == Verdict::Holds);
    r = thm1_lower(OkModule::free_module(Q, 2), Rat(2));
    CHECK(r.exact == 25);
    CHECK(r.verdict == Verdict::Holds);
  }

  TEST_CASE("judge") {
    CHECK(judge(BoundKind::Lower, Int(5), Real(5)) == Verdict::Holds);
    CHECK(judge(BoundKind::Lower, Int(4), Real(make_rat(9, 2))) == Verdict::Violated);
    CHECK(judge(BoundKind::Upper, Int(5), sqrt(Real(26))) == Verdict::Holds);
    CHECK(judge(BoundKind::Upper, Int(6), sqrt(Real(26))) == Verdict::Violated);
    CHECK(real_agree(sqrt(Real(2)) * sqrt(Real(2)), Real(2)));
    CHECK(!real_agree(sqrt(Real(2)), Real(make_rat(14142, 10000))));
  }

  TEST_CASE("E3 and E4") {
    auto Q = NumberField::rationals();
    auto A = algebra(Q, -1, -1);
    auto O = QuatOrder::standard(A);
    auto e = const_E3_E4(A, O.disc_norm(), Real(1), Real(1), 1);
    CHECK(dbl(e.E3) == doctest::Approx(2 * std::sqrt(2.0)));
    CHECK(dbl(e.E4) == doctest::Approx(1 / (2 * std::sqrt(2.0))));
    CHECK(dbl(e.E3p) == doctest::Approx(1.0 / (16 * 4)));
    auto B = algebra(Q, -1, -3);
    auto f = const_E3_E4(B, O.disc_norm(), Real(1), Real(1), 1);
    CHECK(dbl(f.E3) == doctest::Approx(std::sqrt(3.0) * dbl(e.E3)));
    CHECK(dbl(f.E4) == doctest::Approx(dbl(e.E4) / std::sqrt(3.0)));
  }

  TEST_CASE("subspace count report") {
    auto Q = NumberField::rationals();
    auto A = algebra(Q, -1, -1);
    auto O = QuatOrder::standard(A);
    auto Z = axis(A);
    auto r = thm_main1_lower(Z, O, Rat(1), CountMode::Exact);
    CHECK(!r.applicable);
    CHECK(dbl(r.threshold) == doctest::Approx(2 * std::sqrt(2.0)));
    Rat R2 = make_rat(5657, 1000);
    r = thm_main1_lower(Z, O, R2, CountMode::Exact);
    CHECK(r.applicable);
    CHECK(r.verdict == Verdict::Holds);
    // |u|^2 <= R^2 over Z^4
    long c = 0;
    for (long a = -5; a <= 5; ++a)
      for (long b = -5; b <= 5; ++b)
        for (long s = -5; s <= 5; ++s)
          for (long t = -5; t <= 5; ++t)
            if (Rat(a * a + b * b + s * s + t * t) <= R2 * R2) ++c;
    CHECK(r.exact == c);
    auto rc = thm_main1_lower(Z, O, R2, CountMode::CertifiedLower);
    CHECK(rc.count_mode == "certified_lower");
    CHECK(rc.exact <= r.exact);
    CHECK(rc.verdict == Verdict::Holds);

    auto dm = det_MZ_check(Z, O);
    CHECK(dm.corrected_holds);
    CHECK(!dm.displayed_holds);
    auto K2 = NumberField::quadratic(2);
    auto B = algebra(K2, -1, -1);
    auto d2 = det_MZ_check(axis(B), QuatOrder::standard(B));
    CHECK(dbl(d2.lattice_det) == doctest::Approx(64.0));
    CHECK(d2.corrected_holds);
    CHECK(!d2.displayed_holds);
    auto one = QuatElement::scalar(B, Rat(1));
    auto d3 = det_MZ_check(DSubspace::from_basis({{one}, {one}}), QuatOrder::standard(B));
    CHECK(dbl(d3.lattice_det) == doctest::Approx(1024.0));
    CHECK(d3.corrected_holds);
  }

  TEST_CASE("quaternion count and the upper estimate") {
    auto K2 = NumberField::quadratic(2);
    auto A = algebra(K2, -1, -1);
    auto r = thm_main2_upper(A, 1, Rat(1));
    CHECK(r.exact >= 9);
    CHECK(dbl(r.bound) == doctest::Approx(std::pow(2176 * std::log(2.0), 4)));
    CHECK(r.verdict == Verdict::Holds);
    CHECK(dbl(main2_bound(A, 1, Rat(2))) > dbl(main2_bound(A, 1, Rat(1))));
    double lm1 = dbl(loher_masser_upper(2, 4, Real(1)));
    CHECK(lm1 == doctest::Approx(std::pow(2176 * std::log(2.0), 4)));
    CHECK(dbl(loher_masser_upper(2, 4, Real(2))) == doctest::Approx(lm1 * 1024));
    CHECK_THROWS_AS(loher_masser_upper(1, 4, Real(1)), Error);
    CHECK_THROWS_AS(thm_main2_upper(algebra(NumberField::rationals(), -1, -1), 1, Rat(1)), Error);

    // integral subspace sets sit inside S_{D,N}
    auto big = exact_count_D(algebra(NumberField::rationals(), -1, -1), 2, Rat(1));
    CHECK(big.count >= exact_count_ZO(axis(algebra(NumberField::rationals(), -1, -1)),
                                      QuatOrder::standard(algebra(NumberField::rationals(), -1, -1)), Rat(1)));
  }

  TEST_CASE("bracket transfer inclusions") {
    auto Q = NumberField::rationals();
    auto inc = bracket_inclusions(algebra(Q, -1, -1), 1, Rat(2));
    CHECK(inc.upper());
    CHECK(inc.lower_2s());
    CHECK(!inc.lower_displayed());
    CHECK(inc.sd == 169);
    CHECK(inc.sk_2s <= inc.sd);
    auto K2 = NumberField::quadratic(2);
    auto i2 = bracket_inclusions(algebra(K2, -1, -1), 1, Rat(1));
    CHECK(i2.upper());
    CHECK(i2.lower_2s());
    CHECK(!i2.lower_displayed());
  }

  TEST_CASE("field constants") {
    CHECK(dbl(r_v(false, 2)) == doctest::Approx(1 / std::sqrt(M_PI)));
    CHECK(dbl(r_v(true, 1)) == doctest::Approx(1 / std::sqrt(2 * M_PI)));
    CHECK(dbl(r_v(false, 3)) == doctest::Approx(std::pow(std::tgamma(2.5), 1 / 3.0) / std::sqrt(M_PI)));
    CHECK_THROWS_AS(r_v(false, 0), Error);
    auto K2 = NumberField::quadratic(2);
    auto K5 = NumberField::quadratic(5);
    auto Q = NumberField::rationals();
    CHECK_THROWS_AS(const_TK(K2, 1, 1), Error);
    CHECK(dbl(const_TK(K2, 2, 2)) > dbl(const_TK(K2, 2, 1)));
    struct Tuple {
      FieldPtr K;
      int d;
      double DK;
      int l, j;
    };
    for (const auto& t : {Tuple{K2, 2, 8, 2, 1}, Tuple{K5, 2, 5, 3, 2}, Tuple{Q, 1, 1, 2, 4}}) {
      double want = tk_direct(t.d, t.DK, t.l, t.j);
      CHECK(dbl(const_TK(t.K, t.l, t.j)) == doctest::Approx(want).epsilon(1e-11));
    }
    auto A = algebra(K2, -1, -1);
    double a = dbl(const_A(A, Real(1), 2, 2, 0, 0));
    CHECK(a == doctest::Approx(std::pow(2.0, 31.0 / 2) * dbl(const_TK(K2, 2, 1))).epsilon(1e-11));
    CHECK(dbl(const_A(A, Real(1), 2, 2, 1, 0)) > a);
    // s = 3 (product over both channels), t = 1
    auto B = algebra(K2, -1, -3);
    double b = dbl(const_A(B, Real(1), 2, 2, 0, 0));
    CHECK(b == doctest::Approx(a * std::pow(3.0, 30)).epsilon(1e-11));
  }

  TEST_CASE("basis search") {
    auto K2 = NumberField::quadratic(2);
    auto A = algebra(K2, -1, -1);
    auto O = QuatOrder::standard(A);
    auto Z = whole(A);
    CHECK(subspace_height(Z, O).compare_to(Rat(1)) == Cmp::Equal);
    auto r = thmB1_search(Z, O, {}, {});
    REQUIRE(r.found);
    CHECK(r.basis.size() == 2);
    CHECK(r.heights[0].compare_to(Rat(1)) == Cmp::Equal);
    CHECK(r.heights[1].compare_to(Rat(1)) == Cmp::Equal);
    CHECK(dbl(r.bound) >= 8);
    CHECK(r.verdict == Verdict::Holds);

    auto U1 = axis(A);
    auto r1 = thmB1_search(Z, O, {U1}, {});
    REQUIRE(r1.found);
    CHECK(!r1.basis[0][1].is_zero());
    CHECK(r1.heights[0].compare_to(Rat(1)) == Cmp::Equal);

    auto one = QuatElement::scalar(A, Rat(1)), zero = QuatElement::scalar(A, Rat(0));
    HermitianForm G(DMat{{one, zero}, {zero, one}});
    auto r2 = thmB1_search(Z, O, {}, {G});
    REQUIRE(r2.found);
    CHECK(compare(r2.heights[1], r.heights[1]) == Cmp::Equal);

    // one subspace and the hyperbolic variety together
    auto r3 = thmB1_search(Z, O, {U1}, {hyperbolic(A)});
    REQUIRE(r3.found);
    for (const auto& y : r3.basis) {
      CHECK(!hyperbolic(A).value(y).is_zero());
      CHECK(!y[1].is_zero());
    }
    CHECK(compare(r3.heights[0], r3.heights[1]) != Cmp::Greater);
    CHECK(r3.verdict == Verdict::Holds);
  }

  TEST_CASE("isotropic search") {
    auto K2 = NumberField::quadratic(2);
    auto A = algebra(K2, -1, -1);
    auto O = QuatOrder::standard(A);
    auto F = hyperbolic(A);
    auto r = thmB2_search(F, whole(A), O, {}, {});
    REQUIRE(r.found);
    CHECK(F.value(r.point).is_zero());
    CHECK(r.height.compare_to(Rat(1)) == Cmp::Equal);
    CHECK(r.verdict == Verdict::Holds);
    auto i = QuatElement::unit_vector(A, 1);
    CHECK(F.value({QuatElement::scalar(A, Rat(1)), i}).is_zero());

    auto r1 = thmB2_search(F, whole(A), O, {axis(A)}, {});
    REQUIRE(r1.found);
    CHECK(!r1.point[1].is_zero());
    CHECK(r1.verdict == Verdict::Holds);

    // N(x_1) on D^1 is anisotropic
    auto one = QuatElement::scalar(A, Rat(1));
    auto line = DSubspace::from_basis({{one}});
    SearchConfig cfg;
    cfg.steps = 1;
    auto none = thmB2_search(HermitianForm(DMat{{one}}), line, O, {}, {}, cfg);
    CHECK(!none.found);
  }
}
