#include "doctest.h"

#include "heightcount/error.hpp"
#include "heightcount/heights.hpp"

#include <random>

using namespace hc;

namespace {

NfElement q(const FieldPtr& K, const Rat& r) { return NfElement::from_rat(K, r); }
NfElement el(const FieldPtr& K, std::initializer_list<Rat> c) { return NfElement(K, RatVec(c)); }

NfElement rnd(const FieldPtr& K, std::mt19937& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  RatVec c;
  for (int i = 0; i < K->degree(); ++i) c.push_back(make_rat(num(rng), den(rng)));
  return NfElement(K, c);
}

NfElement rnd_int(const FieldPtr& K, std::mt19937& rng, int range = 4) {
  std::uniform_int_distribution<int> num(-range, range);
  RatVec t;
  for (int i = 0; i < K->degree(); ++i) t.push_back(Rat(num(rng)));
  return NfElement::from_integral(K, t);
}

NfMat matmul(const NfMat& A, const NfMat& B) {
  const FieldPtr& K = A[0][0].field();
  NfMat C(A.size(), NfVec(B[0].size(), q(K, 0)));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < B[0].size(); ++j)
      for (std::size_t k = 0; k < B.size(); ++k) C[i][j] = C[i][j] + A[i][k] * B[k][j];
  return C;
}

bool near(const HeightValue& h, double v) { return std::abs(h.to_double() - v) < 1e-12 * std::max(1.0, v); }

std::vector<FieldPtr> fields() {
  return {NumberField::rationals(), NumberField::quadratic(2), NumberField::quadratic(5), NumberField::quadratic(-1),
          NumberField::quadratic(-3)};
}

}  // namespace

TEST_SUITE("heights_nf") {
  TEST_CASE("projective height examples") {
    auto Q = NumberField::rationals();
    auto K2 = NumberField::quadratic(2);
    CHECK(height_H({q(Q, 1), q(Q, 0)}).compare_to(1) == Cmp::Equal);
    CHECK(height_H({q(K2, 1), q(K2, 0)}).compare_to(1) == Cmp::Equal);
    CHECK(height_H({q(Q, 3), q(Q, 2)}).compare_to(3) == Cmp::Equal);
    HeightValue h = height_H({q(K2, 1), NfElement::theta(K2)});
    CHECK(h.power().exact);
    // both real places contribute max(1, sqrt 2)
    CHECK(*h.power().exact == QuadSurd(2));
    CHECK(near(h, std::sqrt(2.0)));
    CHECK_THROWS_AS(height_H({q(Q, 0), q(Q, 0)}), Error);
  }

  TEST_CASE("inhomogeneous height examples") {
    auto Q = NumberField::rationals();
    auto K5 = NumberField::quadratic(5);
    CHECK(height_h({q(Q, 0)}).compare_to(1) == Cmp::Equal);
    CHECK(height_h({}).compare_to(1) == Cmp::Equal);
    CHECK(height_h({q(Q, Rat(3, 2))}).compare_to(3) == Cmp::Equal);
    HeightValue hp = height_h({el(K5, {Rat(1, 2), Rat(1, 2)})});
    // h(phi)^2 = phi
    CHECK(*hp.power().exact == QuadSurd(Rat(1, 2), Rat(1, 2), Int(5)));
    CHECK(near(hp, std::sqrt((1 + std::sqrt(5.0)) / 2)));
  }

  TEST_CASE("euclidean height examples") {
    auto Q = NumberField::rationals();
    CHECK(height_H2({q(Q, 1), q(Q, 0), q(Q, 0)}).compare_to(1) == Cmp::Equal);
    CHECK(near(height_H2({q(Q, 1), q(Q, 1)}), std::sqrt(2.0)));
    CHECK(height_H2({q(Q, 3), q(Q, 4)}).compare_to(5) == Cmp::Equal);
    CHECK(height_H2({q(Q, 6), q(Q, 8)}).compare_to(5) == Cmp::Equal);
  }

  TEST_CASE("grassmann coordinates and subspace heights") {
    auto Q = NumberField::rationals();
    auto g = grassmann({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 1)}, {q(Q, 0), q(Q, 0)}});
    REQUIRE(g.size() == 3);
    CHECK(g[0] == q(Q, 1));
    CHECK(g[1].is_zero());
    CHECK(g[2].is_zero());
    g = grassmann({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 1)}, {q(Q, 1), q(Q, 1)}});
    CHECK(g[0] == q(Q, 1));
    CHECK(g[1] == q(Q, 1));
    CHECK(g[2] == q(Q, -1));
    g = grassmann({{q(Q, 7)}, {q(Q, -2)}});
    CHECK(g[0] == q(Q, 7));
    CHECK(g[1] == q(Q, -2));
    CHECK(subspace_height({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 1)}, {q(Q, 0), q(Q, 0)}}).compare_to(1) == Cmp::Equal);
    CHECK(near(subspace_height({{q(Q, 1)}, {q(Q, 1)}}), std::sqrt(2.0)));
    HeightValue h3 = subspace_height({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 1)}, {q(Q, 1), q(Q, 1)}});
    CHECK(h3.compare_to(2) == Cmp::Less);
    CHECK(near(h3, std::sqrt(3.0)));
    CHECK_THROWS_AS(grassmann({{q(Q, 1), q(Q, 2)}, {q(Q, 2), q(Q, 4)}}), Error);
  }

  TEST_CASE("finite parts") {
    auto Q = NumberField::rationals();
    auto K5 = NumberField::quadratic(5);
    auto K2 = NumberField::quadratic(2);
    CHECK(hfin_integral({q(K5, 1), el(K5, {Rat(3), Rat(7)})}) == 1);
    CHECK(hfin_integral({q(Q, 2), q(Q, 4)}) == Rat(1, 2));
    CHECK(hfin_integral({NfElement::theta(K5), q(K5, 5)}) == Rat(1, 5));
    CHECK_THROWS_AS(hfin_integral({q(Q, Rat(1, 2))}), Error);
    CHECK(hfin_matrix({{q(Q, 1), q(Q, 0), q(Q, 0)}}) == 1);
    CHECK(hfin_matrix({{q(Q, 2), q(Q, 0)}}) == Rat(1, 2));
    CHECK(hfin_matrix({{NfElement::theta(K2), q(K2, 2)}}) == Rat(1, 2));
    CHECK(hfin_matrix({{q(Q, 2), q(Q, 0)}, {q(Q, 0), q(Q, 3)}}) == Rat(1, 6));
    CHECK_THROWS_AS(hfin_matrix({{q(Q, 1), q(Q, 2)}, {q(Q, 2), q(Q, 4)}}), Error);
  }

  TEST_CASE("integral scaling") {
    auto Q = NumberField::rationals();
    auto s = find_integral_scaling({q(Q, Rat(1, 2)), q(Q, 1)});
    CHECK(abs_rat(s.a.coeffs()[0]) == 2);
    CHECK(s.H.compare_to(2) == Cmp::Equal);
    CHECK(height_h(s.ax).compare_to(2) == Cmp::Equal);
    s = find_integral_scaling({q(Q, Rat(1, 3)), q(Q, Rat(2, 3))});
    CHECK(abs_rat(s.a.coeffs()[0]) == 3);
    CHECK(height_h(s.ax).compare_to(2) == Cmp::Equal);
    CHECK(abs_rat(find_integral_scaling({q(Q, 3), q(Q, 5)}).a.coeffs()[0]) == 1);

    // a unit-scaled vector in Q(sqrt 2) needs the unit loop
    auto K2 = NumberField::quadratic(2);
    NfElement eps = fundamental_unit(K2);
    NfVec x{eps.pow(-5), (eps * q(K2, 3)).pow(-5) * eps.pow(5)};
    auto r = find_integral_scaling(x);
    CHECK(compare(height_h(r.ax), height_H(x)) == Cmp::Equal);
    for (const auto& c : r.ax) CHECK(c.is_integral());

    auto K = NumberField::quadratic(-5);
    NfVec bad{q(K, 2), el(K, {Rat(1), Rat(1)})};
    try {
      find_integral_scaling(bad);
      FAIL("expected unsupported class");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Unsupported);
    }
  }

  TEST_CASE("form heights") {
    auto Q = NumberField::rationals();
    CHECK(form_height({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 1)}}).compare_to(1) == Cmp::Equal);
    CHECK(form_height({{q(Q, 1), q(Q, 0)}, {q(Q, 0), q(Q, 2)}}).compare_to(2) == Cmp::Equal);
    CHECK(form_height({{q(Q, 0), q(Q, 1)}, {q(Q, 1), q(Q, 0)}}).compare_to(1) == Cmp::Equal);
    CHECK_THROWS_AS(form_height({{q(Q, 0), q(Q, 1)}, {q(Q, 2), q(Q, 0)}}), Error);
  }

  TEST_CASE("scaling invariance and h >= H") {
    std::mt19937 rng(3);
    for (const auto& K : fields()) {
      for (int it = 0; it < 15; ++it) {
        NfVec x{rnd(K, rng), rnd(K, rng), rnd(K, rng)};
        if (x[0].is_zero() && x[1].is_zero() && x[2].is_zero()) continue;
        NfElement a = rnd(K, rng);
        if (a.is_zero()) continue;
        NfVec ax;
        for (auto& c : x) ax.push_back(a * c);
        HeightValue h1 = height_H(x), h2 = height_H(ax);
        CHECK(h1.finite * h1.power_finite() != 0);
        CHECK(compare(h1, h2) == Cmp::Equal);
        CHECK(compare(height_h(x), h1) != Cmp::Less);
        CHECK(compare(height_H2(x), h1) != Cmp::Less);
      }
    }
  }

  TEST_CASE("integral vectors with trivial content") {
    std::mt19937 rng(5);
    for (const auto& K : fields()) {
      for (int it = 0; it < 15; ++it) {
        NfVec x{q(K, 1), rnd_int(K, rng), rnd_int(K, rng)};
        HeightValue H = height_H(x);
        CHECK(H.finite == 1);
        CHECK(H.compare_to(1) != Cmp::Less);
        CHECK(compare(height_H2(x), H) != Cmp::Less);
      }
    }
  }

  TEST_CASE("basis independence of subspace heights") {
    std::mt19937 rng(9);
    for (const auto& K : {NumberField::quadratic(2), NumberField::quadratic(-3)}) {
      NfMat X{{q(K, 1), rnd(K, rng)}, {rnd(K, rng), q(K, 1)}, {rnd(K, rng), rnd(K, rng)}, {rnd(K, rng), rnd(K, rng)}};
      HeightValue h = subspace_height(X);
      int done = 0;
      while (done < 20) {
        NfMat C{{rnd(K, rng), rnd(K, rng)}, {rnd(K, rng), rnd(K, rng)}};
        if (nf_det(C).is_zero()) continue;
        CHECK(compare(subspace_height(matmul(X, C)), h) == Cmp::Equal);
        ++done;
      }
    }
  }

  TEST_CASE("Cauchy-Binet per channel") {
    std::mt19937 rng(13);
    for (const auto& K : {NumberField::rationals(), NumberField::quadratic(5), NumberField::quadratic(-1)}) {
      for (int it = 0; it < 5; ++it) {
        NfMat X{{rnd(K, rng), rnd(K, rng)}, {rnd(K, rng), rnd(K, rng)}, {rnd(K, rng), rnd(K, rng)}};
        NfVec g;
        try {
          g = grassmann(X);
        } catch (const Error&) {
          continue;
        }
        for (int v = 0; v < K->places(); ++v) {
          bool cplx = v >= K->r1();
          NfMat G(2, NfVec(2, q(K, 0)));
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
              for (int n = 0; n < 3; ++n) G[i][j] = G[i][j] + (cplx ? X[n][i].conjugate() : X[n][i]) * X[n][j];
          NfElement dg = nf_det(G);
          Ball lhs = cplx ? dg.channel(0).eval(128) : dg.channel(v).eval(128);
          Ball rhs = Ball::from_int(0, 128);
          for (const auto& m : g) {
            if (cplx) {
              rhs = rhs + m.place_abs_pow(v).eval(128);
            } else {
              Ball c = m.channel(v).eval(128);
              rhs = rhs + c * c;
            }
          }
          CHECK(lhs.overlaps(rhs));
        }
      }
    }
  }
}
