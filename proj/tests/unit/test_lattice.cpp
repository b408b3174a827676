#include "doctest.h"

#include "heightcount/error.hpp"
#include "heightcount/lattice.hpp"

#include <random>

using namespace hc;

namespace {

RealLattice cols(std::vector<std::vector<long>> c) {
  std::vector<RatVec> v;
  for (auto& col : c) {
    RatVec r;
    for (long x : col) r.push_back(Rat(x));
    v.push_back(r);
  }
  return RealLattice::from_columns(v);
}

double up(const Real& r) { return r.eval(128).upper().get_d(); }
double lo(const Real& r) { return r.eval(128).lower().get_d(); }

// Independent oracle: exact scan of the coefficient box given by the
// rational inverse of a nonsingular row block.
std::uint64_t brute_count(const RatMat& B, const Rat& R) {
  const std::size_t N = B.rows, L = B.cols;
  std::vector<std::size_t> rows;
  // greedy independent rows
  for (std::size_t i = 0; i < N && rows.size() < L; ++i) {
    RatMat t(rows.size() + 1, L);
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t j = 0; j < L; ++j) t(a, j) = B(rows[a], j);
    for (std::size_t j = 0; j < L; ++j) t(rows.size(), j) = B(i, j);
    if (rank(t) == rows.size() + 1) rows.push_back(i);
  }
  RatMat om(L, L);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t j = 0; j < L; ++j) om(a, j) = B(rows[a], j);
  RatMat inv = *inverse(om);
  std::vector<Int> bnd(L);
  for (std::size_t i = 0; i < L; ++i) {
    Rat s = 0;
    for (std::size_t k = 0; k < L; ++k) s += abs_rat(inv(i, k));
    bnd[i] = floor_rat(s * R);
  }
  std::vector<Int> m(L);
  for (std::size_t i = 0; i < L; ++i) m[i] = -bnd[i];
  std::uint64_t n = 0;
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < N && ok; ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < L; ++j) s += B(i, j) * Rat(m[j]);
      ok = abs_rat(s) <= R;
    }
    if (ok) ++n;
    std::size_t j = 0;
    while (j < L && m[j] == bnd[j]) m[j] = -bnd[j], ++j;
    if (j == L) break;
    ++m[j];
  }
  return n;
}

RatMat random_basis(std::mt19937& rng, std::size_t N, std::size_t L, int range) {
  std::uniform_int_distribution<int> e(-range, range);
  while (true) {
    RatMat b(N, L);
    for (auto& x : b.a) x = e(rng);
    if (rank(b) == L) return b;
  }
}

}  // namespace

TEST_SUITE("lattice_count") {
  TEST_CASE("enumeration examples") {
    CHECK(count_cube(cols({{1, 0}, {0, 1}}), 1) == 9);
    auto pts = enumerate_cube(cols({{2}}), 3);
    CHECK(pts.size() == 3);
    CHECK(count_cube(cols({{1, 1}, {1, -1}}), 1) == 5);
    CHECK(count_cube(cols({{2, 0}, {0, 2}}), 4) == 25);
    CHECK(count_cube(cols({{2, 0}, {0, 2}}), 2) == 9);
    CHECK(count_cube(cols({{1, 0}, {0, 1}}), Rat(1, 2)) == 1);
    CHECK(count_cube(cols({{1, 0}, {0, 1}}), 0) == 1);
  }

  TEST_CASE("enumeration matches a brute-force oracle") {
    std::mt19937 rng(17);
    for (int it = 0; it < 60; ++it) {
      std::size_t N = 1 + rng() % 4, L = 1 + rng() % N;
      RatMat B = random_basis(rng, N, L, 4);
      if (it % 3 == 0)
        for (auto& x : B.a) x /= 2;
      Rat R = make_rat(1 + rng() % 12, 1 + rng() % 2);
      CHECK(count_cube(RealLattice::from_rational(B), R) == brute_count(B, R));
    }
  }

  TEST_CASE("quadratic entries and partitions") {
    QuadSurd s2(Rat(0), Rat(1), Int(2));
    CertMat b{{CertReal(1), CertReal(s2)}, {CertReal(1), CertReal(-s2)}};
    RealLattice lat = RealLattice::from_cert(b);
    CHECK_FALSE(lat.is_rational());
    for (int R : {1, 3, 7}) {
      std::uint64_t oracle = 0;
      for (long a = -3 * R; a <= 3 * R; ++a)
        for (long c = -3 * R; c <= 3 * R; ++c) {
          double x = a + c * std::sqrt(2.0), y = a - c * std::sqrt(2.0);
          if (std::fabs(x) <= R + 1e-12 && std::fabs(y) <= R + 1e-12) ++oracle;
        }
      CHECK(count_cube(lat, R) == oracle);
      std::uint64_t split = 0;
      for (unsigned p = 0; p < 3; ++p) split += count_cube(lat, R, Partition{p, 3});
      CHECK(split == oracle);
    }
    std::uint64_t split = 0;
    for (unsigned p = 0; p < 4; ++p) split += count_cube(cols({{1, 2}, {3, -1}}), 20, Partition{p, 4});
    CHECK(split == count_cube(cols({{1, 2}, {3, -1}}), 20));
    CHECK(up(lat.det()) == doctest::Approx(2 * std::sqrt(2.0)));
  }

  TEST_CASE("sup-norm minimum") {
    CHECK(*supnorm_min(cols({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).c.exact == QuadSurd(1));
    CHECK(*supnorm_min(cols({{2, 0}, {0, 3}})).c.exact == QuadSurd(2));
    CHECK(*supnorm_min(cols({{1, 1}, {1, -1}})).c.exact == QuadSurd(1));
    CHECK(*supnorm_min(cols({{5, 3}, {3, 2}})).c.exact == QuadSurd(1));
    CHECK(*supnorm_min(cols({{7, 0}, {3, 1}})).c.exact == QuadSurd(2));
  }

  TEST_CASE("bound examples") {
    Real one(1);
    CHECK(lo(bound_upper(2, 2, one, one, 1, false)) == doctest::Approx(9));
    CHECK(lo(bound_upper(4, 2, one, one, 1, false)) == doctest::Approx(27));
    CHECK(lo(bound_upper(2, 2, Real(4), Real(2), 2, true)) == doctest::Approx(9));
    // the integral branch alone
    CHECK(lo(bound_upper(3, 2, Real(4), Real(1), 2, true)) <= 75);
    CHECK(lo(bound_lower(2, one, one, 2)) == doctest::Approx(1));
    CHECK(lo(bound_lower(1, one, one, 1)) == doctest::Approx(1));
    CHECK(lo(bound_lower(2, Real(4), Real(2), 4)) == doctest::Approx(1));
    try {
      bound_lower(2, Real(4), Real(1), 1);
      FAIL("expected not applicable");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotApplicable);
    }
  }

  TEST_CASE("integral branch of the upper bound") {
    // 2Z^2: (2*1*2/4 + 1)(2*2 + 1) = 10 from that branch
    Real v = bound_upper(2, 2, Real(4), Real(1), 2, true);
    CHECK(lo(v) == doctest::Approx(10));
    CHECK(count_cube(cols({{2, 0}, {0, 2}}), 2) <= 10);
  }

  TEST_CASE("max Grassmann sublattice") {
    auto g = max_grassmann_sublattice(cols({{1, 0, 0}, {0, 1, 0}}));
    CHECK(*g.det_omega.exact == QuadSurd(1));
    CHECK(g.rows == std::vector<std::size_t>{0, 1});
    CHECK(*max_grassmann_sublattice(cols({{1, 0, 1}, {0, 1, 1}})).det_omega.exact == QuadSurd(1));
    CHECK(*max_grassmann_sublattice(cols({{2, 0, 0}, {0, 1, 0}})).det_omega.exact == QuadSurd(2));
  }

  TEST_CASE("sandwich, determinant and projection properties") {
    std::mt19937 rng(2024);
    int tested = 0, attempts = 0;
    while (tested < 100 && attempts < 20000) {
      ++attempts;
      std::size_t N = 1 + rng() % 5, L = 1 + rng() % N;
      RealLattice lat = RealLattice::from_rational(random_basis(rng, N, L, 9));
      Real det = lat.det();
      // cheap screen before the minimum search
      if (up(det) > 400 || up(det) < 1e-9) continue;
      SupMin sm = supnorm_min(lat);
      Real c = sm.c.approx;
      Real thr = lower_threshold(L, det, c);
      Rat R0 = Rat(ceil_rat(thr.eval(128).upper()));
      Real est = bound_upper(N, L, det, c, R0 * 2, true);
      if (up(est) > 2e5) continue;
      MaxGrassmann mg = max_grassmann_sublattice(lat);
      // sublattice determinant sandwich
      CHECK(compare(mg.det_omega.approx, det) != Cmp::Greater);
      CHECK(up(det) <= up(Real::sqrt_of(Rat(binomial(N, L))) * mg.det_omega.approx) * (1 + 1e-12));
      std::uint64_t prev = 0;
      for (Rat R : std::vector<Rat>{R0, Rat(R0 * Rat(4, 3)), Rat(R0 * Rat(5, 3)), Rat(R0 * 2)}) {
        std::uint64_t n = count_cube(lat, R);
        CHECK(n >= prev);
        prev = n;
        CHECK(lo(bound_upper(N, L, det, c, R, true)) >= static_cast<double>(n) * (1 - 1e-12));
        CHECK(up(bound_lower(L, det, c, R)) <= static_cast<double>(n) * (1 + 1e-12));
        CHECK(n >= count_cube(mg.omega, R / Rat(static_cast<long>(L))));
      }
      ++tested;
    }
    CHECK(tested == 100);
  }
}
