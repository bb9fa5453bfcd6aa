#include <doctest.h>

#include "sublap/bundled.hpp"
#include "sublap/geometry_checks.hpp"

using namespace sublap;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("unit square grid node counts") {
  DomainSpec spec;
  spec.lo = {Q(0), Q(0)};
  spec.hi = {Q(1), Q(1)};
  CHECK(build_grid(spec, {8, 8}).size() == 49);
  CHECK(build_grid(spec, {16, 16}).size() == 225);
}

TEST_CASE("masked grid equals a brute-force node scan") {
  DomainSpec spec;
  spec.lo = {Q(-1), Q(-3, 2)};
  spec.hi = {Q(2), Q(3, 2)};
  // (x - 3/10)^2 + y^2 - 1
  spec.mask = Polynomial::monomial(2, 1, {2, 0}) + Polynomial::monomial(2, Q(-3, 5), {1, 0}) +
              Polynomial::monomial(2, 1, {0, 2}) + Polynomial::constant(2, Q(9, 100) - 1);
  Grid g = build_grid(spec, {64, 64});
  long count = 0;
  for (int i = 1; i < 64; ++i)
    for (int j = 1; j < 64; ++j) {
      Rational x = Q(-1) + Q(3, 64) * i;
      Rational y = Q(-3, 2) + Q(3, 64) * j;
      if (spec.mask->eval_rational({x, y}) < 0) ++count;
    }
  CHECK(g.size() == count);
  CHECK(g.size() > 0);
}

TEST_CASE("grid refinement does not lose interior nodes") {
  auto b = bundled_system("grushin2d");
  int prev = 0;
  for (int r : {16, 32, 64}) {
    int n = build_grid(b.domain, {r, r}).size();
    CHECK(n >= prev);
    prev = n;
  }
}

TEST_CASE("degenerate resolution raises empty interior") {
  DomainSpec spec;
  spec.lo = {Q(0), Q(0)};
  spec.hi = {Q(1), Q(1)};
  CHECK_THROWS_WITH_AS(build_grid(spec, {2, 2}),
                       doctest::Contains("empty interior"), std::runtime_error);
}

TEST_CASE("fully masked box raises empty interior") {
  DomainSpec spec;
  spec.lo = {Q(0), Q(0)};
  spec.hi = {Q(1), Q(1)};
  spec.mask = Polynomial::constant(2, 1);  // nowhere negative
  CHECK_THROWS_AS(build_grid(spec, {8, 8}), std::runtime_error);
}

TEST_CASE("characteristic check on the off-center disc is clean") {
  auto b = bundled_system("grushin2d");
  auto rep = characteristic_check(b.domain, b.system, 200);
  CHECK(rep.min_score > 0.05);
  CHECK_FALSE(rep.warning);
}

TEST_CASE("characteristic check flags the centered disc") {
  auto b = bundled_system("grushin2d");
  DomainSpec centered = b.domain;
  centered.mask = Polynomial::monomial(2, 1, {2, 0}) + Polynomial::monomial(2, 1, {0, 2}) +
                  Polynomial::constant(2, -1);
  auto rep = characteristic_check(centered, b.system, 400);
  CHECK(rep.min_score < 1e-3);
  // worst point should be near (0, +-1)
  CHECK(std::abs(rep.worst_point[0]) < 0.1);
  CHECK(std::abs(std::abs(rep.worst_point[1]) - 1.0) < 0.1);
}

TEST_CASE("full-rank constant frame scores exactly one") {
  auto lap = bundled_system("laplacian2d").system;
  DomainSpec disc;
  disc.lo = {Q(-2), Q(-2)};
  disc.hi = {Q(2), Q(2)};
  disc.mask = Polynomial::monomial(2, 1, {2, 0}) + Polynomial::monomial(2, 1, {0, 2}) +
              Polynomial::constant(2, -1);
  auto rep = characteristic_check(disc, lap, 100);
  CHECK(rep.min_score == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("vanishing mask gradient raises") {
  auto lap = bundled_system("laplacian2d").system;
  DomainSpec bad;
  bad.lo = {Q(-2), Q(-2)};
  bad.hi = {Q(2), Q(2)};
  // ((x^2+y^2-1))^2 has zero gradient on its zero set
  Polynomial circ = Polynomial::monomial(2, 1, {2, 0}) + Polynomial::monomial(2, 1, {0, 2}) +
                    Polynomial::constant(2, -1);
  bad.mask = circ * circ;
  CHECK_THROWS(characteristic_check(bad, lap, 100));
}

TEST_CASE("H measure verdicts across the bundled systems") {
  SUBCASE("Heisenberg: everything attains the index") {
    auto b = bundled_system("heisenberg1");
    auto basis = enumerate_commutators(b.system, 2);
    auto mh = measure_H(basis, b.domain, {6, 6, 6}, 4);
    CHECK(mh.fraction == 1.0);
    CHECK(mh.is_positive);
  }
  SUBCASE("planar Grushin: the line has measure zero") {
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    auto mh = measure_H(basis, b.domain, {16, 16}, 3);
    CHECK(mh.verdict == "zero");
    CHECK_FALSE(mh.is_positive);
  }
  SUBCASE("analytic system: the cylinder fraction of the reference cube") {
    auto b = bundled_system("example82");
    auto basis = enumerate_commutators(b.system, 2);
    auto mh = measure_H(basis, *b.h_reference_domain, {8, 8, 8}, 4);
    CHECK(mh.is_positive);
    // |H| / |D(2)| = pi (3/2)^2 / 64
    CHECK(mh.fraction == doctest::Approx(M_PI * 2.25 / 64.0).epsilon(0.06));
  }
}

TEST_CASE("integrability classification") {
  SUBCASE("planar Grushin diverges") {
    auto b = bundled_system("grushin2d");
    auto ca = condition_A_integral(b.system, b.domain, {256, 256});
    CHECK(ca.verdict == "divergent");
  }
  SUBCASE("3d Grushin family converges") {
    auto b = bundled_system("grushin3d");
    auto ca = condition_A_integral(b.system, b.domain, {48, 48, 48});
    CHECK(ca.verdict == "convergent");
    CHECK(ca.estimate > 0);
  }
  SUBCASE("constant frame integrates to the box volume exactly") {
    auto b = bundled_system("laplacian2d");
    for (int r : {16, 32}) {
      auto ca = condition_A_integral(b.system, b.domain, {r, r});
      CHECK(ca.verdict == "convergent");
      CHECK(ca.estimate == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  SUBCASE("too few fields diverges immediately") {
    auto b = bundled_system("heisenberg1");
    auto ca = condition_A_integral(b.system, b.domain, {8, 8, 8});
    CHECK(ca.verdict == "divergent");
    CHECK(ca.zero_denominator_set);
  }
  SUBCASE("divergence is consistent with a null degeneracy set") {
    // the one-way implication: integrability would force |H| = 0, so the
    // planar Grushin divergence must coexist with the zero verdict
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    auto ca = condition_A_integral(b.system, b.domain, {128, 128});
    auto mh = measure_H(basis, b.domain, {16, 16}, 3);
    if (ca.verdict == "convergent") CHECK_FALSE(mh.is_positive);
  }
}
