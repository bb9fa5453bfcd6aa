#include <doctest.h>

#include <random>

#include "sublap/bundled.hpp"
#include "sublap/indices.hpp"

using namespace sublap;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

VectorFieldExpr poly_field(int n, std::vector<Polynomial> comps) {
  std::vector<Coefficient> cs;
  for (auto& p : comps) cs.emplace_back(std::move(p));
  return VectorFieldExpr(std::move(cs));
}

// random polynomial field of degree <= 3 with small rational coefficients
VectorFieldExpr random_field(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-3, 3), den(1, 3), deg(0, 3), var(0, n - 1);
  VectorFieldExpr f(n);
  for (int k = 0; k < n; ++k) {
    Polynomial p(n);
    int terms = 1 + (rng() % 3);
    for (int t = 0; t < terms; ++t) {
      Polynomial::Expo e(n, 0);
      int d = deg(rng);
      for (int i = 0; i < d; ++i) e[var(rng)] += 1;
      p.add_term(Rational(coef(rng), den(rng)), e);
    }
    f.component(k) = Coefficient(p);
  }
  return f;
}

}  // namespace

TEST_CASE("bracket of commuting constant fields is zero") {
  auto dx = VectorFieldExpr::coordinate(2, 0);
  auto dy = VectorFieldExpr::coordinate(2, 1);
  CHECK(bracket(dx, dy).is_zero());
}

TEST_CASE("bracket of d1 with x1 d2 is d2") {
  auto dx = VectorFieldExpr::coordinate(2, 0);
  auto f = poly_field(2, {Polynomial(2), Polynomial::monomial(2, 1, {1, 0})});
  auto b = bracket(dx, f);
  CHECK(b.component(0).is_zero());
  CHECK(b.component(1).poly() == Polynomial::constant(2, 1));
}

TEST_CASE("Heisenberg bracket is -4 dz") {
  auto sys = bundled_system("heisenberg1").system;
  auto b = bracket(sys.fields[0], sys.fields[1]);
  CHECK(b.component(0).is_zero());
  CHECK(b.component(1).is_zero());
  CHECK(b.component(2).poly() == Polynomial::constant(3, -4));
}

TEST_CASE("bracket dimension mismatch throws") {
  CHECK_THROWS(bracket(VectorFieldExpr::coordinate(2, 0), VectorFieldExpr::coordinate(3, 0)));
}

TEST_CASE("bracket antisymmetry, exact, random fields") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + (trial % 2);
    auto v = random_field(n, rng), w = random_field(n, rng);
    auto s = bracket(v, w) + bracket(w, v);
    CHECK(s.is_zero());
  }
}

TEST_CASE("Jacobi identity, exact, random fields") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + (trial % 2);
    auto x = random_field(n, rng), y = random_field(n, rng), z = random_field(n, rng);
    auto j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
    CHECK(j.is_zero());
  }
}

TEST_CASE("commutator enumeration for the planar Grushin pair") {
  auto sys = bundled_system("grushin2d").system;
  auto basis = enumerate_commutators(sys, 2);
  REQUIRE(basis.size() == 5);  // two generators, three degree-2 words (i <= j)
  CHECK(basis[0].degree == 1);
  CHECK(basis[1].degree == 1);
  CHECK(basis[0].expr == sys.fields[0]);
  CHECK(basis[1].expr == sys.fields[1]);
  int i11 = basis.find_word({1, 1});
  int i12 = basis.find_word({1, 2});
  int i22 = basis.find_word({2, 2});
  REQUIRE(i11 >= 0);
  REQUIRE(i12 >= 0);
  REQUIRE(i22 >= 0);
  CHECK(basis[i11].zero);
  CHECK(basis[i22].zero);
  CHECK_FALSE(basis[i12].zero);
  CHECK(basis[i12].expr.component(1).poly() == Polynomial::constant(2, 1));
}

TEST_CASE("single field enumeration keeps zero brackets flagged") {
  FieldSystem sys;
  sys.dim = 1;
  sys.fields = {VectorFieldExpr::coordinate(1, 0)};
  sys.hormander_bound = 3;
  auto basis = enumerate_commutators(sys, 3);
  for (int i = 0; i < basis.size(); ++i)
    if (basis[i].degree >= 2) CHECK(basis[i].zero);
  CHECK(basis.size() == 3);  // (1), (1,1), (1,1,1)
}

TEST_CASE("Heisenberg degree-2 entries include the central direction") {
  auto sys = bundled_system("heisenberg1").system;
  auto basis = enumerate_commutators(sys, 2);
  int i12 = basis.find_word({1, 2});
  REQUIRE(i12 >= 0);
  CHECK(basis[i12].expr.component(2).poly() == Polynomial::constant(3, -4));
}

TEST_CASE("lambda_I on the Grushin basis") {
  auto sys = bundled_system("grushin2d").system;
  auto basis = enumerate_commutators(sys, 2);
  int i12 = basis.find_word({1, 2});
  SUBCASE("degree-1 pair gives x1") {
    auto det = lambda_I(basis, {0, 1}, {Q(2), Q(0)});
    CHECK(det.is_exact());
    CHECK(det.q == 2);
  }
  SUBCASE("repeated index gives zero") {
    auto det = lambda_I(basis, {1, 1}, {Q(5), Q(7)});
    CHECK(det.is_exact_zero());
  }
  SUBCASE("generator with step-2 direction gives 1 anywhere") {
    auto det = lambda_I(basis, {0, i12}, {Q(-9, 7), Q(22, 3)});
    CHECK(det.q == 1);
  }
}

TEST_CASE("capital_lambda matches the closed form for planar Grushin") {
  auto sys = bundled_system("grushin2d").system;
  auto basis = enumerate_commutators(sys, 2);
  SUBCASE("exact at rational points: 2(|x1| r^2 + r^3)") {
    for (auto& x1 : {Q(0), Q(1, 2), Q(-3, 4), Q(5)}) {
      for (auto& r : {Q(1, 2), Q(1, 7), Q(2)}) {
        Rational expect = 2 * (rational_abs(x1) * r * r + r * r * r);
        CHECK(capital_lambda_exact(basis, {x1, Q(3)}, r) == expect);
      }
    }
  }
  SUBCASE("value at the origin, r = 1/2") {
    CHECK(capital_lambda_exact(basis, {Q(0), Q(0)}, Q(1, 2)) == Q(1, 4));
  }
  SUBCASE("double path agrees") {
    double v = capital_lambda(basis, {Q(1, 2), Q(0)}, 0.25);
    CHECK(v == doctest::Approx(2 * (0.5 * 0.0625 + 0.015625)).epsilon(1e-14));
  }
}

TEST_CASE("capital_lambda for a single straight field is r") {
  FieldSystem sys;
  sys.dim = 1;
  sys.fields = {VectorFieldExpr::coordinate(1, 0)};
  sys.hormander_bound = 1;
  auto basis = enumerate_commutators(sys, 1);
  CHECK(capital_lambda_exact(basis, {Q(3, 7)}, Q(2, 5)) == Q(2, 5));
}

TEST_CASE("capital_lambda positivity and monotonicity at Hormander points") {
  for (const char* name : {"grushin2d", "heisenberg1", "grushin3d"}) {
    auto b = bundled_system(name);
    auto basis = enumerate_commutators(b.system, b.system.hormander_bound);
    for (auto& x : analysis_samples(b, 4)) {
      double prev = 0;
      for (double r : {0.25, 0.5, 1.0, 2.0}) {
        double v = capital_lambda(basis, x, r);
        CHECK(v > 0);
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("log Lambda / log r slope tends to nu(x) as r -> 0") {
  auto b = bundled_system("grushin2d");
  auto basis = enumerate_commutators(b.system, 2);
  for (auto& x : {RationalVec{Q(0), Q(1, 4)}, RationalVec{Q(1, 2), Q(0)}}) {
    int nu = point_indices(basis, x).nu;
    double l1 = capital_lambda(basis, x, 1e-6), l2 = capital_lambda(basis, x, 1e-3);
    double slope = (std::log(l2) - std::log(l1)) / (std::log(1e-3) - std::log(1e-6));
    CHECK(std::abs(slope - nu) < 1e-3);
  }
}

TEST_CASE("point indices on the bundled systems") {
  SUBCASE("Grushin off the line") {
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    auto pi = point_indices(basis, {Q(1), Q(0)});
    CHECK(pi.layer_dims == std::vector<int>{2, 2});
    CHECK(pi.nu == 2);
    CHECK(pi.hormander_ok);
  }
  SUBCASE("Grushin on the line") {
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    auto pi = point_indices(basis, {Q(0), Q(5)});
    CHECK(pi.layer_dims == std::vector<int>{1, 2});
    CHECK(pi.nu == 3);
  }
  SUBCASE("Heisenberg everywhere") {
    auto b = bundled_system("heisenberg1");
    auto basis = enumerate_commutators(b.system, 2);
    for (auto& x : b.points_H) {
      auto pi = point_indices(basis, x);
      CHECK(pi.layer_dims == std::vector<int>{2, 3});
      CHECK(pi.nu == 4);
    }
  }
  SUBCASE("analytic system on and off the cylinder") {
    auto b = bundled_system("example82");
    auto basis = enumerate_commutators(b.system, 2);
    CHECK(point_indices(basis, {Q(0), Q(0), Q(-1, 2)}).nu == 4);
    CHECK(point_indices(basis, {Q(0), Q(0), Q(1, 2)}).nu == 3);
  }
}

TEST_CASE("nu via determinants agrees with layer dimensions") {
  SUBCASE("Grushin values") {
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    CHECK(nu_via_determinants(basis, {Q(1), Q(0)}) == 2);
    CHECK(nu_via_determinants(basis, {Q(0), Q(0)}) == 3);
  }
  SUBCASE("Heisenberg is 4 everywhere") {
    auto b = bundled_system("heisenberg1");
    auto basis = enumerate_commutators(b.system, 2);
    CHECK(nu_via_determinants(basis, {Q(1, 3), Q(-2, 5), Q(1, 9)}) == 4);
  }
  SUBCASE("cross-check property at random rational points") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-64, 64);
    for (const char* name : {"grushin2d", "heisenberg1", "grushin3d"}) {
      auto b = bundled_system(name);
      auto basis = enumerate_commutators(b.system, b.system.hormander_bound);
      for (int t = 0; t < 40; ++t) {
        RationalVec x;
        for (int k = 0; k < b.system.dim; ++k) x.push_back(Rational(num(rng), 64));
        auto pi = point_indices(basis, x);
        REQUIRE(pi.hormander_ok);
        CHECK(pi.nu == nu_via_determinants(basis, x));
      }
    }
  }
}

TEST_CASE("Hormander failure raises") {
  FieldSystem sys;
  sys.dim = 2;
  sys.fields = {VectorFieldExpr::coordinate(2, 0)};
  sys.hormander_bound = 2;
  auto basis = enumerate_commutators(sys, 2);
  CHECK_THROWS(nu_via_determinants(basis, {Q(1), Q(1)}));
  CHECK_FALSE(point_indices(basis, {Q(1), Q(1)}).hormander_ok);
}

TEST_CASE("metivier index over sample grids") {
  SUBCASE("Grushin grid crossing the line") {
    auto b = bundled_system("grushin2d");
    auto basis = enumerate_commutators(b.system, 2);
    std::vector<RationalVec> samples;
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) samples.push_back({Q(i, 4), Q(j, 4)});
    auto mi = metivier_index(basis, samples);
    CHECK(mi.nu_tilde == 3);
    for (size_t s = 0; s < samples.size(); ++s)
      CHECK(mi.h_flags[s] == (samples[s][0] == 0));
  }
  SUBCASE("Heisenberg: all samples attain the max") {
    auto b = bundled_system("heisenberg1");
    auto basis = enumerate_commutators(b.system, 2);
    auto mi = metivier_index(basis, b.points_H);
    CHECK(mi.nu_tilde == 4);
    for (bool f : mi.h_flags) CHECK(f);
  }
  SUBCASE("analytic system: flags exactly on the cylinder") {
    auto b = bundled_system("example82");
    auto basis = enumerate_commutators(b.system, 2);
    std::vector<RationalVec> samples = b.points_H;
    samples.insert(samples.end(), b.points_off_H.begin(), b.points_off_H.end());
    auto mi = metivier_index(basis, samples);
    CHECK(mi.nu_tilde == 4);
    for (size_t s = 0; s < samples.size(); ++s) CHECK(mi.h_flags[s] == (s < b.points_H.size()));
  }
}

TEST_CASE("layer constancy check") {
  auto gr = bundled_system("grushin2d");
  auto gb = enumerate_commutators(gr.system, 2);
  std::vector<RationalVec> straddle = {{Q(0), Q(0)}, {Q(1, 2), Q(0)}};
  auto flags = metivier_condition_check(gb, straddle);
  CHECK_FALSE(flags[0]);  // first layer dimension jumps across the line

  auto he = bundled_system("heisenberg1");
  auto hb = enumerate_commutators(he.system, 2);
  auto hf = metivier_condition_check(hb, he.points_H);
  for (bool f : hf) CHECK(f);

  FieldSystem lap = bundled_system("laplacian2d").system;
  auto lb = enumerate_commutators(lap, 1);
  auto lf = metivier_condition_check(lb, {{Q(1, 3), Q(1, 3)}, {Q(2, 3), Q(1, 7)}});
  for (bool f : lf) CHECK(f);
}

TEST_CASE("rescaling a generator leaves all indices unchanged") {
  std::mt19937 rng(5);
  for (const char* name : {"grushin2d", "heisenberg1"}) {
    auto b = bundled_system(name);
    FieldSystem scaled = b.system;
    scaled.fields[0] = scaled.fields[0].scaled(Q(-7, 3));
    auto basis0 = enumerate_commutators(b.system, 2);
    auto basis1 = enumerate_commutators(scaled, 2);
    std::uniform_int_distribution<int> num(-32, 32);
    for (int t = 0; t < 15; ++t) {
      RationalVec x;
      for (int k = 0; k < b.system.dim; ++k) x.push_back(Rational(num(rng), 64));
      auto p0 = point_indices(basis0, x);
      auto p1 = point_indices(basis1, x);
      CHECK(p0.layer_dims == p1.layer_dims);
      CHECK(p0.nu == p1.nu);
    }
  }
}
