#include <doctest.h>

#include <random>

#include "sublap/assemble.hpp"
#include "sublap/bundled.hpp"
#include "sublap/eigensolver.hpp"

using namespace sublap;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

DomainSpec unit_square() {
  DomainSpec s;
  s.lo = {Q(0), Q(0)};
  s.hi = {Q(1), Q(1)};
  return s;
}

DomainSpec unit_interval() {
  DomainSpec s;
  s.lo = {Q(0)};
  s.hi = {Q(1)};
  return s;
}

}  // namespace

TEST_CASE("1d assembly gives the textbook Dirichlet matrix") {
  FieldSystem sys;
  sys.dim = 1;
  sys.fields = {VectorFieldExpr::coordinate(1, 0)};
  sys.hormander_bound = 1;
  Grid grid(unit_interval(), {4});  // 3 interior nodes, h = 1/4
  auto op = assemble_operator(sys, grid);
  double s = 16.0;  // 1/h^2
  Eigen::MatrixXd A(op.matrix);
  Eigen::MatrixXd expect(3, 3);
  expect << 2 * s, -s, 0, -s, 2 * s, -s, 0, -s, 2 * s;
  CHECK((A - expect).cwiseAbs().maxCoeff() == 0.0);
  // the derivative matrix itself has one row per incident edge
  auto G = discretize_field(sys.fields[0], grid);
  CHECK(G.rows == 4);
  CHECK(G.cols == 3);
}

TEST_CASE("unit square assembly is the 5-point stencil") {
  auto lap = bundled_system("laplacian2d").system;
  Grid grid(unit_square(), {8, 8});
  auto op = assemble_operator(lap, grid);
  double s = 64.0;
  // pick the center node and inspect its row
  int center = -1;
  for (int i = 0; i < grid.size(); ++i) {
    auto p = grid.node_point_d(grid.node(i));
    if (std::abs(p[0] - 0.5) < 1e-12 && std::abs(p[1] - 0.5) < 1e-12) center = i;
  }
  REQUIRE(center >= 0);
  int nnz = 0;
  for (SparseMat::InnerIterator it(op.matrix, center); it; ++it) {
    if (it.row() == center)
      CHECK(it.value() == 4 * s);
    else
      CHECK(it.value() == -s);
    ++nnz;
  }
  CHECK(nnz == 5);
}

TEST_CASE("zero field assembles the zero operator") {
  FieldSystem sys;
  sys.dim = 2;
  sys.fields = {VectorFieldExpr::zero(2)};
  sys.hormander_bound = 1;
  Grid grid(unit_square(), {8, 8});
  auto op = assemble_operator(sys, grid);
  CHECK(op.matrix.nonZeros() == 0);
  auto G = discretize_field(sys.fields[0], grid);
  CHECK(G.triplets.empty());
}

TEST_CASE("assembled operators are bitwise symmetric and PSD") {
  std::mt19937 rng(11);
  std::normal_distribution<double> nd;
  for (const char* name : {"grushin2d", "heisenberg1"}) {
    auto b = bundled_system(name);
    std::vector<int> res(b.system.dim, b.system.dim == 2 ? 24 : 10);
    Grid grid(b.domain, res);
    auto op = assemble_operator(b.system, grid);
    SparseMat D = SparseMat(op.matrix.transpose()) - op.matrix;
    double asym = 0;
    for (int c = 0; c < D.outerSize(); ++c)
      for (SparseMat::InnerIterator it(D, c); it; ++it) asym = std::max(asym, std::abs(it.value()));
    CHECK(asym == 0.0);
    double anorm = 0;
    for (int c = 0; c < op.matrix.outerSize(); ++c)
      for (SparseMat::InnerIterator it(op.matrix, c); it; ++it)
        anorm = std::max(anorm, std::abs(it.value()));
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd u(op.size);
      for (int i = 0; i < op.size; ++i) u[i] = nd(rng);
      double quad = u.dot(op.matrix * u);
      CHECK(quad >= -1e-12 * anorm * u.squaredNorm());
    }
    CHECK(op.connected);
  }
}

TEST_CASE("eigenvalue convergence order of the square Laplacian is two") {
  auto lap = bundled_system("laplacian2d").system;
  double pi2 = M_PI * M_PI;
  std::vector<double> expect = {2 * pi2, 5 * pi2, 5 * pi2, 8 * pi2};
  std::vector<double> err;
  for (int r : {16, 32, 64}) {
    Grid grid(unit_square(), {r, r});
    auto op = assemble_operator(lap, grid);
    auto spec = smallest_k(op, 4, 1e-10, 1);
    double e = 0;
    for (int j = 0; j < 4; ++j) e = std::max(e, std::abs(spec.values[j] - expect[j]));
    err.push_back(e);
  }
  double order1 = std::log2(err[0] / err[1]);
  double order2 = std::log2(err[1] / err[2]);
  CHECK(order1 >= 1.9);
  CHECK(order2 >= 1.9);
}

TEST_CASE("scaling a field by c multiplies the matrix by c^2 exactly") {
  auto b = bundled_system("grushin2d");
  Grid grid(b.domain, {24, 24});
  auto op1 = assemble_operator(b.system, grid);
  FieldSystem scaled = b.system;
  for (auto& f : scaled.fields) f = f.scaled(Q(2));
  auto op4 = assemble_operator(scaled, grid);
  REQUIRE(op1.matrix.nonZeros() == op4.matrix.nonZeros());
  for (int c = 0; c < op1.matrix.outerSize(); ++c) {
    SparseMat::InnerIterator it1(op1.matrix, c), it4(op4.matrix, c);
    for (; it1; ++it1, ++it4) CHECK(it4.value() == 4.0 * it1.value());
  }
}

TEST_CASE("Grushin on the disc has a positive bottom eigenvalue") {
  auto b = bundled_system("grushin2d");
  Grid grid(b.domain, {48, 48});
  auto op = assemble_operator(b.system, grid);
  CHECK(op.connected);
  auto spec = smallest_k(op, 3, 1e-8, 7);
  CHECK(spec.values[0] > 0);
}

TEST_CASE("matrix dump is plain coordinate text") {
  FieldSystem sys;
  sys.dim = 1;
  sys.fields = {VectorFieldExpr::coordinate(1, 0)};
  sys.hormander_bound = 1;
  Grid grid(unit_interval(), {4});
  auto op = assemble_operator(sys, grid);
  std::string path = "/tmp/sublap_test_matrix.coo";
  op.dump_coo(path);
  FILE* f = fopen(path.c_str(), "r");
  REQUIRE(f);
  long r, c;
  double v;
  int lines = 0;
  while (fscanf(f, "%ld %ld %lf", &r, &c, &v) == 3) ++lines;
  fclose(f);
  CHECK(lines == (int)op.matrix.nonZeros());
}
