#include "sublap/bundled.hpp"

#include <cmath>
#include <stdexcept>

namespace sublap {

namespace {

Rational Q(long num, long den = 1) { return Rational(num, den); }

RationalVec pt(std::initializer_list<Rational> vs) { return RationalVec(vs); }

Polynomial mono(int n, const Rational& c, std::vector<uint32_t> e) {
  return Polynomial::monomial(n, c, e);
}

VectorFieldExpr field_from(int n, std::vector<Polynomial> comps) {
  std::vector<Coefficient> cs;
  for (auto& p : comps) cs.emplace_back(std::move(p));
  return VectorFieldExpr(std::move(cs));
}

BundledSystem make_laplacian2d() {
  BundledSystem b;
  b.name = "laplacian2d";
  b.system.dim = 2;
  b.system.hormander_bound = 1;
  b.system.fields = {VectorFieldExpr::coordinate(2, 0), VectorFieldExpr::coordinate(2, 1)};
  b.domain.lo = pt({Q(0), Q(0)});
  b.domain.hi = pt({Q(1), Q(1)});
  b.default_resolution = {128, 128};
  b.default_K = 150;
  b.nu_tilde = 2;
  b.nu_on_H = 2;
  b.nu_off_H = 2;
  b.points_H = {pt({Q(1, 2), Q(1, 2)}), pt({Q(1, 4), Q(3, 4)}), pt({Q(1, 8), Q(1, 8)})};
  b.points_off_H = {};
  b.conditionA_override = "convergent";
  b.volume = 1.0;
  return b;
}

BundledSystem make_grushin2d() {
  BundledSystem b;
  b.name = "grushin2d";
  b.system.dim = 2;
  b.system.hormander_bound = 2;
  b.system.fields = {VectorFieldExpr::coordinate(2, 0),
                     field_from(2, {Polynomial(2), mono(2, 1, {1, 0})})};
  // box holding the unit disc centered (3/10, 0); lattice lines hit x1 = 0
  // and x1 = 1/2 exactly at the default resolution
  b.domain.lo = pt({Q(-3, 4), Q(-6, 5)});
  b.domain.hi = pt({Q(33, 20), Q(6, 5)});
  // (x - 3/10)^2 + y^2 - 1
  Polynomial mask = mono(2, 1, {2, 0}) + mono(2, Q(-3, 5), {1, 0}) + mono(2, 1, {0, 2}) +
                    Polynomial::constant(2, Q(9, 100) - 1);
  b.domain.mask = mask;
  b.default_resolution = {192, 192};
  b.default_K = 500;
  b.nu_tilde = 3;
  b.nu_on_H = 3;
  b.nu_off_H = 2;
  b.points_H = {pt({Q(0), Q(0)}),        pt({Q(0), Q(1, 4)}),  pt({Q(0), Q(-1, 4)}),
                pt({Q(0), Q(1, 2)}),     pt({Q(0), Q(-1, 2)}), pt({Q(0), Q(3, 4)}),
                pt({Q(0), Q(-3, 4)}),    pt({Q(0), Q(1, 8)}),  pt({Q(0), Q(-1, 8)}),
                pt({Q(0), Q(3, 8)})};
  b.points_off_H = {pt({Q(1, 2), Q(0)}),   pt({Q(1, 4), Q(1, 4)}),  pt({Q(-1, 4), Q(0)}),
                    pt({Q(1), Q(0)}),      pt({Q(3, 4), Q(1, 4)}),  pt({Q(-1, 5), Q(-1, 5)}),
                    pt({Q(1, 5), Q(1, 2)}), pt({Q(1, 2), Q(-1, 2)}), pt({Q(9, 10), Q(1, 4)}),
                    pt({Q(-3, 8), Q(1, 8)})};
  b.conditionA_override = "divergent";
  b.volume = M_PI;
  return b;
}

BundledSystem make_grushin3d() {
  BundledSystem b;
  b.name = "grushin3d";
  b.system.dim = 3;
  b.system.hormander_bound = 2;
  b.system.fields = {VectorFieldExpr::coordinate(3, 0), VectorFieldExpr::coordinate(3, 1),
                     field_from(3, {Polynomial(3), Polynomial(3), mono(3, 1, {1, 0, 0})}),
                     field_from(3, {Polynomial(3), Polynomial(3), mono(3, 1, {0, 1, 0})})};
  b.domain.lo = pt({Q(-3, 4), Q(-6, 5), Q(-6, 5)});
  b.domain.hi = pt({Q(33, 20), Q(6, 5), Q(6, 5)});
  // ball of radius 1 centered (3/10, 0, 0): contains a segment of the x3 axis
  // and meets it transversally at the boundary
  Polynomial mask = mono(3, 1, {2, 0, 0}) + mono(3, Q(-3, 5), {1, 0, 0}) +
                    mono(3, 1, {0, 2, 0}) + mono(3, 1, {0, 0, 2}) +
                    Polynomial::constant(3, Q(9, 100) - 1);
  b.domain.mask = mask;
  b.default_resolution = {32, 32, 32};
  b.default_K = 300;
  b.nu_tilde = 4;
  b.nu_on_H = 4;
  b.nu_off_H = 3;
  b.points_H = {pt({Q(0), Q(0), Q(0)}),      pt({Q(0), Q(0), Q(1, 4)}),
                pt({Q(0), Q(0), Q(-1, 4)}),  pt({Q(0), Q(0), Q(1, 2)}),
                pt({Q(0), Q(0), Q(-1, 2)}),  pt({Q(0), Q(0), Q(3, 4)}),
                pt({Q(0), Q(0), Q(-3, 4)}),  pt({Q(0), Q(0), Q(1, 8)}),
                pt({Q(0), Q(0), Q(-1, 8)}),  pt({Q(0), Q(0), Q(5, 8)})};
  b.points_off_H = {pt({Q(1, 2), Q(0), Q(0)}),    pt({Q(0), Q(1, 2), Q(0)}),
                    pt({Q(1, 4), Q(1, 4), Q(0)}), pt({Q(1), Q(0), Q(0)}),
                    pt({Q(-1, 4), Q(0), Q(1, 4)}), pt({Q(0), Q(-1, 2), Q(1, 2)}),
                    pt({Q(3, 4), Q(1, 4), Q(-1, 4)}), pt({Q(1, 8), Q(-1, 8), Q(1, 2)}),
                    pt({Q(-1, 5), Q(1, 5), Q(-1, 5)}), pt({Q(1, 2), Q(1, 2), Q(1, 2)})};
  b.conditionA_override = "convergent";
  b.volume = 4.0 * M_PI / 3.0;
  return b;
}

BundledSystem make_heisenberg1() {
  BundledSystem b;
  b.name = "heisenberg1";
  b.system.dim = 3;
  b.system.hormander_bound = 2;
  // X = d/dx + 2y d/dz, Y = d/dy - 2x d/dz
  b.system.fields = {
      field_from(3, {Polynomial::constant(3, 1), Polynomial(3), mono(3, 2, {0, 1, 0})}),
      field_from(3, {Polynomial(3), Polynomial::constant(3, 1), mono(3, -2, {1, 0, 0})})};
  b.domain.lo = pt({Q(-1), Q(-1), Q(-1)});
  b.domain.hi = pt({Q(1), Q(1), Q(1)});
  b.default_resolution = {24, 24, 24};
  b.default_K = 200;
  b.nu_tilde = 4;
  b.nu_on_H = 4;
  b.nu_off_H = 4;
  b.points_H = {pt({Q(0), Q(0), Q(0)}),           pt({Q(1, 2), Q(0), Q(0)}),
                pt({Q(0), Q(1, 2), Q(0)}),        pt({Q(0), Q(0), Q(1, 2)}),
                pt({Q(1, 4), Q(1, 4), Q(1, 4)}),  pt({Q(-1, 2), Q(1, 3), Q(0)}),
                pt({Q(1, 3), Q(-1, 3), Q(1, 3)}), pt({Q(-3, 4), Q(-3, 4), Q(3, 4)}),
                pt({Q(1, 8), Q(5, 8), Q(-1, 2)}), pt({Q(-1, 5), Q(2, 5), Q(-3, 5)})};
  b.points_off_H = {};
  b.conditionA_override = "divergent";  // fewer fields than the dimension
  b.volume = 8.0;
  return b;
}

BundledSystem make_example82() {
  BundledSystem b;
  b.name = "example82";
  b.system.dim = 3;
  b.system.hormander_bound = 2;
  // X1 = d1 - (x2/2) d3, X2 = d2 + (x1/2) d3, X3 = (phi1+phi2+phi3) d3
  b.system.fields = {
      field_from(3, {Polynomial::constant(3, 1), Polynomial(3), mono(3, Q(-1, 2), {0, 1, 0})}),
      field_from(3, {Polynomial(3), Polynomial::constant(3, 1), mono(3, Q(1, 2), {1, 0, 0})})};
  {
    Coefficient c(Polynomial(3),
                  {{Polynomial::constant(3, 1), BumpFn(BumpFn::kRadial)},
                   {Polynomial::constant(3, 1), BumpFn(BumpFn::kUpper)},
                   {Polynomial::constant(3, 1), BumpFn(BumpFn::kLower)}});
    std::vector<Coefficient> comps = {Coefficient(Polynomial(3)), Coefficient(Polynomial(3)), c};
    b.system.fields.push_back(VectorFieldExpr(std::move(comps)));
  }
  // smoothed box: superellipsoid (x/a)^8 + (y/a)^8 + (z/a)^8 < 1, a = 12/5,
  // strictly containing the reference cube of half-width 2
  Rational a8 = Q(5, 12);
  Rational c8 = a8 * a8;
  c8 = c8 * c8;  // (5/12)^4
  c8 = c8 * c8;  // (5/12)^8
  Polynomial mask = mono(3, c8, {8, 0, 0}) + mono(3, c8, {0, 8, 0}) + mono(3, c8, {0, 0, 8}) +
                    Polynomial::constant(3, -1);
  b.domain.lo = pt({Q(-12, 5), Q(-12, 5), Q(-12, 5)});
  b.domain.hi = pt({Q(12, 5), Q(12, 5), Q(12, 5)});
  b.domain.mask = mask;
  b.default_resolution = {24, 24, 24};
  b.default_K = 100;
  b.nu_tilde = 4;
  b.nu_on_H = 4;
  b.nu_off_H = 3;
  DomainSpec ref;
  ref.lo = pt({Q(-2), Q(-2), Q(-2)});
  ref.hi = pt({Q(2), Q(2), Q(2)});
  b.h_reference_domain = ref;
  b.points_H = {pt({Q(0), Q(0), Q(-1, 2)}),      pt({Q(1, 2), Q(0), Q(-1, 2)}),
                pt({Q(0), Q(1, 2), Q(-1, 4)}),   pt({Q(-1, 2), Q(-1, 2), Q(-3, 4)}),
                pt({Q(1), Q(0), Q(-1, 2)}),      pt({Q(0), Q(-1), Q(-1, 4)}),
                pt({Q(1, 2), Q(1, 2), Q(-1, 8)}), pt({Q(-1), Q(1, 4), Q(-7, 8)}),
                pt({Q(3, 4), Q(-3, 4), Q(-1, 3)}), pt({Q(-1, 4), Q(0), Q(-2, 3)})};
  b.points_off_H = {pt({Q(0), Q(0), Q(1, 2)}),   pt({Q(0), Q(0), Q(1)}),
                    pt({Q(2), Q(0), Q(0)}),      pt({Q(0), Q(0), Q(-3, 2)}),
                    pt({Q(7, 4), Q(0), Q(-1, 2)}), pt({Q(0), Q(0), Q(2)}),
                    pt({Q(0), Q(7, 4), Q(0)}),   pt({Q(1), Q(1), Q(1)}),
                    pt({Q(-1), Q(-1), Q(-2)}),   pt({Q(1, 2), Q(0), Q(3, 4)})};
  b.conditionA_override = "divergent";  // the determinant sum vanishes on the cylinder
  b.volume = 0;                         // no closed form carried
  return b;
}

}  // namespace

const std::vector<std::string>& bundled_names() {
  static const std::vector<std::string> names = {"laplacian2d", "grushin2d", "grushin3d",
                                                 "heisenberg1", "example82"};
  return names;
}

BundledSystem bundled_system(const std::string& name) {
  if (name == "laplacian2d") return make_laplacian2d();
  if (name == "grushin2d") return make_grushin2d();
  if (name == "grushin3d") return make_grushin3d();
  if (name == "heisenberg1") return make_heisenberg1();
  if (name == "example82") return make_example82();
  throw std::invalid_argument("unknown bundled system: " + name);
}

std::vector<RationalVec> analysis_samples(const BundledSystem& b, int per_axis) {
  std::vector<int> res(b.system.dim, per_axis);
  auto samples = cell_centers(b.domain, res);
  for (auto& p : b.points_H) samples.push_back(p);
  for (auto& p : b.points_off_H) samples.push_back(p);
  return samples;
}

}  // namespace sublap
