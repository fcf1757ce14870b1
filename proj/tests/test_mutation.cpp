#include "fanomut/mutation.hpp"
#include "fanomut/parse.hpp"

#include <algorithm>

#include "catch_amalgamated.hpp"

using namespace fanomut;

namespace {

LaurentPolynomial lp(const std::string& s, int dim_hint = 0) {
  return parse_polynomial(s, dim_hint);
}

LatticePolytope seg2(IntVec a, IntVec b) {
  return LatticePolytope::hull({std::move(a), std::move(b)}, 2, false);
}

LatticePolytope seg3(IntVec a, IntVec b) {
  return LatticePolytope::hull({std::move(a), std::move(b)}, 3, false);
}

}  // namespace

TEST_CASE("weight slices partition the terms") {
  auto f = lp("x + y + 1/(x*y)");
  auto slices = weight_slices(f, {2, -1});
  REQUIRE(slices.size() == 2);
  REQUIRE(slices.at(2) == lp("x", 2));
  REQUIRE(slices.at(-1) == lp("y + 1/(x*y)"));
  REQUIRE_THROWS_AS(weight_slices(f, {1, 0, 0}), domain_error);
}

TEST_CASE("exact division recovers the cofactor") {
  auto q0 = lp("y + 3*x + x^2/y");
  auto d = lp("(1+x)^2", 2);
  auto p = q0 * d;
  auto q = try_divide(p, d);
  REQUIRE(q.has_value());
  REQUIRE(*q == q0);

  // spoil one far-away term
  auto bad = p + lp("x^9", 2);
  REQUIRE(!try_divide(bad, d).has_value());
  // spoil a coefficient in place
  auto bad2 = p + lp("x*y", 2);
  REQUIRE(!try_divide(bad2, d).has_value());
}

TEST_CASE("division carries parameters along") {
  auto q0 = lp("y + a1*x", 2);
  auto d = lp("(1+x)^2", 2);
  auto q = try_divide(q0 * d, d);
  REQUIRE(q.has_value());
  REQUIRE(*q == q0);
  REQUIRE_THROWS_AS(try_divide(d, lp("1 + a1*x", 2)), domain_error);
  REQUIRE_THROWS_AS(try_divide(d, lp("0", 2)), domain_error);
}

TEST_CASE("division by a monomial always works") {
  auto p = lp("x + y - 2 + 1/(x*y)");
  auto q = try_divide(p, lp("x*y", 2));
  REQUIRE(q.has_value());
  REQUIRE(*q == p.mul_monomial({-1, -1}));
}

TEST_CASE("mutation of the degree-3 polynomial across one edge") {
  auto f = lp("x + y + 1/(x*y)");
  IntVec w = {2, -1};
  auto a = lp("1 + x*y^2", 2);
  REQUIRE(is_mutable(f, w, a));
  auto g = mutate(f, w, a);
  REQUIRE(g == lp("1/(x*y) + x + 2*x^2*y^2 + x^3*y^4"));

  // mutating back with the opposite weight restores f
  REQUIRE(is_mutable(g, {-2, 1}, a));
  REQUIRE(mutate(g, {-2, 1}, a) == f);
}

TEST_CASE("newton polytope of a mutation is the mutated polytope") {
  auto f = lp("x + y + 1/(x*y)");
  IntVec w = {2, -1};
  auto a = lp("1 + x*y^2", 2);
  auto g = mutate(f, w, a);
  auto moved = mutate_polytope(f.newton_polytope(), w, a.newton_polytope());
  REQUIRE(moved == g.newton_polytope());
  std::vector<IntVec> expect = {{-1, -1}, {1, 0}, {3, 4}};
  std::vector<IntVec> got = moved.vertices();
  std::sort(got.begin(), got.end());
  REQUIRE(got == expect);
}

TEST_CASE("the blocked direction fails on both sides") {
  auto f = lp("x + y + 1/(x*y)");
  IntVec w = {0, 1};
  auto a = lp("1 + x", 2);
  REQUIRE(!is_mutable(f, w, a));
  REQUIRE_THROWS_AS(mutate(f, w, a), domain_error);
  REQUIRE(!polytope_mutable(f.newton_polytope(), w, seg2({0, 0}, {1, 0})));
  REQUIRE_THROWS_AS(
      mutate_polytope(f.newton_polytope(), w, seg2({0, 0}, {1, 0})),
      domain_error);
}

TEST_CASE("three-variable mutation matches its polytope") {
  auto f = lp("z + (1+x)*(1+y)/z");
  IntVec w = {0, 0, 1};
  auto a = lp("1 + x", 3);
  REQUIRE(is_mutable(f, w, a));
  auto g = mutate(f, w, a);
  REQUIRE(g == lp("z*(1+x) + (1+y)/z"));
  auto moved = mutate_polytope(f.newton_polytope(), w, a.newton_polytope());
  REQUIRE(moved == g.newton_polytope());
}

TEST_CASE("cube sheared along a wall segment") {
  std::vector<IntVec> cube_pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube_pts.push_back({x, y, z});
  auto cube = LatticePolytope::hull(cube_pts, 3);
  IntVec w = {1, 0, 0};
  auto a = seg3({0, 0, 0}, {0, 1, 0});
  REQUIRE(polytope_mutable(cube, w, a));
  auto moved = mutate_polytope(cube, w, a);
  std::vector<IntVec> expect = {{-1, -1, -1}, {-1, -1, 1}, {-1, 0, -1},
                                {-1, 0, 1},   {1, -1, -1}, {1, -1, 1},
                                {1, 2, -1},   {1, 2, 1}};
  std::vector<IntVec> got = moved.vertices();
  std::sort(got.begin(), got.end());
  REQUIRE(got == expect);
  REQUIRE(moved.normalized_volume() == 48);
  // and back
  REQUIRE(mutate_polytope(moved, {-1, 0, 0}, a) == cube);
}

TEST_CASE("a monomial factor acts as a shear") {
  auto f = lp("x + y + 1/(x*y)");
  IntVec w = {0, 1};
  auto a = lp("x", 2);
  REQUIRE(is_mutable(f, w, a));
  auto g = mutate(f, w, a);
  IntMat u = {{1, 1}, {0, 1}};
  REQUIRE(g == f.change_of_basis(u));
  auto moved = mutate_polytope(f.newton_polytope(), w,
                               LatticePolytope::hull({{1, 0}}, 2, false));
  REQUIRE(moved == f.newton_polytope().apply(u));
}

TEST_CASE("input validation") {
  auto f = lp("x + y + 1/(x*y)");
  auto p = f.newton_polytope();
  auto a = lp("1 + x", 2);

  REQUIRE_THROWS_AS(is_mutable(f, {0, 0}, a), domain_error);
  REQUIRE_THROWS_AS(is_mutable(f, {0, 2}, a), domain_error);
  REQUIRE_THROWS_AS(is_mutable(f, {0, 1}, lp("1 + y", 2)), domain_error);
  REQUIRE_THROWS_AS(is_mutable(f, {0, 1}, lp("1 + a1*x", 2)), domain_error);
  REQUIRE_THROWS_AS(is_mutable(f, {0, 1}, lp("0", 2)), domain_error);

  REQUIRE_THROWS_AS(polytope_mutable(p, {0, 2}, seg2({0, 0}, {1, 0})),
                    domain_error);
  REQUIRE_THROWS_AS(polytope_mutable(p, {0, 1}, seg2({0, 0}, {0, 1})),
                    domain_error);
  auto flat = seg2({0, 0}, {1, 0});
  REQUIRE_THROWS_AS(polytope_mutable(flat, {0, 1}, flat), domain_error);
}

TEST_CASE("mutation along a bottom edge keeps the dual volume") {
  // simplex over the origin; the weight puts one edge at height -1 and the
  // factor runs along that edge, so the bottom collapses to a point
  auto p = LatticePolytope::hull(
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, 3);
  Rat dual_before = normalized_volume(p.dual());
  IntVec w = {1, 1, -1};
  auto a = seg3({0, 0, 0}, {-1, -1, -2});
  REQUIRE(polytope_mutable(p, w, a));
  auto moved = mutate_polytope(p, w, a);
  REQUIRE(!(moved == p));
  REQUIRE(moved.is_fano());
  REQUIRE(normalized_volume(moved.dual()) == dual_before);
  IntVec back = {-1, -1, 1};
  REQUIRE(polytope_mutable(moved, back, a));
  REQUIRE(mutate_polytope(moved, back, a) == p);
}
