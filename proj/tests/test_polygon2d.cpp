#include <catch2/catch_amalgamated.hpp>

#include "fanomut/polygon2d.hpp"
#include "fanomut/parse.hpp"

using namespace fanomut;

namespace {

LatticePolytope gon(std::vector<IntVec> pts) {
  return LatticePolytope::hull(std::move(pts), 2);
}

LatticePolytope p2() { return gon({{1, 0}, {0, 1}, {-1, -1}}); }
LatticePolytope diamond() { return gon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
LatticePolytope square() { return gon({{1, 1}, {-1, 1}, {-1, -1}, {1, -1}}); }
LatticePolytope hexagon() {
  return gon({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}});
}
// one tall cone of height 3 over an edge of length 1
LatticePolytope tall3() { return gon({{1, 0}, {0, 1}, {-1, -3}}); }
// the quotient type of its tall cone is (5, 2)
LatticePolytope tall5() { return gon({{1, 0}, {0, 1}, {-2, -5}}); }
LatticePolytope wide_triangle() { return gon({{0, 1}, {1, -1}, {-1, -1}}); }

LaurentPolynomial lp(const std::string& s) { return parse_polynomial(s, 2); }

}  // namespace

TEST_CASE("cone decomposition satisfies the frame invariants") {
  for (const auto& p :
       {p2(), diamond(), square(), hexagon(), tall3(), tall5()}) {
    auto cones = cone_decomposition(p);
    REQUIRE(cones.size() == p.facets().size());
    for (const ConeData& cd : cones) {
      const Facet& f = p.facets()[cd.edge];
      REQUIRE(cd.inward == f.normal);
      REQUIRE(cd.r == f.offset);
      REQUIRE(cd.d == cd.n * cd.r + cd.s);
      REQUIRE(cd.s >= 0);
      REQUIRE(cd.s < cd.r);
      REQUIRE(dot(cd.inward, cd.direction) == 0);
      REQUIRE(is_unimodular(cd.to_local));
      const IntVec& first = p.vertices()[f.vertices[0]];
      const IntVec& second = p.vertices()[f.vertices[1]];
      REQUIRE(mat_apply(cd.to_local, first) == (IntVec{cd.c, cd.r}));
      REQUIRE(mat_apply(cd.to_local, second) == (IntVec{cd.c + cd.d, cd.r}));
      REQUIRE(cd.residue.has_value() == (cd.s > 0));
      if (cd.s == 0) REQUIRE(cd.residual_points.empty());
    }
  }
}

TEST_CASE("smooth polygons have pure content") {
  auto sc = singularity_content(p2());
  REQUIRE(sc.t_cone_count == 3);
  REQUIRE(sc.basket.empty());
  REQUIRE(singularity_content(diamond()).t_cone_count == 4);
  REQUIRE(singularity_content(hexagon()).t_cone_count == 6);
  auto sq = singularity_content(square());
  REQUIRE(sq.t_cone_count == 8);  // every edge splits into two subcones
  REQUIRE(sq.basket.empty());
}

TEST_CASE("a height three cone leaves a one third residue") {
  auto cones = cone_decomposition(tall3());
  const ConeData* tall = nullptr;
  for (const ConeData& cd : cones)
    if (cd.r == 3) tall = &cd;
  REQUIRE(tall != nullptr);
  REQUIRE(tall->d == 1);
  REQUIRE(tall->n == 0);
  REQUIRE(tall->s == 1);
  REQUIRE(tall->residue == std::make_pair(Int(3), Int(1)));
  REQUIRE(tall->residual_points == std::vector<IntVec>{{0, -1}});

  auto sc = singularity_content(tall3());
  REQUIRE(sc.t_cone_count == 2);
  REQUIRE(sc.basket == std::vector<std::pair<Int, Int>>{{3, 1}});
}

TEST_CASE("residue parameters pick the smaller inverse representative") {
  auto sc = singularity_content(tall5());
  REQUIRE(sc.t_cone_count == 3);  // 1 + 2 from the short edges
  REQUIRE(sc.basket == std::vector<std::pair<Int, Int>>{{5, 2}});
}

TEST_CASE("smooth del pezzo families are rigid with known polynomials") {
  REQUIRE(is_rigid_2d(p2()));
  REQUIRE(rigid_mmlp_2d(p2()) == lp("x + y + 1/(x*y)"));
  REQUIRE(rigid_mmlp_2d(diamond()) == lp("x + y + 1/x + 1/y"));
  REQUIRE(rigid_mmlp_2d(hexagon()) ==
          lp("x + x*y + y + 1/x + 1/(x*y) + 1/y"));
}

TEST_CASE("length two edges force doubled midpoints") {
  REQUIRE(rigid_mmlp_2d(square()) ==
          lp("x*y + x/y + y/x + 1/(x*y) + 2*x + 2/x + 2*y + 2/y"));
  REQUIRE(rigid_mmlp_2d(wide_triangle()) == lp("y + (1 + x)^2/(x*y)"));
}

TEST_CASE("residual points carry free parameters") {
  MmlpFamily fam = mmlp_family(tall3());
  REQUIRE(fam.parameters.size() == 1);
  REQUIRE(fam.parameters[0].first == "a1");
  REQUIRE(fam.parameters[0].second == (IntVec{0, -1}));
  auto expected = lp("x + y + 1/(x*y^3)") +
                  LaurentPolynomial::monomial({0, -1},
                                              AffineForm::parameter("a1"));
  REQUIRE(fam.f == expected);
  REQUIRE(!is_rigid_2d(tall3()));
  try {
    rigid_mmlp_2d(tall3());
    FAIL("expected not-rigid");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "not-rigid");
  }

  REQUIRE(mmlp_family(tall5()).parameters.size() == 2);
}

TEST_CASE("specialising the family keeps the support inside the polygon") {
  MmlpFamily fam = mmlp_family(tall3());
  auto g = fam.f.specialize({{"a1", Rat(0)}});
  REQUIRE(g == lp("x + y + 1/(x*y^3)"));
  REQUIRE(g.newton_polytope() == tall3());
}

TEST_CASE("edge mutation set lists one move per subcone count") {
  auto moves = edge_mutation_set(wide_triangle());
  REQUIRE(moves.size() == 4);  // powers 1 and 2 on the base, 1 on each leg
  int doubled = 0;
  for (const EdgeMutation& m : moves) {
    REQUIRE(m.power >= 1);
    if (m.power == 2) {
      ++doubled;
      REQUIRE(m.w == (IntVec{0, 1}));
    }
  }
  REQUIRE(doubled == 1);
}

TEST_CASE("the family is mutable along every edge move") {
  for (const auto& p : {p2(), diamond(), square(), hexagon(), tall3(),
                        tall5(), wide_triangle()}) {
    MmlpFamily fam = mmlp_family(p);
    auto moves = edge_mutation_set(p);
    for (const EdgeMutation& m : moves) {
      INFO("edge " << m.edge << " power " << m.power);
      REQUIRE(is_mutable(fam.f, m.w, m.factor));
    }
  }
}

TEST_CASE("singularity content is preserved by mutation") {
  auto check = [](const LatticePolytope& p) {
    auto sc = singularity_content(p);
    for (const EdgeMutation& m : edge_mutation_set(p)) {
      auto a = m.factor.newton_polytope();
      REQUIRE(polytope_mutable(p, m.w, a));
      auto q = mutate_polytope(p, m.w, a);
      REQUIRE(singularity_content(q) == sc);
    }
  };
  check(p2());
  check(tall3());
  check(tall5());
  check(wide_triangle());
}

TEST_CASE("polygon routines reject bad input") {
  auto cube = LatticePolytope::hull(
      {{1, 1, 1}, {1, 1, -1}, {1, -1, 1}, {1, -1, -1},
       {-1, 1, 1}, {-1, 1, -1}, {-1, -1, 1}, {-1, -1, -1}}, 3);
  try {
    cone_decomposition(cube);
    FAIL("expected unsupported-dimension");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "unsupported-dimension");
  }

  auto boundary_origin = gon({{-1, 0}, {1, 0}, {0, 1}});
  try {
    singularity_content(boundary_origin);
    FAIL("expected not-fano");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "not-fano");
  }

  auto seg = LatticePolytope::hull({{0, 0}, {1, 0}}, 2, false);
  try {
    mmlp_family(seg);
    FAIL("expected degenerate-input");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "degenerate-input");
  }
}
