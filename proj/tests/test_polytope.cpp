#include "fanomut/normal_form.hpp"
#include "fanomut/polytope.hpp"

#include <algorithm>
#include <set>

#include "catch_amalgamated.hpp"

using namespace fanomut;

namespace {

LatticePolytope poly(std::vector<IntVec> pts, int dim) {
  return LatticePolytope::hull(std::move(pts), dim);
}

// area oracle independent of the volume code: Pick's theorem,
// 2*euclidean_area = 2*interior + boundary - 2
Int pick_twice_area(const LatticePolytope& p) {
  REQUIRE(p.dim() == 2);
  Int interior = 0, boundary = 0;
  for (const IntVec& z : p.lattice_points()) {
    bool on_boundary = false;
    for (const Facet& f : p.facets())
      if (dot(f.normal, z) + f.offset == 0) on_boundary = true;
    (on_boundary ? boundary : interior) += 1;
  }
  return 2 * interior + boundary - 2;
}

}  // namespace

TEST_CASE("triangle hull basics") {
  auto p = poly({{1, 0}, {0, 1}, {-1, -1}, {0, 0}}, 2);
  REQUIRE(p.dim() == 2);
  REQUIRE(p.vertices().size() == 3);
  REQUIRE(p.facets().size() == 3);
  REQUIRE(p.is_fano());
  REQUIRE(p.is_reflexive());
  REQUIRE(p.normalized_volume() == pick_twice_area(p));
  REQUIRE(p.normalized_volume() == 3);
  REQUIRE(p.lattice_points().size() == 4);
}

TEST_CASE("interior points drop out of the hull") {
  auto p = poly({{2, 0}, {0, 2}, {-2, -2}, {0, 0}, {1, 0}, {-1, -1}}, 2);
  REQUIRE(p.vertices().size() == 3);
  REQUIRE(p.normalized_volume() == 12);
  REQUIRE(p.normalized_volume() == pick_twice_area(p));
  REQUIRE(!p.is_fano());  // vertices are not primitive
}

TEST_CASE("square and its dual") {
  auto p = poly({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, 2);
  REQUIRE(p.is_reflexive());
  REQUIRE(p.normalized_volume() == 8);
  auto d = to_lattice(p.dual());
  REQUIRE(d.vertices().size() == 4);
  REQUIRE(d.normalized_volume() == 4);
  REQUIRE(d.is_reflexive());
  auto dd = to_lattice(d.dual());
  REQUIRE(dd == p);
}

TEST_CASE("asymmetric pentagon against the pick oracle") {
  auto p = poly({{3, 1}, {-1, 2}, {-2, -1}, {1, -3}, {2, 0}}, 2);
  REQUIRE(p.normalized_volume() == pick_twice_area(p));
}

TEST_CASE("degenerate input reports its affine span") {
  std::vector<IntVec> flat = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  try {
    LatticePolytope::hull(flat, 2);
    FAIL("expected degenerate-input");
  } catch (const domain_error& e) {
    REQUIRE(e.code() == "degenerate-input");
  }
}

TEST_CASE("low-dimensional hull in a bigger ambient lattice") {
  auto p = LatticePolytope::hull({{0, 0}, {2, 2}, {0, 2}, {2, 0}, {1, 1}}, 2,
                                 /*require_full_dim=*/false);
  REQUIRE(p.dim() == 2);
  auto seg = LatticePolytope::hull({{0, 0, 0}, {2, 4, 6}}, 3,
                                   /*require_full_dim=*/false);
  REQUIRE(seg.dim() == 1);
  auto pts = seg.lattice_points();
  REQUIRE(pts.size() == 3);
  std::set<IntVec> want = {{0, 0, 0}, {1, 2, 3}, {2, 4, 6}};
  REQUIRE(std::set<IntVec>(pts.begin(), pts.end()) == want);
}

TEST_CASE("point polytope") {
  auto p = LatticePolytope::hull({{5, -2}}, 2, false);
  REQUIRE(p.dim() == 0);
  REQUIRE(p.lattice_points() == std::vector<IntVec>{{5, -2}});
}

TEST_CASE("tetrahedron over the origin") {
  auto p = poly({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}}, 3);
  REQUIRE(p.vertices().size() == 4);
  REQUIRE(p.facets().size() == 4);
  REQUIRE(p.is_reflexive());
  REQUIRE(p.normalized_volume() == 4);
  REQUIRE(p.lattice_points().size() == 5);
  auto d = to_lattice(p.dual());
  REQUIRE(d.normalized_volume() == 64);
  REQUIRE(to_lattice(d.dual()) == p);
}

TEST_CASE("cube and octahedron are dual") {
  std::vector<IntVec> cube_pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube_pts.push_back({x, y, z});
  auto cube = poly(cube_pts, 3);
  REQUIRE(cube.vertices().size() == 8);
  REQUIRE(cube.facets().size() == 6);
  REQUIRE(cube.normalized_volume() == 48);
  REQUIRE(cube.lattice_points().size() == 27);
  auto oct = to_lattice(cube.dual());
  REQUIRE(oct.vertices().size() == 6);
  REQUIRE(oct.facets().size() == 8);
  REQUIRE(oct.normalized_volume() == 8);
  REQUIRE(to_lattice(oct.dual()) == cube);
  for (const Facet& f : cube.facets()) REQUIRE(f.vertices.size() == 4);
}

TEST_CASE("worked 3d pair has dual volumes 18 and 54") {
  // p contains q after the sublattice identification, so p has the
  // smaller dual
  auto p = poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {1, 2, 3}, {-1, -2, -3}},
                3);
  REQUIRE(p.is_fano());
  REQUIRE(!p.is_reflexive());
  REQUIRE(normalized_volume(p.dual()) == Rat(18));

  auto q = poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {1, 2, 1}, {-1, -2, -1}},
                3);
  REQUIRE(q.is_fano());
  REQUIRE(q.is_reflexive());
  REQUIRE(normalized_volume(q.dual()) == Rat(54));
  REQUIRE(to_lattice(q.dual()).normalized_volume() == 54);
}

TEST_CASE("facet walk around each cube vertex is a closed fan") {
  std::vector<IntVec> cube_pts;
  for (int x : {-1, 1})
    for (int y : {-1, 1})
      for (int z : {-1, 1}) cube_pts.push_back({x, y, z});
  auto cube = poly(cube_pts, 3);
  for (size_t vi = 0; vi < cube.vertices().size(); ++vi) {
    auto cycle = cube.facet_cycle_at_vertex(vi);
    REQUIRE(cycle.size() == 3);
  }
}

TEST_CASE("translate, map, dilate, minkowski") {
  auto p = poly({{1, 0}, {0, 1}, {-1, -1}}, 2);
  auto t = p.translate({3, 5});
  REQUIRE(t.contains({3, 5}));
  REQUIRE(t.normalized_volume() == p.normalized_volume());

  IntMat u = {{1, 1}, {0, 1}};
  auto sheared = p.apply(u);
  REQUIRE(sheared.normalized_volume() == p.normalized_volume());
  REQUIRE(sheared.lattice_points().size() == p.lattice_points().size());

  auto big = p.dilate(3);
  REQUIRE(big.normalized_volume() == 9 * p.normalized_volume());

  // segment in generic position: every vertex count adds up
  auto seg = LatticePolytope::hull({{0, 0}, {1, 0}}, 2, false);
  auto sum = p.minkowski(seg);
  REQUIRE(sum.vertices().size() == 5);
  // segment parallel to an edge: absorbed into it
  auto seg2 = LatticePolytope::hull({{0, 0}, {-1, 1}}, 2, false);
  auto sum2 = p.minkowski(seg2);
  REQUIRE(sum2.vertices().size() == 4);
}

TEST_CASE("origin placement") {
  auto p = poly({{1, 0}, {0, 1}, {-1, -1}}, 2);
  REQUIRE(p.origin_interior());
  auto shifted = p.translate({5, 0});
  REQUIRE(!shifted.origin_interior());
  REQUIRE_THROWS_AS(shifted.dual(), domain_error);
}

TEST_CASE("containment") {
  auto p = poly({{2, 0}, {0, 2}, {-1, -1}}, 2);
  REQUIRE(p.contains({0, 0}));
  REQUIRE(p.contains({1, 1}));
  REQUIRE(!p.contains({2, 2}));
  REQUIRE(p.contains_rational({Rat(1, 2), Rat(1, 2)}));
  auto small = poly({{1, 0}, {0, 1}, {-1, -1}}, 2);
  REQUIRE(p.contains_polytope(small));
  REQUIRE(!small.contains_polytope(p));
}

TEST_CASE("text round trip") {
  auto p = poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {1, 2, 3}, {-1, -2, -3}},
                3);
  std::string s = p.text();
  auto q = LatticePolytope::parse(s);
  REQUIRE(q == p);
  REQUIRE_THROWS_AS(LatticePolytope::parse("dim 2\n1 2 3\n"), usage_error);
  REQUIRE_THROWS_AS(LatticePolytope::parse("2\n1 2\n"), usage_error);
  auto with_comment = LatticePolytope::parse("# triangle\ndim 2\n1 0\n0 1\n-1 -1\n");
  REQUIRE(with_comment.vertices().size() == 3);
}

TEST_CASE("normal form separates and identifies") {
  auto p = poly({{1, 0}, {0, 1}, {-1, -1}}, 2);
  IntMat u = {{2, 3}, {1, 2}};
  REQUIRE(is_unimodular(u));
  auto q = p.apply(u);
  REQUIRE(!(p == q));
  REQUIRE(gl_equivalent(p, q));
  REQUIRE(p.normal_form_key() == q.normal_form_key());

  auto square = poly({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, 2);
  REQUIRE(!gl_equivalent(p, square));

  // vertex relabeling must not change the key either
  auto r = poly({{-1, -1}, {1, 0}, {0, 1}}, 2);
  REQUIRE(p.normal_form_key() == r.normal_form_key());
}

TEST_CASE("normal form in 3d under random-looking maps") {
  auto p = poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {1, 2, 3}, {-1, -2, -3}},
                3);
  std::vector<IntMat> maps = {
      {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}},
      {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}},
      {{1, 0, 0}, {2, 1, 0}, {3, 0, -1}},
      {{-1, 2, 1}, {0, 1, 1}, {1, -2, 0}},
  };
  for (const IntMat& u : maps) {
    REQUIRE(is_unimodular(u));
    REQUIRE(gl_equivalent(p, p.apply(u)));
  }
  auto q = poly({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {1, 2, 1}, {-1, -2, -1}},
                3);
  REQUIRE(!gl_equivalent(p, q));
}

TEST_CASE("unsupported and malformed input") {
  REQUIRE_THROWS_AS(LatticePolytope::hull({}, 2), domain_error);
  std::vector<IntVec> pts4 = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0},
                              {0, 0, 0, 1}, {-1, -1, -1, -1}};
  REQUIRE_THROWS_AS(LatticePolytope::hull(pts4, 4), domain_error);
  REQUIRE_THROWS_AS(poly({{1, 0}, {0, 1}, {1, 1, 1}}, 2), domain_error);
}
