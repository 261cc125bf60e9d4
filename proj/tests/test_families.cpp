#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polytri/complexes.hpp"
#include "polytri/error.hpp"
#include "polytri/families.hpp"
#include "polytri/pointconfig.hpp"

using namespace polytri;

namespace {

std::vector<int> tup(std::initializer_list<int> labels) {
  std::vector<int> t(labels);
  std::sort(t.begin(), t.end());
  return t;
}

std::set<std::vector<int>> tuple_set(const SimplexFamily& family) {
  std::set<std::vector<int>> out;
  for (const Simplex& s : family.simplices) out.insert(s.vertex_labels);
  return out;
}

RVec dir2(int x, int y) {
  RVec v(2);
  v(0) = Rat(x);
  v(1) = Rat(y);
  return v;
}

bool has_edge(const std::vector<std::vector<int>>& fill, int a, int b) {
  for (const auto& tri : fill) {
    int hits = 0;
    for (int l : tri) hits += (l == a || l == b);
    if (hits == 2) return true;
  }
  return false;
}

NamedConfig flat_cube() {
  RMat pts(3, 8);
  const int coords[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                            {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  for (int j = 0; j < 8; ++j)
    for (int i = 0; i < 3; ++i) pts(i, j) = Rat(coords[j][i]);
  NamedConfig nc{PointConfiguration(pts), {}, {0, 1, 2, 3}};
  const char* names = "ABCDEFGH";
  for (int j = 0; j < 8; ++j) nc.names[std::string(1, names[j])] = j;
  return nc;
}

}  // namespace

TEST_CASE("catalogue builders reproduce the expected combinatorics") {
  SUBCASE("lattice polytope") {
    NamedConfig nc = build({FamilyKind::LatticeP});
    CHECK(nc.config.count() == 8);
    CHECK(nc.polygon == std::vector<int>{0, 1, 3, 2});
    CHECK(nc.label("v1") == 4);
    CHECK(nc.label("u2") == 7);
    // Scanning the integer bounding box finds no lattice point beyond the
    // eight vertices (inside or on the hull).
    ConvexHull hull = convex_hull(nc.config);
    int inside = 0;
    for (int x = -1; x <= 2; ++x)
      for (int y = 0; y <= 1; ++y)
        for (int z = -1; z <= 1; ++z) {
          bool in = true;
          for (const HullFacet& f : hull.facets) {
            Rat lhs = f.normal(0) * Rat(x) + f.normal(1) * Rat(y) +
                      f.normal(2) * Rat(z);
            if (lhs > f.offset) in = false;
          }
          inside += in;
        }
    CHECK(inside == 8);
  }

  SUBCASE("double-spiked polygon") {
    NamedConfig pm = build({FamilyKind::PM, 8});
    CHECK(pm.config.count() == 12);
    CHECK(pm.polygon.size() == 8);
    for (const char* n : {"v1", "v2", "u1", "u2", "e", "n", "w", "s"})
      CHECK(pm.has(n));
    ConvexHull hull = convex_hull(pm.config);
    CHECK(hull.vertex_labels.size() == 12);
    for (const HullFacet& f : hull.facets) CHECK(f.vertex_labels.size() == 3);
    CHECK_THROWS_AS(build({FamilyKind::PM, 7}), StructuralError);
    CHECK_THROWS_AS(build({FamilyKind::PM, 2}), StructuralError);
    CHECK_THROWS_AS(build({FamilyKind::PM, 8, 0, Coordinatization::Parabola}),
                    StructuralError);
  }

  SUBCASE("single-spiked polygon keeps its polygon facet") {
    NamedConfig rm = build({FamilyKind::RM, 8});
    CHECK(rm.config.count() == 10);
    CHECK_FALSE(rm.has("u1"));
    ConvexHull hull = convex_hull(rm.config);
    int big = 0;
    for (const HullFacet& f : hull.facets) big += f.vertex_labels.size() > 3;
    CHECK(big == 1);
  }

  SUBCASE("8-point combinatorial 4-antiprism") {
    NamedConfig ap = build({FamilyKind::Antiprism8P});
    CHECK(ap.config.count() == 8);
    ConvexHull hull = convex_hull(ap.config);
    CHECK(hull.facets.size() == 10);
  }

  SUBCASE("prisms and antiprisms") {
    NamedConfig pr = build({FamilyKind::Prism, 3});
    CHECK(pr.config.count() == 6);
    CHECK(convex_hull(pr.config).facets.size() == 5);
    NamedConfig pr_reg = build({FamilyKind::Prism, 5, 0, Coordinatization::RegularApprox});
    CHECK(convex_hull(pr_reg.config).facets.size() == 7);
    NamedConfig ap = build({FamilyKind::Antiprism, 4});
    CHECK(ap.config.count() == 8);
    CHECK(convex_hull(ap.config).facets.size() == 10);
  }

  SUBCASE("deformed cubes") {
    NamedConfig km = build({FamilyKind::KleeMinty, 0, 3});
    CHECK(km.config.count() == 8);
    CHECK(km.label("b000") == 0);
    CHECK(km.label("b111") == 7);
    NamedConfig seg = build({FamilyKind::KleeMinty, 0, 1});
    CHECK(seg.config.count() == 2);
    CHECK_THROWS_AS(build({FamilyKind::KleeMinty, 0, 0}), StructuralError);
  }

  SUBCASE("platonic relatives") {
    CHECK(build({FamilyKind::Cuboctahedron}).config.count() == 12);
    CHECK(build({FamilyKind::TruncTetrahedron}).config.count() == 12);
    CHECK(build({FamilyKind::TruncOctahedron}).config.count() == 24);
    CHECK(build({FamilyKind::RhombicDodecahedron}).config.count() == 14);
    CHECK_THROWS_AS(build({FamilyKind::Cuboctahedron, 0, 0,
                           Coordinatization::RegularApprox}),
                    StructuralError);
  }
}

TEST_CASE("monotone paths and polygon fills") {
  NamedConfig pm = build({FamilyKind::PM, 8});
  const int e = pm.label("e"), n = pm.label("n"), w = pm.label("w"),
            s = pm.label("s");

  SUBCASE("paths normalize and reject") {
    MonotonePath p = make_monotone_path(pm, {e, s, w}, dir2(1, 0));
    CHECK(p.labels.front() == w);  // reversed into ascending order
    CHECK(p.labels.back() == e);
    CHECK(p.length() == 2);
    CHECK_THROWS_AS(make_monotone_path(pm, {e, w, s}, dir2(1, 0)),
                    StructuralError);
    CHECK_THROWS_AS(make_monotone_path(pm, {e, e}, dir2(1, 0)), StructuralError);
    CHECK_THROWS_AS(make_monotone_path(pm, {pm.label("v1"), e}, dir2(1, 0)),
                    StructuralError);
  }

  SUBCASE("sweep paths cover the polygon") {
    MonotonePath full = full_sweep_path(pm, dir2(1, 0));
    CHECK(full.labels.size() == 8);
    CHECK(full.labels.front() == w);
    CHECK(full.labels.back() == e);
    MonotonePath pair = extreme_pair_path(pm, dir2(0, 1));
    CHECK(pair.labels == std::vector<int>{s, n});
  }

  SUBCASE("fills triangulate the polygon") {
    auto fan = fan_fill(pm, s);
    CHECK(fan.size() == 6);
    CHECK(has_edge(fan, s, n));
    CHECK(fill_interior_edges(pm, fan).size() == 5);
    auto sweep = sweep_fill(pm, dir2(1, 0));
    CHECK(sweep.size() == 6);
    MonotonePath full = full_sweep_path(pm, dir2(1, 0));
    for (size_t i = 1; i < full.labels.size(); ++i)
      CHECK(has_edge(sweep, full.labels[i - 1], full.labels[i]));
  }
}

TEST_CASE("single-spiked polygon triangulations") {
  NamedConfig rm = build({FamilyKind::RM, 8});
  SUBCASE("full sweep path gives the largest construction") {
    MonotonePath path = full_sweep_path(rm, dir2(1, 0));
    SimplexFamily t = spiked_polygon_triangulation(
        rm, "v1", "v2", path, sweep_fill(rm, dir2(1, 0)));
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 13);  // 2m - 3
  }
  SUBCASE("two-vertex path gives the smallest construction") {
    MonotonePath path = extreme_pair_path(rm, dir2(1, 0));
    SimplexFamily t = spiked_polygon_triangulation(
        rm, "v1", "v2", path, fan_fill(rm, rm.label("w")));
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 7);  // m - 1
  }
  SUBCASE("fills must contain the path edges") {
    MonotonePath path = full_sweep_path(rm, dir2(1, 0));
    CHECK_THROWS_AS(spiked_polygon_triangulation(rm, "v1", "v2", path,
                                                 fan_fill(rm, rm.label("w"))),
                    StructuralError);
  }
}

TEST_CASE("halving families of the double-spiked polygon") {
  NamedConfig pm = build({FamilyKind::PM, 8});
  const int e = pm.label("e"), n = pm.label("n"), w = pm.label("w"),
            s = pm.label("s");

  SUBCASE("full sweeps on both sides reach 4m - 6") {
    SimplexFamily f = halving_family(
        pm, full_sweep_path(pm, dir2(1, 0)), sweep_fill(pm, dir2(1, 0)),
        full_sweep_path(pm, dir2(0, 1)), sweep_fill(pm, dir2(0, 1)));
    CHECK(f.size() == 26);
    CHECK(f.status == FamilyStatus::Dissection);
    ValidationReport report = validate(f);
    CHECK(!report.improper_pairs.empty());
    CHECK(report.overlapping_pairs.empty());
    BoundsCheck bounds = check_bounds(f);
    CHECK(bounds.ok);
    CHECK(bounds.hull_vertices == 12);
  }

  SUBCASE("equal fills assemble into a triangulation") {
    auto fill = fan_fill(pm, s);
    SimplexFamily f = halving_family(
        pm, make_monotone_path(pm, {w, s, e}, dir2(1, 0)), fill,
        make_monotone_path(pm, {s, n}, dir2(0, 1)), fill);
    CHECK(f.size() == 15);  // 2(m-2) + 2 + 1
    CHECK(f.status == FamilyStatus::Triangulation);
  }

  SUBCASE("the two minimal paths force different fills") {
    SimplexFamily f = halving_family(
        pm, extreme_pair_path(pm, dir2(1, 0)), fan_fill(pm, w),
        extreme_pair_path(pm, dir2(0, 1)), fan_fill(pm, s));
    CHECK(f.size() == 14);  // 2m - 2
    CHECK(f.status == FamilyStatus::Dissection);
  }

  SUBCASE("fills sharing no interior edge leave one mismatched region") {
    // q is the polygon vertex strictly between e and n; its fan shares no
    // interior edge with the fan from its neighbour n.
    int q = -1;
    const int m = static_cast<int>(pm.polygon.size());
    for (int i = 0; i < m; ++i)
      if (pm.polygon[(i + 1) % m] == n && pm.polygon[i] != e &&
          pm.polygon[(i + m - 1) % m] == e)
        q = pm.polygon[i];
    REQUIRE(q >= 0);
    SimplexFamily f = halving_family(
        pm, make_monotone_path(pm, {w, n, e}, dir2(1, 0)), fan_fill(pm, n),
        make_monotone_path(pm, {s, q, n}, dir2(0, 1)), fan_fill(pm, q));
    CHECK(f.status == FamilyStatus::Dissection);
    auto regions = mismatched_regions(f);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].corner_count == 8);
    CHECK(regions[0].side_a.size() == 6);
    CHECK(regions[0].side_b.size() == 6);
  }
}

TEST_CASE("small double-spiked triangulation") {
  SUBCASE("m = 8") {
    NamedConfig pm = build({FamilyKind::PM, 8});
    SimplexFamily t = small_pm_triangulation(pm);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 13);  // m + 5
    EulerAudit audit = euler_audit(t);
    CHECK(audit.boundary_vertices == 12);
    CHECK(audit.interior_vertices == 0);
    CHECK(audit.interior_edges == 4);
  }
  SUBCASE("m = 4") {
    NamedConfig pm = build({FamilyKind::PM, 4});
    SimplexFamily t = small_pm_triangulation(pm);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 9);
  }
}

TEST_CASE("lattice polytope example families") {
  NamedConfig nc = build({FamilyKind::LatticeP});

  SUBCASE("twelve unimodular pieces dissect but do not match") {
    SimplexFamily f = lattice_example_dissection(nc);
    CHECK(f.status == FamilyStatus::Dissection);
    const std::set<std::vector<int>> expected = {
        tup({0, 1, 4, 5}), tup({0, 3, 4, 5}), tup({2, 3, 4, 5}),
        tup({0, 1, 3, 5}), tup({0, 2, 3, 4}), tup({0, 1, 6, 7}),
        tup({1, 2, 6, 7}), tup({2, 3, 6, 7}), tup({0, 1, 2, 6}),
        tup({1, 2, 3, 7}), tup({0, 2, 4, 6}), tup({1, 3, 5, 7})};
    CHECK(tuple_set(f) == expected);
    for (const Simplex& s : f.simplices) CHECK(s.volume == Rat(1, 6));
    ValidationReport report = validate(f);
    CHECK(!report.improper_pairs.empty());
    auto regions = mismatched_regions(f);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0].corner_count == 4);
  }

  SUBCASE("eleven pieces form a triangulation") {
    SimplexFamily f = lattice_example_triangulation11(nc);
    CHECK(f.status == FamilyStatus::Triangulation);
    const std::set<std::vector<int>> expected = {
        tup({0, 1, 4, 5}), tup({0, 3, 4, 5}), tup({2, 3, 4, 5}),
        tup({0, 1, 3, 5}), tup({0, 2, 3, 4}), tup({0, 1, 6, 7}),
        tup({1, 3, 6, 7}), tup({0, 1, 3, 6}), tup({0, 2, 3, 6}),
        tup({0, 2, 4, 6}), tup({1, 3, 5, 7})};
    CHECK(tuple_set(f) == expected);
  }
}

TEST_CASE("minimal prism triangulations") {
  const long long expected[] = {3, 5, 8, 10, 13, 15, 18, 20, 23, 25};
  for (int m = 3; m <= 12; ++m) {
    CAPTURE(m);
    NamedConfig prism = build({FamilyKind::Prism, m});
    SimplexFamily t = prism_min_triangulation(prism);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == static_cast<size_t>(expected[m - 3]));
  }
  SUBCASE("near-regular caps work as well") {
    for (int m : {5, 8}) {
      CAPTURE(m);
      NamedConfig prism =
          build({FamilyKind::Prism, m, 0, Coordinatization::RegularApprox});
      SimplexFamily t = prism_min_triangulation(prism);
      CHECK(t.status == FamilyStatus::Triangulation);
      CHECK(t.size() == static_cast<size_t>(expected[m - 3]));
    }
  }
}

TEST_CASE("minimal antiprism triangulations") {
  for (int m = 3; m <= 12; ++m) {
    CAPTURE(m);
    NamedConfig ap = build({FamilyKind::Antiprism, m});
    SimplexFamily t = antiprism_min_triangulation(ap);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == static_cast<size_t>(3 * m - 5));
  }
  SUBCASE("parabola caps also admit the coning") {
    NamedConfig ap =
        build({FamilyKind::Antiprism, 5, 0, Coordinatization::Parabola});
    SimplexFamily t = antiprism_min_triangulation(ap);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 10);
  }
}

TEST_CASE("maximal prism constructions") {
  SUBCASE("stacking over the parabola") {
    const struct {
      int m;
      size_t size;
    } cases[] = {{3, 3}, {4, 7}, {12, 75}};
    for (const auto& c : cases) {
      CAPTURE(c.m);
      NamedConfig prism = build({FamilyKind::Prism, c.m});
      SimplexFamily t = prism_max_placing(prism);
      CHECK(t.status == FamilyStatus::Triangulation);
      CHECK(t.size() == c.size);
    }
    // The characteristic mixed pieces v_i v_{i+1} u_j u_{j+1}, i < j.
    NamedConfig prism = build({FamilyKind::Prism, 6});
    SimplexFamily t = prism_max_placing(prism);
    auto members = tuple_set(t);
    for (int i = 1; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        CAPTURE(i);
        CAPTURE(j);
        const int vi = 6 + (i - 1), vn = 6 + i, uj = j - 1, un = j;
        CHECK(members.count(tup({vi, vn, uj, un})) == 1);
      }
  }

  SUBCASE("splitting into two stacked halves") {
    const struct {
      int m;
      size_t size;
    } cases[] = {{4, 6}, {5, 10}, {6, 14}, {12, 50}};
    for (const auto& c : cases) {
      CAPTURE(c.m);
      NamedConfig prism = build({FamilyKind::Prism, c.m});
      SimplexFamily t = prism_max_split(prism);
      CHECK(t.status == FamilyStatus::Triangulation);
      CHECK(t.size() == c.size);
    }
    NamedConfig reg =
        build({FamilyKind::Prism, 6, 0, Coordinatization::RegularApprox});
    SimplexFamily t = prism_max_split(reg);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 14);
    CHECK_THROWS_AS(prism_max_split(build({FamilyKind::Prism, 3})),
                    StructuralError);
  }
}

TEST_CASE("large antiprism construction") {
  const long long expected[] = {4, 8, 12, 17, 22, 28, 34, 41, 48, 56};
  for (int m = 3; m <= 12; ++m) {
    CAPTURE(m);
    NamedConfig ap = build({FamilyKind::Antiprism, m});
    SimplexFamily t = antiprism_max_construction(ap);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == static_cast<size_t>(expected[m - 3]));
  }
  SUBCASE("the parabola coordinatization breaks the band labeling") {
    NamedConfig ap =
        build({FamilyKind::Antiprism, 6, 0, Coordinatization::Parabola});
    CHECK_THROWS_AS(antiprism_max_construction(ap), StructuralError);
  }
}

TEST_CASE("seven-piece cube pattern") {
  SUBCASE("trapezoid base admits the pattern") {
    NamedConfig cube = build({FamilyKind::TrapezoidCube});
    SimplexFamily t = trapezoid_cube_7(cube);
    CHECK(t.status == FamilyStatus::Triangulation);
    CHECK(t.size() == 7);
    CHECK(tuple_set(t).count(tup({0, 1, 6, 7})) == 1);  // the spanning piece
  }
  SUBCASE("a flat base degenerates the spanning piece") {
    NamedConfig cube = flat_cube();
    CHECK_THROWS_AS(trapezoid_cube_7(cube), DegeneracyError);
  }
}

TEST_CASE("staircase products") {
  NamedConfig seg = build({FamilyKind::KleeMinty, 0, 1});
  SimplexFamily seg_t = make_family(seg.config, {{0, 1}});
  validate(seg_t);
  REQUIRE(seg_t.status == FamilyStatus::Triangulation);

  SUBCASE("segment times segment is the square") {
    HaimanProduct p = haiman_product(seg.config, seg_t, seg.config, seg_t);
    CHECK(p.family.status == FamilyStatus::Triangulation);
    CHECK(p.family.size() == 2);
    CHECK(p.report.product_size == 2);
    CHECK(p.report.growth == "(2/2!)^(1/2)");
  }

  NamedConfig cube = build({FamilyKind::TrapezoidCube});
  SimplexFamily cube_t = trapezoid_cube_7(cube);

  SUBCASE("cube times segment") {
    HaimanProduct p = haiman_product(cube.config, cube_t, seg.config, seg_t);
    CHECK(p.family.status == FamilyStatus::Triangulation);
    CHECK(p.family.size() == 28);
    CHECK(p.report.d1 == 3);
    CHECK(p.report.d2 == 1);
    CHECK(p.report.product_size == 28);
    CHECK(p.report.growth == "(28/4!)^(1/4)");
    CHECK(p.report.growth_value > 1.03);
    CHECK(p.report.growth_value < 1.05);
  }

  SUBCASE("cube times cube, checked by volume") {
    HaimanProduct p =
        haiman_product(cube.config, cube_t, cube.config, cube_t, false);
    CHECK(p.family.status == FamilyStatus::Unknown);
    CHECK(p.family.size() == 980);
    CHECK(p.config->count() == 64);
    Rat sum(0);
    for (const Simplex& s : p.family.simplices) sum += s.volume;
    CHECK(sum == total_volume(cube.config) * total_volume(cube.config));
    CHECK(p.report.growth == "(980/6!)^(1/6)");
  }

  SUBCASE("factors must be triangulations") {
    SimplexFamily unknown = make_family(seg.config, {{0, 1}});
    CHECK_THROWS_AS(haiman_product(seg.config, unknown, seg.config, seg_t),
                    StructuralError);
  }
}

TEST_CASE("bipyramid dissection in dimension four") {
  BuiltFamily built = schoenhardt_bipyramid_dissection();
  CHECK(built.family.size() == 24);
  CHECK(built.family.status == FamilyStatus::Dissection);
  // The two cones meet along the twisted prism; around the central axis
  // edge {6, 7} the top cone uses the bottom triangle and the bottom cone
  // the top triangle, so the dissection cannot be face-to-face.
  std::set<int> top_link, bottom_link;
  for (const Simplex& s : built.family.simplices) {
    const auto& v = s.vertex_labels;
    if (!std::binary_search(v.begin(), v.end(), 6)) continue;
    if (!std::binary_search(v.begin(), v.end(), 7)) continue;
    const bool in_top = std::binary_search(v.begin(), v.end(), 8);
    for (int l : v) {
      if (l == 6 || l == 7 || l == 8 || l == 9) continue;
      (in_top ? top_link : bottom_link).insert(l);
    }
  }
  CHECK(top_link == std::set<int>{0, 1, 2});
  CHECK(bottom_link == std::set<int>{3, 4, 5});
}

TEST_CASE("placing orders triangulate the lattice polytope") {
  NamedConfig nc = build({FamilyKind::LatticeP});
  std::vector<int> order = {0, 1, 2, 3, 4, 5, 6, 7};
  SimplexFamily forward = placing_triangulation(nc.config, order);
  CHECK(forward.status == FamilyStatus::Triangulation);
  CHECK(forward.size() >= 5);
  std::reverse(order.begin(), order.end());
  SimplexFamily backward = placing_triangulation(nc.config, order);
  CHECK(backward.status == FamilyStatus::Triangulation);
  CHECK(backward.size() >= 5);
  CHECK_THROWS_AS(placing_triangulation(nc.config, {0, 1, 2}), StructuralError);
}
