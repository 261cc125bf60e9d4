#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "polytri/error.hpp"
#include "polytri/geometry.hpp"

using namespace polytri;

namespace {

RMat mat(std::vector<std::vector<long>> cols) {
  const auto d = static_cast<Eigen::Index>(cols.at(0).size());
  RMat m(d, static_cast<Eigen::Index>(cols.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index k = 0; k < d; ++k)
      m(k, j) = Rat(cols[static_cast<size_t>(j)][static_cast<size_t>(k)]);
  return m;
}

bool satisfies_all(const FacetSystem& fs, const RVec& x, bool strictly) {
  for (Eigen::Index i = 0; i < fs.A.rows(); ++i) {
    Rat lhs(0);
    for (Eigen::Index k = 0; k < fs.A.cols(); ++k) lhs += fs.A(i, k) * x(k);
    int s = (lhs - fs.b(i)).sign();
    if (strictly ? s >= 0 : s > 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("simplex volume and orientation on reference simplices") {
  RMat unit_tet = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(simplex_volume_pts(unit_tet) == Rat(1, 6));
  CHECK(orientation_pts(unit_tet) == 1);

  RMat sewv = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {-1, 0, 1}});
  CHECK(simplex_volume_pts(sewv) == Rat(1, 6));

  RMat tri = mat({{0, 0}, {3, 0}, {0, 4}});
  CHECK(simplex_volume_pts(tri) == Rat(6));

  RMat seg = mat({{2}, {7}});
  CHECK(simplex_volume_pts(seg) == Rat(5));

  RMat flat = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 3, 0}});
  CHECK(simplex_volume_pts(flat) == Rat(0));
  CHECK(orientation_pts(flat) == 0);
}

TEST_CASE("volume is invariant under vertex permutation, orientation flips") {
  RMat t = mat({{1, 2, 0}, {4, 0, 1}, {0, 3, 2}, {2, 2, 5}});
  RMat swapped = t;
  swapped.col(0).swap(swapped.col(2));
  CHECK(simplex_volume_pts(t) == simplex_volume_pts(swapped));
  CHECK(orientation_pts(t) == -orientation_pts(swapped));
}

TEST_CASE("volume is invariant under unimodular maps and translations") {
  RMat t = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  // x -> U x + v with det U = 1.
  RMat U = mat({{1, 0, 0}, {2, 1, 0}, {3, 4, 1}});  // columns of U
  RVec v(3);
  v << Rat(5), Rat(-2), Rat(7);
  RMat image(3, 4);
  for (Eigen::Index j = 0; j < 4; ++j) image.col(j) = U * t.col(j) + v;
  REQUIRE(determinant(U) == Rat(1));
  CHECK(simplex_volume_pts(image) == simplex_volume_pts(t));
}

TEST_CASE("facet inequalities describe the simplex exactly") {
  RMat t = mat({{0, 0, 0}, {2, 0, 0}, {0, 3, 0}, {0, 0, 4}});
  FacetSystem fs = simplex_inequalities(t);
  REQUIRE(fs.A.rows() == 4);
  REQUIRE(fs.A.cols() == 3);
  for (Eigen::Index i = 0; i < 4; ++i) {
    // Every vertex satisfies every inequality; the facet's own vertices meet it
    // with equality; the opposite vertex is strictly inside.
    for (Eigen::Index j = 0; j < 4; ++j) {
      Rat lhs(0);
      for (Eigen::Index k = 0; k < 3; ++k) lhs += fs.A(i, k) * t(k, j);
      if (j == i)
        CHECK(lhs < fs.b(i));
      else
        CHECK(lhs == fs.b(i));
    }
  }
  CHECK(satisfies_all(fs, barycenter(t), true));
  RVec outside(3);
  outside << Rat(3), Rat(3), Rat(3);
  CHECK_FALSE(satisfies_all(fs, outside, false));

  RMat flat = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  CHECK_THROWS_AS(simplex_inequalities(flat), DegeneracyError);
}

TEST_CASE("barycenter") {
  RMat t = mat({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
  RVec c = barycenter(t);
  CHECK(c(0) == Rat(1, 2));
  CHECK(c(1) == Rat(1, 2));
  CHECK(c(2) == Rat(1, 2));
}

TEST_CASE("strict common point: overlap, touch, disjoint") {
  RMat t = mat({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  FacetSystem ft = simplex_inequalities(t);

  SUBCASE("a simplex meets itself in its interior") {
    MeetResult r = strict_common_point(ft, ft);
    CHECK(r.sign > 0);
    CHECK(satisfies_all(ft, r.witness, true));
  }

  SUBCASE("sharing a facet gives a touching verdict") {
    RMat s = mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}});
    MeetResult r = strict_common_point(ft, simplex_inequalities(s));
    CHECK(r.sign == 0);
    CHECK(satisfies_all(ft, r.witness, false));
  }

  SUBCASE("separated simplices are disjoint") {
    RMat far = mat({{5, 0, 0}, {6, 0, 0}, {5, 1, 0}, {5, 0, 1}});
    MeetResult r = strict_common_point(ft, simplex_inequalities(far));
    CHECK(r.sign < 0);
  }
}

TEST_CASE("barycentric meet agrees and handles low-dimensional pieces") {
  SUBCASE("full-dimensional cases match the facet formulation") {
    RMat t = mat({{0, 0, 0}, {4, 0, 0}, {0, 4, 0}, {0, 0, 4}});
    RMat inside = mat({{1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
    CHECK(simplex_meet(t, inside).sign > 0);
    MeetResult r = simplex_meet(t, inside);
    CHECK(satisfies_all(simplex_inequalities(t), r.witness, true));
    CHECK(satisfies_all(simplex_inequalities(inside), r.witness, true));

    RMat shared_facet = mat({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}, {4, 4, 4}});
    CHECK(simplex_meet(t, shared_facet).sign == 0);

    RMat far = mat({{9, 0, 0}, {10, 0, 0}, {9, 1, 0}, {9, 0, 1}});
    CHECK(simplex_meet(t, far).sign < 0);
  }

  SUBCASE("triangles in 3-space sharing an edge touch") {
    RMat a = mat({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    RMat b = mat({{0, 0, 0}, {2, 0, 0}, {0, 0, 2}});
    CHECK(simplex_meet(a, b).sign == 0);
  }

  SUBCASE("parallel triangles are disjoint via the infeasible path") {
    RMat a = mat({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
    RMat b = mat({{0, 0, 1}, {2, 0, 1}, {0, 2, 1}});
    CHECK(simplex_meet(a, b).sign < 0);
  }

  SUBCASE("a segment piercing a triangle overlaps in relative interiors") {
    RMat tri = mat({{0, 0, 0}, {3, 0, 0}, {0, 3, 0}});
    RMat seg = mat({{1, 1, -1}, {1, 1, 1}});
    CHECK(simplex_meet(tri, seg).sign > 0);
    RMat seg_through_vertex = mat({{0, 0, -1}, {0, 0, 1}});
    CHECK(simplex_meet(tri, seg_through_vertex).sign == 0);
  }

  SUBCASE("a point against a segment") {
    RMat pt = mat({{1, 0, 0}});
    RMat seg = mat({{0, 0, 0}, {2, 0, 0}});
    CHECK(simplex_meet(pt, seg).sign > 0);  // relative interior of the segment
    RMat endpoint = mat({{0, 0, 0}});
    CHECK(simplex_meet(endpoint, seg).sign == 0);
    RMat off = mat({{0, 1, 0}});
    CHECK(simplex_meet(off, seg).sign < 0);
  }
}

TEST_CASE("randomized agreement between the two meet formulations") {
  std::mt19937 rng(20240818);
  std::uniform_int_distribution<long> coord(-4, 4);
  int checked = 0;
  while (checked < 40) {
    RMat a(3, 4), b(3, 4);
    for (Eigen::Index j = 0; j < 4; ++j)
      for (Eigen::Index k = 0; k < 3; ++k) {
        a(k, j) = Rat(coord(rng));
        b(k, j) = Rat(coord(rng));
      }
    if (orientation_pts(a) == 0 || orientation_pts(b) == 0) continue;
    MeetResult via_facets = strict_common_point(simplex_inequalities(a), simplex_inequalities(b));
    MeetResult via_barycentric = simplex_meet(a, b);
    CHECK(via_facets.sign == via_barycentric.sign);
    ++checked;
  }
}
