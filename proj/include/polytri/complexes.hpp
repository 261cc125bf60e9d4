#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polytri/pointconfig.hpp"
#include "polytri/simplexrel.hpp"

namespace polytri {

// Classification of a family of full-dimensional simplices over one point
// configuration.  A dissection covers the convex hull of the configuration
// with pairwise interior-disjoint simplices; a triangulation is a dissection
// whose simplices additionally meet face-to-face.
enum class FamilyStatus : uint8_t {
  Unknown = 0,
  Dissection = 1,
  Triangulation = 2,
  Invalid = 3,
};

const char* to_string(FamilyStatus s);

// A family of d-simplices over a configuration, plus its validation status.
// `size()` is the number of d-simplices, the quantity all the extremal
// questions ask about.
struct SimplexFamily {
  const PointConfiguration* config = nullptr;
  std::vector<Simplex> simplices;
  FamilyStatus status = FamilyStatus::Unknown;

  std::size_t size() const { return simplices.size(); }
};

// Builds a family from label tuples.  Tuples are normalized through
// make_simplex; a repeated simplex raises StructuralError (families are
// sets).
SimplexFamily make_family(const PointConfiguration& pc,
                          const std::vector<std::vector<int>>& tuples);

struct ValidationReport {
  FamilyStatus status = FamilyStatus::Unknown;
  Rat volume_sum;   // total volume of the family's simplices
  Rat volume_hull;  // volume of the convex hull of the configuration
  // Index pairs (i, j), i < j, into SimplexFamily::simplices.
  std::vector<std::pair<int, int>> overlapping_pairs;  // interiors intersect
  std::vector<std::pair<int, int>> improper_pairs;     // touch, no common face
};

// Validates the family and stores the outcome in family.status, which the
// region/audit routines below require.  The family is a dissection exactly
// when no two simplices share an interior point and the simplex volumes sum
// to the hull volume (closed full-dimensional pieces of total measure equal
// to a convex body cover it); it is a triangulation when additionally every
// touching pair meets in a common face.  The resulting status does not
// depend on the order of the simplices.
ValidationReport validate(SimplexFamily& family);

// A maximal connected set of boundary (d-1)-simplices of a dissection that
// lie in a common hyperplane and overlap with full (d-1)-dimensional
// relative interiors without coinciding.  These are exactly the places
// where a dissection fails to be face-to-face across a hyperplane.  For
// d=3 the union of the member triangles is a convex polygon and the
// triangles on each side of the plane triangulate it; both facts are
// verified at extraction time.
struct MismatchedRegion {
  // Supporting hyperplane <normal, x> = offset, canonicalized to coprime
  // integers with a positive leading nonzero coefficient.
  RVec normal;
  Rat offset;
  std::vector<std::vector<int>> member_triangles;  // sorted label tuples
  // Members whose incident simplices lie on the positive / negative side
  // of the hyperplane.  Each is a triangulation of the region.
  std::vector<std::vector<int>> side_a;
  std::vector<std::vector<int>> side_b;
  // Corners of the region in cyclic order, starting at the smallest label
  // and proceeding toward its smaller-labelled neighbour (d=3 only; empty
  // otherwise).
  std::vector<int> polygon_vertices;
  int corner_count = 0;
};

struct RegionDiagnostics {
  // Coplanar boundary-simplex pairs that touch improperly but with a
  // lower-dimensional overlap.  Such pairs never join regions; they are
  // surfaced here because none of the studied constructions produce them.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> anomalous_pairs;
};

// Extracts the mismatched regions of a validated dissection (a validated
// triangulation yields the empty list).  For d=3 each region carries its
// polygon structure and the extraction audits the expected geometry: both
// sides tile the convex polygon exactly, same-side triangles are interior
// disjoint, the two sides share no interior edge, and distinct regions
// have disjoint relative interiors.  An audit failure raises
// InternalError.  For d != 3 only the raw components with their plane and
// side assignment are produced (region convexity genuinely fails in higher
// dimension, so no polygon structure is claimed).
std::vector<MismatchedRegion> mismatched_regions(
    const SimplexFamily& family, RegionDiagnostics* diagnostics = nullptr);

// Vertex and edge census of a 3-dimensional triangulation.  Boundary means
// lying on a facet of the convex hull; counts are over the vertices and
// edges actually used by the family's tetrahedra.
struct EulerAudit {
  int boundary_vertices = 0;  // n
  int interior_vertices = 0;  // n'
  int interior_edges = 0;     // e_i
  long long tetra_count = 0;  // |T|
};

// Counts the census and asserts |T| = n + e_i - n' - 3, which holds for
// every triangulation of a convex 3-polytope; a violation signals a
// validator bug and raises InternalError.  Requires a validated
// triangulation in dimension 3.
EulerAudit euler_audit(const SimplexFamily& family);

// Size bounds for a 3-dimensional dissection that is not face-to-face:
// with n hull vertices, n - 2 <= size <= (n-2 choose 2).  A violation
// contradicts a proved theorem and raises InternalError.
struct BoundsCheck {
  int hull_vertices = 0;
  long long lower = 0;
  long long upper = 0;
  long long size = 0;
  bool ok = false;
};

BoundsCheck check_bounds(const SimplexFamily& family,
                         const std::vector<MismatchedRegion>& regions);
// Convenience overload that extracts the regions itself.
BoundsCheck check_bounds(const SimplexFamily& family);

// Validates the family and renders a JSON object
//   {status, size, n, n_prime, e_i, regions: [{k, hyperplane, sideA,
//    sideB}], bounds: {lower, upper, ok}}
// with null for fields that do not apply (census fields outside
// 3-dimensional triangulations, bounds outside mismatching 3-dimensional
// dissections).  Invalid families carry a "diagnostics" object naming the
// offending pairs and any volume deficit.  Returns the pretty-printed
// serialization.
std::string family_report_json(SimplexFamily& family);

}  // namespace polytri
