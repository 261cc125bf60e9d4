#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <polytri/complexes.hpp>
#include <polytri/pointconfig.hpp>

namespace polytri {

// ---------------------------------------------------------------------------
// Catalogue of concrete polytopes
//
// Every builder returns exact rational coordinates together with a name ->
// label map, so downstream constructions can speak about "v1" or "n" instead
// of bare column indices.  Families restricted to a polygon order m carry the
// polygon's labels in cyclic (angular) order.

enum class FamilyKind {
  PM,                    // double-spiked polygon: m-gon + edge above + edge below
  RM,                    // single-spiked polygon: m-gon + edge above
  LatticeP,              // the 8-vertex lattice polytope with unimodular pieces
  Antiprism8P,           // the 8-vertex combinatorial 4-antiprism
  Prism,                 // m-gon x segment
  Antiprism,             // two offset m-gon caps joined by a triangle band
  TrapezoidCube,         // prism over a quadrilateral with vertices on a parabola
  KleeMinty,             // deformed d-cube with rational deformation parameter
  Cuboctahedron,
  TruncTetrahedron,
  TruncOctahedron,
  RhombicDodecahedron,
  SchoenhardtBipyramid,  // 4-dimensional bipyramid over an 8-point 3-polytope
};

enum class Coordinatization {
  RegularApprox,      // rational points on the unit circle, near-equally spaced
  Parabola,           // base vertices (i, i^2)
  CanonicalRational,  // the family's standard integer/rational coordinates
};

const char* to_string(FamilyKind kind);
const char* to_string(Coordinatization coords);

struct FamilySpec {
  FamilyKind kind;
  int m = 0;  // polygon order, where applicable
  int d = 0;  // dimension, for cube-like kinds
  Coordinatization coords = Coordinatization::CanonicalRational;
};

struct NamedConfig {
  PointConfiguration config;
  std::map<std::string, int> names;
  std::vector<int> polygon;  // labels of the distinguished polygon, cyclic order

  // Label lookup; throws StructuralError for an unknown name.
  int label(const std::string& name) const;
  bool has(const std::string& name) const { return names.count(name) != 0; }
};

// Build the configuration for `spec`.  Kinds with randomized-looking rational
// approximations (PM, RM, RegularApprox caps) run exact genericity checks and
// retry over a deterministic perturbation schedule; GenericityError is thrown
// if no attempt passes.  The result owns its PointConfiguration; families
// built from it keep a pointer into it, so keep the NamedConfig alive.
NamedConfig build(const FamilySpec& spec);

// ---------------------------------------------------------------------------
// Monotone polygon paths and polygon fills

// A path of vertices inside the distinguished polygon whose scalar products
// with `direction` (an xy-plane vector) are strictly increasing.
struct MonotonePath {
  std::vector<int> labels;
  RVec direction;
  std::size_t length() const { return labels.empty() ? 0 : labels.size() - 1; }
};

// Validate and normalize a path: at least two distinct polygon labels,
// strictly monotone in `direction`; throws StructuralError otherwise.
MonotonePath make_monotone_path(const NamedConfig& nc, std::vector<int> labels,
                                RVec direction);

// The path through every polygon vertex, sorted by `direction`.
MonotonePath full_sweep_path(const NamedConfig& nc, RVec direction);
// The two-vertex path joining the polygon's extremes along `direction`.
MonotonePath extreme_pair_path(const NamedConfig& nc, RVec direction);

// Triangulations of the distinguished polygon, as sorted label triples.
// fan_fill cones one polygon vertex over the rest of the boundary;
// sweep_fill places the vertices sorted by `direction` and therefore
// contains every edge between direction-consecutive vertices.
std::vector<std::vector<int>> fan_fill(const NamedConfig& nc, int apex_label);
std::vector<std::vector<int>> sweep_fill(const NamedConfig& nc, RVec direction);

// Interior edges (not on the polygon boundary) used by a fill.
std::vector<std::pair<int, int>> fill_interior_edges(
    const NamedConfig& nc, const std::vector<std::vector<int>>& fill);

// ---------------------------------------------------------------------------
// Spiked-polygon triangulations and dissections

// Triangulate the convex hull of the polygon and the spike edge
// apex_low--apex_high: path edges are joined to the spike, fill triangles on
// the low side of the path (smaller scalar product with the spike direction)
// are joined to apex_low, the others to apex_high.  `fill` must be a
// triangulation of the polygon containing every path edge.
SimplexFamily spiked_polygon_triangulation(
    const NamedConfig& nc, const std::string& apex_low,
    const std::string& apex_high, const MonotonePath& path,
    const std::vector<std::vector<int>>& fill);

// Same construction applied to both spikes of a double-spiked polygon; the
// two halves always assemble into a dissection, and into a triangulation
// exactly when the fills agree.
SimplexFamily halving_family(const NamedConfig& pm, const MonotonePath& top_path,
                             const std::vector<std::vector<int>>& top_fill,
                             const MonotonePath& bottom_path,
                             const std::vector<std::vector<int>>& bottom_fill);

// The (m+5)-piece triangulation: five central tetrahedra around the two
// spikes plus one tetrahedron per boundary arc edge.
SimplexFamily small_pm_triangulation(const NamedConfig& pm);

// ---------------------------------------------------------------------------
// The 8-vertex lattice polytope

// Twelve unimodular tetrahedra forming a mismatching dissection.
SimplexFamily lattice_example_dissection(const NamedConfig& lattice_p);
// Eleven tetrahedra forming a triangulation.
SimplexFamily lattice_example_triangulation11(const NamedConfig& lattice_p);

// ---------------------------------------------------------------------------
// Prisms and antiprisms

// Minimal triangulation: chop off alternating cap vertices, then cone one
// vertex of the remaining antiprism over its far facets.
// Size 2m - 5 + ceil(m/2).
SimplexFamily prism_min_triangulation(const NamedConfig& prism);

// Minimal triangulation of an antiprism: cone one top vertex over a bottom
// fan and all triangle facets avoiding it.  Size 3m - 5.
SimplexFamily antiprism_min_triangulation(const NamedConfig& antiprism);

// Maximal triangulation of a prism whose caps are parallel and which
// projects onto a side facet: the placing triangulation that stacks the top
// vertices one after the other.  Size (m^2 + m - 6) / 2.
SimplexFamily prism_max_placing(const NamedConfig& prism);

// Large triangulation of any parallel-cap prism: split along a vertical
// chord plane into two subprisms of orders floor(m/2)+1 and ceil(m/2)+1 and
// stack each independently (the shared quadrilateral receives the same
// diagonal from both sides).  Size ceil((m^2 + 6m - 16) / 4).
SimplexFamily prism_max_split(const NamedConfig& prism);

// Large triangulation of a near-regular antiprism via a placing order that
// alternates around the bottom cap.  Size floor((m^2 + 8m - 16) / 4).
SimplexFamily antiprism_max_construction(const NamedConfig& antiprism);

// ---------------------------------------------------------------------------
// Combinatorial cubes

// Seven tetrahedra triangulating the prism over a quadrilateral with
// vertices on a parabola: the tetrahedron on the two skew edges AB and GH
// plus three tetrahedra in each of the two remaining pockets.  Throws
// DegeneracyError when A, B, G, H are coplanar (as in the regular cube).
SimplexFamily trapezoid_cube_7(const NamedConfig& cube);

// Standard placing triangulation for any full-dimensional configuration.
SimplexFamily placing_triangulation(const PointConfiguration& pc,
                                    const std::vector<int>& order);

// ---------------------------------------------------------------------------
// Product construction for large cube triangulations

struct HaimanReport {
  int d1 = 0;
  int d2 = 0;
  long long s1 = 0;
  long long s2 = 0;
  long long product_size = 0;  // s1 * s2 * C(d1+d2, d1)
  long long f_lower = 0;       // implied lower bound for dimension d1+d2
  std::string growth;          // textual form of (f_lower / (d1+d2)!)^(1/(d1+d2))
  double growth_value = 0.0;
};

struct HaimanProduct {
  std::shared_ptr<PointConfiguration> config;  // Cartesian product coordinates
  SimplexFamily family;
  HaimanReport report;
};

// Triangulate the Cartesian product of two triangulated polytopes by the
// staircase triangulation of every cell sigma x tau, with vertex orders
// induced from ascending labels in each factor.  Product labels are
// i * n2 + j for factor labels i and j.  When validate_result is false the
// family is returned unvalidated (callers can spot-check the volume sum).
HaimanProduct haiman_product(const PointConfiguration& c1,
                             const SimplexFamily& t1,
                             const PointConfiguration& c2,
                             const SimplexFamily& t2,
                             bool validate_result = true);

// ---------------------------------------------------------------------------
// A four-dimensional dissection with a non-convex mismatched region

struct BuiltFamily {
  std::shared_ptr<PointConfiguration> config;
  SimplexFamily family;
};

// Bipyramid over the 8-point twisted prism hull: two triangulations of the
// 3-polytope, agreeing only on three tetrahedra, coned to opposite apices.
// Size 24; validates as a dissection but not a triangulation.
BuiltFamily schoenhardt_bipyramid_dissection();

}  // namespace polytri
