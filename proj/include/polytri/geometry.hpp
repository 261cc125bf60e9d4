#pragma once

#include "polytri/lp.hpp"

namespace polytri {

// d+1 affine inequalities A x <= b describing a full-dimensional simplex:
// closed simplex = all rows satisfied, open interior = all rows strict.
struct FacetSystem {
  RMat A;
  RVec b;
};

// Points are the columns of a d x (d+1) matrix throughout this module.

// |det of the homogeneous matrix| / d!; zero iff the points are affinely
// dependent. Throws StructuralError when pts is not d x (d+1).
Rat simplex_volume_pts(const RMat& pts);

// Sign of the homogeneous determinant (+1 / 0 / -1).
int orientation_pts(const RMat& pts);

// The d+1 facet inequalities of a full-dimensional simplex; row i is the facet
// opposite column i. Throws DegeneracyError on a degenerate simplex.
FacetSystem simplex_inequalities(const RMat& pts);

RVec barycenter(const RMat& pts);

// Where two convex bodies stand relative to each other:
//   sign > 0: their open interiors intersect (witness is such a point);
//   sign = 0: closed sets touch but interiors are disjoint (witness touches);
//   sign < 0: closed sets are disjoint.
struct MeetResult {
  int sign = 0;
  Rat opt;      // the optimal slack/threshold the verdict came from
  RVec witness; // valid when sign >= 0
};

// Maximizes the minimum slack of both inequality systems at a single point
// (exact LP). The magnitude of `opt` depends on row scaling; its sign does not.
MeetResult strict_common_point(const FacetSystem& a, const FacetSystem& b);

// Same verdict computed in barycentric form for two simplices given by vertex
// columns (smaller tableau, used in hot paths): maximizes the smallest
// barycentric coordinate over common points of the two simplices. Works for
// k-simplices embedded in any ambient dimension (columns may number fewer than
// rows+1), e.g. triangles in 3-space, where interiors mean relative interiors.
MeetResult simplex_meet(const RMat& ptsA, const RMat& ptsB);

}  // namespace polytri
