#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polytri/linalg.hpp"

namespace polytri {

// An immutable labelled point configuration in R^d. Points are the columns of
// a d x n matrix; labels are column indices 0..n-1. Must contain at least d+1
// points, all distinct, spanning the full dimension.
class PointConfiguration {
 public:
  explicit PointConfiguration(RMat points);

  Eigen::Index dim() const { return pts_.rows(); }
  Eigen::Index count() const { return pts_.cols(); }
  const RMat& points() const { return pts_; }
  RVec point(int label) const { return pts_.col(label); }

  // Columns for the given labels, in the given order.
  RMat gather(const std::vector<int>& labels) const;

  bool operator==(const PointConfiguration& o) const;

 private:
  RMat pts_;
};

// ---------------------------------------------------------------------------
// Text format: line 1 "d n", then n lines of d rationals each,
// whitespace-separated; '#' starts a comment. Labels are line order.

PointConfiguration parse_points(std::istream& in);
PointConfiguration parse_points(const std::string& text);
PointConfiguration load_points(const std::string& path);
std::string serialize_points(const PointConfiguration& pc);
void save_points(const PointConfiguration& pc, const std::string& path);

// ---------------------------------------------------------------------------
// Convex hull

struct HullFacet {
  RVec normal;                     // outward, integral with coprime entries
  Rat offset;                      // normal . x <= offset for the whole hull
  std::vector<int> vertex_labels;  // the full equality set, sorted
};

struct ConvexHull {
  std::vector<HullFacet> facets;   // sorted by vertex_labels, lexicographically
  std::vector<int> vertex_labels;  // labels that are vertices of the hull
  Rat volume;
};

// Scales an affine functional (a, b) to integral coprime entries in place,
// preserving direction. Zero functionals are rejected.
void canonicalize_functional(RVec& a, Rat& b);

// Facets, vertex classification, and exact volume of conv of all points /
// of a label subset. Throws DegeneracyError when not full-dimensional.
ConvexHull convex_hull(const PointConfiguration& pc);
ConvexHull convex_hull_of(const PointConfiguration& pc, const std::vector<int>& labels);

// Triangulation of conv(order) obtained by inserting the given labels in
// order: each point beyond the current hull is coned over its visible facets.
// Returns simplices as sorted label tuples; their volumes sum to the hull
// volume. Points inside the hull of their predecessors are simply unused.
std::vector<std::vector<int>> placing_simplices(const PointConfiguration& pc,
                                                const std::vector<int>& order);

// Exact volume of conv of the whole configuration.
Rat total_volume(const PointConfiguration& pc);

// ---------------------------------------------------------------------------
// Circuits (minimal affine dependencies)

struct Circuit {
  std::vector<int> positive;  // sorted; carries the smallest label of the pair
  std::vector<int> negative;  // sorted
  bool operator==(const Circuit& o) const {
    return positive == o.positive && negative == o.negative;
  }
};

// All circuits whose support lies within `support` (one canonical
// representative each: the smallest label of the support sits in the positive
// part). Exponential in |support|; intended for |support| <= 2(d+1).
std::vector<Circuit> circuits_within(const PointConfiguration& pc,
                                     const std::vector<int>& support);

// Whether some affine dependency is nonnegative on a \ b, nonpositive on
// b \ a, free on a ∩ b, and nonzero on the exclusive parts — equivalently,
// whether some circuit has its positive part inside a and negative part
// inside b or vice versa. Decided by one LP feasibility check.
bool exists_separating_dependency(const PointConfiguration& pc,
                                  const std::vector<int>& a,
                                  const std::vector<int>& b);

}  // namespace polytri
