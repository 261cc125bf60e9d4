#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "polytri/pointconfig.hpp"

namespace polytri {

// A full-dimensional simplex on configuration labels, with its volume cached.
struct Simplex {
  std::vector<int> vertex_labels;  // sorted, size d+1
  Rat volume;                      // > 0

  bool operator==(const Simplex& o) const { return vertex_labels == o.vertex_labels; }
  bool operator<(const Simplex& o) const { return vertex_labels < o.vertex_labels; }
};

// Validates labels and computes the volume; throws DegeneracyError when the
// points are affinely dependent (such tuples never become a Simplex).
Simplex make_simplex(const PointConfiguration& pc, std::vector<int> labels);

// All (d+1)-subsets of labels spanning a full-dimensional simplex, in
// lexicographic order.
std::vector<Simplex> enumerate_simplices(const PointConfiguration& pc);

// How the closed simplices a and b sit relative to each other:
//   Disjoint          — they do not intersect at all;
//   CommonFace        — the intersection is nonempty and is a face of both;
//   ImproperBoundary  — nonempty intersection, interiors disjoint, but the
//                        intersection is not a common face;
//   InteriorOverlap   — the open interiors intersect.
enum class PairRelation : std::uint8_t {
  Disjoint = 0,
  CommonFace = 1,
  ImproperBoundary = 2,
  InteriorOverlap = 3,
};

const char* to_string(PairRelation r);

PairRelation classify_pair(const PointConfiguration& pc, const Simplex& a,
                           const Simplex& b);

// Symmetric pairwise relation table, stored as 2-bit codes over unordered
// pairs.
class RelationTable {
 public:
  explicit RelationTable(std::size_t n);
  std::size_t size() const { return n_; }
  PairRelation at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, PairRelation r);

 private:
  std::size_t pair_index(std::size_t i, std::size_t j) const;
  std::size_t n_;
  std::vector<std::uint64_t> words_;
};

// The complete pairwise classification of the given simplices. Uses cached
// per-simplex geometry; identical to classify_pair on every pair.
RelationTable relation_table(const PointConfiguration& pc,
                             const std::vector<Simplex>& simplices);

// ---------------------------------------------------------------------------
// Text format for simplex lists: one simplex per line as space-separated
// 0-based labels; '#' starts a comment.

std::vector<std::vector<int>> parse_label_tuples(std::istream& in);
std::vector<std::vector<int>> parse_label_tuples(const std::string& text);
std::string serialize_label_tuples(const std::vector<std::vector<int>>& tuples);

}  // namespace polytri
