#include "polytri/simplexrel.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "polytri/error.hpp"
#include "polytri/geometry.hpp"

namespace polytri {

Simplex make_simplex(const PointConfiguration& pc, std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  if (static_cast<Eigen::Index>(labels.size()) != pc.dim() + 1)
    throw StructuralError("simplex: need exactly d+1 labels");
  if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
    throw StructuralError("simplex: repeated label");
  Rat vol = simplex_volume_pts(pc.gather(labels));
  if (vol.is_zero()) throw DegeneracyError("simplex: affinely dependent vertices");
  return Simplex{std::move(labels), std::move(vol)};
}

std::vector<Simplex> enumerate_simplices(const PointConfiguration& pc) {
  const int n = static_cast<int>(pc.count());
  const int k = static_cast<int>(pc.dim()) + 1;
  std::vector<Simplex> out;
  std::vector<int> tuple(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) tuple[static_cast<size_t>(i)] = i;
  while (true) {
    Rat vol = simplex_volume_pts(pc.gather(tuple));
    if (!vol.is_zero()) out.push_back(Simplex{tuple, vol});
    int pos = k - 1;
    while (pos >= 0 && tuple[static_cast<size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++tuple[static_cast<size_t>(pos)];
    for (int i = pos + 1; i < k; ++i)
      tuple[static_cast<size_t>(i)] = tuple[static_cast<size_t>(i - 1)] + 1;
  }
  return out;
}

const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Disjoint: return "disjoint";
    case PairRelation::CommonFace: return "common-face";
    case PairRelation::ImproperBoundary: return "improper-boundary";
    case PairRelation::InteriorOverlap: return "interior-overlap";
  }
  return "?";
}

namespace {

struct SimplexGeom {
  std::vector<int> labels;
  std::uint64_t mask = 0;
  RMat pts;
  FacetSystem facets;            // canonical integral rows
  std::vector<Rat> lo, hi;       // coordinate bounding box
};

SimplexGeom make_geom(const PointConfiguration& pc, const Simplex& s) {
  SimplexGeom g;
  g.labels = s.vertex_labels;
  for (int l : g.labels) {
    if (l < 0 || l >= static_cast<int>(pc.count()))
      throw StructuralError("simplex label out of range");
    if (l < 64) g.mask |= (std::uint64_t{1} << l);
  }
  g.pts = pc.gather(g.labels);
  g.facets = simplex_inequalities(g.pts);
  for (Eigen::Index i = 0; i < g.facets.A.rows(); ++i) {
    RVec row = g.facets.A.row(i).transpose();
    Rat off = g.facets.b(i);
    canonicalize_functional(row, off);
    g.facets.A.row(i) = row.transpose();
    g.facets.b(i) = off;
  }
  const Eigen::Index d = pc.dim();
  g.lo.resize(static_cast<size_t>(d));
  g.hi.resize(static_cast<size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    Rat lo = g.pts(k, 0), hi = g.pts(k, 0);
    for (Eigen::Index j = 1; j <= d; ++j) {
      if (g.pts(k, j) < lo) lo = g.pts(k, j);
      if (g.pts(k, j) > hi) hi = g.pts(k, j);
    }
    g.lo[static_cast<size_t>(k)] = lo;
    g.hi[static_cast<size_t>(k)] = hi;
  }
  return g;
}

// Shared labels of two sorted label lists.
std::vector<int> shared_labels(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PairRelation classify_geoms(const PointConfiguration& pc, const SimplexGeom& a,
                            const SimplexGeom& b) {
  const Eigen::Index d = pc.dim();
  if (a.labels == b.labels) return PairRelation::InteriorOverlap;

  for (Eigen::Index k = 0; k < d; ++k) {
    if (a.hi[static_cast<size_t>(k)] < b.lo[static_cast<size_t>(k)] ||
        b.hi[static_cast<size_t>(k)] < a.lo[static_cast<size_t>(k)])
      return PairRelation::Disjoint;
  }

  std::vector<int> shared = shared_labels(a.labels, b.labels);

  if (static_cast<Eigen::Index>(shared.size()) == d) {
    // Both off-vertices against the shared hyperplane: opposite strict sides
    // give a shared facet; the same side forces interior overlap.
    auto off_vertex = [&](const std::vector<int>& labels) {
      for (int l : labels)
        if (!std::binary_search(shared.begin(), shared.end(), l)) return l;
      throw InternalError("no off-vertex in a d-sharing pair");
    };
    std::vector<int> base = shared;
    base.push_back(off_vertex(a.labels));
    int sa = orientation_pts(pc.gather(base));
    base.back() = off_vertex(b.labels);
    int sb = orientation_pts(pc.gather(base));
    if (sa == 0 || sb == 0) throw InternalError("degenerate simplex in classification");
    return sa == sb ? PairRelation::InteriorOverlap : PairRelation::CommonFace;
  }

  // Facet sign scan: evaluate every facet of one simplex on every vertex of
  // the other. A facet with all opposing vertices strictly beyond it proves
  // the pair disjoint; weakly beyond proves the interiors disjoint; a vertex
  // strictly inside every facet proves interior overlap.
  bool weak_separator = false;
  auto scan = [&](const SimplexGeom& x, const SimplexGeom& y) -> std::optional<PairRelation> {
    std::vector<int> min_sign(static_cast<size_t>(d) + 1, 1);  // per y-vertex
    for (Eigen::Index i = 0; i <= d; ++i) {
      int strict_out = 0, weak_out = 0;
      for (Eigen::Index j = 0; j <= d; ++j) {
        Rat lhs(0);
        for (Eigen::Index k = 0; k < d; ++k) lhs += x.facets.A(i, k) * y.pts(k, j);
        int s = (lhs - x.facets.b(i)).sign();
        if (s > 0) ++strict_out;
        if (s >= 0) {
          ++weak_out;
          min_sign[static_cast<size_t>(j)] = 0;
        }
      }
      if (strict_out == d + 1) return PairRelation::Disjoint;
      if (weak_out == d + 1) weak_separator = true;
    }
    for (Eigen::Index j = 0; j <= d; ++j)
      if (min_sign[static_cast<size_t>(j)] == 1) return PairRelation::InteriorOverlap;
    return std::nullopt;
  };
  if (auto r = scan(a, b)) return *r;
  if (auto r = scan(b, a)) return *r;

  int touch_sign;
  if (weak_separator && !shared.empty()) {
    touch_sign = 0;  // a common vertex plus a separating hyperplane: touching
  } else {
    touch_sign = simplex_meet(a.pts, b.pts).sign;
    if (touch_sign > 0) {
      if (weak_separator)
        throw InternalError("interior overlap despite a weak separator");
      return PairRelation::InteriorOverlap;
    }
  }
  if (touch_sign < 0) return PairRelation::Disjoint;

  // Touching pair. A nonempty common face must be spanned by shared vertices,
  // so no shared vertex means the contact is improper; otherwise the contact
  // is a common face exactly when no affine dependency separates the two
  // vertex sets.
  if (shared.empty()) return PairRelation::ImproperBoundary;
  return exists_separating_dependency(pc, a.labels, b.labels)
             ? PairRelation::ImproperBoundary
             : PairRelation::CommonFace;
}

}  // namespace

PairRelation classify_pair(const PointConfiguration& pc, const Simplex& a,
                           const Simplex& b) {
  if (static_cast<Eigen::Index>(a.vertex_labels.size()) != pc.dim() + 1 ||
      static_cast<Eigen::Index>(b.vertex_labels.size()) != pc.dim() + 1)
    throw StructuralError("classify_pair: simplex size does not match the configuration");
  if (!std::is_sorted(a.vertex_labels.begin(), a.vertex_labels.end()) ||
      !std::is_sorted(b.vertex_labels.begin(), b.vertex_labels.end()))
    throw StructuralError("classify_pair: simplex labels must be sorted");
  return classify_geoms(pc, make_geom(pc, a), make_geom(pc, b));
}

RelationTable::RelationTable(std::size_t n) : n_(n) {
  std::size_t pairs = n * (n - 1) / 2;
  words_.assign((pairs * 2 + 63) / 64, 0);
}

std::size_t RelationTable::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw StructuralError("relation table: bad pair");
  if (i > j) std::swap(i, j);
  // Index of (i, j), i < j, in the triangular enumeration.
  return (j * (j - 1)) / 2 + i;
}

PairRelation RelationTable::at(std::size_t i, std::size_t j) const {
  std::size_t p = pair_index(i, j);
  std::uint64_t w = words_[p / 32];
  return static_cast<PairRelation>((w >> ((p % 32) * 2)) & 3);
}

void RelationTable::set(std::size_t i, std::size_t j, PairRelation r) {
  std::size_t p = pair_index(i, j);
  std::uint64_t& w = words_[p / 32];
  std::uint64_t shift = (p % 32) * 2;
  w = (w & ~(std::uint64_t{3} << shift)) |
      (static_cast<std::uint64_t>(r) << shift);
}

RelationTable relation_table(const PointConfiguration& pc,
                             const std::vector<Simplex>& simplices) {
  RelationTable table(simplices.size());
  std::vector<SimplexGeom> geoms;
  geoms.reserve(simplices.size());
  for (const auto& s : simplices) geoms.push_back(make_geom(pc, s));
  for (std::size_t i = 0; i < simplices.size(); ++i)
    for (std::size_t j = i + 1; j < simplices.size(); ++j)
      table.set(i, j, classify_geoms(pc, geoms[i], geoms[j]));
  return table;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<int>> parse_label_tuples(std::istream& in) {
  std::vector<std::vector<int>> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<int> tuple;
    for (std::string t; ls >> t;) {
      try {
        size_t used = 0;
        long v = std::stol(t, &used);
        if (used != t.size() || v < 0) throw std::invalid_argument("");
        tuple.push_back(static_cast<int>(v));
      } catch (const std::exception&) {
        throw ParseError("malformed label \"" + t + "\"", lineno);
      }
    }
    if (!tuple.empty()) out.push_back(std::move(tuple));
  }
  return out;
}

std::vector<std::vector<int>> parse_label_tuples(const std::string& text) {
  std::istringstream in(text);
  return parse_label_tuples(in);
}

std::string serialize_label_tuples(const std::vector<std::vector<int>>& tuples) {
  std::ostringstream out;
  for (const auto& t : tuples) {
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) out << ' ';
      out << t[i];
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace polytri
