#include "polytri/complexes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "polytri/error.hpp"
#include "polytri/geometry.hpp"
#include "polytri/linalg.hpp"

namespace polytri {

namespace {

std::string tuple_string(const std::vector<int>& labels) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) os << ' ';
    os << labels[i];
  }
  os << '}';
  return os.str();
}

const PointConfiguration& config_of(const SimplexFamily& family) {
  if (family.config == nullptr)
    throw StructuralError("simplex family has no point configuration");
  return *family.config;
}

// Supporting hyperplane <a, x> = c through the d affinely independent points
// given as the columns of `pts`, canonicalized to coprime integers with a
// positive leading nonzero coefficient (so coplanar tuples share one key).
std::pair<RVec, Rat> plane_through(const RMat& pts) {
  const Eigen::Index d = pts.rows();
  RMat m(pts.cols(), d + 1);
  for (Eigen::Index j = 0; j < pts.cols(); ++j) {
    for (Eigen::Index r = 0; r < d; ++r) m(j, r) = pts(r, j);
    m(j, d) = Rat(-1);
  }
  RMat kernel = nullspace_basis(m);
  if (kernel.cols() != 1)
    throw InternalError("boundary simplex does not span a unique hyperplane");
  RVec normal(d);
  for (Eigen::Index r = 0; r < d; ++r) normal(r) = kernel(r, 0);
  Rat offset = kernel(d, 0);
  canonicalize_functional(normal, offset);
  for (Eigen::Index r = 0; r <= d; ++r) {
    const Rat& entry = r < d ? normal(r) : offset;
    if (entry == Rat(0)) continue;
    if (entry < Rat(0)) {
      normal = -normal;
      offset = -offset;
    }
    break;
  }
  return {normal, offset};
}

// Affine chart of the hyperplane spanned by the columns of `pts`: maps
// points of the hyperplane to coordinates in dimension d-1.
struct PlaneChart {
  RVec origin;
  RMat basis;

  explicit PlaneChart(const RMat& pts)
      : origin(pts.col(0)), basis(pts.rows(), pts.cols() - 1) {
    for (Eigen::Index j = 1; j < pts.cols(); ++j)
      basis.col(j - 1) = pts.col(j) - pts.col(0);
  }

  RVec to_plane(const RVec& q) const {
    RVec x;
    if (!solve_linear(basis, q - origin, x))
      throw InternalError("point does not lie in the hyperplane of its chart");
    return x;
  }
};

struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// One boundary (d-1)-simplex of the family together with the apexes of the
// full simplices it bounds.
struct BoundaryNode {
  std::vector<int> labels;
  std::vector<int> apexes;
  RMat pts;
};

bool sorted_contains(const std::vector<int>& haystack,
                     const std::vector<int>& needle) {
  return std::includes(haystack.begin(), haystack.end(), needle.begin(),
                       needle.end());
}

// True when the two coplanar touching simplices meet in a set that is not a
// common face of both, decided inside their shared hyperplane.
bool improper_touch_in_plane(const PointConfiguration& pc,
                             const PlaneChart& chart, const BoundaryNode& a,
                             const BoundaryNode& b) {
  std::vector<int> labels;
  std::set_union(a.labels.begin(), a.labels.end(), b.labels.begin(),
                 b.labels.end(), std::back_inserter(labels));
  RMat flat(pc.dim() - 1, static_cast<Eigen::Index>(labels.size()));
  std::map<int, int> local;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    flat.col(static_cast<Eigen::Index>(i)) = chart.to_plane(pc.point(labels[i]));
    local[labels[i]] = static_cast<int>(i);
  }
  PointConfiguration plane_pc(flat);
  auto localize = [&](const std::vector<int>& ls) {
    std::vector<int> out;
    out.reserve(ls.size());
    for (int l : ls) out.push_back(local.at(l));
    return out;
  };
  return exists_separating_dependency(plane_pc, localize(a.labels),
                                      localize(b.labels));
}

// Side of the region's hyperplane the node's simplices lie on: +1 or -1.
// A mismatched region cannot contain a facet matched from both sides (the
// two matching simplices would overlap any simplex behind an overlapping
// coplanar triangle), so mixed apex signs signal a validator bug.
int node_side(const PointConfiguration& pc, const MismatchedRegion& region,
              const BoundaryNode& node) {
  int side = 0;
  for (int apex : node.apexes) {
    Rat value = -region.offset;
    RVec p = pc.point(apex);
    for (Eigen::Index r = 0; r < p.size(); ++r)
      value += region.normal(r) * p(r);
    int s = value > Rat(0) ? 1 : (value < Rat(0) ? -1 : 0);
    if (s == 0)
      throw InternalError("simplex apex lies in the hyperplane of its facet");
    if (side == 0) side = s;
    if (side != s)
      throw InternalError(
          "mismatched region contains a facet matched from both sides");
  }
  return side;
}

// Fills polygon_vertices/corner_count for a 3-dimensional region and audits
// the structure: both sides tile the convex hull of the region's points,
// same-side triangles have disjoint relative interiors, and the two sides
// share no interior edge.
void fill_polygon_structure(const PointConfiguration& pc,
                            const PlaneChart& chart,
                            MismatchedRegion& region) {
  std::vector<int> labels;
  for (const auto& tri : region.member_triangles)
    labels.insert(labels.end(), tri.begin(), tri.end());
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());

  RMat flat(2, static_cast<Eigen::Index>(labels.size()));
  std::map<int, int> local;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    flat.col(static_cast<Eigen::Index>(i)) = chart.to_plane(pc.point(labels[i]));
    local[labels[i]] = static_cast<int>(i);
  }
  PointConfiguration plane_pc(flat);
  ConvexHull polygon = convex_hull(plane_pc);

  auto flat_triangle = [&](const std::vector<int>& tri) {
    RMat m(2, 3);
    for (int j = 0; j < 3; ++j) m.col(j) = flat.col(local.at(tri[j]));
    return m;
  };
  for (const auto* side : {&region.side_a, &region.side_b}) {
    Rat area(0);
    for (const auto& tri : *side) area += simplex_volume_pts(flat_triangle(tri));
    if (area != polygon.volume)
      throw InternalError(
          "side of a mismatched region does not tile the region polygon");
    for (std::size_t i = 0; i < side->size(); ++i)
      for (std::size_t j = i + 1; j < side->size(); ++j)
        if (simplex_meet(pc.gather((*side)[i]), pc.gather((*side)[j])).sign > 0)
          throw InternalError(
              "same-side triangles of a mismatched region overlap");
  }

  // Corner cycle: every hull facet of the polygon is an edge whose corner
  // endpoints are its two extreme points.
  std::set<int> corners(polygon.vertex_labels.begin(),
                        polygon.vertex_labels.end());
  std::map<int, std::vector<int>> adjacent;
  for (const auto& facet : polygon.facets) {
    std::vector<int> ends;
    for (int v : facet.vertex_labels)
      if (corners.count(v)) ends.push_back(v);
    if (ends.size() != 2)
      throw InternalError("polygon edge without exactly two corners");
    adjacent[ends[0]].push_back(ends[1]);
    adjacent[ends[1]].push_back(ends[0]);
  }
  for (const auto& [corner, nbrs] : adjacent)
    if (nbrs.size() != 2)
      throw InternalError("polygon corner not on exactly two edges");
  int start = *std::min_element(corners.begin(), corners.end());
  int prev = start;
  int cur = std::min(adjacent[start][0], adjacent[start][1]);
  std::vector<int> cycle{start};
  while (cur != start) {
    cycle.push_back(cur);
    int next = adjacent[cur][0] == prev ? adjacent[cur][1] : adjacent[cur][0];
    prev = cur;
    cur = next;
  }
  if (cycle.size() != corners.size())
    throw InternalError("polygon boundary is not a single cycle");
  region.polygon_vertices.clear();
  for (int c : cycle) region.polygon_vertices.push_back(labels[c]);
  region.corner_count = static_cast<int>(cycle.size());

  // The diagonals used by one side may not be used by the other: collect
  // each side's edges that run through the polygon's interior.
  auto interior_edges = [&](const std::vector<std::vector<int>>& side) {
    std::set<std::pair<int, int>> interior;
    for (const auto& tri : side)
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          int u = local.at(tri[i]);
          int v = local.at(tri[j]);
          bool boundary = false;
          for (const auto& facet : polygon.facets) {
            const auto& on = facet.vertex_labels;
            if (std::find(on.begin(), on.end(), u) != on.end() &&
                std::find(on.begin(), on.end(), v) != on.end()) {
              boundary = true;
              break;
            }
          }
          if (!boundary) interior.insert({std::min(u, v), std::max(u, v)});
        }
    return interior;
  };
  std::set<std::pair<int, int>> ia = interior_edges(region.side_a);
  std::set<std::pair<int, int>> ib = interior_edges(region.side_b);
  std::vector<std::pair<int, int>> common;
  std::set_intersection(ia.begin(), ia.end(), ib.begin(), ib.end(),
                        std::back_inserter(common));
  if (!common.empty())
    throw InternalError(
        "the two sides of a mismatched region share an interior edge");
}

}  // namespace

const char* to_string(FamilyStatus s) {
  switch (s) {
    case FamilyStatus::Unknown:
      return "unknown";
    case FamilyStatus::Dissection:
      return "dissection";
    case FamilyStatus::Triangulation:
      return "triangulation";
    case FamilyStatus::Invalid:
      return "invalid";
  }
  throw InternalError("unhandled family status");
}

SimplexFamily make_family(const PointConfiguration& pc,
                          const std::vector<std::vector<int>>& tuples) {
  SimplexFamily family;
  family.config = &pc;
  family.simplices.reserve(tuples.size());
  std::set<std::vector<int>> seen;
  for (const auto& tuple : tuples) {
    Simplex s = make_simplex(pc, tuple);
    if (!seen.insert(s.vertex_labels).second)
      throw StructuralError("repeated simplex in family: " +
                            tuple_string(s.vertex_labels));
    family.simplices.push_back(std::move(s));
  }
  return family;
}

ValidationReport validate(SimplexFamily& family) {
  const PointConfiguration& pc = config_of(family);
  ValidationReport report;
  report.volume_hull = total_volume(pc);
  report.volume_sum = Rat(0);
  for (const auto& s : family.simplices) report.volume_sum += s.volume;

  RelationTable table = relation_table(pc, family.simplices);
  for (std::size_t j = 1; j < family.simplices.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      PairRelation r = table.at(i, j);
      if (r == PairRelation::InteriorOverlap)
        report.overlapping_pairs.emplace_back(static_cast<int>(i),
                                              static_cast<int>(j));
      else if (r == PairRelation::ImproperBoundary)
        report.improper_pairs.emplace_back(static_cast<int>(i),
                                           static_cast<int>(j));
    }

  if (!report.overlapping_pairs.empty() ||
      report.volume_sum != report.volume_hull)
    report.status = FamilyStatus::Invalid;
  else if (!report.improper_pairs.empty())
    report.status = FamilyStatus::Dissection;
  else
    report.status = FamilyStatus::Triangulation;
  family.status = report.status;
  return report;
}

std::vector<MismatchedRegion> mismatched_regions(const SimplexFamily& family,
                                                 RegionDiagnostics* diagnostics) {
  const PointConfiguration& pc = config_of(family);
  if (family.status != FamilyStatus::Dissection &&
      family.status != FamilyStatus::Triangulation)
    throw StructuralError(
        "mismatched-region extraction requires a validated dissection");
  const Eigen::Index d = pc.dim();

  // Distinct boundary (d-1)-simplices with the apexes they bound.
  std::map<std::vector<int>, std::vector<int>> apex_map;
  for (const auto& s : family.simplices)
    for (std::size_t skip = 0; skip < s.vertex_labels.size(); ++skip) {
      std::vector<int> facet;
      facet.reserve(s.vertex_labels.size() - 1);
      for (std::size_t t = 0; t < s.vertex_labels.size(); ++t)
        if (t != skip) facet.push_back(s.vertex_labels[t]);
      apex_map[std::move(facet)].push_back(s.vertex_labels[skip]);
    }

  // Bucket by supporting hyperplane; only coplanar pairs can interact.
  std::map<std::pair<std::vector<Rat>, Rat>, std::vector<BoundaryNode>> buckets;
  for (auto& [facet, apexes] : apex_map) {
    BoundaryNode node{facet, apexes, pc.gather(facet)};
    auto [normal, offset] = plane_through(node.pts);
    std::vector<Rat> key(normal.data(), normal.data() + normal.size());
    buckets[{std::move(key), offset}].push_back(std::move(node));
  }

  std::vector<MismatchedRegion> regions;
  for (auto& [key, nodes] : buckets) {
    const int n = static_cast<int>(nodes.size());
    if (n < 2) continue;
    PlaneChart chart(nodes.front().pts);
    DisjointSets components(n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int sign = simplex_meet(nodes[i].pts, nodes[j].pts).sign;
        if (sign > 0) {
          components.unite(i, j);
        } else if (sign == 0 && diagnostics != nullptr &&
                   improper_touch_in_plane(pc, chart, nodes[i], nodes[j])) {
          diagnostics->anomalous_pairs.emplace_back(nodes[i].labels,
                                                    nodes[j].labels);
        }
      }

    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[components.find(i)].push_back(i);
    for (const auto& [root, members] : groups) {
      if (members.size() < 2) continue;
      MismatchedRegion region;
      region.normal = RVec(d);
      for (Eigen::Index r = 0; r < d; ++r) region.normal(r) = key.first[r];
      region.offset = key.second;
      for (int idx : members) {
        const BoundaryNode& node = nodes[idx];
        region.member_triangles.push_back(node.labels);
        if (node_side(pc, region, node) > 0)
          region.side_a.push_back(node.labels);
        else
          region.side_b.push_back(node.labels);
      }
      if (region.side_a.empty() || region.side_b.empty())
        throw InternalError("mismatched region with all simplices on one side");
      if (d == 3) fill_polygon_structure(pc, chart, region);
      regions.push_back(std::move(region));
    }
  }

  // Distinct regions must have disjoint relative interiors; regions in a
  // common plane are distinct components, so only cross-plane pairs need a
  // geometric check.
  if (d == 3) {
    for (std::size_t a = 0; a < regions.size(); ++a)
      for (std::size_t b = a + 1; b < regions.size(); ++b) {
        bool same_plane = regions[a].offset == regions[b].offset;
        for (Eigen::Index r = 0; same_plane && r < d; ++r)
          same_plane = regions[a].normal(r) == regions[b].normal(r);
        if (same_plane) continue;
        for (const auto& ta : regions[a].member_triangles)
          for (const auto& tb : regions[b].member_triangles)
            if (simplex_meet(pc.gather(ta), pc.gather(tb)).sign > 0)
              throw InternalError(
                  "mismatched regions with intersecting relative interiors");
      }
  }
  return regions;
}

EulerAudit euler_audit(const SimplexFamily& family) {
  const PointConfiguration& pc = config_of(family);
  if (family.status != FamilyStatus::Triangulation)
    throw StructuralError("census requires a validated triangulation");
  if (pc.dim() != 3)
    throw StructuralError("census applies to dimension 3 only");

  ConvexHull hull = convex_hull(pc);
  std::set<int> used;
  std::set<std::pair<int, int>> edges;
  for (const auto& s : family.simplices) {
    const auto& v = s.vertex_labels;
    used.insert(v.begin(), v.end());
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        edges.insert({v[i], v[j]});
  }
  auto on_common_facet = [&](const std::vector<int>& labels) {
    for (const auto& facet : hull.facets)
      if (sorted_contains(facet.vertex_labels, labels)) return true;
    return false;
  };

  EulerAudit audit;
  for (int v : used) {
    if (on_common_facet({v}))
      ++audit.boundary_vertices;
    else
      ++audit.interior_vertices;
  }
  for (const auto& [u, v] : edges)
    if (!on_common_facet({u, v})) ++audit.interior_edges;
  audit.tetra_count = static_cast<long long>(family.size());

  long long expected = audit.boundary_vertices + audit.interior_edges -
                       audit.interior_vertices - 3;
  if (audit.tetra_count != expected) {
    std::ostringstream os;
    os << "vertex/edge census contradicts the triangulation size: " << audit.tetra_count
       << " tetrahedra vs " << audit.boundary_vertices << " + "
       << audit.interior_edges << " - " << audit.interior_vertices << " - 3";
    throw InternalError(os.str());
  }
  return audit;
}

BoundsCheck check_bounds(const SimplexFamily& family,
                         const std::vector<MismatchedRegion>& regions) {
  const PointConfiguration& pc = config_of(family);
  if (pc.dim() != 3)
    throw StructuralError("size bounds apply to dimension 3 only");
  if (family.status != FamilyStatus::Dissection)
    throw StructuralError(
        "size bounds require a dissection that is not face-to-face");
  if (regions.empty())
    throw StructuralError("size bounds require a mismatched region");

  ConvexHull hull = convex_hull(pc);
  BoundsCheck check;
  check.hull_vertices = static_cast<int>(hull.vertex_labels.size());
  check.lower = check.hull_vertices - 2;
  check.upper = static_cast<long long>(check.hull_vertices - 2) *
                (check.hull_vertices - 3) / 2;
  check.size = static_cast<long long>(family.size());
  check.ok = check.lower <= check.size && check.size <= check.upper;
  if (!check.ok) {
    std::ostringstream os;
    os << "dissection size " << check.size << " outside provable range ["
       << check.lower << ", " << check.upper << "] for " << check.hull_vertices
       << " hull vertices";
    throw InternalError(os.str());
  }
  return check;
}

BoundsCheck check_bounds(const SimplexFamily& family) {
  return check_bounds(family, mismatched_regions(family));
}

std::string family_report_json(SimplexFamily& family) {
  using nlohmann::ordered_json;
  const PointConfiguration& pc = config_of(family);
  ValidationReport report = validate(family);

  ordered_json j;
  j["status"] = to_string(report.status);
  j["size"] = family.size();
  ConvexHull hull = convex_hull(pc);
  j["n"] = hull.vertex_labels.size();
  j["n_prime"] = nullptr;
  j["e_i"] = nullptr;
  j["regions"] = nullptr;
  j["bounds"] = nullptr;

  const bool three_d = pc.dim() == 3;
  if (report.status == FamilyStatus::Triangulation) {
    if (three_d) {
      EulerAudit audit = euler_audit(family);
      j["n"] = audit.boundary_vertices;
      j["n_prime"] = audit.interior_vertices;
      j["e_i"] = audit.interior_edges;
    }
    j["regions"] = ordered_json::array();
  } else if (report.status == FamilyStatus::Dissection) {
    std::vector<MismatchedRegion> regions = mismatched_regions(family);
    ordered_json region_list = ordered_json::array();
    for (const auto& region : regions) {
      ordered_json entry;
      if (three_d)
        entry["k"] = region.corner_count;
      else
        entry["k"] = nullptr;
      ordered_json normal = ordered_json::array();
      for (Eigen::Index r = 0; r < region.normal.size(); ++r)
        normal.push_back(region.normal(r).str());
      entry["hyperplane"] = {{"normal", normal},
                             {"offset", region.offset.str()}};
      entry["sideA"] = region.side_a;
      entry["sideB"] = region.side_b;
      region_list.push_back(std::move(entry));
    }
    j["regions"] = std::move(region_list);
    if (three_d && !regions.empty()) {
      BoundsCheck bounds = check_bounds(family, regions);
      j["bounds"] = {{"lower", bounds.lower},
                     {"upper", bounds.upper},
                     {"ok", bounds.ok}};
    }
  } else {
    ordered_json diag;
    diag["volume_sum"] = report.volume_sum.str();
    diag["volume_hull"] = report.volume_hull.str();
    diag["volume_deficit"] = (report.volume_hull - report.volume_sum).str();
    diag["overlapping_pairs"] = report.overlapping_pairs;
    diag["improper_pairs"] = report.improper_pairs;
    j["diagnostics"] = std::move(diag);
  }
  return j.dump(2) + "\n";
}

}  // namespace polytri
