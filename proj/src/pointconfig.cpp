#include "polytri/pointconfig.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "polytri/error.hpp"
#include "polytri/geometry.hpp"
#include "polytri/lp.hpp"

namespace polytri {

namespace {

RMat homogeneous_rows(const RMat& pts) {
  RMat H(pts.cols(), pts.rows() + 1);
  for (Eigen::Index i = 0; i < pts.cols(); ++i) {
    H(i, 0) = Rat(1);
    for (Eigen::Index k = 0; k < pts.rows(); ++k) H(i, k + 1) = pts(k, i);
  }
  return H;
}

}  // namespace

PointConfiguration::PointConfiguration(RMat points) : pts_(std::move(points)) {
  const Eigen::Index d = pts_.rows();
  const Eigen::Index n = pts_.cols();
  if (d < 1) throw StructuralError("point configuration: dimension must be positive");
  if (n < d + 1)
    throw StructuralError("point configuration: need at least d+1 points");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      bool same = true;
      for (Eigen::Index k = 0; k < d && same; ++k) same = pts_(k, i) == pts_(k, j);
      if (same)
        throw StructuralError("point configuration: duplicate points at labels " +
                              std::to_string(i) + " and " + std::to_string(j));
    }
  if (rank_of(homogeneous_rows(pts_)) != d + 1)
    throw DegeneracyError("point configuration: points do not span the full dimension");
}

RMat PointConfiguration::gather(const std::vector<int>& labels) const {
  RMat m(dim(), static_cast<Eigen::Index>(labels.size()));
  for (size_t j = 0; j < labels.size(); ++j) {
    int l = labels[j];
    if (l < 0 || l >= count())
      throw StructuralError("label out of range: " + std::to_string(l));
    m.col(static_cast<Eigen::Index>(j)) = pts_.col(l);
  }
  return m;
}

bool PointConfiguration::operator==(const PointConfiguration& o) const {
  if (dim() != o.dim() || count() != o.count()) return false;
  for (Eigen::Index j = 0; j < count(); ++j)
    for (Eigen::Index k = 0; k < dim(); ++k)
      if (pts_(k, j) != o.pts_(k, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Text round-trip

PointConfiguration parse_points(std::istream& in) {
  std::string line;
  long lineno = 0;
  long d = -1, n = -1;
  Eigen::Index next_point = 0;
  RMat pts;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    for (std::string t; ls >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (d < 0) {
      if (tokens.size() != 2)
        throw ParseError("expected header \"d n\"", lineno);
      try {
        size_t used = 0;
        d = std::stol(tokens[0], &used);
        if (used != tokens[0].size()) throw std::invalid_argument("");
        n = std::stol(tokens[1], &used);
        if (used != tokens[1].size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw ParseError("malformed header \"d n\"", lineno);
      }
      if (d < 1 || n < 1) throw ParseError("header values must be positive", lineno);
      pts = RMat(d, n);
      continue;
    }
    if (next_point >= n) throw ParseError("more point lines than the header announced", lineno);
    if (static_cast<long>(tokens.size()) != d)
      throw ParseError("expected " + std::to_string(d) + " coordinates, got " +
                           std::to_string(tokens.size()),
                       lineno);
    for (long k = 0; k < d; ++k) {
      try {
        pts(k, next_point) = Rat::from_string(tokens[static_cast<size_t>(k)]);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), lineno);
      }
    }
    ++next_point;
  }
  if (d < 0) throw ParseError("empty input", lineno);
  if (next_point < n)
    throw ParseError("expected " + std::to_string(n) + " points, got " +
                         std::to_string(static_cast<long>(next_point)),
                     lineno);
  return PointConfiguration(std::move(pts));
}

PointConfiguration parse_points(const std::string& text) {
  std::istringstream in(text);
  return parse_points(in);
}

PointConfiguration load_points(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open " + path);
  return parse_points(in);
}

std::string serialize_points(const PointConfiguration& pc) {
  std::ostringstream out;
  out << pc.dim() << ' ' << pc.count() << '\n';
  for (Eigen::Index j = 0; j < pc.count(); ++j) {
    for (Eigen::Index k = 0; k < pc.dim(); ++k) {
      if (k) out << ' ';
      out << pc.points()(k, j).str();
    }
    out << '\n';
  }
  return out.str();
}

void save_points(const PointConfiguration& pc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StructuralError("cannot open " + path + " for writing");
  out << serialize_points(pc);
}

// ---------------------------------------------------------------------------
// Placing engine

void canonicalize_functional(RVec& a, Rat& b) {
  const Eigen::Index d = a.size();
  mpz_class lcm_den(1), gcd_num(0);
  auto absorb = [&](const Rat& r) {
    mpz_class den = r.den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  };
  for (Eigen::Index k = 0; k < d; ++k) absorb(a(k));
  absorb(b);
  std::vector<mpz_class> ints(static_cast<size_t>(d) + 1);
  auto scaled = [&](const Rat& r) {
    mpz_class v = r.num() * (lcm_den / r.den());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), v.get_mpz_t());
    return v;
  };
  for (Eigen::Index k = 0; k < d; ++k) ints[static_cast<size_t>(k)] = scaled(a(k));
  ints[static_cast<size_t>(d)] = scaled(b);
  if (gcd_num == 0) throw StructuralError("cannot canonicalize the zero functional");
  for (Eigen::Index k = 0; k < d; ++k)
    a(k) = Rat(mpz_class(ints[static_cast<size_t>(k)] / gcd_num));
  b = Rat(mpz_class(ints[static_cast<size_t>(d)] / gcd_num));
}

namespace {

struct SimpFacet {
  std::vector<int> verts;  // sorted, size d
  RVec a;
  Rat b;  // a.x <= b on the hull built so far, equality on verts
};

struct PlacingRun {
  std::vector<std::vector<int>> simplices;  // sorted label tuples
  std::vector<SimpFacet> facets;            // facets of conv(order) in pieces
};

// Hyperplane a.x = c through d affinely independent points (columns).
std::pair<RVec, Rat> hyperplane_through(const RMat& pts) {
  const Eigen::Index d = pts.rows();
  RMat M(d, d + 1);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index k = 0; k < d; ++k) M(j, k) = pts(k, j);
    M(j, d) = Rat(-1);
  }
  RMat ker = nullspace_basis(M);
  if (ker.cols() != 1)
    throw DegeneracyError("hyperplane through affinely dependent points");
  RVec a(d);
  for (Eigen::Index k = 0; k < d; ++k) a(k) = ker(k, 0);
  return {a, ker(d, 0)};
}

PlacingRun run_placing(const PointConfiguration& pc, const std::vector<int>& order) {
  const Eigen::Index d = pc.dim();
  if (static_cast<Eigen::Index>(order.size()) < d + 1)
    throw DegeneracyError("placing: need at least d+1 labels");
  {
    std::vector<int> check = order;
    std::sort(check.begin(), check.end());
    if (std::adjacent_find(check.begin(), check.end()) != check.end())
      throw StructuralError("placing: repeated label in order");
  }

  // Greedy seed: the earliest affinely independent d+1 labels, in order.
  std::vector<int> seed;
  std::vector<int> rest;
  for (int l : order) {
    if (static_cast<Eigen::Index>(seed.size()) == d + 1) {
      rest.push_back(l);
      continue;
    }
    std::vector<int> trial = seed;
    trial.push_back(l);
    RMat H = homogeneous_rows(pc.gather(trial));
    if (rank_of(H) == static_cast<Eigen::Index>(trial.size()))
      seed = std::move(trial);
    else
      rest.push_back(l);
  }
  if (static_cast<Eigen::Index>(seed.size()) != d + 1)
    throw DegeneracyError("placing: labels do not span the full dimension");

  PlacingRun run;
  {
    std::vector<int> s = seed;
    std::sort(s.begin(), s.end());
    run.simplices.push_back(s);
  }
  {
    FacetSystem fs = simplex_inequalities(pc.gather(seed));
    for (Eigen::Index i = 0; i <= d; ++i) {
      SimpFacet f;
      for (Eigen::Index j = 0; j <= d; ++j)
        if (j != i) f.verts.push_back(seed[static_cast<size_t>(j)]);
      std::sort(f.verts.begin(), f.verts.end());
      f.a = fs.A.row(i).transpose();
      f.b = fs.b(i);
      run.facets.push_back(std::move(f));
    }
  }

  for (int l : rest) {
    RVec p = pc.point(l);
    std::vector<size_t> visible;
    for (size_t fi = 0; fi < run.facets.size(); ++fi) {
      Rat lhs(0);
      for (Eigen::Index k = 0; k < d; ++k) lhs += run.facets[fi].a(k) * p(k);
      if ((lhs - run.facets[fi].b).sign() > 0) visible.push_back(fi);
    }
    if (visible.empty()) continue;  // inside or on the current hull

    for (size_t fi : visible) {
      std::vector<int> s = run.facets[fi].verts;
      s.push_back(l);
      std::sort(s.begin(), s.end());
      run.simplices.push_back(std::move(s));
    }

    // Horizon ridges: those lying in exactly one visible facet.
    std::map<std::vector<int>, std::pair<int, int>> ridge_info;  // ridge -> (count, off-vertex)
    for (size_t fi : visible) {
      const auto& verts = run.facets[fi].verts;
      for (size_t drop = 0; drop < verts.size(); ++drop) {
        std::vector<int> ridge;
        ridge.reserve(verts.size() - 1);
        for (size_t j = 0; j < verts.size(); ++j)
          if (j != drop) ridge.push_back(verts[j]);
        auto [it, fresh] = ridge_info.try_emplace(ridge, 0, verts[drop]);
        it->second.first += 1;
        if (!fresh) it->second.second = -1;  // shared ridge, never a horizon
      }
    }

    std::vector<SimpFacet> next;
    {
      std::vector<char> is_visible(run.facets.size(), 0);
      for (size_t fi : visible) is_visible[fi] = 1;
      for (size_t fi = 0; fi < run.facets.size(); ++fi)
        if (!is_visible[fi]) next.push_back(std::move(run.facets[fi]));
    }
    for (const auto& [ridge, info] : ridge_info) {
      if (info.first != 1) continue;
      SimpFacet f;
      f.verts = ridge;
      f.verts.push_back(l);
      std::sort(f.verts.begin(), f.verts.end());
      auto [a, c] = hyperplane_through(pc.gather(f.verts));
      RVec off = pc.point(info.second);
      Rat at_off(0);
      for (Eigen::Index k = 0; k < d; ++k) at_off += a(k) * off(k);
      int s = (at_off - c).sign();
      if (s == 0) throw InternalError("placing: horizon facet through an off-vertex");
      if (s > 0) {
        for (Eigen::Index k = 0; k < d; ++k) a(k) = -a(k);
        c = -c;
      }
      f.a = std::move(a);
      f.b = c;
      next.push_back(std::move(f));
    }
    run.facets = std::move(next);
  }
  return run;
}

ConvexHull assemble_hull(const PointConfiguration& pc, const PlacingRun& run,
                         const std::vector<int>& labels) {
  const Eigen::Index d = pc.dim();
  struct RatVecLess {
    bool operator()(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
    }
  };
  std::map<std::vector<Rat>, std::pair<RVec, Rat>, RatVecLess> unique_functionals;
  for (const auto& f : run.facets) {
    RVec a = f.a;
    Rat b = f.b;
    canonicalize_functional(a, b);
    std::vector<Rat> key;
    key.reserve(static_cast<size_t>(d) + 1);
    for (Eigen::Index k = 0; k < d; ++k) key.push_back(a(k));
    key.push_back(b);
    unique_functionals.try_emplace(std::move(key), std::move(a), b);
  }

  ConvexHull hull;
  for (const auto& [key, ab] : unique_functionals) {
    const auto& [a, b] = ab;
    HullFacet hf;
    hf.normal = a;
    hf.offset = b;
    for (int l : labels) {
      Rat lhs(0);
      for (Eigen::Index k = 0; k < d; ++k) lhs += a(k) * pc.points()(k, l);
      int s = (lhs - b).sign();
      if (s > 0) throw InternalError("hull facet violated by a configuration point");
      if (s == 0) hf.vertex_labels.push_back(l);
    }
    std::sort(hf.vertex_labels.begin(), hf.vertex_labels.end());
    hull.facets.push_back(std::move(hf));
  }
  std::sort(hull.facets.begin(), hull.facets.end(),
            [](const HullFacet& x, const HullFacet& y) {
              return x.vertex_labels < y.vertex_labels;
            });

  for (int l : labels) {
    RMat normals(d, 0);
    for (const auto& f : hull.facets)
      if (std::binary_search(f.vertex_labels.begin(), f.vertex_labels.end(), l)) {
        normals.conservativeResize(d, normals.cols() + 1);
        normals.col(normals.cols() - 1) = f.normal;
      }
    if (normals.cols() >= d && rank_of(normals) == d) hull.vertex_labels.push_back(l);
  }
  std::sort(hull.vertex_labels.begin(), hull.vertex_labels.end());

  hull.volume = Rat(0);
  for (const auto& s : run.simplices) hull.volume += simplex_volume_pts(pc.gather(s));
  return hull;
}

std::vector<int> all_labels(const PointConfiguration& pc) {
  std::vector<int> labels(static_cast<size_t>(pc.count()));
  for (size_t i = 0; i < labels.size(); ++i) labels[i] = static_cast<int>(i);
  return labels;
}

}  // namespace

ConvexHull convex_hull(const PointConfiguration& pc) {
  return convex_hull_of(pc, all_labels(pc));
}

ConvexHull convex_hull_of(const PointConfiguration& pc, const std::vector<int>& labels) {
  return assemble_hull(pc, run_placing(pc, labels), labels);
}

std::vector<std::vector<int>> placing_simplices(const PointConfiguration& pc,
                                                const std::vector<int>& order) {
  return run_placing(pc, order).simplices;
}

Rat total_volume(const PointConfiguration& pc) {
  auto labels = all_labels(pc);
  Rat v(0);
  for (const auto& s : run_placing(pc, labels).simplices)
    v += simplex_volume_pts(pc.gather(s));
  return v;
}

// ---------------------------------------------------------------------------
// Circuits

std::vector<Circuit> circuits_within(const PointConfiguration& pc,
                                     const std::vector<int>& support) {
  const Eigen::Index d = pc.dim();
  std::vector<int> sup = support;
  std::sort(sup.begin(), sup.end());
  sup.erase(std::unique(sup.begin(), sup.end()), sup.end());
  const size_t m = sup.size();
  const size_t max_size = std::min(m, static_cast<size_t>(d) + 2);

  std::vector<Circuit> out;
  std::vector<int> subset;
  // Enumerate subsets in lexicographic order by recursive extension.
  auto rec = [&](auto&& self, size_t from) -> void {
    if (subset.size() >= 2) {
      RMat cols(d + 1, static_cast<Eigen::Index>(subset.size()));
      for (size_t j = 0; j < subset.size(); ++j) {
        cols(0, static_cast<Eigen::Index>(j)) = Rat(1);
        for (Eigen::Index k = 0; k < d; ++k)
          cols(k + 1, static_cast<Eigen::Index>(j)) = pc.points()(k, subset[j]);
      }
      RMat ker = nullspace_basis(cols);
      if (ker.cols() == 1) {
        bool full_support = true;
        for (Eigen::Index j = 0; j < ker.rows(); ++j)
          if (ker(j, 0).is_zero()) {
            full_support = false;
            break;
          }
        if (full_support) {
          int flip = ker(0, 0).sign() < 0 ? -1 : 1;  // smallest label positive
          Circuit c;
          for (size_t j = 0; j < subset.size(); ++j) {
            if (ker(static_cast<Eigen::Index>(j), 0).sign() * flip > 0)
              c.positive.push_back(subset[j]);
            else
              c.negative.push_back(subset[j]);
          }
          out.push_back(std::move(c));
        }
      }
      // A dependent subset cannot extend to another circuit; minimality means
      // any strict superset has nullity >= 2 or a supported-zero kernel.
      if (ker.cols() >= 1) return;
    }
    if (subset.size() == max_size) return;
    for (size_t i = from; i < m; ++i) {
      subset.push_back(sup[i]);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

bool exists_separating_dependency(const PointConfiguration& pc,
                                  const std::vector<int>& a,
                                  const std::vector<int>& b) {
  const Eigen::Index d = pc.dim();
  std::vector<int> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::vector<int> only_a, only_b, shared;
  std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(only_a));
  std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(), std::back_inserter(only_b));
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(shared));

  const Eigen::Index na = static_cast<Eigen::Index>(only_a.size());
  const Eigen::Index nb = static_cast<Eigen::Index>(only_b.size());
  const Eigen::Index ns = static_cast<Eigen::Index>(shared.size());
  const Eigen::Index nv = na + nb + ns;
  if (na == 0 && nb == 0) return false;

  // Coefficients alpha >= 0 on a\b, beta >= 0 on b\a (entering negatively),
  // free on the shared labels; the dependency is normalized by the exclusive
  // mass alpha + beta = 1, which cannot vanish because the shared labels alone
  // are affinely independent.
  LpProblem p;
  p.c = RVec::Zero(nv);
  p.nonneg.assign(static_cast<size_t>(nv), 1);
  for (Eigen::Index j = 0; j < ns; ++j) p.nonneg[static_cast<size_t>(na + nb + j)] = 0;
  p.A_eq = RMat::Zero(d + 2, nv);
  p.b_eq = RVec::Zero(d + 2);
  auto fill = [&](Eigen::Index col, int label, const Rat& sign_factor) {
    for (Eigen::Index k = 0; k < d; ++k)
      p.A_eq(k, col) = sign_factor * pc.points()(k, label);
    p.A_eq(d, col) = sign_factor;  // affine row: coefficients sum to zero
  };
  for (Eigen::Index j = 0; j < na; ++j) {
    fill(j, only_a[static_cast<size_t>(j)], Rat(1));
    p.A_eq(d + 1, j) = Rat(1);
  }
  for (Eigen::Index j = 0; j < nb; ++j) {
    fill(na + j, only_b[static_cast<size_t>(j)], Rat(-1));
    p.A_eq(d + 1, na + j) = Rat(1);
  }
  for (Eigen::Index j = 0; j < ns; ++j) fill(na + nb + j, shared[static_cast<size_t>(j)], Rat(1));
  p.b_eq(d + 1) = Rat(1);
  return lp_feasible(p, nullptr);
}

}  // namespace polytri
