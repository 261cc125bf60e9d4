#include "polytri/extremal.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <climits>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "polytri/error.hpp"
#include "polytri/geometry.hpp"

namespace polytri {

const char* to_string(OptMode m) {
  switch (m) {
    case OptMode::Triangulation: return "triangulation";
    case OptMode::Dissection: return "dissection";
  }
  return "?";
}

const char* to_string(OptSense s) {
  switch (s) {
    case OptSense::Minimize: return "minimize";
    case OptSense::Maximize: return "maximize";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PairSet

PairSet::PairSet(std::size_t n)
    : n_(n), wpr_((n + 63) / 64), count_(0), bits_(n * wpr_, 0) {}

bool PairSet::contains(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i == j)
    throw StructuralError("pair set: indices out of range or equal");
  return (bits_[i * wpr_ + j / 64] >> (j % 64)) & 1u;
}

void PairSet::insert(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || i == j)
    throw StructuralError("pair set: indices out of range or equal");
  std::uint64_t& w = bits_[i * wpr_ + j / 64];
  const std::uint64_t m = std::uint64_t{1} << (j % 64);
  if (w & m) return;
  w |= m;
  bits_[j * wpr_ + i / 64] |= std::uint64_t{1} << (i % 64);
  ++count_;
}

std::vector<std::pair<int, int>> PairSet::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(count_);
  for (std::size_t i = 0; i + 1 < n_; ++i) {
    const std::uint64_t* r = row(i);
    for (std::size_t w = i / 64; w < wpr_; ++w) {
      std::uint64_t bits = r[w];
      if (w == i / 64) bits &= ~((std::uint64_t{2} << (i % 64)) - 1);  // j > i
      while (bits) {
        out.emplace_back(int(i), int(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Model building

IPModel build_model(const PointConfiguration& config,
                    std::vector<Simplex> simplices, const RelationTable& table,
                    OptMode mode, OptSense sense) {
  const std::size_t n = simplices.size();
  if (table.size() != n)
    throw StructuralError("build_model: relation table size differs from the simplex list");
  const int d = int(config.dim());
  for (const Simplex& s : simplices) {
    if (int(s.vertex_labels.size()) != d + 1 ||
        !std::is_sorted(s.vertex_labels.begin(), s.vertex_labels.end()) ||
        s.vertex_labels.front() < 0 ||
        s.vertex_labels.back() >= int(config.count()) ||
        !(s.volume > Rat(0)))
      throw StructuralError("build_model: malformed simplex");
  }

  // Canonical variable order: sorted by vertex labels, independent of the
  // order the caller enumerated the simplices in.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return simplices[a].vertex_labels < simplices[b].vertex_labels;
  });
  for (std::size_t k = 0; k + 1 < n; ++k)
    if (simplices[order[k]].vertex_labels == simplices[order[k + 1]].vertex_labels)
      throw StructuralError("build_model: duplicate simplex");
  std::vector<int> pos(n);  // input index -> canonical index
  for (std::size_t k = 0; k < n; ++k) pos[order[k]] = int(k);

  IPModel model;
  model.config = &config;
  model.simplices.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
    model.simplices.push_back(std::move(simplices[order[k]]));
  model.exclusions = PairSet(n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const PairRelation r = table.at(i, j);
      const bool forbid = mode == OptMode::Triangulation
                              ? r == PairRelation::ImproperBoundary ||
                                    r == PairRelation::InteriorOverlap
                              : r == PairRelation::InteriorOverlap;
      if (forbid) model.exclusions.insert(pos[i], pos[j]);
    }
  model.total_volume = total_volume(config);
  model.mode = mode;
  model.sense = sense;
  return model;
}

IPModel build_model(const PointConfiguration& config, OptMode mode,
                    OptSense sense) {
  std::vector<Simplex> all = enumerate_simplices(config);
  const RelationTable table = relation_table(config, all);
  return build_model(config, std::move(all), table, mode, sense);
}

std::string model_summary(const IPModel& model) {
  std::ostringstream os;
  os << model.simplices.size() << " variables, " << model.exclusions.count()
     << " exclusion pairs, 1 volume equality";
  return os.str();
}

// ---------------------------------------------------------------------------
// Internal machinery

namespace {

using Clock = std::chrono::steady_clock;

// Fixed-point scale for the volume bound arithmetic. Each cell's volume
// fraction vol/total is rounded down (lo) and up (hi) at this scale, so that
// integer sums of lo underestimate and sums of hi overestimate exact sums.
constexpr int kScaleBits = 40;
constexpr long long kScaleOne = 1LL << kScaleBits;

struct ScaledVol {
  long long lo = 0, hi = 0;
};

ScaledVol scale_volume(const Rat& vol, const Rat& total) {
  mpz_class num = vol.num() * total.den();
  num <<= kScaleBits;
  const mpz_class den = vol.den() * total.num();
  ScaledVol s;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  s.lo = q.get_si();
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  s.hi = q.get_si();
  return s;
}

// --- tiny bitset helpers over std::vector<std::uint64_t> -------------------

bool any_bit(const std::vector<std::uint64_t>& v) {
  for (std::uint64_t w : v)
    if (w) return true;
  return false;
}

int first_bit(const std::vector<std::uint64_t>& v) {
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v[w]) return int(w * 64 + std::countr_zero(v[w]));
  return -1;
}

void clear_bit(std::vector<std::uint64_t>& v, int i) {
  v[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
}

bool test_bit(const std::vector<std::uint64_t>& v, int i) {
  return (v[i >> 6] >> (i & 63)) & 1u;
}

// --- maximum independent set of a conflict graph ---------------------------
//
// Computed as a maximum clique of the complement graph with a greedy-coloring
// bound. The node cap keeps the worst case finite; when it trips, the caller
// falls back to a clique cover of the conflict graph, which is always an
// upper bound for the independence number.

class CliqueSolver {
 public:
  CliqueSolver(const std::vector<std::vector<std::uint64_t>>& adj, int v,
               long long cap)
      : adj_(adj), v_(v), w_((v + 63) / 64), cap_(cap) {}

  int run() {
    std::vector<std::uint64_t> all(w_, 0);
    for (int i = 0; i < v_; ++i) all[i >> 6] |= std::uint64_t{1} << (i & 63);
    expand(all, 0);
    return best_;
  }

  bool exact() const { return !exceeded_; }

 private:
  void expand(const std::vector<std::uint64_t>& p, int rsize) {
    if (++nodes_ > cap_) {
      exceeded_ = true;
      return;
    }
    if (!any_bit(p)) {
      best_ = std::max(best_, rsize);
      return;
    }
    // Greedy coloring of p: vertices of one color class are pairwise
    // non-adjacent, so a clique takes at most one per class.
    std::vector<int> order, color;
    std::vector<std::uint64_t> un = p;
    int c = 0;
    while (any_bit(un)) {
      ++c;
      std::vector<std::uint64_t> avail = un;
      while (any_bit(avail)) {
        const int x = first_bit(avail);
        clear_bit(un, x);
        clear_bit(avail, x);
        order.push_back(x);
        color.push_back(c);
        for (int k = 0; k < w_; ++k) avail[k] &= ~adj_[x][k];
      }
    }
    std::vector<std::uint64_t> cur = p;
    for (int i = int(order.size()) - 1; i >= 0; --i) {
      if (exceeded_) return;
      if (rsize + color[i] <= best_) return;
      const int x = order[i];
      std::vector<std::uint64_t> nxt(w_);
      for (int k = 0; k < w_; ++k) nxt[k] = cur[k] & adj_[x][k];
      expand(nxt, rsize + 1);
      clear_bit(cur, x);
    }
  }

  const std::vector<std::vector<std::uint64_t>>& adj_;
  int v_, w_;
  long long cap_, nodes_ = 0;
  int best_ = 0;
  bool exceeded_ = false;
};

int greedy_clique_cover(const std::vector<std::vector<std::uint64_t>>& conflict,
                        int v) {
  std::vector<std::vector<int>> cliques;
  for (int x = 0; x < v; ++x) {
    bool placed = false;
    for (auto& c : cliques) {
      bool all = true;
      for (int y : c)
        if (!test_bit(conflict[x], y)) {
          all = false;
          break;
        }
      if (all) {
        c.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) cliques.push_back({x});
  }
  return int(cliques.size());
}

// --- interior-edge cap for 3-dimensional triangulations --------------------
//
// An edge of a triangulation is interior when it is not contained in a hull
// facet, which for a segment between two configuration points happens exactly
// when no facet contains both endpoints. Interior edges of one triangulation
// are pairwise compatible (closed segments meet in at most a shared
// endpoint), so a maximum pairwise-compatible set of interior segments bounds
// the interior-edge census of every triangulation.

long long interior_edge_cap(const PointConfiguration& pc,
                            const ConvexHull& hull) {
  const int n = int(pc.count());
  const int d = int(pc.dim());
  const int fcount = int(hull.facets.size());
  const int fw = (fcount + 63) / 64;
  std::vector<std::vector<std::uint64_t>> on_facet(
      n, std::vector<std::uint64_t>(fw, 0));
  for (int f = 0; f < fcount; ++f)
    for (int l : hull.facets[f].vertex_labels)
      on_facet[l][f >> 6] |= std::uint64_t{1} << (f & 63);

  std::vector<std::pair<int, int>> segs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      bool shared = false;
      for (int w = 0; w < fw; ++w)
        if (on_facet[a][w] & on_facet[b][w]) {
          shared = true;
          break;
        }
      if (!shared) segs.emplace_back(a, b);
    }
  const int v = int(segs.size());
  if (v <= 1) return v;

  std::vector<std::vector<std::uint64_t>> conflict(
      v, std::vector<std::uint64_t>((v + 63) / 64, 0));
  auto mark = [&](int i, int j) {
    conflict[i][j >> 6] |= std::uint64_t{1} << (j & 63);
    conflict[j][i >> 6] |= std::uint64_t{1} << (i & 63);
  };
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) {
      const auto [a, b] = segs[i];
      const auto [c, e] = segs[j];
      int common = -1, pi = -1, pj = -1;
      if (a == c) common = a, pi = b, pj = e;
      else if (a == e) common = a, pi = b, pj = c;
      else if (b == c) common = b, pi = a, pj = e;
      else if (b == e) common = b, pi = a, pj = c;
      if (common >= 0) {
        // Sharing an endpoint is compatible unless the segments run along one
        // line in the same direction, overlapping beyond the endpoint.
        const RVec u = pc.point(pi) - pc.point(common);
        const RVec w = pc.point(pj) - pc.point(common);
        bool collinear = true;
        for (int r = 0; r < d && collinear; ++r)
          for (int s = r + 1; s < d; ++s)
            if (u(r) * w(s) != u(s) * w(r)) {
              collinear = false;
              break;
            }
        if (collinear) {
          Rat dot(0);
          for (int k = 0; k < d; ++k) dot += u(k) * w(k);
          if (dot > Rat(0)) mark(i, j);
        }
      } else {
        if (simplex_meet(pc.gather({a, b}), pc.gather({c, e})).sign >= 0)
          mark(i, j);
      }
    }

  // Maximum independent set in `conflict` = maximum clique in the complement.
  std::vector<std::vector<std::uint64_t>> comp(
      v, std::vector<std::uint64_t>((v + 63) / 64, 0));
  for (int i = 0; i < v; ++i) {
    for (int j = 0; j < v; ++j)
      if (j != i && !test_bit(conflict[i], j))
        comp[i][j >> 6] |= std::uint64_t{1} << (j & 63);
  }
  CliqueSolver solver(comp, v, 2'000'000);
  const int mis = solver.run();
  if (solver.exact()) return mis;
  return greedy_clique_cover(conflict, v);
}

// --- generic points --------------------------------------------------------

struct HyperplanePool {
  std::vector<RVec> normals;
  std::vector<Rat> offsets;
};

// Every hyperplane spanned by d affinely independent configuration points.
// A point avoiding all of them lies on no cell boundary of any family.
HyperplanePool spanned_hyperplanes(const PointConfiguration& pc) {
  const int d = int(pc.dim());
  const int n = int(pc.count());
  HyperplanePool pool;
  std::vector<int> comb(d);
  std::iota(comb.begin(), comb.end(), 0);
  while (true) {
    RMat a(d - 1, d);
    for (int i = 1; i < d; ++i)
      for (int k = 0; k < d; ++k)
        a(i - 1, k) = pc.point(comb[i])(k) - pc.point(comb[0])(k);
    RMat kernel = nullspace_basis(a);
    if (kernel.cols() == 1) {
      RVec normal = kernel.col(0);
      Rat offset(0);
      for (int k = 0; k < d; ++k) offset += normal(k) * pc.point(comb[0])(k);
      pool.normals.push_back(std::move(normal));
      pool.offsets.push_back(std::move(offset));
    }
    int i = d - 1;
    while (i >= 0 && comb[i] == n - d + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < d; ++j) comb[j] = comb[j - 1] + 1;
  }
  return pool;
}

bool generic_point(const HyperplanePool& pool, const RVec& x) {
  for (std::size_t h = 0; h < pool.normals.size(); ++h) {
    const RVec& a = pool.normals[h];
    Rat v(0);
    for (int k = 0; k < int(a.size()); ++k) v += a(k) * x(k);
    if (v == pool.offsets[h]) return false;
  }
  return true;
}

// A strictly positive combination of all points lies in the interior of the
// hull; deterministic pseudo-random weights escape the hyperplane pool.
RVec generic_interior_point(const PointConfiguration& pc,
                            const HyperplanePool& pool) {
  const int d = int(pc.dim());
  const int n = int(pc.count());
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::mt19937 rng(9001u + 77u * std::uint32_t(attempt));
    RVec acc(d);
    for (int k = 0; k < d; ++k) acc(k) = Rat(0);
    Rat tw(0);
    for (int i = 0; i < n; ++i) {
      const Rat w(int(1 + rng() % 997));
      tw += w;
      for (int k = 0; k < d; ++k) acc(k) += w * pc.point(i)(k);
    }
    for (int k = 0; k < d; ++k) acc(k) = acc(k) / tw;
    if (generic_point(pool, acc)) return acc;
  }
  throw InternalError("no generic interior point found");
}

std::string point_key(const RVec& x) {
  std::string k;
  for (int i = 0; i < int(x.size()); ++i) {
    k += x(i).str();
    k += '|';
  }
  return k;
}

// --- warm-start insertion orders -------------------------------------------

std::vector<std::vector<int>> warm_orders(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  out.push_back(base);
  std::vector<int> rev(base.rbegin(), base.rend());
  out.push_back(std::move(rev));
  std::mt19937 rng(12345u);
  std::vector<int> cur = base;
  for (int s = 0; s < 3; ++s) {
    for (std::size_t k = cur.size(); k > 1; --k)
      std::swap(cur[k - 1], cur[rng() % k]);
    out.push_back(cur);
  }
  return out;
}

// --- the search ------------------------------------------------------------

class Searcher {
 public:
  Searcher(const IPModel& model, const SolveBudget& budget,
           long long static_bound)
      : model_(model),
        pc_(*model.config),
        n_(int(model.simplices.size())),
        d_(int(pc_.dim())),
        w_(int(model.exclusions.words_per_row())),
        maximize_(model.sense == OptSense::Maximize),
        tri_(model.mode == OptMode::Triangulation),
        static_bound_(static_bound),
        node_limit_(budget.max_nodes),
        time_limit_(budget.max_seconds),
        total_(model.total_volume),
        t0_(Clock::now()) {
    setup_volumes();
    const HyperplanePool pool = spanned_hyperplanes(pc_);
    const RVec w0 = generic_interior_point(pc_, pool);
    if (tri_)
      setup_faces(w0);
    else
      setup_witnesses(w0, pool);
    trail_.reserve(std::size_t(n_) + 64);
  }

  void warm_start() {
    for (const auto& ord : warm_orders(int(pc_.count()))) {
      const auto tuples = placing_simplices(pc_, ord);
      std::vector<int> cells;
      cells.reserve(tuples.size());
      bool usable = true;
      for (const auto& t : tuples) {
        const int idx = find_cell(t);
        if (idx < 0) {
          usable = false;
          break;
        }
        cells.push_back(idx);
      }
      if (!usable) continue;
      std::sort(cells.begin(), cells.end());
      for (std::size_t i = 0; usable && i + 1 < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j)
          if (model_.exclusions.contains(cells[i], cells[j])) {
            usable = false;
            break;
          }
      if (!usable) continue;
      if (better(static_cast<long long>(cells.size()))) {
        best_ = static_cast<long long>(cells.size());
        best_cells_ = cells;
      }
    }
  }

  void prove() {
    progression_.push_back({0, best_, static_bound_});
    recurse();
    proven_ = !aborted_;
  }

  void sweep(long long target) {
    if (!chosen_.empty() || !trail_.empty())
      throw InternalError("search state not unwound between phases");
    enumerating_ = true;
    target_ = target;
    recurse();
    sweep_complete_ = !aborted_;
  }

  SimplexFamily family_from(const std::vector<int>& cells) const {
    std::vector<std::vector<int>> tuples;
    tuples.reserve(cells.size());
    for (int c : cells) tuples.push_back(model_.simplices[c].vertex_labels);
    SimplexFamily fam = make_family(pc_, tuples);
    validate(fam);
    if (tri_) {
      if (fam.status != FamilyStatus::Triangulation)
        throw InternalError("certificate failed re-validation as a triangulation");
    } else if (fam.status != FamilyStatus::Dissection &&
               fam.status != FamilyStatus::Triangulation) {
      throw InternalError("certificate failed re-validation as a dissection");
    }
    if (d_ == 3 && fam.status == FamilyStatus::Triangulation) euler_audit(fam);
    return fam;
  }

  long long best() const { return best_; }
  const std::vector<int>& best_cells() const { return best_cells_; }
  bool proven() const { return proven_; }
  bool sweep_complete() const { return sweep_complete_; }
  long long nodes() const { return nodes_; }
  const std::vector<BoundEvent>& progression() const { return progression_; }
  std::vector<std::vector<int>> take_found() { return std::move(found_); }

  long long residual() const {
    if (proven_) return best_;
    long long r = fold_set_ ? (maximize_ ? std::max(best_, fold_)
                                         : std::min(best_, fold_))
                            : best_;
    if (static_bound_ >= 0)
      r = maximize_ ? std::min(r, static_bound_) : std::max(r, static_bound_);
    return r;
  }

 private:
  struct Face {
    bool boundary = false;
    int cand[2] = {0, 0};    // free cells available on each side
    int cover[2] = {0, 0};   // chosen cells covering each side (0 or 1)
    std::vector<int> cells[2];
  };

  // -- setup ----------------------------------------------------------------

  void setup_volumes() {
    vlo_.resize(n_);
    vhi_.resize(n_);
    vorder_.resize(n_);
    vpos_.resize(n_);
    std::iota(vorder_.begin(), vorder_.end(), 0);
    std::sort(vorder_.begin(), vorder_.end(), [&](int a, int b) {
      const Rat &va = vol(a), &vb = vol(b);
      if (va != vb) return va < vb;
      return a < b;
    });
    for (int p = 0; p < n_; ++p) vpos_[vorder_[p]] = p;
    bit_cnt_.assign(n_ + 1, 0);
    bit_lo_.assign(n_ + 1, 0);
    bit_hi_.assign(n_ + 1, 0);
    free_mask_.assign((n_ + 63) / 64, 0);
    free_cnt_ = n_;
    free_lo_sum_ = free_hi_sum_ = 0;
    for (int c = 0; c < n_; ++c) {
      const ScaledVol s = scale_volume(vol(c), total_);
      vlo_[c] = s.lo;
      vhi_[c] = s.hi;
      free_lo_sum_ += s.lo;
      free_hi_sum_ += s.hi;
      free_mask_[c >> 6] |= std::uint64_t{1} << (c & 63);
      bit_add(c, +1);
    }
    top_pow_ = n_ ? int(std::bit_floor(unsigned(n_))) : 0;
    covered_ = Rat(0);
    covered_lo_ = covered_hi_ = 0;
  }

  void setup_faces(const RVec& seed) {
    const ConvexHull hull = convex_hull(pc_);
    const int fcount = int(hull.facets.size());
    const int fw = (fcount + 63) / 64;
    std::vector<std::vector<std::uint64_t>> on_facet(
        pc_.count(), std::vector<std::uint64_t>(fw, 0));
    for (int f = 0; f < fcount; ++f)
      for (int l : hull.facets[f].vertex_labels)
        on_facet[l][f >> 6] |= std::uint64_t{1} << (f & 63);

    cell_faces_.resize(n_);
    std::map<std::vector<int>, int> ids;
    std::vector<int> face(d_);
    for (int c = 0; c < n_; ++c) {
      const auto& labels = model_.simplices[c].vertex_labels;
      cell_faces_[c].reserve(d_ + 1);
      for (int i = 0; i <= d_; ++i) {
        int k = 0;
        for (int j = 0; j <= d_; ++j)
          if (j != i) face[k++] = labels[j];
        auto [it, fresh] = ids.try_emplace(face, int(faces_.size()));
        if (fresh) {
          Face f;
          std::vector<std::uint64_t> common = on_facet[face[0]];
          for (int x = 1; x < d_; ++x)
            for (int w = 0; w < fw; ++w) common[w] &= on_facet[face[x]][w];
          f.boundary = any_bit(common);
          faces_.push_back(std::move(f));
        }
        const int fid = it->second;
        RMat m(d_, d_ + 1);
        for (int x = 0; x < d_; ++x) m.col(x) = pc_.point(face[x]);
        m.col(d_) = pc_.point(labels[i]);
        const int sgn = orientation_pts(m);
        if (sgn == 0) throw InternalError("degenerate cell facet");
        const int side = sgn > 0 ? 1 : 0;
        faces_[fid].cells[side].push_back(c);
        cell_faces_[c].emplace_back(fid, side);
      }
    }
    for (Face& f : faces_) {
      f.cand[0] = int(f.cells[0].size());
      f.cand[1] = int(f.cells[1].size());
    }
    for (int c = 0; c < n_; ++c)
      if (cell_contains(c, seed)) seed_cells_.push_back(c);
  }

  void setup_witnesses(const RVec& w0, const HyperplanePool& pool) {
    std::vector<RVec> pts;
    std::set<std::string> seen;
    pts.push_back(w0);
    seen.insert(point_key(w0));
    for (int c = 0; c < n_ && int(pts.size()) < 256; ++c) {
      RVec b = barycenter(pc_.gather(model_.simplices[c].vertex_labels));
      if (!generic_point(pool, b)) continue;
      if (!seen.insert(point_key(b)).second) continue;
      pts.push_back(std::move(b));
    }
    const int wn = int(pts.size());
    wit_cells_.resize(wn);
    cell_wits_.resize(n_);
    for (int w = 0; w < wn; ++w)
      for (int c = 0; c < n_; ++c)
        if (cell_contains(c, pts[w])) {
          wit_cells_[w].push_back(c);
          cell_wits_[c].push_back(w);
        }
    for (auto& cells : wit_cells_)
      std::sort(cells.begin(), cells.end(), [&](int a, int b) {
        const Rat &va = vol(a), &vb = vol(b);
        if (va != vb) return vb < va;  // larger volume first
        return a < b;
      });
    wit_cand_.resize(wn);
    for (int w = 0; w < wn; ++w) wit_cand_[w] = int(wit_cells_[w].size());
    wit_cover_.assign(wn, 0);
    uncovered_ = wn;
  }

  // Strict containment via facet orientations: x sits on the same side of
  // every facet as the opposite vertex. Generic points never land on a facet
  // hyperplane, so open/closed makes no difference for them.
  bool cell_contains(int c, const RVec& x) const {
    const auto& labels = model_.simplices[c].vertex_labels;
    RMat m(d_, d_ + 1);
    for (int i = 0; i <= d_; ++i) {
      int k = 0;
      for (int j = 0; j <= d_; ++j)
        if (j != i) m.col(k++) = pc_.point(labels[j]);
      m.col(d_) = pc_.point(labels[i]);
      const int ref = orientation_pts(m);
      if (ref == 0) throw InternalError("degenerate cell");
      m.col(d_) = x;
      if (orientation_pts(m) != ref) return false;
    }
    return true;
  }

  int find_cell(const std::vector<int>& labels) const {
    const auto it = std::lower_bound(
        model_.simplices.begin(), model_.simplices.end(), labels,
        [](const Simplex& s, const std::vector<int>& l) {
          return s.vertex_labels < l;
        });
    if (it == model_.simplices.end() || it->vertex_labels != labels) return -1;
    return int(it - model_.simplices.begin());
  }

  // -- bookkeeping ----------------------------------------------------------

  const Rat& vol(int c) const { return model_.simplices[c].volume; }

  bool is_free(int c) const {
    return (free_mask_[c >> 6] >> (c & 63)) & 1u;
  }

  void bit_add(int c, int sgn) {
    const long long lo = sgn * vlo_[c], hi = sgn * vhi_[c];
    for (int p = vpos_[c] + 1; p <= n_; p += p & -p) {
      bit_cnt_[p] += sgn;
      bit_lo_[p] += lo;
      bit_hi_[p] += hi;
    }
  }

  void retire(int c) {
    free_mask_[c >> 6] &= ~(std::uint64_t{1} << (c & 63));
    --free_cnt_;
    free_lo_sum_ -= vlo_[c];
    free_hi_sum_ -= vhi_[c];
    bit_add(c, -1);
    if (tri_)
      for (const auto& [f, s] : cell_faces_[c]) --faces_[f].cand[s];
    else
      for (int w : cell_wits_[c]) --wit_cand_[w];
  }

  void unretire(int c) {
    free_mask_[c >> 6] |= std::uint64_t{1} << (c & 63);
    ++free_cnt_;
    free_lo_sum_ += vlo_[c];
    free_hi_sum_ += vhi_[c];
    bit_add(c, +1);
    if (tri_)
      for (const auto& [f, s] : cell_faces_[c]) ++faces_[f].cand[s];
    else
      for (int w : cell_wits_[c]) ++wit_cand_[w];
  }

  void place(int c) {
    chosen_.push_back(c);
    covered_ += vol(c);
    covered_lo_ += vlo_[c];
    covered_hi_ += vhi_[c];
    if (tri_) {
      for (const auto& [f, s] : cell_faces_[c]) {
        Face& face = faces_[f];
        ++face.cover[s];
        if (!face.boundary) {
          const int tot = face.cover[0] + face.cover[1];
          if (tot == 1) {
            open_list_.push_back(f);
            ++open_cnt_;
          } else if (tot == 2) {
            --open_cnt_;
          }
        }
      }
    } else {
      for (int w : cell_wits_[c])
        if (wit_cover_[w]++ == 0) --uncovered_;
    }
  }

  void unplace(int c) {
    chosen_.pop_back();
    covered_ -= vol(c);
    covered_lo_ -= vlo_[c];
    covered_hi_ -= vhi_[c];
    if (tri_) {
      for (const auto& [f, s] : cell_faces_[c]) {
        Face& face = faces_[f];
        if (!face.boundary) {
          const int tot = face.cover[0] + face.cover[1];
          if (tot == 1) --open_cnt_;  // the list entry goes with the caller's resize
          else if (tot == 2) ++open_cnt_;
        }
        --face.cover[s];
      }
    } else {
      for (int w : cell_wits_[c])
        if (--wit_cover_[w] == 0) ++uncovered_;
    }
  }

  void choose(int c) {
    const std::uint64_t* row = model_.exclusions.row(c);
    for (int w = 0; w < w_; ++w) {
      std::uint64_t hits = free_mask_[w] & row[w];
      while (hits) {
        const int cell = w * 64 + std::countr_zero(hits);
        hits &= hits - 1;
        retire(cell);
        trail_.push_back(cell);
      }
    }
    retire(c);
    trail_.push_back(c);
    place(c);
  }

  void unchoose(int c, std::size_t cmark) {
    unplace(c);
    unwind(cmark);
  }

  void unwind(std::size_t mark) {
    while (trail_.size() > mark) {
      unretire(trail_.back());
      trail_.pop_back();
    }
  }

  // -- bounds ---------------------------------------------------------------

  // Max count of free cells, taken smallest volume first, whose rounded-down
  // volumes fit into `budget` (a valid upper bound on how many cells any
  // completion can still add).
  long long kmax_lo(long long budget) const {
    if (budget < 0) return 0;
    long long acc = 0, cnt = 0;
    int pos = 0;
    for (int pw = top_pow_; pw; pw >>= 1) {
      const int nxt = pos + pw;
      if (nxt <= n_ && acc + bit_lo_[nxt] <= budget) {
        acc += bit_lo_[nxt];
        cnt += bit_cnt_[nxt];
        pos = nxt;
      }
    }
    return cnt;
  }

  // Min count of free cells, taken largest volume first, whose rounded-up
  // volumes reach `demand` (a valid lower bound on how many cells any
  // completion must still add).
  long long kmin_hi(long long demand) const {
    if (demand <= 0) return 0;
    if (free_hi_sum_ < demand) return free_cnt_;  // unreachable anyway
    const long long surplus = free_hi_sum_ - demand;
    long long acc = 0, cnt = 0;
    int pos = 0;
    for (int pw = top_pow_; pw; pw >>= 1) {
      const int nxt = pos + pw;
      if (nxt <= n_ && acc + bit_hi_[nxt] <= surplus) {
        acc += bit_hi_[nxt];
        cnt += bit_cnt_[nxt];
        pos = nxt;
      }
    }
    return free_cnt_ - cnt;
  }

  int largest_free_cell() const {
    if (free_cnt_ == 0) return -1;
    long long cnt = 0;
    int pos = 0;
    for (int pw = top_pow_; pw; pw >>= 1) {
      const int nxt = pos + pw;
      if (nxt <= n_ && cnt + bit_cnt_[nxt] < free_cnt_) {
        cnt += bit_cnt_[nxt];
        pos = nxt;
      }
    }
    return vorder_[pos];
  }

  long long compute_bound() const {
    const long long r_hi = kScaleOne - covered_lo_;
    const long long r_lo = kScaleOne - covered_hi_;
    if (maximize_) {
      long long ub = static_cast<long long>(chosen_.size()) + kmax_lo(r_hi);
      if (static_bound_ >= 0) ub = std::min(ub, static_bound_);
      return ub;
    }
    long long lb = static_cast<long long>(chosen_.size()) + kmin_hi(r_lo);
    if (tri_)
      lb = std::max(lb, static_cast<long long>(chosen_.size()) + (open_cnt_ + d_) / (d_ + 1));
    if (static_bound_ >= 0) lb = std::max(lb, static_bound_);
    return lb;
  }

  void fold(long long b) {
    if (enumerating_) return;
    if (!fold_set_) {
      fold_ = b;
      fold_set_ = true;
    } else {
      fold_ = maximize_ ? std::max(fold_, b) : std::min(fold_, b);
    }
  }

  bool better(long long size) const {
    return best_ < 0 || (maximize_ ? size > best_ : size < best_);
  }

  bool time_tripped() const {
    if (time_limit_ <= 0) return false;
    if ((nodes_ & 1023) != 0) return false;
    return std::chrono::duration<double>(Clock::now() - t0_).count() >
           time_limit_;
  }

  void record_leaf() {
    const long long size = static_cast<long long>(chosen_.size());
    if (enumerating_) {
      if (size == target_) {
        std::vector<int> cells = chosen_;
        std::sort(cells.begin(), cells.end());
        found_.push_back(std::move(cells));
      }
      return;
    }
    if (better(size)) {
      best_ = size;
      best_cells_ = chosen_;
      std::sort(best_cells_.begin(), best_cells_.end());
      progression_.push_back({nodes_, best_, static_bound_});
    }
  }

  // -- the recursion --------------------------------------------------------

  // Returns false only when the budget tripped somewhere below; the caller
  // must then unwind and propagate. State is fully restored either way.
  bool recurse() {
    ++nodes_;
    if (nodes_ > node_limit_ || time_tripped()) {
      fold(compute_bound());
      aborted_ = true;
      return false;
    }

    if (tri_) {
      if (!chosen_.empty() && open_cnt_ == 0) {
        if (covered_ != total_)
          throw InternalError("face-matched complex does not fill the hull");
        record_leaf();
        return true;
      }
    } else {
      if (covered_hi_ >= kScaleOne && covered_ == total_) {
        record_leaf();
        return true;
      }
    }

    const long long r_lo = kScaleOne - covered_hi_;
    if (r_lo > 0 && free_hi_sum_ < r_lo) return true;  // cannot be filled

    const long long node_bound = compute_bound();
    if (maximize_) {
      if (enumerating_ ? node_bound < target_
                       : (best_ >= 0 && node_bound <= best_))
        return true;
    } else {
      if (enumerating_ ? node_bound > target_
                       : (best_ >= 0 && node_bound >= best_))
        return true;
    }

    // Pick what to branch on: some uncovered piece of the polytope every
    // completion must cover, with as few ways to cover it as possible.
    const std::vector<int>* cands = nullptr;
    int bin_cell = -1;
    if (tri_) {
      if (chosen_.empty()) {
        cands = &seed_cells_;
        if (seed_cells_.empty()) return true;
      } else {
        int best_face = -1, best_cand = INT_MAX, need = -1;
        for (int fid : open_list_) {
          const Face& f = faces_[fid];
          if (f.cover[0] + f.cover[1] != 1) continue;  // closed since pushed
          const int s = f.cover[0] ? 1 : 0;
          if (f.cand[s] < best_cand) {
            best_cand = f.cand[s];
            best_face = fid;
            need = s;
            if (best_cand == 0) break;
          }
        }
        if (best_face < 0)
          throw InternalError("open-face census out of sync");
        if (best_cand == 0) return true;  // the frontier cannot be matched
        cands = &faces_[best_face].cells[need];
      }
    } else {
      if (uncovered_ > 0) {
        int best_w = -1, best_cand = INT_MAX;
        for (int w = 0; w < int(wit_cells_.size()); ++w)
          if (wit_cover_[w] == 0 && wit_cand_[w] < best_cand) {
            best_cand = wit_cand_[w];
            best_w = w;
            if (best_cand == 0) break;
          }
        if (best_cand == 0) return true;  // an uncovered witness has no cover
        cands = &wit_cells_[best_w];
      } else {
        bin_cell = largest_free_cell();
        if (bin_cell < 0) return true;
      }
    }

    const std::size_t mark = trail_.size();
    bool ok = true;
    if (cands) {
      for (int c : *cands) {
        if (!is_free(c)) continue;
        const std::size_t cmark = trail_.size();
        const std::size_t omark = open_list_.size();
        choose(c);
        ok = recurse();
        unchoose(c, cmark);
        open_list_.resize(omark);
        if (!ok) break;
        retire(c);  // later branches must cover the target differently
        trail_.push_back(c);
      }
    } else {
      // All witnesses covered but volume remains: split on the largest free
      // cell — used, or discarded for good.
      const std::size_t cmark = trail_.size();
      const std::size_t omark = open_list_.size();
      choose(bin_cell);
      ok = recurse();
      unchoose(bin_cell, cmark);
      open_list_.resize(omark);
      if (ok) {
        retire(bin_cell);
        trail_.push_back(bin_cell);
        ok = recurse();
      }
    }
    unwind(mark);
    if (!ok) {
      fold(node_bound);
      return false;
    }
    return true;
  }

  // -- data -----------------------------------------------------------------

  const IPModel& model_;
  const PointConfiguration& pc_;
  const int n_, d_, w_;
  const bool maximize_, tri_;
  const long long static_bound_;
  const long long node_limit_;
  const double time_limit_;
  const Rat total_;
  const Clock::time_point t0_;

  std::vector<long long> vlo_, vhi_;
  std::vector<int> vorder_, vpos_;
  std::vector<long long> bit_cnt_, bit_lo_, bit_hi_;
  int top_pow_ = 0;
  std::vector<std::uint64_t> free_mask_;
  long long free_cnt_ = 0, free_lo_sum_ = 0, free_hi_sum_ = 0;

  Rat covered_;
  long long covered_lo_ = 0, covered_hi_ = 0;
  std::vector<int> chosen_;
  std::vector<int> trail_;

  std::vector<Face> faces_;
  std::vector<std::vector<std::pair<int, int>>> cell_faces_;
  std::vector<int> seed_cells_;
  std::vector<int> open_list_;
  int open_cnt_ = 0;

  std::vector<std::vector<int>> wit_cells_, cell_wits_;
  std::vector<int> wit_cand_;
  std::vector<int> wit_cover_;
  int uncovered_ = 0;

  long long nodes_ = 0;
  bool aborted_ = false;
  bool enumerating_ = false;
  long long target_ = -1;
  long long best_ = -1;
  std::vector<int> best_cells_;
  std::vector<std::vector<int>> found_;
  long long fold_ = 0;
  bool fold_set_ = false;
  bool proven_ = false;
  bool sweep_complete_ = false;
  std::vector<BoundEvent> progression_;
};

SolveResult run_search(const IPModel& model, const SolveBudget& budget,
                       bool enumerate) {
  if (!model.config) throw StructuralError("solve: model has no configuration");
  const auto t0 = Clock::now();
  const long long sbound = static_size_bound(model);
  Searcher searcher(model, budget, sbound);
  searcher.warm_start();
  searcher.prove();

  if (searcher.best() < 0) {
    if (searcher.proven())
      throw InternalError("the model admits no feasible family");
    throw InternalError(
        "node budget exhausted before any feasible family was found");
  }

  SolveResult res;
  res.optimum = searcher.best();
  res.proven = searcher.proven();
  res.residual_bound = searcher.residual();
  res.certificate = searcher.family_from(searcher.best_cells());
  if (enumerate) {
    res.all_optima.emplace();
    if (searcher.proven()) {
      searcher.sweep(res.optimum);
      auto found = searcher.take_found();
      std::sort(found.begin(), found.end());
      res.all_optima->reserve(found.size());
      for (const auto& cells : found)
        res.all_optima->push_back(searcher.family_from(cells));
      res.optima_complete = searcher.sweep_complete();
    }
  }
  res.stats.nodes = searcher.nodes();
  res.stats.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.stats.static_bound = sbound;
  res.stats.progression = searcher.progression();
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public entry points

long long static_size_bound(const IPModel& model) {
  if (!model.config)
    throw StructuralError("static_size_bound: model has no configuration");
  const PointConfiguration& pc = *model.config;
  std::vector<Rat> vols;
  vols.reserve(model.simplices.size());
  for (const Simplex& s : model.simplices) vols.push_back(s.volume);
  std::sort(vols.begin(), vols.end());

  long long bound = 0;
  if (model.sense == OptSense::Maximize) {
    Rat acc(0);
    long long k = 0;
    for (const Rat& v : vols) {
      if (acc + v <= model.total_volume) {
        acc += v;
        ++k;
      } else {
        break;
      }
    }
    bound = k;
  } else {
    Rat acc(0);
    long long k = 0;
    for (auto it = vols.rbegin(); it != vols.rend(); ++it) {
      acc += *it;
      ++k;
      if (acc >= model.total_volume) break;
    }
    bound = k;
  }

  if (model.mode == OptMode::Triangulation && pc.dim() == 3) {
    const ConvexHull hull = convex_hull(pc);
    std::vector<char> on_boundary(pc.count(), 0);
    for (const auto& f : hull.facets)
      for (int l : f.vertex_labels) on_boundary[l] = 1;
    const long long nb =
        std::count(on_boundary.begin(), on_boundary.end(), char(1));
    const long long ni = static_cast<long long>(pc.count()) - nb;
    if (model.sense == OptSense::Maximize) {
      // cells = boundary vertices used + interior edges - interior vertices
      // used - 3; maximize each census term independently.
      const long long cap = nb - 3 + interior_edge_cap(pc, hull);
      bound = std::min(bound, cap);
    } else {
      const long long lower = static_cast<long long>(hull.vertex_labels.size()) - 3 - ni;
      bound = std::max(bound, lower);
    }
  }
  return bound;
}

SolveResult solve(const IPModel& model, const SolveBudget& budget) {
  return run_search(model, budget, false);
}

SolveResult enumerate_optima(const IPModel& model, const SolveBudget& budget) {
  return run_search(model, budget, true);
}

}  // namespace polytri
