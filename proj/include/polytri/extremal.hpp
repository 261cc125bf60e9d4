#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polytri/complexes.hpp"
#include "polytri/pointconfig.hpp"
#include "polytri/simplexrel.hpp"

namespace polytri {

// What every feasible 0/1 point of a model must be.
enum class OptMode : std::uint8_t { Triangulation = 0, Dissection = 1 };
enum class OptSense : std::uint8_t { Minimize = 0, Maximize = 1 };

const char* to_string(OptMode m);
const char* to_string(OptSense s);

// Symmetric set of unordered variable pairs, stored as a full bit matrix so
// that a row doubles as the conflict mask of its variable during the search.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::size_t n);

  std::size_t size() const { return n_; }
  std::size_t words_per_row() const { return wpr_; }
  bool contains(std::size_t i, std::size_t j) const;
  void insert(std::size_t i, std::size_t j);  // i != j; inserting twice is a no-op
  std::size_t count() const { return count_; }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * wpr_; }
  // All pairs (i, j) with i < j, lexicographically sorted.
  std::vector<std::pair<int, int>> pairs() const;

 private:
  std::size_t n_ = 0, wpr_ = 0, count_ = 0;
  std::vector<std::uint64_t> bits_;
};

// 0/1 model over candidate d-simplices: one variable per simplex, one
// exclusion pair per forbidden co-occurrence, and the exact volume equality
//   sum vol(s) * x_s  =  vol(conv(configuration)).
// Triangulation mode excludes every pair that is neither disjoint nor meeting
// in a common face; dissection mode excludes exactly the pairs whose
// interiors overlap.  The feasible 0/1 points are then precisely the
// families of the mode's status (interior-disjoint closed d-simplices of
// full total volume cover the polytope), so optimizing the coordinate sum
// answers the extremal size questions.
struct IPModel {
  const PointConfiguration* config = nullptr;
  std::vector<Simplex> simplices;  // canonical order: sorted by vertex labels
  PairSet exclusions;              // indices into `simplices`
  Rat total_volume;                // right-hand side of the volume equality
  OptMode mode = OptMode::Triangulation;
  OptSense sense = OptSense::Minimize;
};

// Builds the model from a complete pairwise relation table whose indices
// refer to `simplices` in the order given.  The simplices are re-sorted into
// canonical order internally, so the resulting model -- and everything
// solved from it -- does not depend on the order the caller enumerated them
// in.  Throws StructuralError on a table size mismatch or a duplicate
// simplex.
IPModel build_model(const PointConfiguration& config,
                    std::vector<Simplex> simplices, const RelationTable& table,
                    OptMode mode, OptSense sense);

// Convenience form: enumerates every full-dimensional simplex of the
// configuration and classifies all pairs first.
IPModel build_model(const PointConfiguration& config, OptMode mode,
                    OptSense sense);

// One line, e.g. "495 variables, 63360 exclusion pairs, 1 volume equality".
std::string model_summary(const IPModel& model);

struct SolveBudget {
  // Node limit for the exact search.  This is the authoritative budget:
  // outcomes are reproducible because the search is deterministic and counts
  // nodes, not time.
  long long max_nodes = 20'000'000;
  // Optional wall-clock cap in seconds (0 = none).  Results under a time cap
  // are still exact, but whether the search finishes becomes machine
  // dependent, so automated runs should size max_nodes instead.
  double max_seconds = 0.0;
};

struct BoundEvent {
  long long nodes = 0;       // node count when the event fired
  long long incumbent = -1;  // best size known at that point
  long long bound = -1;      // best size still conceivable at that point
};

struct SolveStats {
  long long nodes = 0;
  double seconds = 0.0;
  long long static_bound = -1;  // search-free bound for the model's sense
  std::vector<BoundEvent> progression;  // initial bound, then every
                                        // incumbent improvement, in order
};

struct SolveResult {
  long long optimum = -1;     // size of the best family found
  SimplexFamily certificate;  // re-validated; status meets the model's mode
  bool proven = false;        // true: no feasible family beats `optimum`
  // When proven is false, the true optimum lies between `optimum` and
  // `residual_bound` inclusive (above `optimum` for Maximize, below for
  // Minimize).
  long long residual_bound = -1;
  // Engaged by enumerate_optima: every optimal family, sorted by label
  // tuples.  `optima_complete` is false when the budget truncated the sweep.
  std::optional<std::vector<SimplexFamily>> all_optima;
  bool optima_complete = false;
  SolveStats stats;
};

// Deterministic exact branch-and-bound over the model's feasible families.
//
// The search seeds an incumbent from placing triangulations over several
// fixed insertion orders, then branches on how a not-yet-covered part of the
// polytope gets covered: triangulation models extend a partial complex at an
// unmatched interior facet (every candidate on its other side, one branch
// each), dissection models cover a generic uncovered witness point.  Nodes
// are pruned with volume packing bounds (how many of the still-allowed
// simplices can or must fit into the uncovered volume).  Within the node
// budget the result is proven optimal; otherwise the best known family is
// returned with proven = false and the residual bound.  Identical inputs and
// node budgets give identical results, independent of the simplex order the
// model was built from.
//
// Throws InternalError if the model admits no feasible family at all (a
// full-dimensional configuration always has a placing triangulation, so this
// indicates a restricted or inconsistent model).
SolveResult solve(const IPModel& model, const SolveBudget& budget = {});

// Proves the optimum, then sweeps the search space again collecting every
// optimal family into all_optima.  Both phases draw from the same node
// budget; if it runs out, whatever has been collected is returned with
// optima_complete = false (and proven = false if even the first phase was
// cut short).
SolveResult enumerate_optima(const IPModel& model,
                             const SolveBudget& budget = {});

// Search-free bound on the size of every feasible family of the model: an
// upper bound under Maximize, a lower bound under Minimize.  Volume packing
// bounds always apply; 3-dimensional triangulation models are additionally
// capped by the interior-edge census (a triangulation with b used boundary
// points, i used interior points and e interior edges has exactly
// b + e - i - 3 cells, and the interior edges of one triangulation are
// pairwise non-crossing).
long long static_size_bound(const IPModel& model);

}  // namespace polytri
