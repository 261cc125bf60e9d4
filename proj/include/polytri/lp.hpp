#pragma once

#include <cstdint>
#include <vector>

#include "polytri/linalg.hpp"

namespace polytri {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// maximize c.x  subject to  A_ub x <= b_ub,  A_eq x == b_eq,
// x_i >= 0 for every i with nonneg[i] != 0 (empty nonneg = all variables free).
// Matrices may have zero rows when a block is absent.
struct LpProblem {
  RVec c;
  RMat A_ub;
  RVec b_ub;
  RMat A_eq;
  RVec b_eq;
  std::vector<std::uint8_t> nonneg;

  int num_vars() const { return static_cast<int>(c.rows()); }
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;  // meaningful only when status == Optimal
  RVec x;     // an optimal point when status == Optimal
};

// Exact dense two-phase simplex with Bland's rule (always terminates).
LpResult lp_maximize(const LpProblem& p);

// Feasibility only; fills *witness with a feasible point when one exists.
bool lp_feasible(const LpProblem& p, RVec* witness = nullptr);

}  // namespace polytri
