#include "polytri/lp.hpp"

#include <vector>

#include "polytri/error.hpp"

namespace polytri {

namespace {

// Dense simplex tableau: rows 0..m-1 are constraints (all equalities in
// standard form, rhs >= 0), row m is the objective row holding reduced costs;
// column n is the right-hand side. The objective row invariant is
//   T[m][j] = c_j - c_B B^-1 A_j,   T[m][n] = -(current objective value),
// which pivoting preserves, so a column may enter while its reduced cost is
// positive (maximization) and the tableau is optimal when none is.
struct Tableau {
  int m = 0, n = 0;
  std::vector<std::vector<Rat>> T;  // (m+1) x (n+1)
  std::vector<int> basis;           // basic column of each constraint row

  void pivot(int pr, int pc) {
    std::vector<Rat>& P = T[pr];
    const Rat inv = Rat(1) / P[pc];
    for (int j = 0; j <= n; ++j)
      if (!P[j].is_zero()) P[j] *= inv;
    P[pc] = Rat(1);
    for (int i = 0; i <= m; ++i) {
      if (i == pr) continue;
      const Rat f = T[i][pc];
      if (f.is_zero()) continue;
      std::vector<Rat>& R = T[i];
      for (int j = 0; j <= n; ++j)
        if (!P[j].is_zero()) R[j] -= f * P[j];
      R[pc] = Rat(0);
    }
    basis[pr] = pc;
  }

  // Runs simplex iterations under Bland's rule; columns with allowed[j] == 0
  // never enter. Returns false when the problem is unbounded in the current
  // objective, true at optimality.
  bool optimize(const std::vector<std::uint8_t>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j)
        if (allowed[j] && T[m][j].sign() > 0) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      Rat best;
      for (int i = 0; i < m; ++i) {
        if (T[i][enter].sign() <= 0) continue;
        Rat ratio = T[i][n] / T[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void set_objective(const std::vector<Rat>& cost) {
    for (int j = 0; j < n; ++j) T[m][j] = cost[j];
    T[m][n] = Rat(0);
    for (int i = 0; i < m; ++i) {
      const Rat cb = cost[basis[i]];
      if (cb.is_zero()) continue;
      for (int j = 0; j <= n; ++j)
        if (!T[i][j].is_zero()) T[m][j] -= cb * T[i][j];
    }
  }
};

}  // namespace

LpResult lp_maximize(const LpProblem& p) {
  const int nv = p.num_vars();
  if ((p.A_ub.rows() > 0 && p.A_ub.cols() != nv) || (p.A_eq.rows() > 0 && p.A_eq.cols() != nv) ||
      p.A_ub.rows() != p.b_ub.rows() || p.A_eq.rows() != p.b_eq.rows() ||
      (!p.nonneg.empty() && static_cast<int>(p.nonneg.size()) != nv))
    throw StructuralError("lp_maximize: inconsistent problem dimensions");

  auto var_nonneg = [&](int i) { return !p.nonneg.empty() && p.nonneg[i] != 0; };

  // Column layout: expanded structural vars, then slacks, then artificials.
  std::vector<int> pos_col(nv), neg_col(nv, -1);
  int ncols = 0;
  for (int i = 0; i < nv; ++i) {
    pos_col[i] = ncols++;
    if (!var_nonneg(i)) neg_col[i] = ncols++;
  }
  const int n_struct = ncols;
  const int m_ub = static_cast<int>(p.A_ub.rows());
  const int m_eq = static_cast<int>(p.A_eq.rows());
  const int m = m_ub + m_eq;
  const int slack_base = n_struct;
  ncols += m_ub;

  // Assemble rows (before artificials): expanded coefficients and rhs.
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(ncols, Rat(0)));
  std::vector<Rat> rhs(m);
  for (int r = 0; r < m; ++r) {
    const bool is_ub = r < m_ub;
    const int src = is_ub ? r : r - m_ub;
    for (int i = 0; i < nv; ++i) {
      const Rat a = is_ub ? p.A_ub(src, i) : p.A_eq(src, i);
      if (a.is_zero()) continue;
      rows[r][pos_col[i]] = a;
      if (neg_col[i] >= 0) rows[r][neg_col[i]] = -a;
    }
    if (is_ub) rows[r][slack_base + r] = Rat(1);
    rhs[r] = is_ub ? p.b_ub(src) : p.b_eq(src);
    if (rhs[r].sign() < 0) {
      for (Rat& v : rows[r]) v = -v;
      rhs[r] = -rhs[r];
    }
  }

  // Basis: slack where it has coefficient +1, otherwise a fresh artificial.
  std::vector<int> basis(m, -1);
  std::vector<int> artificial_rows;
  for (int r = 0; r < m; ++r) {
    if (r < m_ub && rows[r][slack_base + r] == Rat(1))
      basis[r] = slack_base + r;
    else
      artificial_rows.push_back(r);
  }
  const int art_base = ncols;
  ncols += static_cast<int>(artificial_rows.size());

  Tableau tab;
  tab.m = m;
  tab.n = ncols;
  tab.basis = basis;
  tab.T.assign(m + 1, std::vector<Rat>(ncols + 1, Rat(0)));
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < static_cast<int>(rows[r].size()); ++j) tab.T[r][j] = rows[r][j];
    tab.T[r][ncols] = rhs[r];
  }
  for (size_t k = 0; k < artificial_rows.size(); ++k) {
    const int r = artificial_rows[k];
    tab.T[r][art_base + static_cast<int>(k)] = Rat(1);
    tab.basis[r] = art_base + static_cast<int>(k);
  }

  std::vector<std::uint8_t> allow_all(ncols, 1);
  std::vector<std::uint8_t> allow_real(ncols, 1);
  for (int j = art_base; j < ncols; ++j) allow_real[j] = 0;

  LpResult res;

  if (!artificial_rows.empty()) {
    std::vector<Rat> phase1(ncols, Rat(0));
    for (int j = art_base; j < ncols; ++j) phase1[j] = Rat(-1);
    tab.set_objective(phase1);
    if (!tab.optimize(allow_all)) throw InternalError("phase-1 objective unbounded");
    if (!tab.T[m][ncols].is_zero()) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    // Drive artificials out of the basis where possible. A row that offers no
    // non-artificial pivot has zero coefficients on all real columns, so later
    // pivots (whose columns are real) never touch it.
    for (int r = 0; r < m; ++r) {
      if (tab.basis[r] < art_base) continue;
      for (int j = 0; j < art_base; ++j)
        if (!tab.T[r][j].is_zero()) {
          tab.pivot(r, j);
          break;
        }
    }
  }

  std::vector<Rat> cost(ncols, Rat(0));
  for (int i = 0; i < nv; ++i) {
    cost[pos_col[i]] = p.c(i);
    if (neg_col[i] >= 0) cost[neg_col[i]] = -p.c(i);
  }
  tab.set_objective(cost);
  if (!tab.optimize(allow_real)) {
    res.status = LpStatus::Unbounded;
    return res;
  }

  std::vector<Rat> xext(ncols, Rat(0));
  for (int r = 0; r < m; ++r) xext[tab.basis[r]] = tab.T[r][ncols];
  res.status = LpStatus::Optimal;
  res.value = -tab.T[m][ncols];
  res.x = RVec(nv);
  for (int i = 0; i < nv; ++i) {
    res.x(i) = xext[pos_col[i]];
    if (neg_col[i] >= 0) res.x(i) -= xext[neg_col[i]];
  }
  return res;
}

bool lp_feasible(const LpProblem& p, RVec* witness) {
  LpProblem q = p;
  q.c = RVec(p.num_vars());
  q.c.setConstant(Rat(0));
  const LpResult r = lp_maximize(q);
  if (r.status != LpStatus::Optimal) return false;
  if (witness) *witness = r.x;
  return true;
}

}  // namespace polytri
