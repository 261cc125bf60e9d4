#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>

#include "polytri/lp.hpp"

using namespace polytri;

namespace {

// Brute-force LP oracle: enumerates every potential vertex (each subset of
// active constraints of size #vars), keeps the feasible ones, and returns the
// best objective value. Only valid on problems whose feasible set is bounded
// (the tests add box constraints to guarantee that).
std::optional<Rat> brute_force_max(const LpProblem& p) {
  const int nv = p.num_vars();
  std::vector<RVec> normals;
  std::vector<Rat> offsets;  // normal . x <= offset
  std::vector<bool> is_eq;
  for (int r = 0; r < p.A_ub.rows(); ++r) {
    normals.push_back(p.A_ub.row(r).transpose());
    offsets.push_back(p.b_ub(r));
    is_eq.push_back(false);
  }
  for (int r = 0; r < p.A_eq.rows(); ++r) {
    normals.push_back(p.A_eq.row(r).transpose());
    offsets.push_back(p.b_eq(r));
    is_eq.push_back(true);
  }
  if (!p.nonneg.empty())
    for (int i = 0; i < nv; ++i)
      if (p.nonneg[i]) {
        RVec n(nv);
        n.setConstant(Rat(0));
        n(i) = Rat(-1);
        normals.push_back(n);
        offsets.push_back(Rat(0));
        is_eq.push_back(false);
      }

  const int M = static_cast<int>(normals.size());
  std::optional<Rat> best;
  std::vector<int> idx(nv);
  auto feasible = [&](const RVec& x) {
    for (int r = 0; r < M; ++r) {
      Rat v(0);
      for (int i = 0; i < nv; ++i) v += normals[r](i) * x(i);
      if (is_eq[r] ? (v != offsets[r]) : (v > offsets[r])) return false;
    }
    return true;
  };
  // Iterate over all nv-subsets of the constraints.
  std::vector<int> comb(nv);
  for (int i = 0; i < nv; ++i) comb[i] = i;
  if (M < nv) return best;
  for (;;) {
    RMat A(nv, nv);
    RVec b(nv);
    for (int i = 0; i < nv; ++i) {
      A.row(i) = normals[comb[i]].transpose();
      b(i) = offsets[comb[i]];
    }
    RVec x;
    if (rank_of(A) == nv && solve_linear(A, b, x) && feasible(x)) {
      Rat v(0);
      for (int i = 0; i < nv; ++i) v += p.c(i) * x(i);
      if (!best || v > *best) best = v;
    }
    int k = nv - 1;
    while (k >= 0 && comb[k] == M - nv + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j < nv; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

LpProblem make_problem(int nv) {
  LpProblem p;
  p.c = RVec(nv);
  p.A_ub = RMat(0, nv);
  p.b_ub = RVec(0);
  p.A_eq = RMat(0, nv);
  p.b_eq = RVec(0);
  return p;
}

void append_ub(LpProblem& p, std::vector<Rat> row, Rat rhs) {
  const int nv = p.num_vars();
  RMat A(p.A_ub.rows() + 1, nv);
  RVec b(p.b_ub.rows() + 1);
  A.topRows(p.A_ub.rows()) = p.A_ub;
  b.head(p.b_ub.rows()) = p.b_ub;
  for (int i = 0; i < nv; ++i) A(A.rows() - 1, i) = row[i];
  b(b.rows() - 1) = rhs;
  p.A_ub = A;
  p.b_ub = b;
}

void append_eq(LpProblem& p, std::vector<Rat> row, Rat rhs) {
  const int nv = p.num_vars();
  RMat A(p.A_eq.rows() + 1, nv);
  RVec b(p.b_eq.rows() + 1);
  A.topRows(p.A_eq.rows()) = p.A_eq;
  b.head(p.b_eq.rows()) = p.b_eq;
  for (int i = 0; i < nv; ++i) A(A.rows() - 1, i) = row[i];
  b(b.rows() - 1) = rhs;
  p.A_eq = A;
  p.b_eq = b;
}

}  // namespace

TEST_CASE("textbook maximum") {
  // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0 -> 36 at (2,6)
  LpProblem p = make_problem(2);
  p.c << Rat(3), Rat(5);
  p.nonneg = {1, 1};
  append_ub(p, {Rat(1), Rat(0)}, Rat(4));
  append_ub(p, {Rat(0), Rat(2)}, Rat(12));
  append_ub(p, {Rat(3), Rat(2)}, Rat(18));
  LpResult r = lp_maximize(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(36));
  CHECK(r.x(0) == Rat(2));
  CHECK(r.x(1) == Rat(6));
}

TEST_CASE("free variables and equalities") {
  // max x + y st x + y == 1, x - y <= 3, free variables -> value 1.
  LpProblem p = make_problem(2);
  p.c << Rat(1), Rat(1);
  append_eq(p, {Rat(1), Rat(1)}, Rat(1));
  append_ub(p, {Rat(1), Rat(-1)}, Rat(3));
  LpResult r = lp_maximize(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(1));
  CHECK(r.x(0) + r.x(1) == Rat(1));
}

TEST_CASE("infeasible") {
  LpProblem p = make_problem(1);
  p.c << Rat(1);
  append_ub(p, {Rat(1)}, Rat(0));
  append_ub(p, {Rat(-1)}, Rat(-1));  // x >= 1 and x <= 0
  CHECK(lp_maximize(p).status == LpStatus::Infeasible);
  CHECK_FALSE(lp_feasible(p));
}

TEST_CASE("unbounded") {
  LpProblem p = make_problem(1);
  p.c << Rat(1);
  append_ub(p, {Rat(-1)}, Rat(0));  // x >= 0, maximize x
  CHECK(lp_maximize(p).status == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand sides take the artificial path") {
  // x >= 2 expressed as -x <= -2; max -x -> optimum -2.
  LpProblem p = make_problem(1);
  p.c << Rat(-1);
  append_ub(p, {Rat(-1)}, Rat(-2));
  LpResult r = lp_maximize(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(-2));
  CHECK(r.x(0) == Rat(2));
}

TEST_CASE("feasibility witness satisfies all constraints") {
  LpProblem p = make_problem(3);
  p.c << Rat(0), Rat(0), Rat(0);
  p.nonneg = {1, 1, 1};
  append_eq(p, {Rat(1), Rat(1), Rat(1)}, Rat(1));
  append_ub(p, {Rat(1), Rat(-1), Rat(0)}, Rat(1, 2));
  RVec w;
  REQUIRE(lp_feasible(p, &w));
  CHECK(w(0) + w(1) + w(2) == Rat(1));
  CHECK(w(0) - w(1) <= Rat(1, 2));
  for (int i = 0; i < 3; ++i) CHECK(w(i) >= Rat(0));
}

TEST_CASE("degenerate problems terminate (Bland)") {
  // Classic cycling-prone instance (Beale); Bland's rule must terminate.
  LpProblem p = make_problem(4);
  p.c << Rat(3, 4), Rat(-150), Rat(1, 50), Rat(-6);
  p.nonneg = {1, 1, 1, 1};
  append_ub(p, {Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)}, Rat(0));
  append_ub(p, {Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)}, Rat(0));
  append_ub(p, {Rat(0), Rat(0), Rat(1), Rat(0)}, Rat(1));
  LpResult r = lp_maximize(p);
  REQUIRE(r.status == LpStatus::Optimal);
  CHECK(r.value == Rat(1, 20));
}

TEST_CASE("randomized cross-check against vertex enumeration") {
  std::mt19937 rng(424242);
  std::uniform_int_distribution<long> coef(-4, 4), rhs(0, 6);
  int solved = 0;
  for (int it = 0; it < 60; ++it) {
    const int nv = 2 + static_cast<int>(rng() % 2);  // 2 or 3 vars
    LpProblem p = make_problem(nv);
    for (int i = 0; i < nv; ++i) p.c(i) = Rat(coef(rng));
    const int rows = 2 + static_cast<int>(rng() % 3);
    for (int r = 0; r < rows; ++r) {
      std::vector<Rat> row(nv);
      for (int i = 0; i < nv; ++i) row[i] = Rat(coef(rng));
      append_ub(p, row, Rat(rhs(rng)));
    }
    // Box to keep the region bounded so the oracle is exact.
    for (int i = 0; i < nv; ++i) {
      std::vector<Rat> lo(nv, Rat(0)), hi(nv, Rat(0));
      hi[i] = Rat(1);
      lo[i] = Rat(-1);
      append_ub(p, hi, Rat(10));
      append_ub(p, lo, Rat(10));
    }
    const auto expect = brute_force_max(p);
    const LpResult got = lp_maximize(p);
    if (expect) {
      REQUIRE(got.status == LpStatus::Optimal);
      CHECK(got.value == *expect);
      ++solved;
    } else {
      CHECK(got.status == LpStatus::Infeasible);
    }
  }
  CHECK(solved > 10);  // the generator must actually exercise the solver
}
