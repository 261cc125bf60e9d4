#include "polytri/linalg.hpp"

#include <vector>

#include "polytri/error.hpp"

namespace polytri {

Rat determinant(const RMat& A) {
  if (A.rows() != A.cols()) throw StructuralError("determinant of non-square matrix");
  const int n = static_cast<int>(A.rows());
  if (n == 0) return Rat(1);

  // Scale each row to integers; det(A) = det(M) / prod(row scales).
  std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n));
  mpz_class scale(1);
  for (int r = 0; r < n; ++r) {
    mpz_class l(1);
    for (int c = 0; c < n; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), A(r, c).den().get_mpz_t());
    for (int c = 0; c < n; ++c) {
      mpz_class f;
      mpz_divexact(f.get_mpz_t(), l.get_mpz_t(), A(r, c).den().get_mpz_t());
      M[r][c] = A(r, c).num() * f;
    }
    scale *= l;
  }

  // Bareiss fraction-free elimination with row pivoting.
  mpz_class prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (M[k][k] == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (M[r][k] != 0) {
          p = r;
          break;
        }
      if (p < 0) return Rat(0);
      std::swap(M[k], M[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
        mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      M[i][k] = 0;
    }
    prev = M[k][k];
  }
  mpz_class det = sign > 0 ? M[n - 1][n - 1] : -M[n - 1][n - 1];
  return Rat(det, scale);
}

std::vector<int> rref_in_place(RMat& M) {
  const int R = static_cast<int>(M.rows());
  const int C = static_cast<int>(M.cols());
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < C && r < R; ++c) {
    int p = -1;
    for (int i = r; i < R; ++i)
      if (!M(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < C; ++j) std::swap(M(r, j), M(p, j));
    const Rat inv = Rat(1) / M(r, c);
    for (int j = c; j < C; ++j) M(r, j) *= inv;
    for (int i = 0; i < R; ++i) {
      if (i == r || M(i, c).is_zero()) continue;
      const Rat f = M(i, c);
      for (int j = c; j < C; ++j) M(i, j) -= f * M(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank_of(RMat A) { return static_cast<int>(rref_in_place(A).size()); }

RMat nullspace_basis(const RMat& A) {
  RMat M = A;
  const std::vector<int> pivots = rref_in_place(M);
  const int C = static_cast<int>(A.cols());
  std::vector<bool> is_pivot(C, false);
  for (int p : pivots) is_pivot[p] = true;

  const int k = C - static_cast<int>(pivots.size());
  RMat basis(C, k);
  basis.setConstant(Rat(0));
  int col = 0;
  for (int f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    basis(f, col) = Rat(1);
    for (size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], col) = -M(static_cast<int>(r), f);
    ++col;
  }
  return basis;
}

bool solve_linear(const RMat& A, const RVec& b, RVec& x) {
  if (A.rows() != b.rows()) throw StructuralError("solve_linear: size mismatch");
  const int R = static_cast<int>(A.rows());
  const int C = static_cast<int>(A.cols());
  RMat M(R, C + 1);
  M.block(0, 0, R, C) = A;
  M.col(C) = b;
  const std::vector<int> pivots = rref_in_place(M);
  if (!pivots.empty() && pivots.back() == C) return false;  // row [0 ... 0 | 1]
  x = RVec(C);
  x.setConstant(Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = M(static_cast<int>(r), C);
  return true;
}

}  // namespace polytri
