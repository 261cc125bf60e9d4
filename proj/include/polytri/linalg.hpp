#pragma once

#include <Eigen/Core>
#include <vector>

#include "polytri/rat.hpp"

namespace polytri {

// Dense exact-rational matrix/vector types. Points are stored as columns.
using RMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Exact determinant via fraction-free (Bareiss) elimination over the integers:
// each row is scaled to integers first, so intermediate entries stay small.
// The sign is meaningful (orientation). Throws StructuralError on non-square
// input.
Rat determinant(const RMat& A);

// Rank of A by exact Gaussian elimination.
int rank_of(RMat A);

// Reduces M to reduced row echelon form in place; returns the pivot columns in
// increasing order.
std::vector<int> rref_in_place(RMat& M);

// Basis of the kernel of A, returned as the columns of a cols(A) x k matrix
// (k = nullity; the matrix has zero columns when the kernel is trivial, i.e.
// it is cols(A) x 0).
RMat nullspace_basis(const RMat& A);

// Solves A x = b exactly (A may be rectangular). Returns false when the system
// is inconsistent; otherwise stores one particular solution (free variables 0).
bool solve_linear(const RMat& A, const RVec& b, RVec& x);

}  // namespace polytri
