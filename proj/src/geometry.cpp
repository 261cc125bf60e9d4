#include "polytri/geometry.hpp"

#include "polytri/error.hpp"
#include "polytri/linalg.hpp"

namespace polytri {

namespace {

// Homogeneous matrix with one row (1, p^T) per point.
RMat homogeneous(const RMat& pts) {
  const Eigen::Index d = pts.rows();
  const Eigen::Index n = pts.cols();
  RMat H(n, d + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    H(i, 0) = Rat(1);
    for (Eigen::Index k = 0; k < d; ++k) H(i, k + 1) = pts(k, i);
  }
  return H;
}

}  // namespace

Rat simplex_volume_pts(const RMat& pts) {
  if (pts.cols() != pts.rows() + 1)
    throw StructuralError("simplex_volume_pts: need d+1 points in dimension d");
  Rat det = determinant(homogeneous(pts));
  Rat fact(1);
  for (Eigen::Index k = 2; k <= pts.rows(); ++k) fact *= Rat(static_cast<long>(k));
  return abs(det) / fact;
}

int orientation_pts(const RMat& pts) {
  if (pts.cols() != pts.rows() + 1)
    throw StructuralError("orientation_pts: need d+1 points in dimension d");
  return determinant(homogeneous(pts)).sign();
}

FacetSystem simplex_inequalities(const RMat& pts) {
  const Eigen::Index d = pts.rows();
  if (pts.cols() != d + 1)
    throw StructuralError("simplex_inequalities: need d+1 points in dimension d");
  FacetSystem fs;
  fs.A = RMat(d + 1, d);
  fs.b = RVec(d + 1);
  for (Eigen::Index i = 0; i <= d; ++i) {
    // Hyperplane a.x = c through the d points other than column i: (a, c) spans
    // the kernel of the rows (p_j^T, -1).
    RMat M(d, d + 1);
    Eigen::Index r = 0;
    for (Eigen::Index j = 0; j <= d; ++j) {
      if (j == i) continue;
      for (Eigen::Index k = 0; k < d; ++k) M(r, k) = pts(k, j);
      M(r, d) = Rat(-1);
      ++r;
    }
    RMat ker = nullspace_basis(M);
    if (ker.cols() != 1)
      throw DegeneracyError("simplex_inequalities: facet points are affinely dependent");
    RVec a(d);
    for (Eigen::Index k = 0; k < d; ++k) a(k) = ker(k, 0);
    Rat c = ker(d, 0);
    Rat at_opposite(0);
    for (Eigen::Index k = 0; k < d; ++k) at_opposite += a(k) * pts(k, i);
    int s = (at_opposite - c).sign();
    if (s == 0)
      throw DegeneracyError("simplex_inequalities: degenerate simplex");
    if (s > 0) {
      for (Eigen::Index k = 0; k < d; ++k) a(k) = -a(k);
      c = -c;
    }
    for (Eigen::Index k = 0; k < d; ++k) fs.A(i, k) = a(k);
    fs.b(i) = c;
  }
  return fs;
}

RVec barycenter(const RMat& pts) {
  if (pts.cols() == 0) throw StructuralError("barycenter: no points");
  RVec c(pts.rows());
  for (Eigen::Index k = 0; k < pts.rows(); ++k) {
    Rat s(0);
    for (Eigen::Index j = 0; j < pts.cols(); ++j) s += pts(k, j);
    c(k) = s / Rat(static_cast<long>(pts.cols()));
  }
  return c;
}

MeetResult strict_common_point(const FacetSystem& a, const FacetSystem& b) {
  const Eigen::Index d = a.A.cols();
  if (b.A.cols() != d)
    throw StructuralError("strict_common_point: mismatched ambient dimensions");
  const Eigen::Index ma = a.A.rows();
  const Eigen::Index mb = b.A.rows();
  // Variables (x_1..x_d, delta), all free; maximize delta subject to
  // A x + delta * 1 <= b over both systems.
  LpProblem p;
  p.c = RVec::Zero(d + 1);
  p.c(d) = Rat(1);
  p.A_ub = RMat(ma + mb, d + 1);
  p.b_ub = RVec(ma + mb);
  for (Eigen::Index i = 0; i < ma; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) p.A_ub(i, k) = a.A(i, k);
    p.A_ub(i, d) = Rat(1);
    p.b_ub(i) = a.b(i);
  }
  for (Eigen::Index i = 0; i < mb; ++i) {
    for (Eigen::Index k = 0; k < d; ++k) p.A_ub(ma + i, k) = b.A(i, k);
    p.A_ub(ma + i, d) = Rat(1);
    p.b_ub(ma + i) = b.b(i);
  }
  LpResult res = lp_maximize(p);
  if (res.status != LpStatus::Optimal)
    throw InternalError("strict_common_point: expected a bounded feasible program");
  MeetResult out;
  out.opt = res.value;
  out.sign = res.value.sign();
  out.witness = RVec(d);
  for (Eigen::Index k = 0; k < d; ++k) out.witness(k) = res.x(k);
  return out;
}

MeetResult simplex_meet(const RMat& ptsA, const RMat& ptsB) {
  const Eigen::Index d = ptsA.rows();
  if (ptsB.rows() != d)
    throw StructuralError("simplex_meet: mismatched ambient dimensions");
  const Eigen::Index ka = ptsA.cols();
  const Eigen::Index kb = ptsB.cols();
  if (ka == 0 || kb == 0) throw StructuralError("simplex_meet: empty vertex set");
  // Common point sum lambda_i p_i = sum mu_j q_j with lambda, mu barycentric;
  // substitute lambda_i = t + s_i, mu_j = t + u_j (s, u >= 0, t free) and
  // maximize t = the smallest barycentric coordinate across both simplices.
  const Eigen::Index nv = ka + kb + 1;  // s, u, t
  LpProblem p;
  p.c = RVec::Zero(nv);
  p.c(nv - 1) = Rat(1);
  p.nonneg.assign(static_cast<size_t>(nv), 1);
  p.nonneg[static_cast<size_t>(nv - 1)] = 0;
  p.A_eq = RMat::Zero(d + 2, nv);
  p.b_eq = RVec::Zero(d + 2);
  for (Eigen::Index k = 0; k < d; ++k) {
    Rat drift(0);
    for (Eigen::Index i = 0; i < ka; ++i) {
      p.A_eq(k, i) = ptsA(k, i);
      drift += ptsA(k, i);
    }
    for (Eigen::Index j = 0; j < kb; ++j) {
      p.A_eq(k, ka + j) = -ptsB(k, j);
      drift -= ptsB(k, j);
    }
    p.A_eq(k, nv - 1) = drift;
  }
  for (Eigen::Index i = 0; i < ka; ++i) p.A_eq(d, i) = Rat(1);
  p.A_eq(d, nv - 1) = Rat(static_cast<long>(ka));
  p.b_eq(d) = Rat(1);
  for (Eigen::Index j = 0; j < kb; ++j) p.A_eq(d + 1, ka + j) = Rat(1);
  p.A_eq(d + 1, nv - 1) = Rat(static_cast<long>(kb));
  p.b_eq(d + 1) = Rat(1);
  LpResult res = lp_maximize(p);
  MeetResult out;
  if (res.status == LpStatus::Infeasible) {
    // The affine hulls do not even intersect (possible when the simplices do
    // not span the ambient space); the closed sets are certainly disjoint.
    out.sign = -1;
    out.opt = Rat(-1);
    return out;
  }
  if (res.status != LpStatus::Optimal)
    throw InternalError("simplex_meet: program cannot be unbounded");
  out.opt = res.value;
  out.sign = res.value.sign();
  if (out.sign >= 0) {
    out.witness = RVec::Zero(d);
    Rat t = res.x(nv - 1);
    for (Eigen::Index i = 0; i < ka; ++i) {
      Rat lambda = t + res.x(i);
      for (Eigen::Index k = 0; k < d; ++k) out.witness(k) += lambda * ptsA(k, i);
    }
  }
  return out;
}

}  // namespace polytri
