#include "realform/flags.hpp"

#include <cmath>
#include <functional>

namespace realform {

CMatrix Flag::part(int j) const {
  const int k = ambient();
  CMatrix M(k, j);
  for (int c = 0; c < j; ++c) M.col(c) = spanning[c];
  return M;
}

Flag Flag::reversed() const { return Flag{std::vector<CVector>(spanning.rbegin(), spanning.rend())}; }

Flag make_flag(std::vector<CVector> spanning, const Tolerances& tol) {
  Flag f{std::move(spanning)};
  if (f.length() == 0) throw Error(ErrorCode::InvalidInput, "empty flag");
  for (const auto& v : f.spanning)
    if (v.size() != f.ambient()) throw Error(ErrorCode::InvalidInput, "flag vectors differ in dimension");
  if (!full_column_rank(f.part(f.length()), tol.rank_tol))
    throw Error(ErrorCode::GenericityViolation, "flag spanning vectors are dependent");
  return f;
}

FlagPair flag_pair_from_eigensystem(const EigenSystem& es, const std::vector<int>& order) {
  const int k = static_cast<int>(es.eigendirections.size());
  if (static_cast<int>(order.size()) != k) throw Error(ErrorCode::InvalidInput, "order must be a permutation");
  std::vector<bool> seen(k, false);
  Flag F;
  for (int idx : order) {
    if (idx < 0 || idx >= k || seen[idx]) throw Error(ErrorCode::InvalidInput, "order must be a permutation");
    seen[idx] = true;
    F.spanning.push_back(es.eigendirections[idx].canonical());
  }
  return FlagPair{F, F.reversed()};
}

bool generic_position(const std::vector<Flag>& flags, const Tolerances& tol) {
  if (flags.empty()) return false;
  const int k = flags.front().ambient();
  const int m = static_cast<int>(flags.size());
  std::vector<int> parts(m, 0);
  bool ok = true;
  std::function<void(int, int)> rec = [&](int f, int left) {
    if (!ok) return;
    if (f == m - 1) {
      if (left > flags[f].length()) return;
      parts[f] = left;
      CMatrix M(k, k);
      int c = 0;
      for (int g = 0; g < m; ++g)
        for (int t = 0; t < parts[g]; ++t) M.col(c++) = flags[g].spanning[t];
      if (!full_column_rank(M, tol.rank_tol)) ok = false;
      return;
    }
    for (int p = 0; p <= std::min(left, flags[f].length()); ++p) {
      parts[f] = p;
      rec(f + 1, left - p);
    }
  };
  rec(0, k);
  return ok;
}

CMatrix complement_basis(const CMatrix& U, int ambient, const Tolerances& tol) {
  const int r = static_cast<int>(U.cols());
  if (r == 0) return CMatrix::Identity(ambient, ambient);
  if (!full_column_rank(U, tol.rank_tol))
    throw Error(ErrorCode::GenericityViolation, "quotiented subspace is rank deficient");
  Eigen::HouseholderQR<CMatrix> qr(U);
  const CMatrix Q = qr.householderQ() * CMatrix::Identity(ambient, ambient);
  return Q.rightCols(ambient - r);
}

namespace {

CMatrix stack(const CMatrix& a, const CMatrix& b) {
  CMatrix M(a.rows(), a.cols() + b.cols());
  M << a, b;
  return M;
}

double unit_det2(const CVector& x, const CVector& y) {
  return std::abs(x[0] * y[1] - x[1] * y[0]) / (x.norm() * y.norm());
}

}  // namespace

bool generic_with_point(const Flag& A, const ProjPoint& v, const Flag& C, const ProjPoint& d, const Tolerances& tol) {
  const int k = A.ambient();
  if (C.ambient() != k || v.dim() != k || d.dim() != k || A.length() < k - 1 || C.length() < k - 1) return false;
  for (int i = 0; i <= k - 2; ++i) {
    const int j = k - 2 - i;
    CMatrix Q;
    try {
      Q = complement_basis(stack(A.part(i), C.part(j)), k, tol);
    } catch (const Error&) {
      return false;
    }
    const std::array<CVector, 4> raw{A.spanning[i], v.coords(), C.spanning[j], d.coords()};
    std::array<CVector, 4> img;
    for (int t = 0; t < 4; ++t) {
      img[t] = Q.adjoint() * raw[t];
      if (img[t].norm() <= tol.rank_tol * raw[t].norm()) return false;
    }
    for (int s = 0; s < 4; ++s)
      for (int t = s + 1; t < 4; ++t)
        if (unit_det2(img[s], img[t]) <= tol.rank_tol) return false;
  }
  return true;
}

LineConfig quotient_cp1(const Flag& A, const ProjPoint& B1, const Flag& C, const ProjPoint& D1, int i, int j,
                        const Tolerances& tol) {
  const int k = A.ambient();
  if (i < 0 || j < 0 || i + j != k - 2 || i + 1 > A.length() || j + 1 > C.length())
    throw Error(ErrorCode::InvalidInput, "quotient indices must satisfy i + j = k - 2");
  const CMatrix Q = complement_basis(stack(A.part(i), C.part(j)), k, tol);
  const CVector a = Q.adjoint() * A.spanning[i];
  const CVector c = Q.adjoint() * C.spanning[j];
  const CVector b = Q.adjoint() * B1.coords();
  const CVector d = Q.adjoint() * D1.coords();
  if (a.norm() <= tol.rank_tol * A.spanning[i].norm() || c.norm() <= tol.rank_tol * C.spanning[j].norm() ||
      unit_det2(a, c) <= tol.rank_tol)
    throw Error(ErrorCode::GenericityViolation, "flag parts do not fill the quotient");
  if (b.norm() <= tol.rank_tol * B1.coords().norm() || d.norm() <= tol.rank_tol * D1.coords().norm())
    throw Error(ErrorCode::GenericityViolation, "point lies in the quotiented subspace");
  return LineConfig{{ProjPoint(a), ProjPoint(b), ProjPoint(c), ProjPoint(d)}};
}

std::array<PlaneFlag, 3> quotient_cp2(const Flag& A, const Flag& B, const Flag& C, int i, int j, int l,
                                      const Tolerances& tol) {
  const int k = A.ambient();
  if (i < 0 || j < 0 || l < 0 || i + j + l != k - 3)
    throw Error(ErrorCode::InvalidInput, "quotient indices must satisfy i + j + l = k - 3");
  if (i + 2 > A.length() || j + 2 > C.length() || l + 2 > B.length())
    throw Error(ErrorCode::InvalidInput, "flags too short for the requested quotient");
  CMatrix U(k, i + j + l);
  U << A.part(i), C.part(j), B.part(l);
  const CMatrix Q = complement_basis(U, k, tol);
  auto image = [&](const Flag& F, int s) {
    PlaneFlag p{Q.adjoint() * F.spanning[s], Q.adjoint() * F.spanning[s + 1]};
    CMatrix P(3, 2);
    P << p.point, p.second;
    if (!full_column_rank(P, tol.rank_tol))
      throw Error(ErrorCode::GenericityViolation, "flag plane collapses in the quotient");
    return p;
  };
  return {image(A, i), image(B, l), image(C, j)};
}

Flag build_elliptic_flag(const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                         const std::vector<ProjPoint>& hyps, const Tolerances& tol) {
  std::vector<CVector> sp;
  for (const auto& [v, w] : pairs) {
    sp.push_back(v.coords());
    sp.push_back(w.coords());
  }
  for (const auto& h : hyps) sp.push_back(h.coords());
  Flag f = make_flag(std::move(sp), tol);
  if (f.length() != f.ambient()) throw Error(ErrorCode::InvalidInput, "elliptic flag must have k vectors");
  return f;
}

}  // namespace realform
