#include "realform/projlin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace realform {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::RepeatedEigenvalues: return "RepeatedEigenvalues";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::IncompatibleEigenvalues: return "IncompatibleEigenvalues";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::NoConjugation: return "NoConjugation";
    case ErrorCode::UnderdeterminedConjugation: return "UnderdeterminedConjugation";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::GenericityViolation: return "GenericityViolation";
    case ErrorCode::SharedEigendirections: return "SharedEigendirections";
    case ErrorCode::MethodNotApplicable: return "MethodNotApplicable";
    case ErrorCode::IndeterminateCrossRatio: return "IndeterminateCrossRatio";
    case ErrorCode::DegenerateTriple: return "DegenerateTriple";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
  }
  return "Unknown";
}

ProjPoint::ProjPoint(CVector coords) : v_(std::move(coords)) {
  if (v_.size() == 0 || !v_.allFinite() || v_.norm() == 0.0)
    throw Error(ErrorCode::InvalidInput, "projective point must be a finite nonzero vector");
}

ProjPoint::ProjPoint(std::initializer_list<cplx> coords)
    : ProjPoint(CVector(Eigen::Map<const CVector>(coords.begin(), static_cast<Eigen::Index>(coords.size())))) {}

int ProjPoint::pivot() const {
  const double big = v_.cwiseAbs().maxCoeff();
  for (int i = 0; i < dim(); ++i)
    if (std::abs(v_[i]) >= big * (1.0 - 1e-12)) return i;
  return 0;
}

CVector ProjPoint::canonical() const { return v_ / v_[pivot()]; }

CMatrix make_matrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  CMatrix M(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n)
      throw Error(ErrorCode::InvalidInput, "matrix rows must have equal length");
    Eigen::Index c = 0;
    for (const auto& x : row) M(r, c++) = x;
    ++r;
  }
  return M;
}

void validate_matrix(const CMatrix& M, const Tolerances& tol) {
  if (M.rows() != M.cols() || M.rows() < 2)
    throw Error(ErrorCode::InvalidInput, "matrix must be square of size >= 2");
  if (!M.allFinite()) throw Error(ErrorCode::InvalidInput, "matrix has non-finite entries");
  if (M.cwiseAbs().maxCoeff() == 0.0) throw Error(ErrorCode::InvalidInput, "zero matrix");
  // Scale-free test: smallest over largest singular value.
  const auto s = Eigen::JacobiSVD<CMatrix>(M).singularValues();
  if (s(s.size() - 1) <= tol.deg_tol * s(0)) throw Error(ErrorCode::InvalidInput, "matrix is singular");
}

double projective_gap(cplx a, cplx b) { return std::abs(a / b - 1.0); }

namespace {

// Argument in [0, 2pi), with values just below 2pi folded to just below 0 so
// numerically real eigenvalues stay together.
double folded_arg(cplx z, double gap) {
  double a = std::arg(z);
  if (a < 0) a += 2 * std::numbers::pi;
  if (2 * std::numbers::pi - a < gap) a -= 2 * std::numbers::pi;
  return a;
}

// Order by argument cluster (consecutive sorted arguments closer than gap),
// then by modulus inside a cluster.
std::vector<int> eigen_order(const Eigen::VectorXcd& vals, double gap) {
  const int k = static_cast<int>(vals.size());
  std::vector<double> arg(k);
  for (int i = 0; i < k; ++i) arg[i] = folded_arg(vals[i], gap);
  std::vector<int> by_arg(k);
  std::iota(by_arg.begin(), by_arg.end(), 0);
  std::sort(by_arg.begin(), by_arg.end(), [&](int a, int b) { return arg[a] < arg[b]; });
  std::vector<int> cluster(k, 0);
  for (int t = 1; t < k; ++t)
    cluster[by_arg[t]] = cluster[by_arg[t - 1]] + (arg[by_arg[t]] - arg[by_arg[t - 1]] >= gap ? 1 : 0);
  std::vector<int> order = by_arg;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (cluster[a] != cluster[b]) return cluster[a] < cluster[b];
    return std::abs(vals[a]) < std::abs(vals[b]);
  });
  return order;
}

}  // namespace

EigenSystem eig(const CMatrix& M, const Tolerances& tol) {
  validate_matrix(M, tol);
  const int k = static_cast<int>(M.rows());
  Eigen::ComplexEigenSolver<CMatrix> solver(M, true);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::NonDiagonalizable, "eigen solver did not converge");

  const auto& vals = solver.eigenvalues();
  const std::vector<int> order = eigen_order(vals, tol.sep_tol);

  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (projective_gap(vals[i], vals[j]) < tol.sep_tol)
        throw Error(ErrorCode::RepeatedEigenvalues,
                    "eigenvalues " + std::to_string(i) + " and " + std::to_string(j) + " coincide projectively");

  const double mnorm = M.norm();
  EigenSystem es;
  es.source = M;
  for (int idx : order) {
    CVector v = solver.eigenvectors().col(idx);
    const cplx lam = vals[idx];
    const double res = (M * v - lam * v).norm() / (v.norm() * mnorm);
    if (!(res < tol.eig_tol))
      throw Error(ErrorCode::NonDiagonalizable, "eigenvector residual " + std::to_string(res));
    es.eigenvalues.push_back(lam);
    es.eigendirections.emplace_back(ProjPoint(v).canonical());
  }
  // Distinct eigenvalues already imply a basis; guard against numerical collapse.
  CMatrix V(k, k);
  for (int j = 0; j < k; ++j) V.col(j) = es.eigendirections[j].unit();
  if (normalized_conditioning(V) < tol.rank_tol)
    throw Error(ErrorCode::NonDiagonalizable, "eigenvectors are numerically dependent");
  return es;
}

bool proj_eq(const ProjPoint& p, const ProjPoint& q, double tol) {
  if (p.dim() != q.dim()) return false;
  const int r = p.pivot();
  const cplx qr = q.coords()[r];
  if (std::abs(qr) <= 1e-300 || std::abs(qr) < 1e-14 * q.coords().norm()) return false;
  const CVector diff = p.canonical() - q.coords() / qr;
  return diff.cwiseAbs().maxCoeff() <= tol;
}

double normalized_conditioning(const CMatrix& M) {
  CMatrix N = M;
  for (Eigen::Index j = 0; j < N.cols(); ++j) {
    const double n = N.col(j).norm();
    if (n == 0.0) return 0.0;
    N.col(j) /= n;
  }
  Eigen::JacobiSVD<CMatrix> svd(N);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0.0;
  return s[s.size() - 1] / s[0];
}

bool full_column_rank(const CMatrix& M, double rank_tol) {
  if (M.cols() > M.rows()) return false;
  return normalized_conditioning(M) > rank_tol;
}

ProjFrame frame_from_points(const std::vector<ProjPoint>& points, const Tolerances& tol) {
  if (points.size() < 3) throw Error(ErrorCode::InvalidInput, "a frame needs k+1 >= 3 points");
  const int k = static_cast<int>(points.size()) - 1;
  for (const auto& p : points)
    if (p.dim() != k) throw Error(ErrorCode::InvalidInput, "frame points must lie in CP^{k-1}");

  // Every k-subset must span.
  for (int skip = 0; skip <= k; ++skip) {
    CMatrix W(k, k);
    for (int i = 0, c = 0; i <= k; ++i)
      if (i != skip) W.col(c++) = points[i].unit();
    if (std::abs(W.determinant()) <= tol.deg_tol)
      throw Error(ErrorCode::DegenerateFrame, "points " + std::to_string(k + 1) + " not in general position");
  }

  CMatrix V(k, k);
  for (int j = 0; j < k; ++j) V.col(j) = points[j].coords();
  const CVector lambda = V.partialPivLu().solve(points[k].coords());
  ProjFrame f;
  f.points = points;
  f.basis = V * lambda.asDiagonal();
  return f;
}

CMatrix homography(const ProjFrame& src, const ProjFrame& dst, const Tolerances& tol) {
  if (src.basis.rows() != dst.basis.rows() || src.basis.rows() == 0)
    throw Error(ErrorCode::InvalidInput, "frames must share dimension");
  if (std::abs((src.basis / src.basis.cwiseAbs().maxCoeff()).determinant()) <= tol.deg_tol)
    throw Error(ErrorCode::DegenerateFrame, "source frame basis is singular");
  return dst.basis * src.basis.inverse();
}

}  // namespace realform
