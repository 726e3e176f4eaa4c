#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "realform/errors.hpp"
#include "realform/tolerances.hpp"

namespace realform {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Point of CP^{k-1}. Keeps the representative it was built from; canonical()
// rescales so the largest coordinate (lowest index on ties) equals 1.
class ProjPoint {
 public:
  ProjPoint() = default;
  explicit ProjPoint(CVector coords);
  ProjPoint(std::initializer_list<cplx> coords);

  const CVector& coords() const { return v_; }
  int dim() const { return static_cast<int>(v_.size()); }
  int pivot() const;
  CVector canonical() const;
  CVector unit() const { return v_ / v_.norm(); }

 private:
  CVector v_;
};

struct EigenSystem {
  std::vector<cplx> eigenvalues;
  std::vector<ProjPoint> eigendirections;
  CMatrix source;
};

struct ProjFrame {
  std::vector<ProjPoint> points;  // k+1 points
  CMatrix basis;                  // k x k, columns are the associated basis
};

CMatrix make_matrix(std::initializer_list<std::initializer_list<cplx>> rows);

// Throws InvalidInput for non-square, non-finite or singular matrices.
void validate_matrix(const CMatrix& M, const Tolerances& tol = {});

// Eigenvalues ordered by argument in [0, 2pi), then modulus.
EigenSystem eig(const CMatrix& M, const Tolerances& tol = {});

bool proj_eq(const ProjPoint& p, const ProjPoint& q, double tol);

ProjFrame frame_from_points(const std::vector<ProjPoint>& points, const Tolerances& tol = {});

// Unique projective map sending src.points[i] to dst.points[i].
CMatrix homography(const ProjFrame& src, const ProjFrame& dst, const Tolerances& tol = {});

// Smallest singular value over largest after normalizing columns to unit length.
double normalized_conditioning(const CMatrix& M);
bool full_column_rank(const CMatrix& M, double rank_tol);

double projective_gap(cplx a, cplx b);

}  // namespace realform
