#pragma once

namespace realform {

// All thresholds are relative unless noted.
struct Tolerances {
  double deg_tol = 1e-10;    // frame/determinant degeneracy
  double eig_tol = 1e-8;     // eigenvector residual
  double sep_tol = 1e-6;     // projective eigenvalue gap
  double angle_tol = 1e-8;   // admissible-line angle matching
  double rank_tol = 1e-8;    // rank decisions on column-normalized matrices
  double cr_tol = 1e-7;      // coordinate membership tests (R, S^1, R+)
  double cert_tol = 1e-7;    // certificate residual
  double cons_tol = 1e-6;    // ratio consistency inside the conjugation solver
};

}  // namespace realform
