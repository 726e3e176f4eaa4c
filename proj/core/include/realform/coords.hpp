#pragma once

#include <vector>

#include "realform/flags.hpp"

namespace realform {

struct CrossRatio {
  cplx value{0.0, 0.0};  // meaningful when !infinite
  bool infinite = false;
  int i = -1, j = -1;    // quotient indices when taken from a flag quadruple
};

struct TripleRatio {
  cplx value{0.0, 0.0};
  int i = -1, j = -1, l = -1;
};

// (A-D)(C-B) / ((A-B)(C-D)), evaluated with 2x2 determinants.
CrossRatio cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d,
                       const Tolerances& tol = {});
// (A-B)(C-D) / ((A-D)(B-C))
CrossRatio fg_cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d,
                          const Tolerances& tol = {});

// One value per i + j = k - 2, ordered by increasing i.
std::vector<CrossRatio> cross_ratio_set(const Flag& A, const ProjPoint& B1, const Flag& C, const ProjPoint& D1,
                                        const Tolerances& tol = {});

// Linear forms come from the bilinear cross product of each flag's two vectors.
TripleRatio triple_ratio(const PlaneFlag& a, const PlaneFlag& b, const PlaneFlag& c, const Tolerances& tol = {});
TripleRatio triple_ratio(const CVector& vA, const CVector& fA, const CVector& vB, const CVector& fB,
                         const CVector& vC, const CVector& fC, const Tolerances& tol = {});

// One value per i + j + l = k - 3, ordered by i then j.
std::vector<TripleRatio> triple_ratio_set(const Flag& A, const Flag& B, const Flag& C, const Tolerances& tol = {});

CVector cross3(const CVector& p, const CVector& q);

// Membership tests with the coordinate tolerance cr_tol.
bool is_real(const CrossRatio& z, double cr_tol);
bool is_real(cplx z, double cr_tol);
bool is_positive_real(cplx z, double cr_tol);
bool on_unit_circle(cplx z, double cr_tol);
bool is_conjugate(cplx z, cplx w, double cr_tol);
bool approx_equal(cplx z, cplx w, double cr_tol);
// arg z == 0 mod 2 pi, i.e. z is a positive real up to tolerance.
bool arg_is_zero(cplx z, double cr_tol);

}  // namespace realform
