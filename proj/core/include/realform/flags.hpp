#pragma once

#include <array>
#include <utility>
#include <vector>

#include "realform/projlin.hpp"

namespace realform {

// F_j = span of the first j spanning vectors. May be partial (fewer than k).
struct Flag {
  std::vector<CVector> spanning;

  int ambient() const { return spanning.empty() ? 0 : static_cast<int>(spanning.front().size()); }
  int length() const { return static_cast<int>(spanning.size()); }
  CMatrix part(int j) const;
  Flag reversed() const;
};

// Validates independence of the spanning vectors (throws GenericityViolation).
Flag make_flag(std::vector<CVector> spanning, const Tolerances& tol = {});

struct FlagPair {
  Flag F;
  Flag Fprime;
};

// Images A, B, C, D in a 2-dimensional quotient.
struct LineConfig {
  std::array<ProjPoint, 4> points;
};

// A point and a line through it in CP^2, given as a 3-vector and a second
// vector spanning the 2-dimensional part together with it.
struct PlaneFlag {
  CVector point;
  CVector second;
};

FlagPair flag_pair_from_eigensystem(const EigenSystem& es, const std::vector<int>& order);

bool generic_position(const std::vector<Flag>& flags, const Tolerances& tol = {});

bool generic_with_point(const Flag& A, const ProjPoint& v, const Flag& C, const ProjPoint& d,
                        const Tolerances& tol = {});

LineConfig quotient_cp1(const Flag& A, const ProjPoint& B1, const Flag& C, const ProjPoint& D1, int i, int j,
                        const Tolerances& tol = {});

std::array<PlaneFlag, 3> quotient_cp2(const Flag& A, const Flag& B, const Flag& C, int i, int j, int l,
                                      const Tolerances& tol = {});

// (v1, conj-partner of v1, v2, ..., h1, ..., hn)
Flag build_elliptic_flag(const std::vector<std::pair<ProjPoint, ProjPoint>>& pairs,
                         const std::vector<ProjPoint>& hyps, const Tolerances& tol = {});

// Orthonormal basis of the orthogonal complement of span(U); throws
// GenericityViolation when U is rank deficient.
CMatrix complement_basis(const CMatrix& U, int ambient, const Tolerances& tol = {});

}  // namespace realform
