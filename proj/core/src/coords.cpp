#include "realform/coords.hpp"

#include <cmath>

namespace realform {

namespace {

cplx det2(const CVector& x, const CVector& y) { return x[0] * y[1] - x[1] * y[0]; }

CrossRatio ratio_from(cplx num, cplx den, const Tolerances& tol) {
  CrossRatio cr;
  const bool zn = std::abs(num) <= tol.deg_tol, zd = std::abs(den) <= tol.deg_tol;
  if (zn && zd) throw Error(ErrorCode::IndeterminateCrossRatio, "0/0 pattern in cross ratio");
  if (zd) {
    cr.infinite = true;
    return cr;
  }
  cr.value = num / den;
  return cr;
}

void check_line_points(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d) {
  if (a.dim() != 2 || b.dim() != 2 || c.dim() != 2 || d.dim() != 2)
    throw Error(ErrorCode::InvalidInput, "cross ratios take points of CP^1");
}

}  // namespace

CrossRatio cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d,
                       const Tolerances& tol) {
  check_line_points(a, b, c, d);
  const CVector A = a.unit(), B = b.unit(), C = c.unit(), D = d.unit();
  return ratio_from(det2(A, D) * det2(C, B), det2(A, B) * det2(C, D), tol);
}

CrossRatio fg_cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d,
                          const Tolerances& tol) {
  check_line_points(a, b, c, d);
  const CVector A = a.unit(), B = b.unit(), C = c.unit(), D = d.unit();
  return ratio_from(det2(A, B) * det2(C, D), det2(A, D) * det2(B, C), tol);
}

std::vector<CrossRatio> cross_ratio_set(const Flag& A, const ProjPoint& B1, const Flag& C, const ProjPoint& D1,
                                        const Tolerances& tol) {
  const int k = A.ambient();
  if (!generic_with_point(A, B1, C, D1, tol))
    throw Error(ErrorCode::GenericityViolation, "point quadruple not generic for quotient cross ratios");
  std::vector<CrossRatio> out;
  for (int i = 0; i <= k - 2; ++i) {
    const int j = k - 2 - i;
    const LineConfig lc = quotient_cp1(A, B1, C, D1, i, j, tol);
    CrossRatio cr = cross_ratio(lc.points[0], lc.points[1], lc.points[2], lc.points[3], tol);
    cr.i = i;
    cr.j = j;
    out.push_back(cr);
  }
  return out;
}

CVector cross3(const CVector& p, const CVector& q) {
  CVector r(3);
  r << p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0];
  return r;
}

TripleRatio triple_ratio(const CVector& vA, const CVector& fA, const CVector& vB, const CVector& fB,
                         const CVector& vC, const CVector& fC, const Tolerances& tol) {
  // Bilinear pairing; scale each input so the degeneracy test is projective.
  auto pair = [](const CVector& f, const CVector& v) -> cplx { return f.cwiseProduct(v).sum() / (f.norm() * v.norm()); };
  const cplx num = pair(fA, vB) * pair(fB, vC) * pair(fC, vA);
  const cplx den = pair(fA, vC) * pair(fB, vA) * pair(fC, vB);
  if (std::abs(den) <= tol.deg_tol) throw Error(ErrorCode::DegenerateTriple, "zero denominator in triple ratio");
  return TripleRatio{num / den};
}

TripleRatio triple_ratio(const PlaneFlag& a, const PlaneFlag& b, const PlaneFlag& c, const Tolerances& tol) {
  return triple_ratio(a.point, cross3(a.point, a.second), b.point, cross3(b.point, b.second), c.point,
                      cross3(c.point, c.second), tol);
}

std::vector<TripleRatio> triple_ratio_set(const Flag& A, const Flag& B, const Flag& C, const Tolerances& tol) {
  const int k = A.ambient();
  if (k < 3) throw Error(ErrorCode::InvalidInput, "triple ratios need k >= 3");
  std::vector<TripleRatio> out;
  for (int i = 0; i <= k - 3; ++i)
    for (int j = 0; j <= k - 3 - i; ++j) {
      const int l = k - 3 - i - j;
      const auto pf = quotient_cp2(A, B, C, i, j, l, tol);
      TripleRatio t;
      try {
        t = triple_ratio(pf[0], pf[1], pf[2], tol);
      } catch (const Error& e) {
        throw Error(ErrorCode::GenericityViolation, e.detail());
      }
      t.i = i;
      t.j = j;
      t.l = l;
      out.push_back(t);
    }
  return out;
}

bool is_real(cplx z, double cr_tol) { return std::abs(z.imag()) < cr_tol * (1.0 + std::abs(z.real())); }
bool is_real(const CrossRatio& z, double cr_tol) { return z.infinite || is_real(z.value, cr_tol); }
bool is_positive_real(cplx z, double cr_tol) { return is_real(z, cr_tol) && z.real() > 0; }
bool on_unit_circle(cplx z, double cr_tol) { return std::abs(std::abs(z) - 1.0) < cr_tol; }
bool approx_equal(cplx z, cplx w, double cr_tol) {
  return std::abs(z - w) < cr_tol * (1.0 + std::max(std::abs(z), std::abs(w)));
}
bool is_conjugate(cplx z, cplx w, double cr_tol) { return approx_equal(z, std::conj(w), cr_tol); }
bool arg_is_zero(cplx z, double cr_tol) { return std::abs(z) > 0 && std::abs(std::arg(z)) < cr_tol; }

}  // namespace realform
