#include <gtest/gtest.h>

#include "realform/coords.hpp"
#include "test_util.hpp"

using namespace realform;

const cplx I(0, 1);

namespace {

const ProjPoint inf{1.0, 0.0};
ProjPoint pt(cplx z) { return ProjPoint{z, 1.0}; }

Flag standard(int k) {
  std::vector<CVector> sp;
  for (int j = 0; j < k; ++j) sp.push_back(CVector::Unit(k, j));
  return Flag{sp};
}

}  // namespace

TEST(CrossRatio, ReferenceValues) {
  EXPECT_TRUE(rt::near(cross_ratio(inf, pt(5.0), pt(0.0), pt(1.0)).value, 5.0));
  EXPECT_TRUE(rt::near(cross_ratio(inf, pt(I), pt(0.0), pt(-I)).value, -1.0));
  EXPECT_TRUE(rt::near(cross_ratio(inf, pt(1.0), pt(0.0), pt(1.0)).value, 1.0));
}

TEST(CrossRatio, InfiniteAndIndeterminate) {
  const CrossRatio c = cross_ratio(pt(2.0), pt(2.0), pt(0.0), pt(1.0));
  EXPECT_TRUE(c.infinite);
  try {
    cross_ratio(pt(0.0), pt(0.0), pt(1.0), pt(0.0));
    FAIL() << "expected IndeterminateCrossRatio";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndeterminateCrossRatio);
  }
}

TEST(FgCrossRatio, ReferenceValues) {
  for (cplx x : {cplx(3.0), cplx(-0.25), 2.0 + I}) EXPECT_TRUE(rt::near(fg_cross_ratio(inf, pt(-1.0), pt(0.0), pt(x)).value, x));
  EXPECT_TRUE(rt::near(fg_cross_ratio(inf, pt(-1.0), pt(0.0), pt(1.0)).value, 1.0));
}

TEST(FgCrossRatio, RelationToStandardNormalization) {
  // With the displayed formulas [A,B,C,D] = -[[A,D,C,B]] and [A,B,C,D] = -1/[[A,B,C,D]].
  std::mt19937_64 rng(41);
  for (int t = 0; t < 100; ++t) {
    const ProjPoint a(rt::random_vector(2, rng)), b(rt::random_vector(2, rng)), c(rt::random_vector(2, rng)),
        d(rt::random_vector(2, rng));
    const cplx cr = cross_ratio(a, b, c, d).value;
    EXPECT_TRUE(rt::near(cr, -fg_cross_ratio(a, d, c, b).value, 1e-8));
    EXPECT_TRUE(rt::near(cr, -1.0 / fg_cross_ratio(a, b, c, d).value, 1e-8));
  }
}

TEST(CrossRatio, ProjectiveInvariance) {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    std::vector<CVector> p;
    for (int j = 0; j < 4; ++j) p.push_back(rt::random_vector(2, rng));
    const CMatrix G = rt::random_complex(2, rng);
    const cplx a = cross_ratio(ProjPoint(p[0]), ProjPoint(p[1]), ProjPoint(p[2]), ProjPoint(p[3])).value;
    const cplx b = cross_ratio(ProjPoint(CVector(G * p[0])), ProjPoint(CVector(G * p[1])),
                               ProjPoint(CVector(G * p[2])), ProjPoint(CVector(G * p[3])))
                       .value;
    EXPECT_TRUE(rt::near(a, b, 1e-8));
  }
}

TEST(CrossRatio, RealIffConcyclic) {
  // Four points on the circle |z - c| = r give a real cross ratio.
  const cplx c = 1.0 + 2.0 * I;
  const double r = 1.5;
  const ProjPoint a = pt(c + std::polar(r, 0.1)), b = pt(c + std::polar(r, 1.9)), cc = pt(c + std::polar(r, 3.0)),
                  d = pt(c + std::polar(r, 5.0));
  EXPECT_TRUE(is_real(cross_ratio(a, b, cc, d), 1e-9));
  EXPECT_FALSE(is_real(cross_ratio(a, b, cc, pt(c + std::polar(r * 1.1, 5.0))), 1e-9));
}

TEST(CrossRatio, ModulusOneIffInversionSwap) {
  // A and C on a circle; D is the inversion of B in that circle.
  const cplx o = -0.5 + 1.0 * I;
  const double r = 2.0;
  const cplx a = o + std::polar(r, 0.4), c = o + std::polar(r, 2.5), b = 1.0 + 0.5 * I;
  const cplx d = o + r * r / std::conj(b - o);
  EXPECT_TRUE(on_unit_circle(cross_ratio(pt(a), pt(b), pt(c), pt(d)).value, 1e-9));
  EXPECT_FALSE(on_unit_circle(cross_ratio(pt(a), pt(b), pt(c), pt(d * 1.1)).value, 1e-9));
  // Line through infinity and 0: |B| = |D|.
  EXPECT_TRUE(on_unit_circle(cross_ratio(inf, pt(b), pt(0.0), pt(std::polar(std::abs(b), 2.0))).value, 1e-9));
}

TEST(CrossRatioSet, StandardNormalization) {
  const Flag A = standard(3), C = A.reversed();
  const ProjPoint D1{1.0, 1.0, 1.0};
  const auto s = cross_ratio_set(A, ProjPoint{2.0, 4.0, 8.0}, C, D1);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_TRUE(rt::near(s[0].value, 0.5));
  EXPECT_TRUE(rt::near(s[1].value, 0.5));
  EXPECT_EQ(s[0].i, 0);
  EXPECT_EQ(s[0].j, 1);
}

TEST(CrossRatioSet, RealPointGivesRealValues) {
  const Flag A = standard(5), C = A.reversed();
  const auto s = cross_ratio_set(A, ProjPoint{1.0, -2.0, 0.3, 5.0, 7.0}, C, ProjPoint{1.0, 1.0, 1.0, 1.0, 1.0});
  ASSERT_EQ(s.size(), 4u);
  for (const auto& c : s) EXPECT_TRUE(is_real(c, 1e-12));
}

TEST(CrossRatioSet, NonGenericRejected) {
  const Flag A = standard(3), C = A.reversed();
  try {
    cross_ratio_set(A, ProjPoint{1.0, 0.0, 2.0}, C, ProjPoint{1.0, 1.0, 1.0});
    FAIL() << "expected GenericityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GenericityViolation);
  }
}

TEST(TripleRatio, ClosedFormOfNormalizedFrame) {
  // A = (e1, e2), C = (e3, e2), D through b' = [0, 1, 2] with second vector [1, 1, 1].
  const CVector e1 = CVector::Unit(3, 0), e2 = CVector::Unit(3, 1), e3 = CVector::Unit(3, 2);
  CVector bp(3), one(3);
  bp << 0.0, 1.0, 2.0;
  one << 1.0, 1.0, 1.0;
  const PlaneFlag A{e1, e2}, C{e3, e2}, D{one, bp};
  const cplx closed = (bp(2) - bp(1)) / (bp(1) - bp(0));
  EXPECT_TRUE(rt::near(triple_ratio(A, C, D).value, closed));
  EXPECT_TRUE(rt::near(closed, 1.0));
}

TEST(TripleRatio, AntisymmetryAndCyclicInvariance) {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 50; ++t) {
    const PlaneFlag a{rt::random_vector(3, rng), rt::random_vector(3, rng)};
    const PlaneFlag b{rt::random_vector(3, rng), rt::random_vector(3, rng)};
    const PlaneFlag c{rt::random_vector(3, rng), rt::random_vector(3, rng)};
    const cplx abc = triple_ratio(a, b, c).value;
    EXPECT_TRUE(rt::near(abc * triple_ratio(a, c, b).value, 1.0, 1e-9));
    EXPECT_TRUE(rt::near(abc, triple_ratio(b, c, a).value, 1e-9));
  }
}

TEST(TripleRatio, DegenerateRejected) {
  const PlaneFlag a{CVector::Unit(3, 0), CVector::Unit(3, 1)};
  try {
    triple_ratio(a, a, a);
    FAIL() << "expected DegenerateTriple";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateTriple);
  }
}

TEST(TripleRatioSet, Counts) {
  std::mt19937_64 rng(53);
  for (int k = 3; k <= 6; ++k) {
    const Flag A = standard(k), C = A.reversed();
    std::vector<CVector> bs;
    for (int j = 0; j < k; ++j) bs.push_back(rt::random_vector(k, rng));
    const auto s = triple_ratio_set(A, Flag{bs}, C);
    EXPECT_EQ(static_cast<int>(s.size()), (k - 1) * (k - 2) / 2) << k;
  }
}

TEST(TripleRatioSet, DimensionThreeMatchesDirect) {
  const Flag A = standard(3), C = A.reversed();
  CVector b0(3), b1(3), b2(3);
  b0 << 1.0, 2.0, 3.0;
  b1 << -1.0, 0.5, I;
  b2 << 0.0, 0.0, 1.0;
  const Flag B{{b0, b1, b2}};
  const auto s = triple_ratio_set(A, B, C);
  ASSERT_EQ(s.size(), 1u);
  const cplx direct = triple_ratio(PlaneFlag{A.spanning[0], A.spanning[1]}, PlaneFlag{b0, b1},
                                   PlaneFlag{C.spanning[0], C.spanning[1]})
                          .value;
  EXPECT_TRUE(rt::near(s[0].value, direct));
}

TEST(Membership, Predicates) {
  const double tol = 1e-7;
  EXPECT_TRUE(is_real(cplx(3.0, 1e-9), tol));
  EXPECT_FALSE(is_real(cplx(3.0, 1e-3), tol));
  EXPECT_TRUE(is_positive_real(cplx(0.2, 0.0), tol));
  EXPECT_FALSE(is_positive_real(cplx(-0.2, 0.0), tol));
  EXPECT_TRUE(on_unit_circle(std::polar(1.0, 2.0), tol));
  EXPECT_TRUE(is_conjugate(2.0 + I, 2.0 - I, tol));
  EXPECT_TRUE(arg_is_zero(cplx(5.0, 1e-10), tol));
  EXPECT_FALSE(arg_is_zero(cplx(-5.0, 0.0), tol));
}
