#include <gtest/gtest.h>

#include <algorithm>

#include "realform/coords.hpp"
#include "realform/flags.hpp"
#include "test_util.hpp"

using namespace realform;

const cplx I(0, 1);

namespace {

Flag standard(int k) {
  std::vector<CVector> sp;
  for (int j = 0; j < k; ++j) sp.push_back(CVector::Unit(k, j));
  return Flag{sp};
}

CVector vec(std::initializer_list<cplx> v) { return ProjPoint(v).coords(); }

}  // namespace

TEST(FlagPair, FromEigensystem) {
  CMatrix D = CMatrix::Zero(3, 3);
  D.diagonal() << 1.0, 2.0, 3.0;
  const FlagPair fp = flag_pair_from_eigensystem(eig(D), {0, 1, 2});
  for (int j = 0; j < 3; ++j) {
    EXPECT_TRUE(rt::proportional(fp.F.spanning[j], CVector::Unit(3, j)));
    EXPECT_TRUE(rt::proportional(fp.Fprime.spanning[j], CVector::Unit(3, 2 - j)));
  }
  const EigenSystem a = eig(make_matrix({{3.0 * I - 1.0, 3.0 * I - 3.0}, {-3.0 * I - 3.0, -3.0 * I - 1.0}}));
  const FlagPair fa = flag_pair_from_eigensystem(a, {0, 1});
  EXPECT_TRUE(rt::proportional(fa.F.spanning[0], vec({-1.0, 1.0})));
  EXPECT_TRUE(rt::proportional(fa.F.spanning[1], vec({-I, 1.0})));
  EXPECT_TRUE(rt::proportional(fa.Fprime.spanning[0], vec({-I, 1.0})));
  EXPECT_THROW(flag_pair_from_eigensystem(a, {0, 0}), Error);
}

TEST(GenericPosition, StandardPairAndSharedLine) {
  const Flag A = standard(3);
  EXPECT_TRUE(generic_position({A, A.reversed()}));
  const Flag B{{vec({1.0, 0.0, 0.0}), vec({0.0, 1.0, 1.0}), vec({1.0, 1.0, 0.5})}};
  EXPECT_FALSE(generic_position({A, B}));
}

TEST(GenericPosition, FourFlagsFromNonGenericPoint) {
  const Flag A = standard(3), C = A.reversed();
  const Flag beta{{vec({1.0, 1.0, -1.0}), vec({1.0, -1.0, 1.0}), vec({2.0, -1.0, 2.0})}};
  // v1 + v2 = 2 e1, so A_1 + beta_2 is only a plane.
  EXPECT_FALSE(generic_position({A, beta, C, beta.reversed()}));
  EXPECT_FALSE(generic_with_point(A, ProjPoint{1.0, 1.0, -1.0}, C, ProjPoint{1.0, 1.0, 1.0}));
  // No ordering of the three directions gives a generic quadruple.
  std::vector<CVector> v{vec({1.0, 1.0, -1.0}), vec({1.0, -1.0, 1.0}), vec({2.0, -1.0, 2.0})};
  std::vector<int> p{0, 1, 2};
  do {
    const Flag b{{v[p[0]], v[p[1]], v[p[2]]}};
    EXPECT_FALSE(generic_position({A, b, C, b.reversed()}));
  } while (std::next_permutation(p.begin(), p.end()));
}

TEST(GenericPosition, InvariantUnderChangeOfBasis) {
  std::mt19937_64 rng(29);
  const Flag A = standard(4);
  std::vector<CVector> bs;
  for (int j = 0; j < 4; ++j) bs.push_back(rt::random_vector(4, rng));
  const Flag B{bs};
  const bool ref = generic_position({A, B, A.reversed()});
  for (int t = 0; t < 10; ++t) {
    const CMatrix G = rt::random_complex(4, rng);
    auto move = [&](const Flag& F) {
      Flag out;
      for (const auto& v : F.spanning) out.spanning.push_back(G * v);
      return out;
    };
    EXPECT_EQ(generic_position({move(A), move(B), move(A.reversed())}), ref);
  }
}

TEST(GenericWithPoint, Examples) {
  const Flag A = standard(3), C = A.reversed();
  const ProjPoint d{1.0, 1.0, 1.0};
  EXPECT_TRUE(generic_with_point(A, ProjPoint{1.0, 2.0, 1.0}, C, d));
  EXPECT_FALSE(generic_with_point(A, ProjPoint{1.0, 1.0, -1.0}, C, d));
  EXPECT_FALSE(generic_with_point(A, ProjPoint{1.0, 0.0, 3.0}, C, d));
}

TEST(QuotientCP1, SuccessiveComponentRatios) {
  const Flag A = standard(3), C = A.reversed();
  const ProjPoint D1{1.0, 1.0, 1.0};
  const cplx b1 = 2.0 + I, b2 = -1.0, b3 = 0.5 * I;
  const ProjPoint B1{b1, b2, b3};
  // Index i quotients by A_i + C_j and sees components i+1, i+2.
  const LineConfig q0 = quotient_cp1(A, B1, C, D1, 0, 1);
  const LineConfig q1 = quotient_cp1(A, B1, C, D1, 1, 0);
  const auto cr = [](const LineConfig& q) { return cross_ratio(q.points[0], q.points[1], q.points[2], q.points[3]); };
  EXPECT_TRUE(rt::near(cr(q0).value, b1 / b2));
  EXPECT_TRUE(rt::near(cr(q1).value, b2 / b3));
}

TEST(QuotientCP1, CoincidentPointsAllowed) {
  const Flag A = standard(3), C = A.reversed();
  const ProjPoint D1{1.0, 1.0, 1.0};
  const LineConfig q = quotient_cp1(A, D1, C, D1, 0, 1);
  EXPECT_TRUE(proj_eq(q.points[1], q.points[3], 1e-10));
}

TEST(QuotientCP1, Equivariance) {
  std::mt19937_64 rng(31);
  const Flag A = standard(4), C = A.reversed();
  const ProjPoint B1(rt::random_vector(4, rng)), D1(rt::random_vector(4, rng));
  for (int t = 0; t < 10; ++t) {
    const CMatrix G = rt::random_complex(4, rng);
    auto move = [&](const Flag& F) {
      Flag out;
      for (const auto& v : F.spanning) out.spanning.push_back(G * v);
      return out;
    };
    for (int i = 0; i <= 2; ++i) {
      const auto a = quotient_cp1(A, B1, C, D1, i, 2 - i);
      const auto b = quotient_cp1(move(A), ProjPoint(CVector(G * B1.coords())), move(C),
                                  ProjPoint(CVector(G * D1.coords())), i, 2 - i);
      const cplx ca = cross_ratio(a.points[0], a.points[1], a.points[2], a.points[3]).value;
      const cplx cb = cross_ratio(b.points[0], b.points[1], b.points[2], b.points[3]).value;
      EXPECT_TRUE(rt::near(ca, cb, 1e-8));
    }
  }
}

TEST(QuotientCP1, RejectsBadIndices) {
  const Flag A = standard(3), C = A.reversed();
  EXPECT_THROW(quotient_cp1(A, ProjPoint{1.0, 2.0, 3.0}, C, ProjPoint{1.0, 1.0, 1.0}, 1, 1), Error);
}

TEST(QuotientCP2, DimensionThreeIsIdentity) {
  const Flag A = standard(3), C = A.reversed();
  const Flag B{{vec({1.0, 2.0, -1.0}), vec({0.5, I, 3.0}), vec({1.0, 0.0, 0.0})}};
  const auto q = quotient_cp2(A, B, C, 0, 0, 0);
  const cplx via_quotient = triple_ratio(q[0], q[1], q[2]).value;
  const PlaneFlag pa{A.spanning[0], A.spanning[1]}, pb{B.spanning[0], B.spanning[1]}, pc{C.spanning[0], C.spanning[1]};
  EXPECT_TRUE(rt::near(via_quotient, triple_ratio(pa, pb, pc).value));
}

TEST(QuotientCP2, DropsFirstCoordinateDirection) {
  std::mt19937_64 rng(37);
  const Flag A = standard(4), C = A.reversed();
  std::vector<CVector> bs;
  for (int j = 0; j < 4; ++j) bs.push_back(rt::random_vector(4, rng));
  const Flag B{bs};
  const auto q = quotient_cp2(A, B, C, 1, 0, 0);
  // Explicit quotient by span(e1): keep coordinates 2..4.
  auto drop = [](const CVector& v) { return CVector(v.tail(3)); };
  const PlaneFlag pa{drop(A.spanning[1]), drop(A.spanning[2])};
  const PlaneFlag pb{drop(B.spanning[0]), drop(B.spanning[1])};
  const PlaneFlag pc{drop(C.spanning[0]), drop(C.spanning[1])};
  EXPECT_TRUE(rt::near(triple_ratio(q[0], q[1], q[2]).value, triple_ratio(pa, pb, pc).value, 1e-9));
}

TEST(QuotientCP2, NonGenericRejected) {
  const Flag A = standard(4), C = A.reversed();
  const Flag B{{CVector(CVector::Unit(4, 0)), CVector(CVector::Unit(4, 1)), vec({1.0, 1.0, 1.0, 1.0}),
                vec({1.0, 2.0, 3.0, 4.0})}};
  try {
    quotient_cp2(A, B, C, 1, 0, 0);
    FAIL() << "expected GenericityViolation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GenericityViolation);
  }
}

TEST(BuildEllipticFlag, Orders) {
  const Flag f = build_elliptic_flag({{ProjPoint{I, 1.0}, ProjPoint{-I, 1.0}}}, {});
  ASSERT_EQ(f.length(), 2);
  EXPECT_TRUE(rt::proportional(f.spanning[0], vec({I, 1.0})));
  EXPECT_TRUE(rt::proportional(f.spanning[1], vec({-I, 1.0})));

  const Flag g = build_elliptic_flag({{ProjPoint{I, 1.0, 0.0, 0.0}, ProjPoint{-I, 1.0, 0.0, 0.0}},
                                      {ProjPoint{0.0, 0.0, 1.0, I}, ProjPoint{0.0, 0.0, 1.0, -I}}},
                                     {});
  EXPECT_EQ(g.length(), 4);
  EXPECT_TRUE(rt::proportional(g.spanning[2], vec({0.0, 0.0, 1.0, I})));

  const Flag m = build_elliptic_flag({{ProjPoint{I, 1.0, 0.0}, ProjPoint{-I, 1.0, 0.0}}}, {ProjPoint{0.0, 0.0, 1.0}});
  EXPECT_TRUE(rt::proportional(m.spanning[2], vec({0.0, 0.0, 1.0})));

  EXPECT_THROW(build_elliptic_flag({{ProjPoint{I, 1.0}, ProjPoint{2.0 * I, 2.0}}}, {}), Error);
}
