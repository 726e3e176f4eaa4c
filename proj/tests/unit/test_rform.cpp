#include <gtest/gtest.h>

#include <numbers>

#include "realform/decide.hpp"
#include "realform/rform.hpp"
#include "test_util.hpp"

using namespace realform;
using rt::proportional;

const cplx I(0, 1);

namespace {

EigenDatum hyp(std::initializer_list<cplx> v) { return EigenDatum{ProjPoint(v), -1}; }

// Appends an elliptic pair (p, q) with mutual partner indices.
void add_pair(std::vector<EigenDatum>& d, std::initializer_list<cplx> p, std::initializer_list<cplx> q) {
  const int n = static_cast<int>(d.size());
  d.push_back(EigenDatum{ProjPoint(p), n + 1});
  d.push_back(EigenDatum{ProjPoint(q), n});
}

std::vector<EigenDatum> staged_set(int stage) {
  std::vector<EigenDatum> d;
  add_pair(d, {-I, 1.0, 0.0}, {I, 1.0, 0.0});
  add_pair(d, {1.0 + I, 1.0, 0.0}, {1.0 - I, 1.0, 0.0});
  d.push_back(hyp({0.0, 0.0, 1.0}));
  if (stage >= 2) d.push_back(hyp({0.0, 1.0, 1.0}));
  if (stage >= 3) add_pair(d, {1.0, 0.0, 1.0}, {2.0, 0.0, 2.0});
  return d;
}

bool fixes(const Conjugation& c, const CVector& v) { return proportional(c.apply(v), v, 1e-8); }

}  // namespace

TEST(ConjugationFromEigendata, RealFrameGivesStandardConjugation) {
  const Conjugation c = conjugation_from_eigendata(
      {hyp({1.0, 0.0, 0.0}), hyp({0.0, 1.0, 0.0}), hyp({0.0, 0.0, 1.0}), hyp({1.0, 1.0, 1.0})});
  EXPECT_LT((c.S - CMatrix::Identity(3, 3)).norm(), 1e-10);
}

TEST(ConjugationFromEigendata, NoCommonCircle) {
  std::vector<EigenDatum> d;
  add_pair(d, {1.0, 0.0}, {0.0, 1.0});
  add_pair(d, {1.0, 1.0}, {-1.0, 1.0});
  try {
    conjugation_from_eigendata(d);
    FAIL() << "expected NoConjugation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConjugation);
  }
  EXPECT_EQ(rform_multiplicity(d), Multiplicity::Zero);
}

TEST(ConjugationFromEigendata, UnitCircleFromTwoEllipticPairs) {
  std::vector<EigenDatum> d;
  add_pair(d, {1.0, 0.0}, {0.0, 1.0});
  add_pair(d, {-I, 3.0}, {-3.0 * I, 1.0});
  const Conjugation c = conjugation_from_eigendata(d);
  EXPECT_LT((c.S * c.S.conjugate() - CMatrix::Identity(2, 2)).norm(), 1e-10);
  for (double t : {0.0, 0.7, 2.0, 4.1}) {
    CVector z(2);
    z << std::polar(1.0, t), 1.0;
    EXPECT_TRUE(fixes(c, z)) << t;
  }
  CVector off(2);
  off << 2.0, 1.0;
  EXPECT_FALSE(fixes(c, off));
}

TEST(ConjugationFromEigendata, FamilyIsUnderdetermined) {
  try {
    conjugation_from_eigendata(staged_set(1));
    FAIL() << "expected UnderdeterminedConjugation";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderdeterminedConjugation);
  }
}

TEST(RformMultiplicity, CoordinateAxesPlusOnePointIsInfinite) {
  EXPECT_EQ(rform_multiplicity({hyp({1.0, 0.0, 0.0}), hyp({0.0, 1.0, 0.0}), hyp({0.0, 0.0, 1.0}),
                                hyp({0.0, 1.0, 1.0})}),
            Multiplicity::Infinite);
}

TEST(RformMultiplicity, StagedSetsInfiniteOneZero) {
  const RFormAnalysis a1 = analyze_rforms(staged_set(1));
  EXPECT_EQ(a1.multiplicity, Multiplicity::Infinite);
  EXPECT_EQ(a1.free_parameters, 1);
  EXPECT_EQ(rform_multiplicity(staged_set(2)), Multiplicity::One);
  EXPECT_EQ(rform_multiplicity(staged_set(3)), Multiplicity::Zero);

  const Conjugation c = conjugation_from_eigendata(staged_set(2));
  EXPECT_TRUE(fixes(c, CVector::Unit(3, 0)));
  EXPECT_TRUE(fixes(c, CVector::Unit(3, 1)));
  EXPECT_TRUE(fixes(c, CVector::Unit(3, 2)));
}

TEST(RformMultiplicity, InfiniteWitnessRespectsData) {
  const auto data = staged_set(1);
  const RFormAnalysis a = analyze_rforms(data);
  ASSERT_TRUE(a.witness.has_value());
  for (const auto& d : data) {
    const CVector target = d.hyperbolic() ? d.direction.coords() : data[d.partner].direction.coords();
    EXPECT_TRUE(proportional(a.witness->apply(d.direction.coords()), target, 1e-8));
  }
}

TEST(RformFromConjugation, IdentityGivesStandardBasis) {
  const RForm f = rform_from_conjugation(Conjugation{CMatrix::Identity(3, 3)});
  ASSERT_EQ(f.basis.size(), 3u);
  CMatrix B(3, 3);
  for (int j = 0; j < 3; ++j) B.col(j) = f.basis[j];
  EXPECT_LT(B.imag().norm(), 1e-12);
  EXPECT_GT(std::abs(B.determinant()), 1e-6);
}

TEST(RformFromConjugation, AntidiagonalFixesBasis) {
  CMatrix S(2, 2);
  S << 0.0, 1.0, 1.0, 0.0;
  const Conjugation c{S};
  const RForm f = rform_from_conjugation(c);
  ASSERT_EQ(f.basis.size(), 2u);
  for (const auto& b : f.basis) EXPECT_LT((c.apply(b) - b).norm(), 1e-10);
  CVector u(2), v(2);
  u << 1.0, 1.0;
  v << I, -I;
  // Real span of the basis equals the real span of {[1,1],[i,-i]}.
  for (const auto& b : f.basis) {
    Eigen::Matrix2cd W;
    W << u, v;
    const CVector coef = W.inverse() * b;
    EXPECT_LT(coef.imag().norm(), 1e-10);
  }
}

TEST(Preserves, CommutationTest) {
  const Conjugation std_conj{CMatrix::Identity(2, 2)};
  EXPECT_TRUE(preserves(make_matrix({{1.0, 2.0}, {-3.0, 0.5}}), std_conj, 1e-9));
  EXPECT_FALSE(preserves(make_matrix({{2.0 * I, 0.0}, {0.0, 1.0}}), std_conj, 1e-9));
  const CMatrix B = make_matrix({{1.0, -I}, {-I, 1.0}});
  EXPECT_FALSE(preserves(B, std_conj, 1e-9));

  // B has eigendirections 1 and -1; reflection in the imaginary axis swaps them.
  std::vector<EigenDatum> d;
  add_pair(d, {1.0, 1.0}, {-1.0, 1.0});
  d.push_back(hyp({I, 1.0}));
  d.push_back(hyp({-I, 1.0}));
  const Conjugation axis = conjugation_from_eigendata(d);
  EXPECT_TRUE(preserves(B, axis, 1e-9));
  EXPECT_FALSE(preserves(make_matrix({{2.0 + I, 0.0}, {0.0, 2.0 - I}}), axis, 1e-9));
}

TEST(Preserves, PushforwardInvariance) {
  std::mt19937_64 rng(17);
  const CMatrix M = make_matrix({{1.0, 2.0, 0.0}, {0.5, -1.0, 3.0}, {0.0, 1.0, 2.0}});
  const Conjugation c{CMatrix::Identity(3, 3)};
  for (int t = 0; t < 10; ++t) {
    const CMatrix G = rt::random_complex(3, rng);
    const Conjugation pushed{G * c.S * G.conjugate().inverse()};
    EXPECT_TRUE(preserves(G * M * G.inverse(), pushed, 1e-8));
    const CMatrix Mc = make_matrix({{I, 2.0, 0.0}, {0.5, -1.0, 3.0}, {0.0, 1.0, 2.0}});
    EXPECT_FALSE(preserves(G * Mc * G.inverse(), pushed, 1e-8));
  }
}

TEST(Realifier, UnitCircleRealifiesScenarioTwo) {
  std::vector<EigenDatum> d;
  add_pair(d, {1.0, 0.0}, {0.0, 1.0});
  add_pair(d, {-I, 3.0}, {-3.0 * I, 1.0});
  const Conjugation c = conjugation_from_eigendata(d);
  const CMatrix G = realifier(c);
  // Gamma^-1 c Gamma is the standard conjugation.
  const CMatrix Sstd = G.inverse() * c.S * G.conjugate();
  EXPECT_LT((Sstd - CMatrix::Identity(2, 2)).norm(), 1e-9);
  const CMatrix cmat = make_matrix({{1.0 + I, 0.0}, {0.0, 1.0 - I}});
  const CMatrix dmat = make_matrix({{-2.0 + 5.0 * I, -3.0}, {-3.0, -2.0 - 5.0 * I}});
  EXPECT_LT(verify_certificate({cmat, dmat}, G), 1e-9);
}

TEST(Realifier, IdentityConjugation) {
  const CMatrix G = realifier(Conjugation{CMatrix::Identity(2, 2)});
  EXPECT_LT(verify_certificate({make_matrix({{1.0, 2.0}, {3.0, 4.0}})}, G), 1e-12);
}

TEST(ConjugationFromEigendata, InvolutionRoundTrip) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const CMatrix G = rt::random_complex(3, rng);
    std::vector<EigenDatum> d;
    for (const CVector& v : {CVector(CVector::Unit(3, 0)), CVector(CVector::Unit(3, 1)),
                             CVector(CVector::Unit(3, 2)), CVector(CVector::Ones(3))})
      d.push_back(EigenDatum{ProjPoint(CVector(G * v)), -1});
    const Conjugation c = conjugation_from_eigendata(d);
    const CVector x = rt::random_vector(3, rng);
    EXPECT_LT((c.apply(c.apply(x)) - x).norm() / x.norm(), 1e-8);
    for (const auto& e : d) EXPECT_TRUE(fixes(c, e.direction.coords()));
    const RForm f = rform_from_conjugation(c);
    for (const auto& b : f.basis) EXPECT_LT((c.apply(b) - b).norm() / b.norm(), 1e-8);
  }
}
