#include <gtest/gtest.h>

#include "realform/decide.hpp"
#include "realform/oracle.hpp"
#include "realform/spectrum.hpp"
#include "test_util.hpp"

using namespace realform;

namespace {

InstanceSpec spec(int k, TypeMix mix, std::uint64_t seed) {
  InstanceSpec s;
  s.k = k;
  s.mix = mix;
  s.seed = seed;
  return s;
}

ErrorCode code_of(const InstanceSpec& s) {
  try {
    generate(s);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(Generate, DeterministicPerSeed) {
  const auto s = spec(3, TypeMix{1, 1, 1}, 1234);
  const Instance a = generate(s), b = generate(s);
  ASSERT_EQ(a.matrices.size(), 3u);
  for (std::size_t g = 0; g < a.matrices.size(); ++g) EXPECT_EQ(a.matrices[g], b.matrices[g]);
  const Instance c = generate(spec(3, TypeMix{1, 1, 1}, 1235));
  EXPECT_NE(a.matrices[0], c.matrices[0]);
}

TEST(Generate, KindsFollowMix) {
  const Instance inst = generate(spec(4, TypeMix{1, 2, 1}, 7));
  ASSERT_EQ(inst.kinds.size(), 4u);
  const std::vector<SpectralKind> want{SpectralKind::StrictlyHyperbolic, SpectralKind::StrictlyElliptic,
                                       SpectralKind::StrictlyElliptic, SpectralKind::Mixed};
  for (std::size_t g = 0; g < 4; ++g) {
    const SpectralClass sc = type_transformation(eig(inst.matrices[g]));
    EXPECT_TRUE(sc.compatible);
    EXPECT_TRUE(sc.generic);
    EXPECT_EQ(sc.kind, want[g]) << g;
  }
}

TEST(Generate, GammaTrueRealifies) {
  for (int k = 2; k <= 6; ++k) {
    const Instance inst = generate(spec(k, TypeMix{2, k % 2 == 0 ? 1 : 0, k >= 3 ? 1 : 0}, 100 + k));
    EXPECT_TRUE(inst.yes);
    EXPECT_LT(verify_certificate(inst.matrices, inst.gamma_true), 1e-9) << k;
  }
}

TEST(Generate, NoScrambleGivesRealMatrices) {
  auto s = spec(3, TypeMix{2, 1, 0}, 5);
  s.scramble = Scramble::None;
  for (const auto& M : generate(s).matrices) EXPECT_LT(M.imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Generate, PerturbationBreaksRealForm) {
  auto s = spec(2, TypeMix{2, 1, 0}, 9);
  s.perturbation = Perturbation{1, 0.05};
  const Instance inst = generate(s);
  EXPECT_FALSE(inst.yes);
  EXPECT_GT(verify_certificate(inst.matrices, inst.gamma_true), 1e-4);
  EXPECT_EQ(decide(inst.matrices, 2).verdict.answer, Answer::No);
}

TEST(Generate, InfeasibleSpecs) {
  EXPECT_EQ(code_of(spec(1, TypeMix{1, 0, 0}, 1)), ErrorCode::InfeasibleSpec);
  EXPECT_EQ(code_of(spec(5, TypeMix{0, 1, 0}, 1)), ErrorCode::InfeasibleSpec);
  EXPECT_EQ(code_of(spec(2, TypeMix{0, 0, 1}, 1)), ErrorCode::InfeasibleSpec);
  EXPECT_EQ(code_of(spec(3, TypeMix{0, 0, 0}, 1)), ErrorCode::InfeasibleSpec);
  auto s = spec(3, TypeMix{2, 0, 0}, 1);
  s.n_generators = 3;
  EXPECT_EQ(code_of(s), ErrorCode::InfeasibleSpec);
  s = spec(3, TypeMix{2, 0, 0}, 1);
  s.perturbation = Perturbation{5, 0.05};
  EXPECT_EQ(code_of(s), ErrorCode::InfeasibleSpec);
}

TEST(BruteSearch, SeparatesGoldenPairs) {
  const cplx I(0, 1);
  const std::vector<CMatrix> yes{make_matrix({{-1.0 + 3.0 * I, -3.0 + 3.0 * I}, {-3.0 - 3.0 * I, -1.0 - 3.0 * I}}),
                                 make_matrix({{1.0 + I, 0.0}, {0.0, 1.0 - I}})};
  const std::vector<CMatrix> no{make_matrix({{2.0 + I, 0.0}, {0.0, 2.0 - I}}), make_matrix({{1.0, -I}, {-I, 1.0}})};
  EXPECT_LT(brute_rform_search(yes, 60), 1e-6);
  EXPECT_GT(brute_rform_search(no, 60), 1e-2);
}

TEST(BruteSearch, OracleYesInstances) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate(spec(2, TypeMix{2, 1, 0}, seed));
    EXPECT_LT(brute_rform_search(inst.matrices, 60), 1e-6) << seed;
  }
}

TEST(BruteSearch, RejectsOtherDimensions) {
  const Instance inst = generate(spec(3, TypeMix{2, 0, 0}, 3));
  EXPECT_THROW(brute_rform_search(inst.matrices, 20), Error);
}
