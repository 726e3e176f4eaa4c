#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realform/coords.hpp"
#include "realform/rform.hpp"
#include "realform/spectrum.hpp"

namespace realform {

enum class Answer { Yes, No, Inconclusive };
enum class Method { Dim2Lemmas, Dim3FG, DimKFG, DimKCrossOnly, DirectConjugation };
enum class MethodChoice { Auto, Dim2, Dim3, FG, Cross, Direct };
enum class Requirement { Real, PositiveReal, UnitCircle, ConjugatePair, EqualsOne, ArgZero };

const char* to_string(Answer a);
const char* to_string(Method m);
const char* to_string(Requirement r);

struct Condition {
  std::string name;
  cplx value{0.0, 0.0};
  std::optional<cplx> partner;  // second member for ConjugatePair
  Requirement requirement = Requirement::Real;
  bool pass = false;
};

struct Verdict {
  Answer answer = Answer::Inconclusive;
  std::optional<Multiplicity> multiplicity;
  Method method = Method::DirectConjugation;
};

struct Certificate {
  std::optional<CMatrix> gamma;
  double residual = 0.0;  // meaningful when gamma is present
  std::vector<Condition> conditions;
  std::vector<std::string> diagnostics;
};

struct Decision {
  Verdict verdict;
  Certificate certificate;
};

// Per-generator spectral data shared by all methods.
struct Generator {
  CMatrix M;
  EigenSystem es;
  SpectralClass sc;
};

// eig + classify for every matrix; throws RepeatedEigenvalues,
// NonDiagonalizable or IncompatibleEigenvalues.
std::vector<Generator> analyze_generators(const std::vector<CMatrix>& Ms, int k, const Tolerances& tol = {});

Decision decide(const std::vector<CMatrix>& Ms, int k, const Tolerances& tol = {},
                MethodChoice choice = MethodChoice::Auto);

Decision decide_pgl2(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});
Decision decide_pgl3(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});
Decision decide_pglk_fg(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});
Decision decide_pglk_cross_only(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});
Decision decide_direct(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});

// Same methods on preprocessed generators. The lemma methods return their
// raw condition verdict, with a certificate attached when it passes.
Decision decide_pgl2(const std::vector<Generator>& gens, const Tolerances& tol);
Decision decide_pgl3(const std::vector<Generator>& gens, const Tolerances& tol);
Decision decide_pglk_fg(const std::vector<Generator>& gens, const Tolerances& tol);
Decision decide_pglk_cross_only(const std::vector<Generator>& gens, const Tolerances& tol);
Decision decide_direct(const std::vector<Generator>& gens, const Tolerances& tol);

std::vector<cplx> condition_functions_pgl2(const std::vector<CMatrix>& Ms, const Tolerances& tol = {});

// max over M of max |Im| of the phase-optimal normalization of G^-1 M G.
double verify_certificate(const std::vector<CMatrix>& Ms, const CMatrix& gamma);

// Cross-ratio-only conditions in a frame given by the atypical flag pair A, C
// (m elliptic directions first, then hyperbolic ones) and the point d.
std::vector<Condition> cross_only_hyperbolic_conditions(const Flag& A, const Flag& C, const ProjPoint& d, int m,
                                                        const ProjPoint& beta, const std::string& label,
                                                        const Tolerances& tol = {});
std::vector<Condition> cross_only_pair_conditions(const Flag& A, const Flag& C, const ProjPoint& d, int m,
                                                  const ProjPoint& z, const ProjPoint& w, const std::string& label,
                                                  const Tolerances& tol = {});

}  // namespace realform
