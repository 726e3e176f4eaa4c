#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realform/projlin.hpp"

namespace realform {

// Antilinear map v -> S * conj(v).
struct Conjugation {
  CMatrix S;
  CVector apply(const CVector& v) const { return S * v.conjugate(); }
};

struct RForm {
  std::vector<CVector> basis;
  Conjugation conj;
};

struct EigenDatum {
  ProjPoint direction;
  int partner = -1;  // index of the elliptic partner in the same list, -1 if hyperbolic
  bool hyperbolic() const { return partner < 0; }
};

enum class Multiplicity { Zero, One, Infinite };
const char* to_string(Multiplicity m);

struct RFormAnalysis {
  Multiplicity multiplicity = Multiplicity::Zero;
  int free_parameters = 0;              // real dimension of the family, gauge removed
  std::optional<Conjugation> witness;   // present unless Zero (or no closed basis exists)
  std::string reason;
};

RFormAnalysis analyze_rforms(const std::vector<EigenDatum>& data, const Tolerances& tol = {});

// Unique conjugation compatible with the data; throws NoConjugation or
// UnderdeterminedConjugation otherwise.
Conjugation conjugation_from_eigendata(const std::vector<EigenDatum>& data, const Tolerances& tol = {});

Multiplicity rform_multiplicity(const std::vector<EigenDatum>& data, const Tolerances& tol = {});

RForm rform_from_conjugation(const Conjugation& c, const Tolerances& tol = {});

bool preserves(const CMatrix& M, const Conjugation& c, double tol);

// Gamma whose columns span the fixed real form of c.
CMatrix realifier(const Conjugation& c, const Tolerances& tol = {});

}  // namespace realform
