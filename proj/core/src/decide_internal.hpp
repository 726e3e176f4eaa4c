#pragma once

#include <string>
#include <vector>

#include "realform/decide.hpp"

namespace realform::detail {

Condition cond_real(const std::string& name, const CrossRatio& cr, const Tolerances& tol);
Condition cond_real(const std::string& name, cplx z, const Tolerances& tol);
Condition cond_positive(const std::string& name, const CrossRatio& cr, const Tolerances& tol);
Condition cond_unit(const std::string& name, const CrossRatio& cr, const Tolerances& tol);
Condition cond_conjugate(const std::string& name, const CrossRatio& a, const CrossRatio& b, const Tolerances& tol);
Condition cond_conjugate(const std::string& name, cplx a, cplx b, const Tolerances& tol);
Condition cond_equals_one(const std::string& name, cplx z, const Tolerances& tol);
Condition cond_arg_zero(const std::string& name, cplx z, const Tolerances& tol);

bool all_pass(const std::vector<Condition>& conds);

// Every generator must have a single admissible labeling.
void require_generic_spectra(const std::vector<Generator>& gens);

std::vector<int> hyperbolic_indices(const Generator& g);
// Elliptic pairs (i, partner) with i < partner, in eigenvalue order.
std::vector<std::pair<int, int>> elliptic_pairs(const Generator& g);

struct DirectOutcome {
  bool found = false;
  Multiplicity multiplicity = Multiplicity::Zero;
  CMatrix gamma;
  double residual = 0.0;
  std::string reason;
};

DirectOutcome direct_search(const std::vector<Generator>& gens, const Tolerances& tol);

// Turn a lemma method's condition list into a decision: a Yes is only
// reported when an explicit realifier verifies.
Decision conclude(const std::vector<Generator>& gens, Method method, std::vector<Condition> conds,
                  std::vector<std::string> diagnostics, const Tolerances& tol);

std::string idx(int i);
std::string idx(int i, int j);
std::string idx(int i, int j, int l);

}  // namespace realform::detail
