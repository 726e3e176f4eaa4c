#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realform/projlin.hpp"

namespace realform {

struct TypeMix {
  int hyperbolic = 0;
  int elliptic = 0;  // at k = 3 this is one real eigenvalue plus one pair
  int mixed = 0;
  int total() const { return hyperbolic + elliptic + mixed; }
};

enum class Scramble { None, RandomGamma };

struct Perturbation {
  int generator = 0;
  double magnitude = 0.05;
};

struct InstanceSpec {
  int k = 2;
  int n_generators = 0;  // 0 means mix.total()
  TypeMix mix;
  std::uint64_t seed = 0;
  Scramble scramble = Scramble::RandomGamma;
  std::optional<Perturbation> perturbation;
};

struct Instance {
  std::vector<CMatrix> matrices;
  bool yes = true;
  CMatrix gamma_true;  // realifier for the unperturbed collection
  std::vector<std::string> kinds;
};

// Throws InfeasibleSpec for impossible type requests.
Instance generate(const InstanceSpec& spec);

// k = 2 only: min over a grid of circles (Hermitian forms) of the largest
// eigendata defect, refined locally from the best grid point.
double brute_rform_search(const std::vector<CMatrix>& Ms, int grid = 200, const Tolerances& tol = {});

}  // namespace realform
