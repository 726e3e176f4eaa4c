#pragma once

#include <utility>
#include <vector>

#include "realform/projlin.hpp"

namespace realform {

enum class EigenLabel { Hyperbolic, Elliptic };
enum class SpectralKind { StrictlyHyperbolic, StrictlyElliptic, Mixed, Incompatible };

const char* to_string(EigenLabel l);
const char* to_string(SpectralKind k);

// Labels for one admissible line through the origin at angle theta.
struct Labeling {
  double theta = 0.0;
  std::vector<EigenLabel> labels;
  std::vector<std::pair<int, int>> pairing;  // (i, j), i < j, sorted
  std::vector<int> partner;                  // -1 for hyperbolic
  SpectralKind kind = SpectralKind::Incompatible;
};

struct SpectralClass {
  bool compatible = false;
  std::vector<double> line_angles;  // ascending in [0, pi)
  // Mirror of labelings.front() when compatible.
  std::vector<EigenLabel> labels;
  std::vector<std::pair<int, int>> pairing;
  bool generic = false;
  SpectralKind kind = SpectralKind::Incompatible;
  std::vector<Labeling> labelings;  // one per line angle

  int hyperbolic_count() const;
};

SpectralClass classify_eigenvalues(const std::vector<cplx>& lams, const Tolerances& tol = {});
SpectralClass type_transformation(const EigenSystem& es, const Tolerances& tol = {});

}  // namespace realform
