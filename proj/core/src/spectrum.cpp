#include "realform/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace realform {

const char* to_string(EigenLabel l) { return l == EigenLabel::Hyperbolic ? "Hyperbolic" : "Elliptic"; }

const char* to_string(SpectralKind k) {
  switch (k) {
    case SpectralKind::StrictlyHyperbolic: return "StrictlyHyperbolic";
    case SpectralKind::StrictlyElliptic: return "StrictlyElliptic";
    case SpectralKind::Mixed: return "Mixed";
    case SpectralKind::Incompatible: return "Incompatible";
  }
  return "Unknown";
}

int SpectralClass::hyperbolic_count() const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), EigenLabel::Hyperbolic));
}

namespace {

constexpr double kPi = std::numbers::pi;

double mod_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  if (kPi - r < 1e-15) r = 0.0;
  return r;
}

double circ_dist_pi(double a, double b) {
  const double d = std::abs(mod_pi(a - b));
  return std::min(d, kPi - d);
}

std::optional<Labeling> try_line(const std::vector<cplx>& lams, double theta, const Tolerances& tol) {
  const int n = static_cast<int>(lams.size());
  const cplx rot = std::polar(1.0, -theta);
  std::vector<cplx> mu(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    mu[i] = lams[i] * rot;
    scale = std::max(scale, std::abs(mu[i]));
  }
  Labeling L;
  L.theta = theta;
  L.labels.assign(n, EigenLabel::Hyperbolic);
  L.partner.assign(n, -1);
  std::vector<bool> on_line(n);
  for (int i = 0; i < n; ++i) on_line[i] = std::abs(mu[i].imag()) <= tol.angle_tol * std::abs(mu[i]);
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    done[i] = true;
    if (on_line[i]) continue;
    int best = -1;
    double best_d = 0.0;
    for (int j = i + 1; j < n; ++j) {
      if (done[j] || on_line[j]) continue;
      const double d = std::abs(mu[j] - std::conj(mu[i]));
      if (best < 0 || d < best_d) best = j, best_d = d;
    }
    if (best < 0 || best_d > tol.angle_tol * scale) return std::nullopt;
    done[best] = true;
    L.labels[i] = L.labels[best] = EigenLabel::Elliptic;
    L.partner[i] = best;
    L.partner[best] = i;
    L.pairing.emplace_back(i, best);
  }
  const bool any_h = std::count(L.labels.begin(), L.labels.end(), EigenLabel::Hyperbolic) > 0;
  const bool any_e = !L.pairing.empty();
  L.kind = any_h && any_e ? SpectralKind::Mixed
           : any_e        ? SpectralKind::StrictlyElliptic
                          : SpectralKind::StrictlyHyperbolic;
  return L;
}

}  // namespace

SpectralClass classify_eigenvalues(const std::vector<cplx>& lams, const Tolerances& tol) {
  const int n = static_cast<int>(lams.size());
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty eigenvalue list");
  for (const auto& l : lams)
    if (!std::isfinite(l.real()) || !std::isfinite(l.imag()) || std::abs(l) == 0.0)
      throw Error(ErrorCode::InvalidInput, "eigenvalues must be finite and nonzero");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (projective_gap(lams[i], lams[j]) < tol.sep_tol)
        throw Error(ErrorCode::RepeatedEigenvalues,
                    "eigenvalues " + std::to_string(i) + " and " + std::to_string(j) + " coincide projectively");

  std::vector<double> candidates;
  for (int i = 0; i < n; ++i) {
    candidates.push_back(mod_pi(std::arg(lams[i])));
    for (int j = i + 1; j < n; ++j)
      candidates.push_back(mod_pi(0.5 * (std::arg(lams[i]) + std::arg(lams[j]))));
  }
  std::sort(candidates.begin(), candidates.end());

  SpectralClass sc;
  for (double th : candidates) {
    bool dup = false;
    for (double t : sc.line_angles)
      if (circ_dist_pi(t, th) <= tol.angle_tol) dup = true;
    if (dup) continue;
    if (auto L = try_line(lams, th, tol)) {
      sc.line_angles.push_back(th);
      sc.labelings.push_back(std::move(*L));
    }
  }
  sc.compatible = !sc.line_angles.empty();
  if (!sc.compatible) return sc;

  const Labeling& first = sc.labelings.front();
  sc.labels = first.labels;
  sc.pairing = first.pairing;
  sc.kind = first.kind;

  // A ratio near -1 puts two eigenvalues on one line and also makes them a
  // reflected pair about another line.
  bool antipodal = false;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const cplx r = lams[i] / lams[j];
      if (std::abs(std::abs(r) - 1.0) <= tol.angle_tol && std::abs(std::arg(-r)) <= tol.angle_tol) antipodal = true;
    }
  sc.generic = sc.line_angles.size() == 1 && !antipodal;
  return sc;
}

SpectralClass type_transformation(const EigenSystem& es, const Tolerances& tol) {
  return classify_eigenvalues(es.eigenvalues, tol);
}

}  // namespace realform
