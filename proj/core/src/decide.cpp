#include "realform/decide.hpp"

#include <cmath>
#include <limits>

#include "decide_internal.hpp"

namespace realform {

const char* to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Dim2Lemmas: return "Dim2Lemmas";
    case Method::Dim3FG: return "Dim3FG";
    case Method::DimKFG: return "DimKFG";
    case Method::DimKCrossOnly: return "DimKCrossOnly";
    case Method::DirectConjugation: return "DirectConjugation";
  }
  return "Unknown";
}

const char* to_string(Requirement r) {
  switch (r) {
    case Requirement::Real: return "R";
    case Requirement::PositiveReal: return "R+";
    case Requirement::UnitCircle: return "S1";
    case Requirement::ConjugatePair: return "conjugate-pair";
    case Requirement::EqualsOne: return "one";
    case Requirement::ArgZero: return "arg0";
  }
  return "Unknown";
}

namespace detail {

std::string idx(int i) { return "(" + std::to_string(i) + ")"; }
std::string idx(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
std::string idx(int i, int j, int l) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(l) + ")";
}

namespace {
cplx finite_value(const CrossRatio& cr) {
  return cr.infinite ? cplx(std::numeric_limits<double>::infinity(), 0.0) : cr.value;
}
}  // namespace

Condition cond_real(const std::string& name, const CrossRatio& cr, const Tolerances& tol) {
  return Condition{name, finite_value(cr), std::nullopt, Requirement::Real, is_real(cr, tol.cr_tol)};
}
Condition cond_real(const std::string& name, cplx z, const Tolerances& tol) {
  return Condition{name, z, std::nullopt, Requirement::Real, is_real(z, tol.cr_tol)};
}
Condition cond_positive(const std::string& name, const CrossRatio& cr, const Tolerances& tol) {
  return Condition{name, finite_value(cr), std::nullopt, Requirement::PositiveReal,
                   !cr.infinite && is_positive_real(cr.value, tol.cr_tol)};
}
Condition cond_unit(const std::string& name, const CrossRatio& cr, const Tolerances& tol) {
  return Condition{name, finite_value(cr), std::nullopt, Requirement::UnitCircle,
                   !cr.infinite && on_unit_circle(cr.value, tol.cr_tol)};
}
Condition cond_conjugate(const std::string& name, const CrossRatio& a, const CrossRatio& b, const Tolerances& tol) {
  bool pass = false;
  if (a.infinite || b.infinite)
    pass = a.infinite && b.infinite;
  else
    pass = is_conjugate(a.value, b.value, tol.cr_tol);
  return Condition{name, finite_value(a), finite_value(b), Requirement::ConjugatePair, pass};
}
Condition cond_conjugate(const std::string& name, cplx a, cplx b, const Tolerances& tol) {
  return Condition{name, a, b, Requirement::ConjugatePair, is_conjugate(a, b, tol.cr_tol)};
}
Condition cond_equals_one(const std::string& name, cplx z, const Tolerances& tol) {
  return Condition{name, z, std::nullopt, Requirement::EqualsOne, approx_equal(z, 1.0, tol.cr_tol)};
}
Condition cond_arg_zero(const std::string& name, cplx z, const Tolerances& tol) {
  return Condition{name, z, std::nullopt, Requirement::ArgZero, arg_is_zero(z, tol.cr_tol)};
}

bool all_pass(const std::vector<Condition>& conds) {
  for (const auto& c : conds)
    if (!c.pass) return false;
  return true;
}

void require_generic_spectra(const std::vector<Generator>& gens) {
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!gens[g].sc.generic)
      throw Error(ErrorCode::GenericityViolation,
                  "generator " + std::to_string(g) + " has non-generic eigenvalues");
}

std::vector<int> hyperbolic_indices(const Generator& g) {
  std::vector<int> out;
  for (std::size_t i = 0; i < g.sc.labels.size(); ++i)
    if (g.sc.labels[i] == EigenLabel::Hyperbolic) out.push_back(static_cast<int>(i));
  return out;
}

std::vector<std::pair<int, int>> elliptic_pairs(const Generator& g) { return g.sc.pairing; }

DirectOutcome direct_search(const std::vector<Generator>& gens, const Tolerances& tol) {
  DirectOutcome out;
  const std::size_t n = gens.size();
  std::size_t combos = 1;
  for (const auto& g : gens) {
    combos *= g.sc.labelings.size();
    if (combos > 256) {
      combos = 256;
      break;
    }
  }
  std::vector<CMatrix> Ms;
  for (const auto& g : gens) Ms.push_back(g.M);
  out.reason = "no labeling admits a common conjugation";
  for (std::size_t c = 0; c < combos; ++c) {
    std::vector<EigenDatum> data;
    std::size_t rest = c;
    for (std::size_t g = 0; g < n; ++g) {
      const auto& labs = gens[g].sc.labelings;
      const Labeling& L = labs[rest % labs.size()];
      rest /= labs.size();
      const int offset = static_cast<int>(data.size());
      for (std::size_t i = 0; i < L.partner.size(); ++i)
        data.push_back(EigenDatum{gens[g].es.eigendirections[i], L.partner[i] < 0 ? -1 : offset + L.partner[i]});
    }
    const RFormAnalysis a = analyze_rforms(data, tol);
    if (a.multiplicity == Multiplicity::Zero || !a.witness) {
      out.reason = a.reason;
      continue;
    }
    CMatrix G;
    try {
      G = realifier(*a.witness, tol);
    } catch (const Error& e) {
      out.reason = e.what();
      continue;
    }
    const double res = verify_certificate(Ms, G);
    if (res < tol.cert_tol) {
      out.found = true;
      out.multiplicity = a.multiplicity;
      out.gamma = G;
      out.residual = res;
      out.reason = a.reason;
      return out;
    }
    out.reason = "candidate conjugation leaves residual " + std::to_string(res);
  }
  return out;
}

Decision conclude(const std::vector<Generator>& gens, Method method, std::vector<Condition> conds,
                  std::vector<std::string> diagnostics, const Tolerances& tol) {
  Decision d;
  d.verdict.method = method;
  d.certificate.conditions = std::move(conds);
  d.certificate.diagnostics = std::move(diagnostics);
  if (!all_pass(d.certificate.conditions)) {
    d.verdict.answer = Answer::No;
    d.verdict.multiplicity = Multiplicity::Zero;
    return d;
  }
  const DirectOutcome r = direct_search(gens, tol);
  if (r.found) {
    d.verdict.answer = Answer::Yes;
    d.verdict.multiplicity = r.multiplicity;
    d.certificate.gamma = r.gamma;
    d.certificate.residual = r.residual;
  } else {
    d.verdict.answer = Answer::No;
    d.verdict.multiplicity = Multiplicity::Zero;
    d.certificate.diagnostics.push_back("coordinate conditions hold but no common conjugation exists: " + r.reason);
  }
  return d;
}

}  // namespace detail

std::vector<Generator> analyze_generators(const std::vector<CMatrix>& Ms, int k, const Tolerances& tol) {
  if (Ms.empty()) throw Error(ErrorCode::InvalidInput, "no matrices");
  std::vector<Generator> gens;
  for (std::size_t g = 0; g < Ms.size(); ++g) {
    if (Ms[g].rows() != k || Ms[g].cols() != k)
      throw Error(ErrorCode::InvalidInput, "matrix " + std::to_string(g) + " is not " + std::to_string(k) + "x" +
                                               std::to_string(k));
    Generator G;
    G.M = Ms[g];
    try {
      G.es = eig(Ms[g], tol);
      G.sc = type_transformation(G.es, tol);
    } catch (const Error& e) {
      throw Error(e.code(), "matrix " + std::to_string(g) + ": " + e.detail());
    }
    if (!G.sc.compatible)
      throw Error(ErrorCode::IncompatibleEigenvalues,
                  "matrix " + std::to_string(g) + " has eigenvalues on no common line and not reflection-paired");
    gens.push_back(std::move(G));
  }
  return gens;
}

double verify_certificate(const std::vector<CMatrix>& Ms, const CMatrix& gamma) {
  if (gamma.rows() != gamma.cols() || !gamma.allFinite()) return std::numeric_limits<double>::infinity();
  const Eigen::FullPivLU<CMatrix> lu(gamma);
  if (!lu.isInvertible() || normalized_conditioning(gamma) < 1e-14) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& M : Ms) {
    if (M.rows() != gamma.rows()) return std::numeric_limits<double>::infinity();
    CMatrix N = lu.solve(M * gamma);
    const double big = N.cwiseAbs().maxCoeff();
    if (big == 0.0 || !std::isfinite(big)) return std::numeric_limits<double>::infinity();
    N /= big;
    const cplx s = (N.array() * N.array()).sum();
    const cplx rot = std::abs(s) > 0 ? std::polar(1.0, -0.5 * std::arg(s)) : cplx(1.0);
    worst = std::max(worst, (rot * N).imag().cwiseAbs().maxCoeff());
  }
  return worst;
}

Decision decide_direct(const std::vector<Generator>& gens, const Tolerances& tol) {
  Decision d;
  d.verdict.method = Method::DirectConjugation;
  const auto r = detail::direct_search(gens, tol);
  d.verdict.answer = r.found ? Answer::Yes : Answer::No;
  d.verdict.multiplicity = r.found ? r.multiplicity : Multiplicity::Zero;
  if (r.found) {
    d.certificate.gamma = r.gamma;
    d.certificate.residual = r.residual;
  } else {
    d.certificate.diagnostics.push_back(r.reason);
  }
  return d;
}

Decision decide_direct(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  return decide_direct(analyze_generators(Ms, static_cast<int>(Ms.at(0).rows()), tol), tol);
}
Decision decide_pgl2(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  return decide_pgl2(analyze_generators(Ms, static_cast<int>(Ms.at(0).rows()), tol), tol);
}
Decision decide_pgl3(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  return decide_pgl3(analyze_generators(Ms, static_cast<int>(Ms.at(0).rows()), tol), tol);
}
Decision decide_pglk_fg(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  return decide_pglk_fg(analyze_generators(Ms, static_cast<int>(Ms.at(0).rows()), tol), tol);
}
Decision decide_pglk_cross_only(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  return decide_pglk_cross_only(analyze_generators(Ms, static_cast<int>(Ms.at(0).rows()), tol), tol);
}

namespace {

bool is_fallthrough(ErrorCode c) {
  return c == ErrorCode::GenericityViolation || c == ErrorCode::SharedEigendirections ||
         c == ErrorCode::MethodNotApplicable || c == ErrorCode::DegenerateFrame ||
         c == ErrorCode::IndeterminateCrossRatio || c == ErrorCode::DegenerateTriple;
}

Decision run_auto(const std::vector<Generator>& gens, int k, const Tolerances& tol) {
  std::vector<std::string> notes;
  using Fn = Decision (*)(const std::vector<Generator>&, const Tolerances&);
  std::vector<std::pair<const char*, Fn>> chain;
  if (k == 2) chain.emplace_back("dim2", static_cast<Fn>(&decide_pgl2));
  if (k == 3) chain.emplace_back("dim3", static_cast<Fn>(&decide_pgl3));
  if (k >= 4) chain.emplace_back("fg", static_cast<Fn>(&decide_pglk_fg));
  if (k >= 3) chain.emplace_back("cross", static_cast<Fn>(&decide_pglk_cross_only));
  for (const auto& [name, fn] : chain) {
    try {
      Decision d = fn(gens, tol);
      if (d.verdict.method == Method::DimKCrossOnly && d.verdict.answer == Answer::No) {
        // Only the sufficiency direction is claimed for this method.
        Decision confirm = decide_direct(gens, tol);
        if (confirm.verdict.answer == Answer::Yes) {
          notes.push_back("cross-ratio conditions failed but direct conjugation verifies");
          confirm.certificate.conditions = std::move(d.certificate.conditions);
          d = std::move(confirm);
        } else {
          d.certificate.diagnostics.push_back("No confirmed by direct conjugation");
        }
      }
      d.certificate.diagnostics.insert(d.certificate.diagnostics.begin(), notes.begin(), notes.end());
      return d;
    } catch (const Error& e) {
      if (!is_fallthrough(e.code())) throw;
      notes.push_back(std::string(name) + " not applicable: " + e.what());
    }
  }
  Decision d = decide_direct(gens, tol);
  d.certificate.diagnostics.insert(d.certificate.diagnostics.begin(), notes.begin(), notes.end());
  return d;
}

}  // namespace

Decision decide(const std::vector<CMatrix>& Ms, int k, const Tolerances& tol, MethodChoice choice) {
  const auto gens = analyze_generators(Ms, k, tol);
  switch (choice) {
    case MethodChoice::Auto: return run_auto(gens, k, tol);
    case MethodChoice::Dim2:
      if (k != 2) throw Error(ErrorCode::MethodNotApplicable, "dim2 method requires k = 2");
      return decide_pgl2(gens, tol);
    case MethodChoice::Dim3:
      if (k != 3) throw Error(ErrorCode::MethodNotApplicable, "dim3 method requires k = 3");
      return decide_pgl3(gens, tol);
    case MethodChoice::FG: return decide_pglk_fg(gens, tol);
    case MethodChoice::Cross: return decide_pglk_cross_only(gens, tol);
    case MethodChoice::Direct: return decide_direct(gens, tol);
  }
  return decide_direct(gens, tol);
}

}  // namespace realform
