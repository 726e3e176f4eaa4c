#include <complex>

#include "decide_internal.hpp"

namespace realform {

using namespace detail;

namespace {

std::string gname(int g) { return "g" + std::to_string(g); }

// Product of cross ratios; nullopt when any factor is infinite.
std::optional<cplx> prod(std::initializer_list<CrossRatio> xs) {
  cplx p = 1.0;
  for (const auto& x : xs) {
    if (x.infinite) return std::nullopt;
    p *= x.value;
  }
  return p;
}

Condition arg_zero(const std::string& name, const std::optional<cplx>& z, const Tolerances& tol) {
  if (!z) return Condition{name, cplx(0), std::nullopt, Requirement::ArgZero, false};
  return cond_arg_zero(name, *z, tol);
}

Condition conj_opt(const std::string& name, const CrossRatio& a, const std::optional<cplx>& b, const Tolerances& tol) {
  if (a.infinite || !b) return Condition{name, a.value, b.value_or(cplx(0)), Requirement::ConjugatePair, false};
  return cond_conjugate(name, a.value, *b, tol);
}

}  // namespace

std::vector<Condition> cross_only_hyperbolic_conditions(const Flag& A, const Flag& C, const ProjPoint& d, int m,
                                                        const ProjPoint& beta, const std::string& label,
                                                        const Tolerances& tol) {
  const int k = A.ambient();
  const auto x = cross_ratio_set(A, beta, C, d, tol);
  std::vector<Condition> out;
  for (int j = 0; j + 1 < m; j += 2) out.push_back(cond_unit(label + " unit_modulus" + idx(j), x[j], tol));
  for (int j = 0; j + 2 < m; j += 2)
    out.push_back(arg_zero(label + " arg_sum" + idx(j), prod({x[j], x[j + 1], x[j + 1], x[j + 2]}), tol));
  if (m >= 2 && m < k) out.push_back(arg_zero(label + " overlap" + idx(m - 2), prod({x[m - 2], x[m - 1], x[m - 1]}), tol));
  for (int j = m; j <= k - 2; ++j) out.push_back(cond_real(label + " real" + idx(j), x[j], tol));
  return out;
}

std::vector<Condition> cross_only_pair_conditions(const Flag& A, const Flag& C, const ProjPoint& d, int m,
                                                  const ProjPoint& z, const ProjPoint& w, const std::string& label,
                                                  const Tolerances& tol) {
  const int k = A.ambient();
  const auto cz = cross_ratio_set(A, z, C, d, tol);
  const auto cw = cross_ratio_set(A, w, C, d, tol);
  std::vector<Condition> out;
  for (int j = 0; j + 1 < m; j += 2) {
    if (cz[j].infinite || cw[j].infinite)
      out.push_back(Condition{label + " unit_product" + idx(j), cplx(0), std::nullopt, Requirement::EqualsOne, false});
    else
      out.push_back(cond_equals_one(label + " unit_product" + idx(j), cz[j].value * std::conj(cw[j].value), tol));
  }
  for (int j = 1; j <= m - 3; j += 2)
    out.push_back(conj_opt(label + " linked_conjugate" + idx(j), cz[j], prod({cw[j - 1], cw[j], cw[j + 1]}), tol));
  if (m >= 2 && m < k)
    out.push_back(conj_opt(label + " overlap" + idx(m - 1), cw[m - 1], prod({cz[m - 2], cz[m - 1]}), tol));
  for (int j = m; j <= k - 2; ++j) out.push_back(cond_conjugate(label + " conjugate" + idx(j), cz[j], cw[j], tol));
  return out;
}

Decision decide_pglk_cross_only(const std::vector<Generator>& gens, const Tolerances& tol) {
  const int k = static_cast<int>(gens.at(0).es.eigendirections.size());
  require_generic_spectra(gens);
  if (gens.size() == 1)
    return conclude(gens, Method::DimKCrossOnly, {}, {"single generator with compatible spectrum"}, tol);

  int base = -1;
  for (auto want : {SpectralKind::StrictlyHyperbolic, SpectralKind::StrictlyElliptic, SpectralKind::Mixed})
    for (std::size_t g = 0; g < gens.size() && base < 0; ++g)
      if (gens[g].sc.kind == want) base = static_cast<int>(g);
  const Generator& G = gens[base];
  std::vector<std::pair<ProjPoint, ProjPoint>> pairs;
  for (const auto& [a, b] : elliptic_pairs(G)) pairs.emplace_back(G.es.eigendirections[a], G.es.eigendirections[b]);
  std::vector<ProjPoint> hyps;
  for (int h : hyperbolic_indices(G)) hyps.push_back(G.es.eigendirections[h]);
  const Flag A = build_elliptic_flag(pairs, hyps, tol);
  const Flag C = A.reversed();
  const int m = 2 * static_cast<int>(pairs.size());

  int dg = -1, di = -1;
  for (std::size_t g = 0; g < gens.size() && dg < 0; ++g) {
    if (static_cast<int>(g) == base) continue;
    for (int h : hyperbolic_indices(gens[g])) {
      if (generic_position({A, C, Flag{{gens[g].es.eigendirections[h].coords()}}}, tol)) {
        dg = static_cast<int>(g);
        di = h;
        break;
      }
    }
  }
  if (dg < 0) throw Error(ErrorCode::GenericityViolation, "no hyperbolic direction completes the frame");
  const ProjPoint& d = gens[dg].es.eigendirections[di];

  std::vector<Condition> conds;
  std::vector<std::string> diags{"base: " + gname(base) + " (" + to_string(G.sc.kind) + ") with point " +
                                 std::to_string(di) + " of " + gname(dg)};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (static_cast<int>(g) == base) continue;
    const auto& M = gens[g];
    for (int h : hyperbolic_indices(M)) {
      if (static_cast<int>(g) == dg && h == di) continue;
      const auto& v = M.es.eigendirections[h];
      if (!generic_with_point(A, v, C, d, tol))
        throw Error(ErrorCode::GenericityViolation, gname(static_cast<int>(g)) + " direction " + std::to_string(h) +
                                                        " not generic with the frame");
      auto c = cross_only_hyperbolic_conditions(A, C, d, m, v, gname(static_cast<int>(g)) + "[" + std::to_string(h) + "]", tol);
      conds.insert(conds.end(), c.begin(), c.end());
    }
    for (const auto& [a, b] : elliptic_pairs(M)) {
      const auto &z = M.es.eigendirections[a], &w = M.es.eigendirections[b];
      if (!generic_with_point(A, z, C, d, tol) || !generic_with_point(A, w, C, d, tol))
        throw Error(ErrorCode::GenericityViolation,
                    gname(static_cast<int>(g)) + " elliptic pair not generic with the frame");
      auto c = cross_only_pair_conditions(A, C, d, m, z, w,
                                          gname(static_cast<int>(g)) + "[" + std::to_string(a) + "," +
                                              std::to_string(b) + "]",
                                          tol);
      conds.insert(conds.end(), c.begin(), c.end());
    }
  }
  return conclude(gens, Method::DimKCrossOnly, std::move(conds), std::move(diags), tol);
}

}  // namespace realform
