#include <cmath>
#include <limits>

#include "decide_internal.hpp"

namespace realform {

using namespace detail;

namespace {

struct P1Gen {
  int index;
  bool hyperbolic;
  ProjPoint minus, plus;
};

std::vector<P1Gen> line_generators(const std::vector<Generator>& gens) {
  std::vector<P1Gen> out;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const auto& G = gens[g];
    out.push_back(P1Gen{static_cast<int>(g), G.sc.kind == SpectralKind::StrictlyHyperbolic, G.es.eigendirections[0],
                        G.es.eigendirections[1]});
  }
  return out;
}

bool shares(const P1Gen& a, const P1Gen& b) {
  constexpr double t = 1e-9;
  return proj_eq(a.minus, b.minus, t) || proj_eq(a.minus, b.plus, t) || proj_eq(a.plus, b.minus, t) ||
         proj_eq(a.plus, b.plus, t);
}

std::string gname(const P1Gen& g) { return "g" + std::to_string(g.index); }

CrossRatio product(const CrossRatio& a, const CrossRatio& b) {
  CrossRatio r;
  r.infinite = a.infinite || b.infinite;
  if (!r.infinite) r.value = a.value * b.value;
  return r;
}

}  // namespace

Decision decide_pgl2(const std::vector<Generator>& gens, const Tolerances& tol) {
  if (gens.empty() || gens.front().es.eigendirections.size() != 2)
    throw Error(ErrorCode::MethodNotApplicable, "dimension-2 lemmas need k = 2");
  require_generic_spectra(gens);
  const auto L = line_generators(gens);
  std::vector<Condition> conds;
  std::vector<std::string> diags;
  if (L.size() == 1) {
    diags.push_back("single generator with compatible spectrum");
    return conclude(gens, Method::Dim2Lemmas, conds, diags, tol);
  }

  std::vector<int> H, E;
  for (std::size_t g = 0; g < L.size(); ++g) (L[g].hyperbolic ? H : E).push_back(static_cast<int>(g));

  int b1 = -1, b2 = -1;
  auto pick = [&](const std::vector<int>& X, const std::vector<int>& Y, bool same) {
    for (std::size_t s = 0; s < X.size() && b1 < 0; ++s)
      for (std::size_t t = same ? s + 1 : 0; t < Y.size() && b1 < 0; ++t)
        if (!shares(L[X[s]], L[Y[t]])) b1 = X[s], b2 = Y[t];
  };
  pick(H, H, true);
  if (b1 < 0) pick(E, E, true);
  if (b1 < 0) pick(H, E, false);
  if (b1 < 0) throw Error(ErrorCode::SharedEigendirections, "every candidate base pair shares an eigendirection");

  const P1Gen& G1 = L[b1];
  const P1Gen& G2 = L[b2];
  if (G1.hyperbolic && G2.hyperbolic) {
    diags.push_back("base: hyperbolic pair " + gname(G1) + ", " + gname(G2));
    conds.push_back(cond_real("base_cross_ratio " + gname(G1) + "," + gname(G2),
                              cross_ratio(G1.minus, G2.minus, G1.plus, G2.plus, tol), tol));
    for (const auto& M : L) {
      if (M.index == b1 || M.index == b2) continue;
      const auto cm = cross_ratio(G1.minus, M.minus, G1.plus, G2.minus, tol);
      const auto cp = cross_ratio(G1.minus, M.plus, G1.plus, G2.minus, tol);
      if (M.hyperbolic) {
        conds.push_back(cond_real("hyperbolic_on_circle " + gname(M) + "-", cm, tol));
        conds.push_back(cond_real("hyperbolic_on_circle " + gname(M) + "+", cp, tol));
      } else {
        conds.push_back(cond_conjugate("elliptic_swapped " + gname(M), cm, cp, tol));
      }
    }
  } else if (!G1.hyperbolic && !G2.hyperbolic) {
    diags.push_back("base: elliptic pair " + gname(G1) + ", " + gname(G2));
    conds.push_back(cond_positive("base_cross_ratio " + gname(G1) + "," + gname(G2),
                                  cross_ratio(G1.minus, G2.minus, G1.plus, G2.plus, tol), tol));
    for (const auto& M : L) {
      if (M.index == b1 || M.index == b2) continue;
      if (!M.hyperbolic) {
        conds.push_back(cond_positive("elliptic_vs_first " + gname(M),
                                      cross_ratio(G1.minus, M.minus, G1.plus, M.plus, tol), tol));
        conds.push_back(cond_positive("elliptic_vs_second " + gname(M),
                                      cross_ratio(G2.minus, M.minus, G2.plus, M.plus, tol), tol));
      } else {
        for (int s = 0; s < 2; ++s) {
          const ProjPoint& h = s == 0 ? M.minus : M.plus;
          const auto pr = product(cross_ratio(G1.minus, h, G1.plus, G2.minus, tol),
                                  cross_ratio(G1.minus, h, G1.plus, G2.plus, tol));
          conds.push_back(cond_unit("hyperbolic_on_circle " + gname(M) + (s == 0 ? "-" : "+"), pr, tol));
        }
      }
    }
  } else {
    const P1Gen& h = G1.hyperbolic ? G1 : G2;
    const P1Gen& e = G1.hyperbolic ? G2 : G1;
    if (L.size() > 2)
      throw Error(ErrorCode::SharedEigendirections, "only a hyperbolic/elliptic base is available for n > 2");
    diags.push_back("base: hyperbolic " + gname(h) + " with elliptic " + gname(e));
    conds.push_back(
        cond_unit("base_cross_ratio " + gname(h) + "," + gname(e), cross_ratio(h.minus, e.minus, h.plus, e.plus, tol), tol));
  }
  return conclude(gens, Method::Dim2Lemmas, std::move(conds), std::move(diags), tol);
}

std::vector<cplx> condition_functions_pgl2(const std::vector<CMatrix>& Ms, const Tolerances& tol) {
  if (Ms.size() < 2) throw Error(ErrorCode::MethodNotApplicable, "condition functions need at least two generators");
  const auto gens = analyze_generators(Ms, 2, tol);
  require_generic_spectra(gens);
  const auto L = line_generators(gens);
  if (!L[0].hyperbolic || !L[1].hyperbolic)
    throw Error(ErrorCode::MethodNotApplicable, "the first two generators must be hyperbolic");
  if (shares(L[0], L[1])) throw Error(ErrorCode::SharedEigendirections, "first two generators share a direction");
  const auto& m1 = L[0];
  const auto& m2 = L[1];
  constexpr double inf = std::numeric_limits<double>::infinity();
  auto imag_part = [](const CrossRatio& c) { return c.infinite ? cplx(0) : c.value - std::conj(c.value); };
  std::vector<cplx> f;
  f.push_back(imag_part(cross_ratio(m1.minus, m2.minus, m1.plus, m2.plus, tol)));
  for (std::size_t j = 2; j < L.size(); ++j) {
    const auto P = cross_ratio(m1.minus, L[j].minus, m1.plus, m2.plus, tol);
    const auto Q = cross_ratio(m1.minus, L[j].plus, m1.plus, m2.plus, tol);
    if (L[j].hyperbolic) {
      f.push_back(imag_part(P));
      f.push_back(imag_part(Q));
    } else if (P.infinite || Q.infinite) {
      const cplx v = P.infinite && Q.infinite ? cplx(0) : cplx(inf);
      f.push_back(v);
      f.push_back(v);
    } else {
      const cplx p = P.value, q = Q.value;
      f.push_back((p - std::conj(p)) - (std::conj(q) - q));
      f.push_back((p + std::conj(p)) - (std::conj(q) + q));
    }
  }
  return f;
}

}  // namespace realform
