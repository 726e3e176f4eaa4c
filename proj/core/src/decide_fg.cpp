#include <complex>

#include "decide_internal.hpp"

namespace realform {

using namespace detail;

namespace {

// Normalizing data shared by all subsequent generators.
struct Frame {
  Flag A, C;
  ProjPoint D1;
  CMatrix T;  // applied to every eigendirection before use
};

std::string gname(int g) { return "g" + std::to_string(g); }

ProjPoint moved(const Frame& f, const ProjPoint& p) { return ProjPoint(f.T * p.coords()); }

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::GenericityViolation, what);
}

// Conditions for one generator checked against the frame.
void subsequent_conditions(const Frame& fr, const Generator& M, int g, std::vector<Condition>& conds,
                           const Tolerances& tol, const std::vector<int>* forced_order = nullptr) {
  const int k = static_cast<int>(M.es.eigendirections.size());
  std::vector<int> order;
  const bool hyper = M.sc.kind == SpectralKind::StrictlyHyperbolic;
  if (forced_order) {
    order = *forced_order;
  } else if (hyper) {
    for (int i = 0; i < k; ++i) order.push_back(i);
  } else {
    const auto hyps = hyperbolic_indices(M);
    if (hyps.size() > 1)
      throw Error(ErrorCode::MethodNotApplicable,
                  gname(g) + " is mixed with more than one hyperbolic direction");
    const auto pairs = elliptic_pairs(M);
    for (const auto& p : pairs) order.push_back(p.first);
    for (int h : hyps) order.push_back(h);
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) order.push_back(it->second);
  }
  std::vector<CVector> sp;
  for (int i : order) sp.push_back(moved(fr, M.es.eigendirections[i]).coords());
  const Flag beta{sp};
  const Flag betap = beta.reversed();
  const ProjPoint b1(beta.spanning.front()), bp1(betap.spanning.front());
  require(generic_with_point(fr.A, b1, fr.C, fr.D1, tol), gname(g) + ": first direction not generic with the frame");
  require(generic_with_point(fr.A, bp1, fr.C, fr.D1, tol), gname(g) + ": last direction not generic with the frame");
  require(generic_position({fr.A, beta, fr.C}, tol), gname(g) + ": flag not generic with the frame");
  require(generic_position({fr.A, betap, fr.C}, tol), gname(g) + ": reversed flag not generic with the frame");

  const auto cr = cross_ratio_set(fr.A, b1, fr.C, fr.D1, tol);
  const auto crp = cross_ratio_set(fr.A, bp1, fr.C, fr.D1, tol);
  std::vector<TripleRatio> tr, trp;
  if (k >= 3) {
    tr = triple_ratio_set(fr.A, beta, fr.C, tol);
    trp = triple_ratio_set(fr.A, betap, fr.C, tol);
  }
  const std::string G = gname(g);
  if (hyper) {
    for (const auto& c : cr) conds.push_back(cond_real(G + " cross_ratio beta" + idx(c.i, c.j), c, tol));
    for (const auto& c : crp) conds.push_back(cond_real(G + " cross_ratio beta'" + idx(c.i, c.j), c, tol));
    for (const auto& t : tr) conds.push_back(cond_real(G + " triple_ratio beta" + idx(t.i, t.j, t.l), t.value, tol));
    for (const auto& t : trp) conds.push_back(cond_real(G + " triple_ratio beta'" + idx(t.i, t.j, t.l), t.value, tol));
  } else {
    for (std::size_t s = 0; s < cr.size(); ++s)
      conds.push_back(cond_conjugate(G + " cross_ratio beta~beta'" + idx(cr[s].i, cr[s].j), cr[s], crp[s], tol));
    for (std::size_t s = 0; s < tr.size(); ++s)
      conds.push_back(cond_conjugate(G + " triple_ratio beta~beta'" + idx(tr[s].i, tr[s].j, tr[s].l), tr[s].value,
                                     trp[s].value, tol));
  }
}

Flag flag_of(const Generator& G) {
  std::vector<CVector> sp;
  for (const auto& d : G.es.eigendirections) sp.push_back(d.canonical());
  return Flag{sp};
}

Decision run_hyperbolic_base(const std::vector<Generator>& gens, Method method, const Tolerances& tol) {
  const int k = static_cast<int>(gens.front().es.eigendirections.size());
  std::vector<int> H;
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].sc.kind == SpectralKind::StrictlyHyperbolic) H.push_back(static_cast<int>(g));
  if (H.size() < 2) throw Error(ErrorCode::MethodNotApplicable, "needs two strictly hyperbolic generators");

  int bg = -1, bh = -1;
  for (std::size_t s = 0; s < H.size() && bg < 0; ++s)
    for (std::size_t t = s + 1; t < H.size() && bg < 0; ++t) {
      const Flag A = flag_of(gens[H[s]]), B = flag_of(gens[H[t]]);
      if (generic_position({A, B, A.reversed(), B.reversed()}, tol)) bg = H[s], bh = H[t];
    }
  if (bg < 0) throw Error(ErrorCode::GenericityViolation, "no pair of hyperbolic generators has generic flags");

  Frame fr;
  fr.A = flag_of(gens[bg]);
  fr.C = fr.A.reversed();
  const Flag B = flag_of(gens[bh]);
  const Flag D = B.reversed();
  fr.D1 = ProjPoint(D.spanning.front());
  fr.T = CMatrix::Identity(k, k);

  std::vector<Condition> conds;
  std::vector<std::string> diags{"base: hyperbolic " + gname(bg) + " with " + gname(bh)};
  for (const auto& c : cross_ratio_set(fr.A, ProjPoint(B.spanning.front()), fr.C, fr.D1, tol))
    conds.push_back(cond_real("base cross_ratio" + idx(c.i, c.j), c, tol));
  if (k >= 3) {
    for (const auto& t : triple_ratio_set(fr.A, B, fr.C, tol))
      conds.push_back(cond_real("base triple_ratio ABC" + idx(t.i, t.j, t.l), t.value, tol));
    for (const auto& t : triple_ratio_set(fr.A, fr.C, D, tol))
      conds.push_back(cond_real("base triple_ratio ACD" + idx(t.i, t.j, t.l), t.value, tol));
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (static_cast<int>(g) == bg || static_cast<int>(g) == bh) continue;
    subsequent_conditions(fr, gens[g], static_cast<int>(g), conds, tol);
  }
  return conclude(gens, method, std::move(conds), std::move(diags), tol);
}

// k = 3 with an elliptic base: send (p, conj p, h, d) to a standard real frame.
Decision run_elliptic_base(const std::vector<Generator>& gens, const Tolerances& tol) {
  int be = -1;
  for (std::size_t g = 0; g < gens.size() && be < 0; ++g)
    if (gens[g].sc.kind == SpectralKind::Mixed) be = static_cast<int>(g);
  if (be < 0) throw Error(ErrorCode::MethodNotApplicable, "no elliptic generator for the synthetic frame");
  const Generator& E = gens[be];
  const auto pr = elliptic_pairs(E).front();
  const int hidx = hyperbolic_indices(E).front();

  const std::vector<ProjPoint> dst{ProjPoint{cplx(0, 1), 1.0, 0.0}, ProjPoint{cplx(0, -1), 1.0, 0.0},
                                   ProjPoint{0.0, 0.0, 1.0}, ProjPoint{1.0, 1.0, 1.0}};
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (static_cast<int>(g) == be) continue;
    const Generator& Gd = gens[g];
    // The middle direction keeps both ends of this generator's flag usable.
    int didx = -1;
    std::vector<int> order;
    if (Gd.sc.kind == SpectralKind::StrictlyHyperbolic) {
      didx = 1;
      order = {0, 1, 2};
    } else {
      didx = hyperbolic_indices(Gd).front();
      const auto p = elliptic_pairs(Gd).front();
      order = {p.first, didx, p.second};
    }
    Frame fr;
    try {
      const ProjFrame src = frame_from_points({E.es.eigendirections[pr.first], E.es.eigendirections[pr.second],
                                               E.es.eigendirections[hidx], Gd.es.eigendirections[didx]},
                                              tol);
      fr.T = homography(src, frame_from_points(dst, tol), tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateFrame) throw;
      continue;
    }
    std::vector<CVector> sp{CVector::Unit(3, 0), CVector::Unit(3, 1), CVector::Unit(3, 2)};
    fr.A = Flag{sp};
    fr.C = fr.A.reversed();
    fr.D1 = dst[3];
    std::vector<Condition> conds;
    std::vector<std::string> diags{"base: synthetic frame from elliptic " + gname(be) + " with point of " +
                                   gname(static_cast<int>(g))};
    for (std::size_t m = 0; m < gens.size(); ++m) {
      if (static_cast<int>(m) == be) continue;
      subsequent_conditions(fr, gens[m], static_cast<int>(m), conds, tol, m == g ? &order : nullptr);
    }
    return conclude(gens, Method::Dim3FG, std::move(conds), std::move(diags), tol);
  }
  throw Error(ErrorCode::GenericityViolation, "no generator supplies a point completing the synthetic frame");
}

}  // namespace

Decision decide_pglk_fg(const std::vector<Generator>& gens, const Tolerances& tol) {
  const int k = static_cast<int>(gens.at(0).es.eigendirections.size());
  if (k < 3) throw Error(ErrorCode::MethodNotApplicable, "flag coordinates need k >= 3");
  require_generic_spectra(gens);
  return run_hyperbolic_base(gens, Method::DimKFG, tol);
}

Decision decide_pgl3(const std::vector<Generator>& gens, const Tolerances& tol) {
  const int k = static_cast<int>(gens.at(0).es.eigendirections.size());
  if (k != 3) throw Error(ErrorCode::MethodNotApplicable, "dimension-3 lemmas need k = 3");
  require_generic_spectra(gens);
  if (gens.size() == 1) return conclude(gens, Method::Dim3FG, {}, {"single generator with compatible spectrum"}, tol);
  std::string first_reason;
  try {
    return run_hyperbolic_base(gens, Method::Dim3FG, tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GenericityViolation && e.code() != ErrorCode::MethodNotApplicable) throw;
    first_reason = e.what();
  }
  try {
    Decision d = run_elliptic_base(gens, tol);
    d.certificate.diagnostics.insert(d.certificate.diagnostics.begin(), "hyperbolic base unavailable: " + first_reason);
    return d;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MethodNotApplicable) throw;
    throw Error(ErrorCode::GenericityViolation, first_reason + "; " + e.what());
  }
}

}  // namespace realform
