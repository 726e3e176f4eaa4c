#include "realform/rform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <queue>

namespace realform {

const char* to_string(Multiplicity m) {
  switch (m) {
    case Multiplicity::Zero: return "Zero";
    case Multiplicity::One: return "One";
    case Multiplicity::Infinite: return "Infinite";
  }
  return "Unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_angle(double a) {
  a = std::fmod(a + kPi, 2 * kPi);
  if (a < 0) a += 2 * kPi;
  return a - kPi;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

void validate_data(const std::vector<EigenDatum>& data) {
  if (data.empty()) throw Error(ErrorCode::InvalidInput, "no eigendata");
  const int k = data.front().direction.dim();
  const int n = static_cast<int>(data.size());
  for (int i = 0; i < n; ++i) {
    if (data[i].direction.dim() != k) throw Error(ErrorCode::InvalidInput, "eigendata dimensions differ");
    const int p = data[i].partner;
    if (p >= n || p == i || (p >= 0 && data[p].partner != i))
      throw Error(ErrorCode::InvalidInput, "elliptic pairing is not a symmetric involution");
  }
}

// Greedy orthonormal span tracker.
struct SpanTracker {
  std::vector<CVector> q;
  double tol;
  bool residual(const CVector& v, CVector& out) const {
    out = v / v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : q) out -= b.dot(out) * b;
    const double r = out.norm();
    if (r <= tol) return false;
    out /= r;
    return true;
  }
};

// Solve for every S with S conj(x) ~ y over all constraints, without
// assuming a closed spanning basis exists in the data.
RFormAnalysis general_solve(const std::vector<EigenDatum>& data, const Tolerances& tol) {
  const int k = data.front().direction.dim();
  std::vector<std::pair<CVector, CVector>> cons;
  for (const auto& d : data) {
    const CVector x = d.direction.unit();
    const CVector y = d.hyperbolic() ? x : data[d.partner].direction.unit();
    cons.emplace_back(x, y);
  }
  const int nc = static_cast<int>(cons.size());
  const int nu = k * k + nc;
  CMatrix A = CMatrix::Zero(k * nc, nu);
  for (int t = 0; t < nc; ++t) {
    const auto& [x, y] = cons[t];
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) A(t * k + r, c * k + r) = std::conj(x[c]);
      A(t * k + r, k * k + t) = -y[r];
    }
  }
  RFormAnalysis out;
  Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s[0] : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > tol.rank_tol * std::max(smax, 1.0)) ++rank;
  const int null_dim = nu - rank;
  out.reason = "no closed spanning subset in the data; solved the full antilinear system";
  if (null_dim == 0) {
    out.multiplicity = Multiplicity::Zero;
    return out;
  }
  if (null_dim >= 2) {
    out.multiplicity = Multiplicity::Infinite;
    out.free_parameters = 2 * null_dim - 2;
    return out;
  }
  const CVector z = svd.matrixV().col(nu - 1);
  CMatrix S(k, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < k; ++r) S(r, c) = z[c * k + r];
  const CMatrix P = S * S.conjugate();
  const cplx c0 = P.trace() / static_cast<double>(k);
  const bool scalar = (P - c0 * CMatrix::Identity(k, k)).norm() <= tol.cons_tol * P.norm();
  if (!scalar || std::abs(c0.imag()) > tol.cons_tol * std::abs(c0) || c0.real() <= 0) {
    out.multiplicity = Multiplicity::Zero;
    return out;
  }
  S /= std::sqrt(c0.real());
  out.multiplicity = Multiplicity::One;
  out.witness = Conjugation{S};
  return out;
}

struct Constraint {
  std::vector<int> idx;   // basis positions j with mu_j constrained
  std::vector<cplx> a;    // mu_j = nu * a
};

void fix_gauge(CMatrix& S) {
  Eigen::Index r = 0, c = 0;
  S.cwiseAbs().maxCoeff(&r, &c);
  S *= std::polar(1.0, -std::arg(S(r, c)));
}

}  // namespace

RFormAnalysis analyze_rforms(const std::vector<EigenDatum>& data, const Tolerances& tol) {
  validate_data(data);
  const int k = data.front().direction.dim();
  const int n = static_cast<int>(data.size());
  RFormAnalysis out;

  for (int i = 0; i < n; ++i) {
    const int p = data[i].partner;
    if (p > i) {
      const double overlap = std::abs(data[i].direction.unit().dot(data[p].direction.unit()));
      if (1.0 - overlap < tol.rank_tol) {
        out.multiplicity = Multiplicity::Zero;
        out.reason = "elliptic pair with coincident directions cannot be swapped";
        return out;
      }
    }
  }

  // Closed basis: hyperbolic directions and whole elliptic pairs.
  SpanTracker span{{}, tol.rank_tol};
  std::vector<int> basis_src;
  std::vector<bool> in_basis(n, false);
  for (int i = 0; i < n && static_cast<int>(basis_src.size()) < k; ++i) {
    if (in_basis[i]) continue;
    const auto& d = data[i];
    CVector r1, r2;
    if (d.hyperbolic()) {
      if (span.residual(d.direction.coords(), r1)) {
        span.q.push_back(r1);
        basis_src.push_back(i);
        in_basis[i] = true;
      }
    } else if (d.partner > i) {
      if (static_cast<int>(basis_src.size()) + 2 > k) continue;
      if (!span.residual(d.direction.coords(), r1)) continue;
      span.q.push_back(r1);
      if (span.residual(data[d.partner].direction.coords(), r2)) {
        span.q.push_back(r2);
        basis_src.push_back(i);
        basis_src.push_back(d.partner);
        in_basis[i] = in_basis[d.partner] = true;
      } else {
        span.q.pop_back();
      }
    }
  }
  if (static_cast<int>(basis_src.size()) < k) return general_solve(data, tol);

  CMatrix B(k, k);
  std::vector<int> pos_of(n, -1);
  for (int j = 0; j < k; ++j) {
    B.col(j) = data[basis_src[j]].direction.unit();
    pos_of[basis_src[j]] = j;
  }
  std::vector<int> sigma(k);
  for (int j = 0; j < k; ++j) {
    const auto& d = data[basis_src[j]];
    sigma[j] = d.hyperbolic() ? j : pos_of[d.partner];
  }
  const Eigen::FullPivLU<CMatrix> lu(B);

  std::vector<Constraint> cons;
  for (int i = 0; i < n; ++i) {
    if (in_basis[i]) continue;
    const auto& d = data[i];
    if (!d.hyperbolic() && d.partner < i) continue;
    CVector c = lu.solve(d.direction.unit());
    CVector c2 = d.hyperbolic() ? c : CVector(lu.solve(data[d.partner].direction.unit()));
    const double cmax = c.cwiseAbs().maxCoeff(), c2max = c2.cwiseAbs().maxCoeff();
    Constraint con;
    for (int j = 0; j < k; ++j) {
      const bool nz = std::abs(c[j]) > tol.rank_tol * cmax;
      const bool nz2 = std::abs(c2[sigma[j]]) > tol.rank_tol * c2max;
      if (nz != nz2) {
        out.multiplicity = Multiplicity::Zero;
        out.reason = "support of datum " + std::to_string(i) + " is not mapped onto its target";
        return out;
      }
      if (nz) {
        con.idx.push_back(j);
        con.a.push_back(c2[sigma[j]] / std::conj(c[j]));
      }
    }
    cons.push_back(std::move(con));
  }

  // Linear components and relative multipliers.
  UnionFind uf(k);
  for (const auto& con : cons)
    for (std::size_t t = 1; t < con.idx.size(); ++t) uf.unite(con.idx[0], con.idx[t]);
  std::vector<int> comp(k, -1);
  int nL = 0;
  for (int j = 0; j < k; ++j) {
    const int r = uf.find(j);
    if (comp[r] < 0) comp[r] = nL++;
    comp[j] = comp[r];
  }
  std::vector<cplx> m(k, cplx(0));
  std::vector<bool> known(k, false);
  std::vector<bool> anchored(nL, false);
  for (int j = 0; j < k; ++j)
    if (!anchored[comp[j]]) anchored[comp[j]] = true, m[j] = 1.0, known[j] = true;
  std::vector<bool> used(cons.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t t = 0; t < cons.size(); ++t) {
      if (used[t]) continue;
      const auto& con = cons[t];
      int ref = -1;
      for (std::size_t s = 0; s < con.idx.size(); ++s)
        if (known[con.idx[s]]) { ref = static_cast<int>(s); break; }
      if (ref < 0) continue;
      used[t] = progress = true;
      const cplx nu = m[con.idx[ref]] / con.a[ref];
      for (std::size_t s = 0; s < con.idx.size(); ++s) {
        const int j = con.idx[s];
        const cplx val = nu * con.a[s];
        if (!known[j]) {
          m[j] = val;
          known[j] = true;
        } else if (std::abs(val - m[j]) > tol.cons_tol * std::abs(m[j])) {
          out.multiplicity = Multiplicity::Zero;
          out.reason = "ratio constraints inconsistent at basis direction " + std::to_string(j);
          return out;
        }
      }
    }
  }

  // Magnitudes: unknowns x_L (log |s_L|) and y (log c).
  std::vector<std::pair<int, int>> pairs;
  for (int j = 0; j < k; ++j)
    if (sigma[j] > j) pairs.emplace_back(j, sigma[j]);
  const int rows = k - static_cast<int>(pairs.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, nL + 1);
  Eigen::VectorXd rhs(rows);
  int row = 0;
  for (int j = 0; j < k; ++j) {
    if (sigma[j] == j) {
      A(row, comp[j]) += 2.0;
      A(row, nL) = -1.0;
      rhs[row++] = -2.0 * std::log(std::abs(m[j]));
    } else if (sigma[j] > j) {
      A(row, comp[j]) += 1.0;
      A(row, comp[sigma[j]]) += 1.0;
      A(row, nL) = -1.0;
      rhs[row++] = -std::log(std::abs(m[j])) - std::log(std::abs(m[sigma[j]]));
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(A);
  cod.setThreshold(1e-9);
  const Eigen::VectorXd xs = cod.solve(rhs);
  const double mag_res = rows ? (A * xs - rhs).cwiseAbs().maxCoeff() : 0.0;
  if (mag_res > 10 * tol.cons_tol) {
    out.multiplicity = Multiplicity::Zero;
    out.reason = "modulus conditions inconsistent";
    return out;
  }
  const int mag_free = nL - static_cast<int>(cod.rank());

  // Phases: each pair edge fixes phi_{L(sigma j)} - phi_{L(j)}.
  std::vector<std::vector<std::pair<int, double>>> adj(nL);
  for (auto [j, sj] : pairs) {
    const double delta = std::arg(m[j]) - std::arg(m[sj]);
    adj[comp[j]].emplace_back(comp[sj], delta);
    adj[comp[sj]].emplace_back(comp[j], -delta);
  }
  std::vector<double> phi(nL, 0.0);
  std::vector<bool> seen(nL, false);
  int phase_comps = 0;
  for (int r = 0; r < nL; ++r) {
    if (seen[r]) continue;
    ++phase_comps;
    seen[r] = true;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [v, delta] : adj[u]) {
        const double target = phi[u] + delta;
        if (!seen[v]) {
          seen[v] = true;
          phi[v] = target;
          q.push(v);
        } else if (std::abs(wrap_angle(target - phi[v])) > tol.cons_tol) {
          out.multiplicity = Multiplicity::Zero;
          out.reason = "elliptic phase conditions inconsistent";
          return out;
        }
      }
    }
  }
  const int phase_free = phase_comps - 1;

  out.free_parameters = mag_free + phase_free;
  out.multiplicity = out.free_parameters == 0 ? Multiplicity::One : Multiplicity::Infinite;
  out.reason = out.multiplicity == Multiplicity::One ? "unique compatible conjugation"
                                                     : std::to_string(out.free_parameters) +
                                                           " free real parameters after gauge";

  CVector mu(k);
  for (int j = 0; j < k; ++j) mu[j] = std::exp(cplx(xs[comp[j]], phi[comp[j]])) * m[j];
  CMatrix BP(k, k);
  for (int j = 0; j < k; ++j) BP.col(j) = mu[j] * B.col(sigma[j]);
  CMatrix S = BP * B.conjugate().inverse();
  S /= std::exp(0.5 * xs[nL]);
  fix_gauge(S);
  out.witness = Conjugation{S};
  return out;
}

Conjugation conjugation_from_eigendata(const std::vector<EigenDatum>& data, const Tolerances& tol) {
  const RFormAnalysis a = analyze_rforms(data, tol);
  if (a.multiplicity == Multiplicity::Zero) throw Error(ErrorCode::NoConjugation, a.reason);
  if (a.multiplicity == Multiplicity::Infinite)
    throw Error(ErrorCode::UnderdeterminedConjugation, a.reason);
  return *a.witness;
}

Multiplicity rform_multiplicity(const std::vector<EigenDatum>& data, const Tolerances& tol) {
  return analyze_rforms(data, tol).multiplicity;
}

RForm rform_from_conjugation(const Conjugation& c, const Tolerances& tol) {
  const CMatrix& S = c.S;
  const int k = static_cast<int>(S.rows());
  if (S.cols() != k || k == 0) throw Error(ErrorCode::InvalidInput, "conjugation matrix must be square");
  std::vector<CVector> cand;
  for (int j = 0; j < k; ++j) {
    CVector e = CVector::Zero(k);
    e[j] = 1.0;
    cand.push_back(e + S.col(j));
    cand.push_back(cplx(0, 1) * (e - S.col(j)));
  }
  std::vector<CVector> resid = cand;
  std::vector<bool> taken(cand.size(), false);
  RForm rf;
  rf.conj = c;
  for (int step = 0; step < k; ++step) {
    int best = -1;
    double best_n = 0.0;
    for (std::size_t t = 0; t < cand.size(); ++t) {
      if (taken[t]) continue;
      const double nr = resid[t].norm();
      if (nr > best_n * (1.0 + 1e-12)) best = static_cast<int>(t), best_n = nr;
    }
    if (best < 0 || best_n <= tol.rank_tol) throw Error(ErrorCode::NumericalDegeneracy, "no independent fixed vectors");
    taken[best] = true;
    rf.basis.push_back(cand[best] / cand[best].norm());
    const CVector q = resid[best] / best_n;
    for (std::size_t t = 0; t < cand.size(); ++t)
      if (!taken[t]) resid[t] -= q.dot(resid[t]) * q;
  }
  return rf;
}

bool preserves(const CMatrix& M, const Conjugation& c, double tol) {
  if (M.rows() != c.S.rows() || M.cols() != c.S.cols()) return false;
  const CMatrix T = c.S * M.conjugate() * c.S.inverse();
  const double tn = T.norm(), mn = M.squaredNorm();
  if (tn == 0.0 || mn == 0.0) return false;
  const cplx t = (M.adjoint() * T).trace() / mn;
  return (T - t * M).norm() / tn < tol;
}

CMatrix realifier(const Conjugation& c, const Tolerances& tol) {
  const RForm rf = rform_from_conjugation(c, tol);
  const int k = static_cast<int>(rf.basis.size());
  CMatrix G(k, k);
  for (int j = 0; j < k; ++j) G.col(j) = rf.basis[j];
  if (normalized_conditioning(G) <= tol.rank_tol) throw Error(ErrorCode::NumericalDegeneracy, "realifier is singular");
  return G;
}

}  // namespace realform
