#include "realform/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "realform/spectrum.hpp"

namespace realform {

namespace {

using RMatrix = Eigen::MatrixXd;
constexpr double kPi = std::numbers::pi;

double condition_number(const CMatrix& M) {
  Eigen::JacobiSVD<CMatrix> svd(M);
  const auto& s = svd.singularValues();
  return s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
}

struct Blueprint {
  std::string kind;
  int pairs = 0;
  int reals = 0;
};

struct RealGenerator {
  RMatrix R;
  std::vector<cplx> lams;
  CMatrix V;  // eigendirections matching lams
};

RealGenerator sample_generator(int k, const Blueprint& bp, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  Tolerances tol;

  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<cplx> lams;
    std::vector<double> angles;
    RMatrix B = RMatrix::Zero(k, k);
    int c = 0;
    for (int p = 0; p < bp.pairs; ++p, c += 2) {
      const double rho = std::exp(1.4 * U(rng) - 0.7);
      const double a = 0.15 + (kPi - 0.3) * U(rng);
      angles.push_back(a);
      B(c, c) = rho * std::cos(a);
      B(c, c + 1) = -rho * std::sin(a);
      B(c + 1, c) = rho * std::sin(a);
      B(c + 1, c + 1) = rho * std::cos(a);
      lams.push_back(std::polar(rho, a));
      lams.push_back(std::polar(rho, -a));
    }
    for (int r = 0; r < bp.reals; ++r, ++c) {
      const double v = (U(rng) < 0.5 ? -1.0 : 1.0) * std::exp(2.4 * U(rng) - 1.2);
      B(c, c) = v;
      lams.emplace_back(v);
    }

    bool ok = true;
    for (std::size_t i = 0; i < lams.size() && ok; ++i)
      for (std::size_t j = i + 1; j < lams.size() && ok; ++j) {
        const double gap = std::min(projective_gap(lams[i], lams[j]), projective_gap(lams[j], lams[i]));
        const double anti = std::min(std::abs(lams[i] / lams[j] + 1.0), std::abs(lams[j] / lams[i] + 1.0));
        ok = gap >= 0.1 && anti >= 0.1;
      }
    for (std::size_t i = 0; i < angles.size() && ok; ++i)
      for (std::size_t j = i + 1; j < angles.size() && ok; ++j) ok = std::abs(angles[i] - angles[j]) >= 0.1;
    if (!ok) continue;
    const SpectralClass sc = classify_eigenvalues(lams, tol);
    if (!sc.compatible || !sc.generic) continue;

    RMatrix P(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) P(i, j) = N(rng);
    if (condition_number(P.cast<cplx>()) > 100.0) continue;

    RealGenerator g;
    g.R = P * B * P.inverse();
    g.lams = lams;
    g.V.resize(k, k);
    const cplx I(0, 1);
    c = 0;
    int col = 0;
    for (int p = 0; p < bp.pairs; ++p, c += 2) {
      g.V.col(col++) = P.col(c).cast<cplx>() - I * P.col(c + 1).cast<cplx>();
      g.V.col(col++) = P.col(c).cast<cplx>() + I * P.col(c + 1).cast<cplx>();
    }
    for (int r = 0; r < bp.reals; ++r) g.V.col(col++) = P.col(c++).cast<cplx>();
    return g;
  }
  throw Error(ErrorCode::InfeasibleSpec, "could not sample a generic generator");
}

std::vector<Blueprint> blueprints(const InstanceSpec& spec, std::mt19937_64& rng) {
  const int k = spec.k;
  const TypeMix& m = spec.mix;
  if (k < 2) throw Error(ErrorCode::InfeasibleSpec, "k must be at least 2");
  if (m.hyperbolic < 0 || m.elliptic < 0 || m.mixed < 0 || m.total() == 0)
    throw Error(ErrorCode::InfeasibleSpec, "type counts must be non-negative with at least one generator");
  if (spec.n_generators != 0 && spec.n_generators != m.total())
    throw Error(ErrorCode::InfeasibleSpec, "type counts do not sum to n_generators");
  if (m.elliptic > 0 && k % 2 == 1 && k != 3)
    throw Error(ErrorCode::InfeasibleSpec, "strictly elliptic generators need even k");
  if (m.mixed > 0 && k == 2) throw Error(ErrorCode::InfeasibleSpec, "mixed generators need k >= 3");

  std::vector<Blueprint> out;
  for (int i = 0; i < m.hyperbolic; ++i) out.push_back({"hyperbolic", 0, k});
  for (int i = 0; i < m.elliptic; ++i) {
    if (k == 3) out.push_back({"elliptic", 1, 1});
    else out.push_back({"elliptic", k / 2, 0});
  }
  for (int i = 0; i < m.mixed; ++i) {
    std::uniform_int_distribution<int> P(1, (k - 1) / 2);
    const int p = P(rng);
    out.push_back({"mixed", p, k - 2 * p});
  }
  return out;
}

CMatrix random_gamma(int k, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  for (;;) {
    CMatrix G(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) G(i, j) = cplx(N(rng), N(rng));
    if (condition_number(G) <= 50.0) return G;
  }
}

}  // namespace

Instance generate(const InstanceSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  const auto bps = blueprints(spec, rng);
  const int k = spec.k;
  if (spec.perturbation) {
    const auto& pt = *spec.perturbation;
    if (pt.generator < 0 || pt.generator >= static_cast<int>(bps.size()))
      throw Error(ErrorCode::InfeasibleSpec, "perturbed generator index out of range");
    if (!(pt.magnitude > 0)) throw Error(ErrorCode::InfeasibleSpec, "perturbation magnitude must be positive");
  }

  std::vector<RealGenerator> gens;
  for (const auto& bp : bps) gens.push_back(sample_generator(k, bp, rng));

  Instance inst;
  inst.gamma_true = spec.scramble == Scramble::RandomGamma ? random_gamma(k, rng) : CMatrix::Identity(k, k);
  const CMatrix gamma_inv = inst.gamma_true.inverse();
  inst.yes = !spec.perturbation.has_value();

  for (std::size_t g = 0; g < gens.size(); ++g) {
    CMatrix R = gens[g].R.cast<cplx>();
    if (spec.perturbation && spec.perturbation->generator == static_cast<int>(g)) {
      std::uniform_int_distribution<int> D(0, k - 1);
      std::normal_distribution<double> N(0.0, 1.0);
      CMatrix V = gens[g].V;
      const int d = D(rng);
      const ProjPoint p(CVector(V.col(d)));
      CVector v = p.canonical();
      Eigen::VectorXd u(k);
      for (int i = 0; i < k; ++i) u(i) = i == p.pivot() ? 0.0 : N(rng);
      u.normalize();
      v += cplx(0, spec.perturbation->magnitude) * u.cast<cplx>();
      V.col(d) = v;
      CVector lam(k);
      for (int i = 0; i < k; ++i) lam(i) = gens[g].lams[i];
      R = V * lam.asDiagonal() * V.inverse();
    }
    inst.matrices.push_back(inst.gamma_true * R * gamma_inv);
    inst.kinds.push_back(bps[g].kind);
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Brute-force search over circles of the Riemann sphere.
//
// A circle is an indefinite Hermitian form H = [[a, b], [conj b, d]], written
// as h = (a, d, Re b, Im b) on the unit 3-sphere. Its reflection is
// p -> S conj(p) with S = K conj(H), K = [[0, 1], [-1, 0]], so M preserves the
// circle when T = S conj(M) conj(S) is proportional to M. The defect of M is
// min over alpha of |M - alpha T| divided by the norm of the traceless part of
// M, so nearly scalar generators are not treated as nearly preserved.

namespace {

using C2 = Eigen::Matrix2cd;

std::array<C2, 4> basis_forms() {
  const cplx I(0, 1);
  std::array<C2, 4> E;
  E[0] << 1, 0, 0, 0;
  E[1] << 0, 0, 0, 1;
  E[2] << 0, 1, 1, 0;
  E[3] << 0, I, -I, 0;
  return E;
}

// T(h) = sum_ab h_a h_b P[a][b].
struct Quadratic {
  std::array<std::array<C2, 4>, 4> P;
  C2 M;          // unit Frobenius norm
  double scale;  // |M| / |traceless part of M|
};

Quadratic quadratic(const C2& M) {
  const auto E = basis_forms();
  C2 K;
  K << 0, 1, -1, 0;
  Quadratic q;
  q.M = M / M.norm();
  q.scale = 1.0 / (q.M - 0.5 * q.M.trace() * C2::Identity()).norm();
  const C2 Mbar = q.M.conjugate();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) q.P[a][b] = K * E[a].conjugate() * Mbar * K * E[b];
  return q;
}

double cinner(const C2& A, const C2& B) { return (A.conjugate().cwiseProduct(B)).sum().real(); }

std::array<double, 4> sphere(double t1, double t2, double t3) {
  return {std::cos(t1), std::sin(t1) * std::cos(t2), std::sin(t1) * std::sin(t2) * std::cos(t3),
          std::sin(t1) * std::sin(t2) * std::sin(t3)};
}

double defect(const std::vector<Quadratic>& qs, const std::array<double, 4>& h) {
  double worst = 0;
  for (const auto& q : qs) {
    C2 T = C2::Zero();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) T += h[a] * h[b] * q.P[a][b];
    const double tn = T.squaredNorm();
    if (tn == 0) return 1.0;
    const double c = std::norm((T.conjugate().cwiseProduct(q.M)).sum()) / tn;
    worst = std::max(worst, q.scale * std::sqrt(std::max(0.0, 1.0 - c)));
  }
  return worst;
}

double objective(const std::vector<Quadratic>& qs, const std::array<double, 3>& t) {
  const auto h = sphere(t[0], t[1], t[2]);
  const double det = h[0] * h[1] - h[2] * h[2] - h[3] * h[3];
  const double d = defect(qs, h);
  return det < 0 ? d : d + 1.0 + det;
}

double nelder_mead(const std::vector<Quadratic>& qs, std::array<double, 3> x0, double step) {
  std::array<std::array<double, 3>, 4> s;
  std::array<double, 4> f;
  s[0] = x0;
  for (int i = 0; i < 3; ++i) {
    s[i + 1] = x0;
    s[i + 1][i] += step;
  }
  for (int i = 0; i < 4; ++i) f[i] = objective(qs, s[i]);

  auto lerp = [](const std::array<double, 3>& a, const std::array<double, 3>& b, double c) {
    std::array<double, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = a[i] + c * (b[i] - a[i]);
    return out;
  };

  for (int it = 0; it < 2000; ++it) {
    std::array<int, 4> o{0, 1, 2, 3};
    std::sort(o.begin(), o.end(), [&](int a, int b) { return f[a] < f[b]; });
    if (f[o[3]] - f[o[0]] < 1e-15) break;
    std::array<double, 3> cen{0, 0, 0};
    for (int i = 0; i < 3; ++i)
      for (int c = 0; c < 3; ++c) cen[c] += s[o[i]][c] / 3.0;
    const auto xr = lerp(cen, s[o[3]], -1.0);
    const double fr = objective(qs, xr);
    if (fr < f[o[0]]) {
      const auto xe = lerp(cen, s[o[3]], -2.0);
      const double fe = objective(qs, xe);
      if (fe < fr) s[o[3]] = xe, f[o[3]] = fe;
      else s[o[3]] = xr, f[o[3]] = fr;
    } else if (fr < f[o[2]]) {
      s[o[3]] = xr, f[o[3]] = fr;
    } else {
      const auto xc = lerp(cen, s[o[3]], 0.5);
      const double fc = objective(qs, xc);
      if (fc < f[o[3]]) {
        s[o[3]] = xc, f[o[3]] = fc;
      } else {
        for (int i = 1; i < 4; ++i) {
          s[o[i]] = lerp(s[o[0]], s[o[i]], 0.5);
          f[o[i]] = objective(qs, s[o[i]]);
        }
      }
    }
  }
  return *std::min_element(f.begin(), f.end());
}

// Per grid column (t2, t3): with h = (c, s u), <T, M> and |T|^2 are
// polynomials in (c, s) whose coefficients depend only on u.
struct Column {
  std::array<cplx, 3> inner;   // c^2, cs, s^2
  std::array<double, 5> norm;  // c^4, c^3 s, c^2 s^2, c s^3, s^4
};

Column column(const Quadratic& q, const std::array<double, 3>& u) {
  const C2& T0 = q.P[0][0];
  C2 L = C2::Zero(), Q = C2::Zero();
  for (int b = 1; b < 4; ++b) {
    L += u[b - 1] * (q.P[0][b] + q.P[b][0]);
    for (int c = 1; c < 4; ++c) Q += u[b - 1] * u[c - 1] * q.P[b][c];
  }
  auto ip = [&](const C2& A) { return (A.conjugate().cwiseProduct(q.M)).sum(); };
  Column col;
  col.inner = {ip(T0), ip(L), ip(Q)};
  col.norm = {T0.squaredNorm(), 2 * cinner(T0, L), L.squaredNorm() + 2 * cinner(T0, Q), 2 * cinner(L, Q),
              Q.squaredNorm()};
  return col;
}

struct GridBest {
  double value = std::numeric_limits<double>::infinity();  // squared defect
  std::array<double, 3> at{0.0, 0.0, 0.0};
};

// Worst squared sine 1 - |<T,M>|^2 / |T|^2 over generators, minimized over a
// G^3 grid of indefinite forms. Points no better than `start` are skipped.
GridBest grid_scan(const std::vector<Quadratic>& qs, int G, const GridBest& start) {
  std::vector<double> t1(G), t2(G), t3(G);
  for (int i = 0; i < G; ++i) {
    t1[i] = (i + 0.5) * (kPi / 2) / G;
    t2[i] = (i + 0.5) * kPi / G;
    t3[i] = i * 2 * kPi / G;
  }
  const std::size_t ng = qs.size();
  const std::size_t G2 = static_cast<std::size_t>(G) * G;
  std::vector<std::vector<Column>> cols(ng, std::vector<Column>(G2));
  for (std::size_t g = 0; g < ng; ++g)
    for (int j = 0; j < G; ++j)
      for (int l = 0; l < G; ++l) {
        const std::array<double, 3> u{std::cos(t2[j]), std::sin(t2[j]) * std::cos(t3[l]),
                                      std::sin(t2[j]) * std::sin(t3[l])};
        cols[g][static_cast<std::size_t>(j) * G + l] = column(qs[g], u);
      }
  std::vector<double> scale2(ng), c2(G), s2(G);
  for (std::size_t g = 0; g < ng; ++g) scale2[g] = qs[g].scale * qs[g].scale;
  for (int j = 0; j < G; ++j) {
    c2[j] = std::cos(t2[j]);
    s2[j] = std::sin(t2[j]);
  }

  std::vector<std::array<double, 3>> pi(G);
  std::vector<std::array<double, 5>> pn(G);
  std::vector<double> c1(G), s1(G);
  for (int i = 0; i < G; ++i) {
    const double c = std::cos(t1[i]), s = std::sin(t1[i]);
    c1[i] = c;
    s1[i] = s;
    pi[i] = {c * c, c * s, s * s};
    pn[i] = {c * c * c * c, c * c * c * s, c * c * s * s, c * s * s * s, s * s * s * s};
  }

  GridBest best = start;
  std::size_t lead = 0;  // generator that rejected the previous point goes first
  for (int i = 0; i < G; ++i) {
    const auto& a = pi[i];
    const auto& b = pn[i];
    for (int j = 0; j < G; ++j) {
      if (c1[i] * c2[j] >= s1[i] * s2[j] * s2[j]) continue;  // form not indefinite
      for (int l = 0; l < G; ++l) {
        const std::size_t jl = static_cast<std::size_t>(j) * G + l;
        double worst = 0;
        for (std::size_t n = 0; n < ng; ++n) {
          const std::size_t g = n == 0 ? lead : (n <= lead ? n - 1 : n);
          const Column& col = cols[g][jl];
          const cplx ip = a[0] * col.inner[0] + a[1] * col.inner[1] + a[2] * col.inner[2];
          const double tn = b[0] * col.norm[0] + b[1] * col.norm[1] + b[2] * col.norm[2] + b[3] * col.norm[3] +
                            b[4] * col.norm[4];
          const double v = tn > 0 ? scale2[g] * (1.0 - std::norm(ip) / tn) : scale2[g];
          if (v >= best.value) {
            worst = v;
            lead = g;
            break;
          }
          worst = std::max(worst, v);
        }
        if (worst < best.value) best = {worst, {t1[i], t2[j], t3[l]}};
      }
    }
  }
  return best;
}

}  // namespace


double brute_rform_search(const std::vector<CMatrix>& Ms, int grid, const Tolerances& tol) {
  if (Ms.empty()) throw Error(ErrorCode::InvalidInput, "no generators");
  for (const auto& M : Ms)
    if (M.rows() != 2 || M.cols() != 2) throw Error(ErrorCode::InvalidInput, "brute search is for k = 2 only");
  grid = std::max(grid, 4);

  // Send three distinct eigendirections to 0, infinity, 1 for conditioning.
  std::vector<ProjPoint> chosen;
  for (const auto& M : Ms) {
    validate_matrix(M, tol);
    Eigen::ComplexEigenSolver<CMatrix> solver(M);
    for (int c = 0; c < 2 && chosen.size() < 3; ++c) {
      const CVector p = solver.eigenvectors().col(c).normalized();
      bool distinct = true;
      for (const auto& q : chosen) {
        CMatrix W(2, 2);
        W << q.unit(), p;
        distinct = distinct && std::abs(W.determinant()) > 1e-3;
      }
      if (distinct) chosen.emplace_back(p);
    }
  }
  CMatrix Nrm = CMatrix::Identity(2, 2);
  if (chosen.size() == 3) {
    const ProjFrame src = frame_from_points(chosen, tol);
    const ProjFrame dst = frame_from_points({ProjPoint{0, 1}, ProjPoint{1, 0}, ProjPoint{1, 1}}, tol);
    Nrm = homography(src, dst, tol);
  }
  const CMatrix Ninv = Nrm.inverse();
  std::vector<Quadratic> qs;
  for (const auto& M : Ms) qs.push_back(quadratic(C2(Nrm * M * Ninv)));

  // A coarse pass seeds the bound so the full grid prunes from the start.
  GridBest seed;
  if (grid > 50) seed = grid_scan(qs, 50, seed);
  const GridBest fine = grid_scan(qs, grid, seed);
  if (!std::isfinite(fine.value)) return 1.0;

  const double grid_best = std::sqrt(std::max(0.0, fine.value));
  const double refined = nelder_mead(qs, fine.at, kPi / grid);
  return std::min(grid_best, refined);
}

}  // namespace realform
