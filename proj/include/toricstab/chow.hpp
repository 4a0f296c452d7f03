#pragma once

// The Chow semistability decision at level i: the stability functional, the
// linear obstruction, and the exact decision by membership of the scaled
// all-ones weight in the convex hull of triangulation weight vectors,
// settled by rational LP. Certificates re-verify by substitution.

#include <string>
#include <utility>
#include <vector>

#include "toricstab/envelope.hpp"
#include "toricstab/lp.hpp"
#include "toricstab/triangulation.hpp"

namespace toricstab {

enum class Verdict { semistable, unstable, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::semistable: return "semistable";
    case Verdict::unstable: return "unstable";
    default: return "inconclusive";
  }
}

struct StabilityReport {
  Verdict verdict = Verdict::inconclusive;
  int level = 1;
  std::string method;

  // semistable: convex combination of triangulation weights hitting the
  // target, positive entries only
  std::vector<std::pair<Triangulation, Rational>> combination;
  bool boundary = false;  // target lies on the boundary of the Chow polytope

  // unstable: a weight vector whose envelope has negative functional value
  WeightVector destabilizer;
  Rational functional_value;

  QVec obstruction;  // residual of the linear necessary condition
};

// P(i; g) = E(i) * integral of g - vol * sum of g over A_i. The level i
// must be a multiple of the level of g.
inline Rational stability_functional(const DelzantPolytope& poly, int i,
                                     const ConcavePL& g) {
  if (i <= 0 || i % g.level != 0)
    throw input_error("functional level must be a positive multiple of the PL level");
  const Rational e = ehrhart(poly).eval(i);
  return e * integral_dv(g) - volume(poly) * lattice_sum(poly, g, i);
}

// Residual of the necessary condition: sum of A_i minus E(i)/vol times the
// first moment vector. Zero is necessary for Chow semistability at level i.
inline QVec linear_obstruction(const DelzantPolytope& poly, int i) {
  const auto lp_pts = lattice_points(poly, i);
  const auto mt = moments(poly);
  const Rational e(lp_pts.size());
  QVec res(static_cast<std::size_t>(poly.dim), Rational(0));
  for (const auto& p : lp_pts) {
    const QVec x = p.q();
    for (int j = 0; j < poly.dim; ++j) res[j] += x[j];
  }
  for (int j = 0; j < poly.dim; ++j)
    res[j] -= e / mt.vol * mt.first[j];
  return res;
}

// The scaled all-ones target i^n (n+1)! vol / E(i), one value per point.
inline Rational chow_target_value(const DelzantPolytope& poly, int i) {
  const int n = poly.dim;
  Rational f = 1;
  for (int j = 2; j <= n + 1; ++j) f *= j;
  Rational iscale = 1;
  for (int j = 0; j < n; ++j) iscale *= i;
  const Rational e = ehrhart(poly).eval(i);
  return iscale * f * volume(poly) / e;
}

namespace detail {

// Chow weight of the triangulation induced by the envelope subdivision
// (cells fanned over their corners). By the support function property its
// pairing with the data equals i^n (n+1)! times the envelope integral.
inline WeightVector envelope_weight(const DelzantPolytope& poly,
                                    const ConcavePL& g) {
  const int n = poly.dim;
  Rational nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= j;
  Rational iscale = 1;
  for (int j = 0; j < n; ++j) iscale *= g.level;
  WeightVector psi;
  psi.level = g.level;
  psi.values.assign(g.points.size(), Rational(0));
  for (const auto& cell : g.cells) {
    std::vector<QVec> verts;
    for (int j : cell.corners) verts.push_back(g.points[j]);
    for (const auto& s : triangulate_vertices(verts)) {
      std::vector<QVec> sv;
      for (int local : s) sv.push_back(verts[local]);
      const Rational w = nfact * iscale * simplex_volume(sv);
      for (int local : s) psi.values[cell.corners[local]] += w;
    }
  }
  return psi;
}

// Membership of an arbitrary target vector in the convex hull of the
// triangulation weights, with exact certificates either way.
inline StabilityReport decide_membership(const DelzantPolytope& poly, int i,
                                         const QVec& target, int cap,
                                         const std::string& method) {
  const auto triangulations = enumerate_triangulations(poly, i, cap);
  const int ncols = static_cast<int>(triangulations.size());
  const auto lp_pts = lattice_points(poly, i);
  const int npts = static_cast<int>(lp_pts.size());

  std::vector<WeightVector> psis;
  psis.reserve(ncols);
  for (const auto& t : triangulations) psis.push_back(chow_weight(poly, t));

  QMat a(npts + 1, QVec(ncols));
  QVec b(npts + 1);
  for (int r = 0; r < npts; ++r) {
    for (int c = 0; c < ncols; ++c) a[r][c] = psis[c].values[r];
    b[r] = target[r];
  }
  for (int c = 0; c < ncols; ++c) a[npts][c] = 1;
  b[npts] = 1;

  StabilityReport rep;
  rep.level = i;
  rep.method = method;
  rep.obstruction = linear_obstruction(poly, i);

  auto feas = lp::feasible(a, b);
  if (feas.status == lp::Status::optimal) {
    rep.verdict = Verdict::semistable;
    QVec combo(static_cast<std::size_t>(npts), Rational(0));
    Rational lam_sum = 0;
    for (int c = 0; c < ncols; ++c) {
      if (feas.x[c] == 0) continue;
      if (feas.x[c] < 0) throw internal_error("negative certificate weight");
      rep.combination.emplace_back(triangulations[c], feas.x[c]);
      lam_sum += feas.x[c];
      for (int r = 0; r < npts; ++r) combo[r] += feas.x[c] * psis[c].values[r];
    }
    if (lam_sum != 1 || combo != target)
      throw internal_error("certificate re-substitution failed");

    // Boundary probe: maximize the minimal coefficient. The target is in
    // the relative interior iff some fully positive combination exists.
    QMat a2 = a;
    for (int r = 0; r <= npts; ++r) {
      Rational s = 0;
      for (int c = 0; c < ncols; ++c) s += a[r][c];
      a2[r].push_back(s);
    }
    QVec c2(static_cast<std::size_t>(ncols) + 1, Rational(0));
    c2[ncols] = -1;
    auto relint = lp::solve(a2, b, c2);
    if (relint.status != lp::Status::optimal)
      throw internal_error("boundary probe LP failed");
    rep.boundary = relint.objective == 0;
    return rep;
  }

  // Farkas separation: phi with <phi, psi_T> < <phi, target> for every T.
  rep.verdict = Verdict::unstable;
  QVec phi(feas.farkas.begin(), feas.farkas.begin() + npts);
  const Rational t_free = feas.farkas[npts];
  Rational rhs = dot(phi, target) + t_free;
  if (rhs <= 0) throw internal_error("farkas certificate failed on the target");
  for (int c = 0; c < ncols; ++c)
    if (dot(phi, psis[c].values) + t_free > 0)
      throw internal_error("farkas certificate failed on a weight vector");
  rep.destabilizer = WeightVector{i, phi};
  return rep;
}

}  // namespace detail

// Exact Chow decision at level i. Semistable verdicts carry re-verified
// convex combination certificates; unstable verdicts carry a weight vector
// phi with exact P(i; g_phi) < 0.
inline StabilityReport decide_chow(const DelzantPolytope& poly, int i,
                                   int cap = 16) {
  const auto lp_pts = lattice_points(poly, i);
  const Rational tval = chow_target_value(poly, i);
  QVec target(lp_pts.size(), tval);
  StabilityReport rep =
      detail::decide_membership(poly, i, target, cap, "exact-lp");
  if (rep.verdict == Verdict::unstable) {
    auto g = concave_envelope(poly, rep.destabilizer);
    rep.functional_value = stability_functional(poly, i, g);
    if (rep.functional_value >= 0)
      throw internal_error("separating weight is not destabilizing");
  }
  return rep;
}

}  // namespace toricstab
