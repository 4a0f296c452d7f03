#pragma once

// Exhaustive enumeration of the triangulations of Delta with vertices in
// the point configuration A_i, and their Chow weight vectors.
//
// Enumeration is a depth-first search that always extends across the
// lexicographically smallest exposed interior ridge of the partial complex,
// starting from the lex-min candidate simplex of the final triangulation.
// Both choices are forced, so each triangulation is produced exactly once.

#include <algorithm>
#include <map>
#include <vector>

#include "toricstab/envelope.hpp"
#include "toricstab/polytope.hpp"

namespace toricstab {

struct Triangulation {
  int level = 1;
  std::vector<std::vector<int>> simplices;  // sorted point ids, sorted list
};

namespace detail {

struct CandidateSimplex {
  std::vector<int> ids;          // sorted point ids, size n+1
  Rational vol;                  // Euclidean volume in Delta coordinates
  std::vector<Facet> facets;     // H-description of the simplex
  std::vector<std::vector<int>> ridges;  // sorted (size n) vertex id tuples
};

// Exact face-to-face compatibility: the intersection of the two simplices
// must equal the convex hull of their shared vertices. Since faces of a
// simplex are exactly the vertex subsets, it suffices that every vertex of
// the intersection polytope is a shared vertex.
inline bool compatible(const CandidateSimplex& a, const CandidateSimplex& b,
                       const std::vector<QVec>& pts, int dim) {
  std::vector<int> shared;
  std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                        std::back_inserter(shared));
  std::vector<Facet> cons = a.facets;
  cons.insert(cons.end(), b.facets.begin(), b.facets.end());
  const int m = static_cast<int>(cons.size());
  bool ok = true;
  for_each_subset(m, dim, [&](const std::vector<int>& idx) {
    if (!ok) return;
    QMat lhs(dim, QVec(dim));
    QVec rhs(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) lhs[r][c] = Rational(cons[idx[r]].normal[c]);
      rhs[r] = cons[idx[r]].offset;
    }
    auto x = solve_linear(lhs, rhs);
    if (!x) return;
    for (const auto& f : cons)
      if (dot(f.normal, *x) > f.offset) return;
    // x is a vertex of the intersection; it must be a shared vertex.
    for (int id : shared)
      if (pts[id] == *x) return;
    ok = false;
  });
  return ok;
}

}  // namespace detail

// All full-dimensional simplices on A_i with nonzero volume, in canonical
// (lexicographic id tuple) order.
inline std::vector<detail::CandidateSimplex> candidate_simplices(
    const std::vector<QVec>& pts, int dim) {
  std::vector<detail::CandidateSimplex> out;
  detail::for_each_subset(static_cast<int>(pts.size()), dim + 1,
                          [&](const std::vector<int>& idx) {
    std::vector<QVec> verts;
    for (int j : idx) verts.push_back(pts[j]);
    const Rational vol = simplex_volume(verts);
    if (vol == 0) return;
    detail::CandidateSimplex cs;
    cs.ids = idx;
    cs.vol = vol;
    cs.facets = hull_facets(verts);
    // Rewire facet incidences to global point ids; each facet of a simplex
    // omits exactly one vertex.
    for (auto& f : cs.facets) {
      std::vector<int> global;
      for (int local : f.incident) global.push_back(idx[local]);
      std::sort(global.begin(), global.end());
      f.incident = global;
      cs.ridges.push_back(global);
    }
    std::sort(cs.ridges.begin(), cs.ridges.end());
    out.push_back(std::move(cs));
  });
  return out;
}

// Every triangulation of Delta using vertices from A_i, each exactly once.
// Throws resource_error when |A_i| exceeds the cap.
inline std::vector<Triangulation> enumerate_triangulations(
    const DelzantPolytope& poly, int level, int cap = 16) {
  const auto lp = lattice_points(poly, level);
  if (static_cast<int>(lp.size()) > cap)
    throw resource_error(
        "|A_i| = " + std::to_string(lp.size()) + " exceeds the cap " +
        std::to_string(cap) +
        "; raise the cap or use the destabilizer search");
  const int dim = poly.dim;
  std::vector<QVec> pts;
  pts.reserve(lp.size());
  for (const auto& p : lp) pts.push_back(p.q());

  auto cands = candidate_simplices(pts, dim);
  const int nc = static_cast<int>(cands.size());
  const Rational total_vol = volume(poly);

  // Pairwise compatibility table.
  std::vector<std::vector<char>> comp(nc, std::vector<char>(nc, 0));
  for (int a = 0; a < nc; ++a) {
    comp[a][a] = 1;
    for (int b = a + 1; b < nc; ++b) {
      const bool ok = detail::compatible(cands[a], cands[b], pts, dim);
      comp[a][b] = comp[b][a] = ok ? 1 : 0;
    }
  }

  // Ridge bookkeeping: which candidates contain each ridge, and whether a
  // ridge lies inside a facet of Delta (then one incident simplex is enough).
  std::map<std::vector<int>, std::vector<int>> ridge_owners;
  for (int a = 0; a < nc; ++a)
    for (const auto& r : cands[a].ridges) ridge_owners[r].push_back(a);
  std::map<std::vector<int>, bool> ridge_on_boundary;
  for (const auto& [ridge, owners] : ridge_owners) {
    bool on = false;
    for (const auto& f : poly.facets) {
      bool all = true;
      for (int id : ridge) all = all && dot(f.normal, pts[id]) == f.offset;
      on = on || all;
    }
    ridge_on_boundary[ridge] = on;
  }

  std::vector<Triangulation> result;
  std::vector<int> chosen;
  std::map<std::vector<int>, int> ridge_count;
  Rational vol_sum = 0;

  auto add = [&](int c, int delta) {
    for (const auto& r : cands[c].ridges) ridge_count[r] += delta;
    vol_sum += Rational(delta) * cands[c].vol;
  };

  std::function<void()> extend = [&]() {
    // The canonical exposed ridge: smallest interior ridge incident to
    // exactly one chosen simplex.
    const std::vector<int>* open = nullptr;
    for (const auto& [ridge, count] : ridge_count) {
      if (count == 1 && !ridge_on_boundary[ridge]) {
        open = &ridge;
        break;
      }
      if (count > 2)
        throw internal_error("ridge shared by more than two simplices");
    }
    if (!open) {
      if (vol_sum != total_vol)
        throw internal_error("closed complex does not tile the polytope");
      Triangulation t;
      t.level = level;
      t.simplices.reserve(chosen.size());
      for (int c : chosen) t.simplices.push_back(cands[c].ids);
      std::sort(t.simplices.begin(), t.simplices.end());
      result.push_back(std::move(t));
      return;
    }
    for (int c : ridge_owners[*open]) {
      if (c <= chosen.front()) continue;  // the seed is the lex-min simplex
      bool ok = true;
      for (int prev : chosen) ok = ok && prev != c && comp[prev][c];
      if (!ok) continue;
      chosen.push_back(c);
      add(c, +1);
      extend();
      add(c, -1);
      chosen.pop_back();
    }
  };

  for (int seed = 0; seed < nc; ++seed) {
    // The lex-min simplex of any triangulation contains the lex-min point.
    if (cands[seed].ids.front() != 0) break;
    chosen.assign(1, seed);
    ridge_count.clear();
    vol_sum = 0;
    add(seed, +1);
    extend();
    add(seed, -1);
  }
  std::sort(result.begin(), result.end(),
            [](const Triangulation& a, const Triangulation& b) {
              return a.simplices < b.simplices;
            });
  return result;
}

// Validity per the Triangulation contract: nonzero volumes, pairwise common
// faces, union Delta. Used for user-supplied triangulations.
inline void validate_triangulation(const DelzantPolytope& poly,
                                   const Triangulation& t) {
  const auto lp = lattice_points(poly, t.level);
  std::vector<QVec> pts;
  for (const auto& p : lp) pts.push_back(p.q());
  const int dim = poly.dim;
  std::vector<detail::CandidateSimplex> ss;
  Rational vol_sum = 0;
  for (const auto& ids : t.simplices) {
    if (ids.size() != static_cast<std::size_t>(dim) + 1)
      throw input_error("simplex has the wrong number of vertices");
    detail::CandidateSimplex cs;
    cs.ids = ids;
    std::sort(cs.ids.begin(), cs.ids.end());
    std::vector<QVec> verts;
    for (int j : cs.ids) {
      if (j < 0 || j >= static_cast<int>(pts.size()))
        throw input_error("simplex vertex id out of range");
      verts.push_back(pts[j]);
    }
    cs.vol = simplex_volume(verts);
    if (cs.vol == 0) throw input_error("degenerate simplex in triangulation");
    cs.facets = hull_facets(verts);
    for (auto& f : cs.facets) {
      std::vector<int> global;
      for (int local : f.incident) global.push_back(cs.ids[local]);
      std::sort(global.begin(), global.end());
      f.incident = global;
    }
    vol_sum += cs.vol;
    ss.push_back(std::move(cs));
  }
  if (vol_sum != volume(poly))
    throw input_error("triangulation does not tile the polytope");
  for (std::size_t a = 0; a < ss.size(); ++a)
    for (std::size_t b = a + 1; b < ss.size(); ++b)
      if (!detail::compatible(ss[a], ss[b], pts, dim))
        throw input_error("simplices do not meet face to face");
}

// Chow weight of a triangulation: each point receives n! times the volume,
// measured in i*Delta coordinates, of its incident simplices. Both affine
// hull identities of the Chow polytope are asserted exactly.
inline WeightVector chow_weight(const DelzantPolytope& poly,
                                const Triangulation& t) {
  const auto lp = lattice_points(poly, t.level);
  std::vector<QVec> pts;
  for (const auto& p : lp) pts.push_back(p.q());
  const int n = poly.dim;
  Rational nfact = 1;
  for (int j = 2; j <= n; ++j) nfact *= j;
  Rational iscale = 1;
  for (int j = 0; j < n; ++j) iscale *= t.level;

  WeightVector psi;
  psi.level = t.level;
  psi.values.assign(pts.size(), Rational(0));
  for (const auto& ids : t.simplices) {
    std::vector<QVec> verts;
    for (int j : ids) verts.push_back(pts[j]);
    const Rational w = nfact * iscale * simplex_volume(verts);
    for (int j : ids) psi.values[j] += w;
  }

  // Affine hull identities: sum psi = (n+1)! vol(i Delta) and
  // sum i psi(a) a = (n+1)! integral over i Delta of x.
  const auto mt = moments(poly);
  Rational sum = 0;
  QVec weighted(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    sum += psi.values[j];
    for (int c = 0; c < n; ++c)
      weighted[c] += Rational(t.level) * psi.values[j] * pts[j][c];
  }
  const Rational np1fact = nfact * (n + 1);
  if (sum != np1fact * iscale * mt.vol)
    throw internal_error("chow weight violates the mass identity");
  for (int c = 0; c < n; ++c)
    if (weighted[c] != np1fact * iscale * Rational(t.level) * mt.first[c])
      throw internal_error("chow weight violates the moment identity");
  return psi;
}

}  // namespace toricstab
