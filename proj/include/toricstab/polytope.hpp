#pragma once

// Exact rational polytope kernel: facet enumeration from vertices, Delzant
// verification, lattice point enumeration, volumes, the lattice boundary
// measure, low-degree moments and the Ehrhart polynomial.
//
// The boundary measure on a facet { <nu,x> = c } with primitive integer
// normal nu is Lebesgue measure in coordinates given by a lattice basis of
// the kernel sublattice nu-perp; pairing with any w satisfying <nu,w> = 1
// this is the unique measure whose product with d<nu,x> is the Euclidean
// volume form.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "toricstab/linalg.hpp"

namespace toricstab {

struct Facet {
  IVec normal;                // primitive integer, outward
  Rational offset;            // <normal, x> <= offset on the polytope
  std::vector<int> incident;  // indices of input points on the facet
};

namespace detail {

inline void for_each_subset(int m, int k,
                            const std::function<void(const std::vector<int>&)>& fn) {
  if (k > m || k < 0) return;
  std::vector<int> idx(k);
  for (int j = 0; j < k; ++j) idx[j] = j;
  while (true) {
    fn(idx);
    int j = k - 1;
    while (j >= 0 && idx[j] == m - k + j) --j;
    if (j < 0) return;
    ++idx[j];
    for (int l = j + 1; l < k; ++l) idx[l] = idx[l - 1] + 1;
  }
}

struct FacetKeyLess {
  bool operator()(const std::pair<IVec, Rational>& a,
                  const std::pair<IVec, Rational>& b) const {
    if (a.first != b.first) return lex_less(a.first, b.first);
    return a.second < b.second;
  }
};

}  // namespace detail

inline int affine_rank(const std::vector<QVec>& pts) {
  if (pts.empty()) return -1;
  QMat diffs;
  for (std::size_t j = 1; j < pts.size(); ++j) diffs.push_back(sub(pts[j], pts[0]));
  if (diffs.empty()) return 0;
  return rank(diffs);
}

// All facets of the convex hull of a full-dimensional point set, found by
// brute-force hyperplane enumeration over m-subsets. Quadratic-ish in the
// number of points per subset, which is fine at desk scale.
inline std::vector<Facet> hull_facets(const std::vector<QVec>& pts) {
  const int m = static_cast<int>(pts[0].size());
  const int npts = static_cast<int>(pts.size());
  if (affine_rank(pts) != m)
    throw dimension_error("hull_facets: point set is not full-dimensional");

  std::map<std::pair<IVec, Rational>, std::vector<int>, detail::FacetKeyLess> found;

  auto consider = [&](IVec nu, Rational c) {
    // Orient outward, record incident points, or reject.
    int above = 0, below = 0;
    for (const auto& p : pts) {
      const int s = sign(dot(nu, p) - c);
      if (s > 0) ++above;
      if (s < 0) ++below;
      if (above && below) return;
    }
    if (above) {
      for (auto& z : nu) z = -z;
      c = -c;
    }
    std::vector<int> inc;
    for (int j = 0; j < npts; ++j)
      if (dot(nu, pts[j]) == c) inc.push_back(j);
    found.emplace(std::make_pair(std::move(nu), std::move(c)), std::move(inc));
  };

  if (m == 1) {
    Rational lo = pts[0][0], hi = pts[0][0];
    for (const auto& p : pts) {
      lo = std::min(lo, p[0]);
      hi = std::max(hi, p[0]);
    }
    consider(IVec{Int(1)}, hi);
    consider(IVec{Int(-1)}, -lo);
  } else {
    detail::for_each_subset(npts, m, [&](const std::vector<int>& idx) {
      QMat diffs;
      for (int j = 1; j < m; ++j)
        diffs.push_back(sub(pts[idx[j]], pts[idx[0]]));
      auto nu_q = kernel_vector(diffs);
      if (!nu_q) return;  // affinely dependent subset
      IVec nu = primitive(*nu_q);
      Rational c = dot(nu, pts[idx[0]]);
      consider(std::move(nu), std::move(c));
    });
  }

  std::vector<Facet> out;
  out.reserve(found.size());
  for (auto& [key, inc] : found)
    out.push_back(Facet{key.first, key.second, std::move(inc)});
  return out;
}

inline bool contains(const std::vector<Facet>& facets, const QVec& x) {
  for (const auto& f : facets)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

// Indices of the extreme points of a full-dimensional point set: a point is
// extreme iff its active facet normals span the whole space.
inline std::vector<int> extreme_points(const std::vector<QVec>& pts,
                                       const std::vector<Facet>& facets) {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(pts.size()); ++j) {
    QMat active;
    for (const auto& f : facets)
      if (dot(f.normal, pts[j]) == f.offset) active.push_back(to_qvec(f.normal));
    if (!active.empty() && rank(active) == static_cast<int>(pts[j].size()))
      out.push_back(j);
  }
  return out;
}

inline std::vector<int> extreme_points(const std::vector<QVec>& pts) {
  return extreme_points(pts, hull_facets(pts));
}

// Lattice-adapted coordinates on the hyperplane { <nu,x> = c }. Lebesgue
// measure in these coordinates is the boundary measure d-sigma.
struct Chart {
  QVec origin;
  std::vector<IVec> basis;    // n-1 kernel lattice basis columns
  std::vector<IVec> inv_rows;  // inverse of [basis | w], integer rows

  QVec to_chart(const QVec& x) const {
    const std::size_t n = origin.size();
    QVec d = sub(x, origin);
    QVec u(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) u[j] = dot(inv_rows[j], d);
    return u;
  }
};

inline Chart make_chart(const IVec& nu, const QVec& origin) {
  const std::size_t n = nu.size();
  Chart ch;
  ch.origin = origin;
  auto cols = unimodular_complement(nu);  // columns: basis ..., w
  ch.basis.assign(cols.begin(), cols.end() - 1);
  // Invert the unimodular column matrix exactly; the inverse is integral.
  QMat m(n, QVec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m[r][c] = Rational(cols[c][r]);
  QMat aug = m;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      aug[r].push_back(Rational(r == c ? 1 : 0));
  if (row_reduce(aug) != static_cast<int>(n))
    throw internal_error("chart matrix not invertible");
  ch.inv_rows.assign(n, IVec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& q = aug[r][n + c];
      if (denominator(q) != 1)
        throw internal_error("chart inverse not integral");
      ch.inv_rows[r][c] = numerator(q);
    }
  return ch;
}

// Deterministic triangulation of the convex hull of a vertex set (all
// points extreme): lexicographic fan from the lex-min vertex, recursing
// into charted facets. Returns index tuples into `pts`.
inline std::vector<std::vector<int>> triangulate_vertices(
    const std::vector<QVec>& pts) {
  const int m = static_cast<int>(pts[0].size());
  const int npts = static_cast<int>(pts.size());
  if (npts == m + 1) {
    std::vector<int> all(npts);
    for (int j = 0; j < npts; ++j) all[j] = j;
    return {all};
  }
  int b = 0;
  for (int j = 1; j < npts; ++j)
    if (lex_less(pts[j], pts[b])) b = j;
  std::vector<std::vector<int>> out;
  for (const auto& f : hull_facets(pts)) {
    bool has_b = false;
    for (int j : f.incident) has_b = has_b || j == b;
    if (has_b) continue;
    Chart ch = make_chart(f.normal, pts[f.incident[0]]);
    std::vector<QVec> sub_pts;
    for (int j : f.incident) sub_pts.push_back(ch.to_chart(pts[j]));
    for (const auto& s : triangulate_vertices(sub_pts)) {
      std::vector<int> simplex{b};
      for (int local : s) simplex.push_back(f.incident[local]);
      out.push_back(std::move(simplex));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Rational simplex_volume(const std::vector<QVec>& verts) {
  const std::size_t m = verts[0].size();
  if (m == 0) return Rational(1);
  QMat diffs;
  for (std::size_t j = 1; j < verts.size(); ++j)
    diffs.push_back(sub(verts[j], verts[0]));
  Rational det = determinant(diffs);
  Rational fact = 1;
  for (std::size_t j = 2; j <= m; ++j) fact *= Rational(j);
  return abs(det) / fact;
}

// Exact monomial integrals of degree <= 2 over a simplex.
struct SimplexIntegrals {
  Rational vol;
  QVec first;   // integral of x_j
  QMat second;  // integral of x_j x_k
};

inline SimplexIntegrals simplex_integrals(const std::vector<QVec>& verts) {
  const std::size_t m = verts[0].size();
  const std::size_t nv = verts.size();
  SimplexIntegrals s;
  s.vol = simplex_volume(verts);
  QVec sums(m, Rational(0));
  for (const auto& v : verts)
    for (std::size_t j = 0; j < m; ++j) sums[j] += v[j];
  s.first.assign(m, Rational(0));
  for (std::size_t j = 0; j < m; ++j) s.first[j] = s.vol * sums[j] / Rational(nv);
  s.second.assign(m, QVec(m, Rational(0)));
  const Rational denom = Rational(nv) * Rational(nv + 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      Rational prod_sum = 0;
      for (const auto& v : verts) prod_sum += v[j] * v[k];
      s.second[j][k] = s.vol * (sums[j] * sums[k] + prod_sum) / denom;
    }
  return s;
}

// Volume of the convex hull of a full-dimensional vertex set.
inline Rational vertex_set_volume(const std::vector<QVec>& pts) {
  if (pts[0].empty()) return Rational(1);  // 0-dimensional convention
  Rational v = 0;
  for (const auto& s : triangulate_vertices(pts)) {
    std::vector<QVec> verts;
    for (int j : s) verts.push_back(pts[j]);
    v += simplex_volume(verts);
  }
  return v;
}

// Vertices of a bounded polyhedron given by inequalities <nu,x> <= c: the
// feasible basic solutions of the constraint subsets.
inline std::vector<QVec> hrep_vertices(
    const std::vector<std::pair<IVec, Rational>>& cons, int dim) {
  std::vector<QVec> out;
  detail::for_each_subset(static_cast<int>(cons.size()), dim,
                          [&](const std::vector<int>& idx) {
    QMat lhs(dim, QVec(dim));
    QVec rhs(dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) lhs[r][c] = Rational(cons[idx[r]].first[c]);
      rhs[r] = cons[idx[r]].second;
    }
    auto x = solve_linear(lhs, rhs);
    if (!x) return;
    for (const auto& [nu, c] : cons)
      if (dot(nu, *x) > c) return;
    for (const auto& seen : out)
      if (seen == *x) return;
    out.push_back(*x);
  });
  std::sort(out.begin(), out.end(),
            [](const QVec& a, const QVec& b) { return lex_less(a, b); });
  return out;
}

// ---------------------------------------------------------------------------
// Delzant polytopes

struct LatticePoint {
  IVec scaled;  // scale * coords, integral
  int level;    // the scale i

  QVec q() const {
    QVec out(scaled.size());
    for (std::size_t j = 0; j < scaled.size(); ++j)
      out[j] = Rational(scaled[j], level);
    return out;
  }
};

struct DelzantViolation {
  int condition;    // 1, 2 or 3
  IVec vertex;      // the offending vertex
  std::string detail;
};

struct DelzantReport {
  bool pass = false;
  std::vector<DelzantViolation> violations;
};

struct DelzantPolytope {
  int dim = 0;
  std::vector<IVec> vertices;  // lex-sorted
  std::vector<Facet> facets;   // offsets are integral for lattice input
  std::vector<std::vector<int>> adjacent;   // vertex -> adjacent vertices
  std::vector<std::vector<IVec>> edge_dirs;  // primitive directions, aligned

  std::vector<QVec> qvertices() const {
    std::vector<QVec> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices) out.push_back(to_qvec(v));
    return out;
  }

  bool contains(const QVec& x) const {
    for (const auto& f : facets)
      if (dot(f.normal, x) > f.offset) return false;
    return true;
  }
};

namespace detail {

// Shared analysis: hull, adjacency and the three Delzant conditions.
// Precondition failures throw; condition failures land in the report.
inline std::pair<DelzantPolytope, DelzantReport> analyze_delzant(
    std::vector<IVec> verts) {
  if (verts.empty()) throw input_error("empty vertex list");
  const std::size_t n = verts[0].size();
  if (n == 0) throw input_error("zero-dimensional ambient space");
  for (const auto& v : verts)
    if (v.size() != n) throw input_error("inconsistent vertex dimensions");
  std::sort(verts.begin(), verts.end(),
            [](const IVec& a, const IVec& b) { return lex_less(a, b); });
  for (std::size_t j = 1; j < verts.size(); ++j)
    if (verts[j] == verts[j - 1]) throw input_error("duplicate vertices");

  DelzantPolytope poly;
  poly.dim = static_cast<int>(n);
  poly.vertices = std::move(verts);

  std::vector<QVec> pts = poly.qvertices();
  if (affine_rank(pts) != static_cast<int>(n))
    throw dimension_error("convex hull is not full-dimensional");

  poly.facets = hull_facets(pts);
  // Every input point must actually be a vertex.
  auto ext = extreme_points(pts, poly.facets);
  if (ext.size() != pts.size())
    throw input_error("input contains non-vertex points");

  // Vertex adjacency: u,v span an edge iff their common active facets have
  // rank n-1 and no third vertex is active on all of them.
  const int nv = static_cast<int>(pts.size());
  std::vector<std::vector<int>> active(nv);
  for (int j = 0; j < nv; ++j)
    for (int f = 0; f < static_cast<int>(poly.facets.size()); ++f)
      if (dot(poly.facets[f].normal, pts[j]) == poly.facets[f].offset)
        active[j].push_back(f);
  poly.adjacent.assign(nv, {});
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v) {
      if (u == v) continue;
      std::vector<int> common;
      std::set_intersection(active[u].begin(), active[u].end(),
                            active[v].begin(), active[v].end(),
                            std::back_inserter(common));
      QMat normals;
      for (int f : common) normals.push_back(to_qvec(poly.facets[f].normal));
      const int rk = normals.empty() ? 0 : rank(normals);
      if (rk != static_cast<int>(n) - 1) continue;
      bool third = false;
      for (int w = 0; w < nv && !third; ++w) {
        if (w == u || w == v) continue;
        bool all = true;
        for (int f : common)
          all = all && dot(poly.facets[f].normal, pts[w]) == poly.facets[f].offset;
        third = all;
      }
      if (!third) poly.adjacent[u].push_back(v);
    }

  DelzantReport report;
  report.pass = true;
  poly.edge_dirs.assign(nv, {});
  for (int u = 0; u < nv; ++u) {
    for (int v : poly.adjacent[u]) {
      IVec d(n);
      for (std::size_t j = 0; j < n; ++j)
        d[j] = poly.vertices[v][j] - poly.vertices[u][j];
      poly.edge_dirs[u].push_back(primitive(d));
    }
    if (poly.edge_dirs[u].size() != n) {
      report.pass = false;
      report.violations.push_back(
          {2, poly.vertices[u],
           std::to_string(poly.edge_dirs[u].size()) + " edges, expected " +
               std::to_string(n)});
      continue;
    }
    QMat m;
    for (const auto& d : poly.edge_dirs[u]) m.push_back(to_qvec(d));
    const Rational det = determinant(m);
    if (det != 1 && det != -1) {
      report.pass = false;
      report.violations.push_back(
          {3, poly.vertices[u],
           "edge direction determinant " + to_string(det)});
    }
  }
  return {std::move(poly), std::move(report)};
}

}  // namespace detail

// Checks the three Delzant conditions. Vertex integrality (condition 1) is
// structural for IVec input; conditions 2 and 3 are checked per vertex.
inline DelzantReport verify_delzant(const std::vector<IVec>& verts) {
  return detail::analyze_delzant(verts).second;
}

// Builds a verified Delzant polytope or throws input_error.
inline DelzantPolytope make_delzant(const std::vector<IVec>& verts) {
  auto [poly, report] = detail::analyze_delzant(verts);
  if (!report.pass) {
    std::string msg = "not a Delzant polytope:";
    for (const auto& v : report.violations)
      msg += " condition " + std::to_string(v.condition) + " (" + v.detail + ")";
    throw input_error(msg);
  }
  return std::move(poly);
}

// The points of Delta intersect (Z/i)^n in lexicographic order.
inline std::vector<LatticePoint> lattice_points(const DelzantPolytope& poly,
                                                int level) {
  if (level <= 0) throw input_error("lattice level must be positive");
  const std::size_t n = poly.vertices[0].size();
  IVec lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = poly.vertices[0][j];
    hi[j] = poly.vertices[0][j];
    for (const auto& v : poly.vertices) {
      lo[j] = std::min(lo[j], v[j]);
      hi[j] = std::max(hi[j], v[j]);
    }
    lo[j] *= level;
    hi[j] *= level;
  }
  std::vector<LatticePoint> out;
  IVec p(n);
  std::function<void(std::size_t)> scan = [&](std::size_t j) {
    if (j == n) {
      for (const auto& f : poly.facets)
        if (Rational(dot(f.normal, p)) > Rational(level) * f.offset) return;
      out.push_back(LatticePoint{p, level});
      return;
    }
    for (Int z = lo[j]; z <= hi[j]; ++z) {
      p[j] = z;
      scan(j + 1);
    }
  };
  scan(0);
  return out;
}

inline Rational volume(const DelzantPolytope& poly) {
  return vertex_set_volume(poly.qvertices());
}

struct BoundaryMeasure {
  Rational total;
  std::vector<Rational> per_facet;  // aligned with poly.facets
};

// Sigma measure of each facet: chart the facet and take the chart volume.
inline BoundaryMeasure boundary_volume(const DelzantPolytope& poly) {
  const auto pts = poly.qvertices();
  BoundaryMeasure bm;
  bm.total = 0;
  for (const auto& f : poly.facets) {
    Rational sigma;
    if (poly.dim == 1) {
      sigma = 1;  // vertex facets carry counting measure
    } else {
      Chart ch = make_chart(f.normal, pts[f.incident[0]]);
      std::vector<QVec> charted;
      for (int j : f.incident) charted.push_back(ch.to_chart(pts[j]));
      sigma = vertex_set_volume(charted);
    }
    bm.per_facet.push_back(sigma);
    bm.total += sigma;
  }
  return bm;
}

struct MomentTable {
  Rational vol;
  QVec first;    // integral of x_j over Delta
  QMat second;   // integral of x_j x_k over Delta
  Rational bvol;
  QVec bfirst;   // integral of x_j over the boundary, d-sigma
};

inline MomentTable moments(const DelzantPolytope& poly) {
  const auto pts = poly.qvertices();
  const std::size_t n = pts[0].size();
  MomentTable mt;
  mt.vol = 0;
  mt.first.assign(n, Rational(0));
  mt.second.assign(n, QVec(n, Rational(0)));
  for (const auto& s : triangulate_vertices(pts)) {
    std::vector<QVec> verts;
    for (int j : s) verts.push_back(pts[j]);
    auto si = simplex_integrals(verts);
    mt.vol += si.vol;
    for (std::size_t j = 0; j < n; ++j) {
      mt.first[j] += si.first[j];
      for (std::size_t k = 0; k < n; ++k) mt.second[j][k] += si.second[j][k];
    }
  }
  mt.bvol = 0;
  mt.bfirst.assign(n, Rational(0));
  for (const auto& f : poly.facets) {
    if (poly.dim == 1) {
      // A vertex facet is the point x with <nu,x> = offset.
      const Rational x = f.offset / Rational(f.normal[0]);
      mt.bvol += 1;
      mt.bfirst[0] += x;
      continue;
    }
    Chart ch = make_chart(f.normal, pts[f.incident[0]]);
    std::vector<QVec> charted;
    for (int j : f.incident) charted.push_back(ch.to_chart(pts[j]));
    for (const auto& s : triangulate_vertices(charted)) {
      std::vector<QVec> u_verts, x_verts;
      for (int local : s) {
        u_verts.push_back(charted[local]);
        x_verts.push_back(pts[f.incident[local]]);
      }
      const Rational sv = simplex_volume(u_verts);
      mt.bvol += sv;
      // x_j is affine on the facet, so the integral is volume times the
      // value at the centroid.
      for (std::size_t j = 0; j < n; ++j) {
        Rational mean = 0;
        for (const auto& v : x_verts) mean += v[j];
        mt.bfirst[j] += sv * mean / Rational(x_verts.size());
      }
    }
  }
  return mt;
}

// Gram matrix of {1, x_1, ..., x_n} in L^2(Delta, dv); positive definite
// for full-dimensional Delta.
inline QMat gram_matrix(const MomentTable& mt) {
  const std::size_t n = mt.first.size();
  QMat g(n + 1, QVec(n + 1));
  g[0][0] = mt.vol;
  for (std::size_t j = 0; j < n; ++j) {
    g[0][j + 1] = mt.first[j];
    g[j + 1][0] = mt.first[j];
    for (std::size_t k = 0; k < n; ++k) g[j + 1][k + 1] = mt.second[j][k];
  }
  return g;
}

struct EhrhartPolynomial {
  QVec coeffs;  // coeffs[k] multiplies t^k

  Rational eval(const Rational& t) const {
    Rational v = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * t + coeffs[k];
    return v;
  }
  Rational eval(int t) const { return eval(Rational(t)); }

  std::string pretty() const {
    std::string s;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
      if (coeffs[k] == 0 && !(k == 0 && s.empty())) continue;
      Rational c = coeffs[k];
      if (!s.empty()) {
        s += c < 0 ? " - " : " + ";
        c = abs(c);
      } else if (c < 0) {
        s += "-";
        c = -c;
      }
      if (k == 0) {
        s += to_string(c);
      } else {
        if (c != 1) s += to_string(c) + " ";
        s += "t";
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }
};

// Exact interpolation of lattice counts at t = 0..n, with a consistency
// probe at n+1 and the volume identities for the two top coefficients.
inline EhrhartPolynomial ehrhart(const DelzantPolytope& poly) {
  const int n = poly.dim;
  QVec counts(n + 1);
  counts[0] = 1;
  for (int t = 1; t <= n; ++t)
    counts[t] = Rational(lattice_points(poly, t).size());
  QMat vander(n + 1, QVec(n + 1));
  for (int t = 0; t <= n; ++t) {
    Rational pw = 1;
    for (int k = 0; k <= n; ++k) {
      vander[t][k] = pw;
      pw *= t;
    }
  }
  auto coeffs = solve_linear(vander, counts);
  if (!coeffs) throw internal_error("ehrhart interpolation failed");
  EhrhartPolynomial ep{*coeffs};
  const Rational probe = Rational(lattice_points(poly, n + 1).size());
  if (ep.eval(n + 1) != probe)
    throw internal_error("ehrhart consistency probe failed at t = n+1");
  if (ep.coeffs[n] != volume(poly))
    throw internal_error("ehrhart leading coefficient is not the volume");
  if (n >= 1 && ep.coeffs[n - 1] * 2 != boundary_volume(poly).total)
    throw internal_error("ehrhart subleading coefficient mismatch");
  return ep;
}

using IMat = std::vector<IVec>;  // rows

// Image of Delta under x -> U x + z for unimodular U.
inline DelzantPolytope transform(const DelzantPolytope& poly, const IMat& u,
                                 const IVec& z) {
  const std::size_t n = poly.vertices[0].size();
  QMat uq(n, QVec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) uq[r][c] = Rational(u[r][c]);
  const Rational det = determinant(uq);
  if (det != 1 && det != -1)
    throw input_error("transform matrix is not unimodular");
  std::vector<IVec> verts;
  for (const auto& v : poly.vertices) {
    IVec w(n, Int(0));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) w[r] += u[r][c] * v[c];
      w[r] += z[r];
    }
    verts.push_back(std::move(w));
  }
  return make_delzant(verts);
}

}  // namespace toricstab
