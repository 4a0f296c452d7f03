#pragma once

// Weight vectors on the refined lattice points of Delta and their concave
// piecewise linear envelopes, realized as the upper hull of the lifted
// points in R^{n+1}. Cells carry one exact affine function each; since the
// envelope is concave it equals the pointwise minimum of its cell affines,
// which evaluation and lattice sums exploit.

#include <algorithm>
#include <vector>

#include "toricstab/polytope.hpp"

namespace toricstab {

struct WeightVector {
  int level = 1;
  QVec values;  // aligned with lattice_points(poly, level)
};

struct Cell {
  std::vector<int> support;  // point ids on the lifted facet
  std::vector<int> corners;  // extreme subset of support; the cell's vertices
  QVec gradient;
  Rational constant;

  Rational affine_at(const QVec& x) const { return dot(gradient, x) + constant; }
};

struct ConcavePL {
  int level = 1;
  std::vector<QVec> points;  // the point configuration A_i
  QVec data;                 // the inducing weight vector
  std::vector<Cell> cells;
};

// A convex test function h presented as h = -g for concave g. This wrapper
// is the single bridge between the convex-side inequalities and the
// concave-side envelope machinery.
struct ConvexPL {
  ConcavePL neg;
};

inline ConvexPL negation_of(ConcavePL g) { return ConvexPL{std::move(g)}; }

namespace detail {

// Greedy affinely independent spanning subset (n+1 point ids).
inline std::vector<int> affine_basis(const std::vector<QVec>& pts) {
  std::vector<int> ids{0};
  std::vector<QVec> chosen{pts[0]};
  for (int j = 1; j < static_cast<int>(pts.size()); ++j) {
    std::vector<QVec> trial = chosen;
    trial.push_back(pts[j]);
    if (affine_rank(trial) > affine_rank(chosen)) {
      ids.push_back(j);
      chosen.push_back(pts[j]);
    }
    if (chosen.size() == pts[0].size() + 1) break;
  }
  return ids;
}

// Interpolating affine function through n+1 affinely independent samples.
inline std::pair<QVec, Rational> interpolate_affine(
    const std::vector<QVec>& pts, const QVec& vals) {
  const std::size_t n = pts[0].size();
  QMat m(n + 1, QVec(n + 1));
  for (std::size_t r = 0; r <= n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = pts[r][c];
    m[r][n] = 1;
  }
  auto sol = solve_linear(m, vals);
  if (!sol) throw internal_error("affine interpolation is singular");
  QVec grad(sol->begin(), sol->begin() + n);
  return {grad, (*sol)[n]};
}

}  // namespace detail

inline ConcavePL concave_envelope(const DelzantPolytope& poly,
                                  const WeightVector& wv) {
  const auto lp = lattice_points(poly, wv.level);
  if (wv.values.size() != lp.size())
    throw input_error("weight vector does not match A_i");
  const std::size_t n = poly.vertices[0].size();
  const int npts = static_cast<int>(lp.size());

  ConcavePL g;
  g.level = wv.level;
  g.data = wv.values;
  g.points.reserve(lp.size());
  for (const auto& p : lp) g.points.push_back(p.q());

  std::vector<QVec> lifted(npts);
  for (int j = 0; j < npts; ++j) {
    lifted[j] = g.points[j];
    lifted[j].push_back(wv.values[j]);
  }

  if (affine_rank(lifted) <= static_cast<int>(n)) {
    // Degenerate lift: the data is affine, one cell covering Delta.
    auto basis = detail::affine_basis(g.points);
    std::vector<QVec> bpts;
    QVec bvals;
    for (int j : basis) {
      bpts.push_back(g.points[j]);
      bvals.push_back(wv.values[j]);
    }
    auto [grad, cst] = detail::interpolate_affine(bpts, bvals);
    Cell cell;
    cell.gradient = grad;
    cell.constant = cst;
    for (int j = 0; j < npts; ++j) {
      if (dot(grad, g.points[j]) + cst != wv.values[j])
        throw internal_error("degenerate lift is not affine");
      cell.support.push_back(j);
    }
    for (int j : extreme_points(g.points)) cell.corners.push_back(j);
    g.cells.push_back(std::move(cell));
    return g;
  }

  // Upper hull facets: supporting hyperplanes <w,x> + w_t t = c with all
  // lifted points below and w_t > 0.
  std::map<std::pair<IVec, Rational>, std::vector<int>, detail::FacetKeyLess>
      upper;
  detail::for_each_subset(npts, static_cast<int>(n) + 1,
                          [&](const std::vector<int>& idx) {
    QMat diffs;
    for (std::size_t j = 1; j <= n; ++j)
      diffs.push_back(sub(lifted[idx[j]], lifted[idx[0]]));
    auto nu_q = kernel_vector(diffs);
    if (!nu_q) return;
    IVec nu = primitive(*nu_q);
    Rational c = dot(nu, lifted[idx[0]]);
    int above = 0, below = 0;
    for (const auto& l : lifted) {
      const int s = sign(dot(nu, l) - c);
      if (s > 0) ++above;
      if (s < 0) ++below;
      if (above && below) return;
    }
    if (above) {
      for (auto& z : nu) z = -z;
      c = -c;
    }
    if (nu[n] <= 0) return;  // vertical or lower facet
    std::vector<int> inc;
    for (int j = 0; j < npts; ++j)
      if (dot(nu, lifted[j]) == c) inc.push_back(j);
    upper.emplace(std::make_pair(std::move(nu), std::move(c)), std::move(inc));
  });

  for (const auto& [key, inc] : upper) {
    const IVec& nu = key.first;
    const Rational wt(nu[n]);
    Cell cell;
    cell.support = inc;
    cell.gradient.resize(n);
    for (std::size_t j = 0; j < n; ++j)
      cell.gradient[j] = Rational(-nu[j]) / wt;
    cell.constant = key.second / wt;
    std::vector<QVec> proj;
    for (int j : inc) proj.push_back(g.points[j]);
    for (int local : extreme_points(proj)) cell.corners.push_back(inc[local]);
    g.cells.push_back(std::move(cell));
  }
  std::sort(g.cells.begin(), g.cells.end(),
            [](const Cell& a, const Cell& b) { return a.support < b.support; });

  // Cells must tile Delta.
  Rational covered = 0;
  for (const auto& cell : g.cells) {
    std::vector<QVec> verts;
    for (int j : cell.corners) verts.push_back(g.points[j]);
    covered += vertex_set_volume(verts);
  }
  if (covered != volume(poly))
    throw internal_error("envelope cells do not tile the polytope");
  return g;
}

// Envelope value anywhere in Delta: the minimum of the cell affines.
inline Rational eval(const DelzantPolytope& poly, const ConcavePL& g,
                     const QVec& x) {
  if (!poly.contains(x)) throw domain_error("eval: point outside the polytope");
  Rational best;
  bool first = true;
  for (const auto& cell : g.cells) {
    const Rational v = cell.affine_at(x);
    if (first || v < best) {
      best = v;
      first = false;
    }
  }
  return best;
}

// Exact integral of g over Delta.
inline Rational integral_dv(const ConcavePL& g) {
  Rational total = 0;
  for (const auto& cell : g.cells) {
    std::vector<QVec> verts;
    for (int j : cell.corners) verts.push_back(g.points[j]);
    for (const auto& s : triangulate_vertices(verts)) {
      std::vector<QVec> sv;
      Rational mean = 0;
      for (int local : s) {
        sv.push_back(verts[local]);
        mean += cell.affine_at(verts[local]);
      }
      total += simplex_volume(sv) * mean / Rational(s.size());
    }
  }
  return total;
}

// Exact integral over Delta of g times an affine function.
inline Rational integral_affine_product(const ConcavePL& g, const QVec& grad,
                                        const Rational& cst) {
  Rational total = 0;
  for (const auto& cell : g.cells) {
    std::vector<QVec> verts;
    for (int j : cell.corners) verts.push_back(g.points[j]);
    for (const auto& s : triangulate_vertices(verts)) {
      std::vector<QVec> sv;
      for (int local : s) sv.push_back(verts[local]);
      auto si = simplex_integrals(sv);
      Rational term = cell.constant * cst * si.vol;
      term += cell.constant * dot(grad, si.first);
      term += cst * dot(cell.gradient, si.first);
      for (std::size_t j = 0; j < grad.size(); ++j)
        for (std::size_t k = 0; k < grad.size(); ++k)
          term += cell.gradient[j] * si.second[j][k] * grad[k];
      total += term;
    }
  }
  return total;
}

// Exact sum of g over Delta intersect (Z/k)^n.
inline Rational lattice_sum(const DelzantPolytope& poly, const ConcavePL& g,
                            int k) {
  if (k <= 0) throw input_error("lattice level must be positive");
  Rational total = 0;
  for (const auto& p : lattice_points(poly, k)) {
    const QVec x = p.q();
    Rational best;
    bool first = true;
    for (const auto& cell : g.cells) {
      const Rational v = cell.affine_at(x);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    total += best;
  }
  return total;
}

// Exact integral of g over the boundary of Delta against d-sigma. The trace
// of the cell subdivision on a facet consists of the cells' exposed faces,
// integrated in facet chart coordinates.
inline Rational boundary_integral(const DelzantPolytope& poly,
                                  const ConcavePL& g) {
  const std::size_t n = poly.vertices[0].size();
  Rational total = 0;
  for (const auto& f : poly.facets) {
    const QVec origin = to_qvec(poly.vertices[f.incident[0]]);
    Chart ch = make_chart(f.normal, origin);
    for (const auto& cell : g.cells) {
      std::vector<QVec> face, face_charted;
      for (int j : cell.corners) {
        if (dot(f.normal, g.points[j]) == f.offset) {
          face.push_back(g.points[j]);
          face_charted.push_back(ch.to_chart(g.points[j]));
        }
      }
      if (face.empty()) continue;
      if (affine_rank(face_charted) != static_cast<int>(n) - 1) continue;
      for (const auto& s : triangulate_vertices(face_charted)) {
        std::vector<QVec> sv;
        Rational mean = 0;
        for (int local : s) {
          sv.push_back(face_charted[local]);
          mean += cell.affine_at(face[local]);
        }
        total += simplex_volume(sv) * mean / Rational(s.size());
      }
    }
  }
  return total;
}

// Samples g on the refinement A_{new_level}; new_level must be a multiple
// of g.level.
inline WeightVector restrict_to_level(const DelzantPolytope& poly,
                                      const ConcavePL& g, int new_level) {
  if (new_level <= 0 || new_level % g.level != 0)
    throw input_error("restriction level must be a positive multiple of the PL level");
  WeightVector wv;
  wv.level = new_level;
  for (const auto& p : lattice_points(poly, new_level)) {
    const QVec x = p.q();
    Rational best;
    bool first = true;
    for (const auto& cell : g.cells) {
      const Rational v = cell.affine_at(x);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    wv.values.push_back(best);
  }
  return wv;
}

// Exact equality of two concave PL functions: agreement at every cell
// corner of either subdivision is equivalent to equality, by concavity.
inline bool pl_equal(const DelzantPolytope& poly, const ConcavePL& a,
                     const ConcavePL& b) {
  auto value = [](const ConcavePL& g, const QVec& x) {
    Rational best;
    bool first = true;
    for (const auto& cell : g.cells) {
      const Rational v = cell.affine_at(x);
      if (first || v < best) {
        best = v;
        first = false;
      }
    }
    return best;
  };
  (void)poly;
  for (const auto& cell : a.cells)
    for (int j : cell.corners)
      if (value(a, a.points[j]) != value(b, a.points[j])) return false;
  for (const auto& cell : b.cells)
    for (int j : cell.corners)
      if (value(a, b.points[j]) != value(b, b.points[j])) return false;
  return true;
}

struct PLClassTag {
  bool in_pl = false;
  bool in_plq = false;
};

// Membership of g in PL(Delta; level): re-enveloping its own samples must
// reproduce it. Rationality of all cell data is structural here, so the two
// flags coincide.
inline PLClassTag classify(const DelzantPolytope& poly, const ConcavePL& g) {
  WeightVector samples = restrict_to_level(poly, g, g.level);
  ConcavePL rebuilt = concave_envelope(poly, samples);
  PLClassTag tag;
  tag.in_pl = pl_equal(poly, g, rebuilt);
  tag.in_plq = tag.in_pl;
  return tag;
}

// Weight vector sampling an affine function on A_level.
inline WeightVector weights_from_affine(const DelzantPolytope& poly, int level,
                                        const QVec& grad, const Rational& cst) {
  WeightVector wv;
  wv.level = level;
  for (const auto& p : lattice_points(poly, level))
    wv.values.push_back(dot(grad, p.q()) + cst);
  return wv;
}

// Image of g under x -> U x + z (unimodular U); used by invariance tests.
inline ConcavePL transform(const ConcavePL& g, const IMat& u, const IVec& z) {
  const std::size_t n = z.size();
  QMat uq(n, QVec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) uq[r][c] = Rational(u[r][c]);
  if (abs(determinant(uq)) != 1)
    throw input_error("transform matrix is not unimodular");
  // Rows of U^{-1}, for the gradient pullback.
  QMat aug = uq;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      aug[r].push_back(Rational(r == c ? 1 : 0));
  row_reduce(aug);
  QMat uinv(n, QVec(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) uinv[r][c] = aug[r][n + c];

  auto map_point = [&](const QVec& x) {
    QVec y(n, Rational(0));
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) y[r] += uq[r][c] * x[c];
      y[r] += z[r];
    }
    return y;
  };
  ConcavePL out;
  out.level = g.level;
  out.data = g.data;
  for (const auto& p : g.points) out.points.push_back(map_point(p));
  for (const auto& cell : g.cells) {
    Cell c2;
    c2.support = cell.support;
    c2.corners = cell.corners;
    // l'(y) = l(U^{-1}(y - z)): gradient is U^{-T} grad.
    c2.gradient.assign(n, Rational(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        c2.gradient[r] += uinv[c][r] * cell.gradient[c];
    c2.constant = cell.constant;
    for (std::size_t r = 0; r < n; ++r) c2.constant -= c2.gradient[r] * Rational(z[r]);
    out.cells.push_back(std::move(c2));
  }
  return out;
}

}  // namespace toricstab
