#pragma once

// K-semistability for toric degenerations and its relative refinement: the
// Donaldson functional, the extremal affine function, exact leading
// coefficients of the P and Q sweeps, and relative Chow decisions with the
// theta-shifted target.
//
// Sign bridge: the convex-side inequalities quantify over convex h, the
// envelope machinery produces concave g. The two meet only here, through
// ConvexPL with h = -g.

#include <string>
#include <vector>

#include "toricstab/chow.hpp"

namespace toricstab {

struct ExtremalAffine {
  QVec gradient;
  Rational constant;

  Rational at(const QVec& x) const { return dot(gradient, x) + constant; }
  bool is_zero() const {
    if (constant != 0) return false;
    for (const auto& g : gradient)
      if (g != 0) return false;
    return true;
  }
};

// The unique affine function theta with
//   integral(theta * l) = boundary integral(l) - (vol dDelta / vol) integral(l)
// for every affine l, solved from the exact moment Gram matrix. Makes the
// relative functional vanish on affine test functions.
inline ExtremalAffine extremal_affine(const DelzantPolytope& poly) {
  const auto mt = moments(poly);
  const std::size_t n = mt.first.size();
  QMat gram = gram_matrix(mt);
  QVec rhs(n + 1);
  rhs[0] = mt.bvol - mt.bvol / mt.vol * mt.vol;  // identically zero
  for (std::size_t k = 0; k < n; ++k)
    rhs[k + 1] = mt.bfirst[k] - mt.bvol / mt.vol * mt.first[k];
  auto sol = solve_linear(gram, rhs);
  if (!sol)
    throw internal_error("moment gram matrix is singular");
  ExtremalAffine theta;
  theta.constant = (*sol)[0];
  theta.gradient.assign(sol->begin() + 1, sol->end());

  // Re-verify the defining identities exactly.
  QVec lhs(n + 1, Rational(0));
  lhs[0] = theta.constant * mt.vol + dot(theta.gradient, mt.first);
  for (std::size_t k = 0; k < n; ++k) {
    lhs[k + 1] = theta.constant * mt.first[k];
    for (std::size_t j = 0; j < n; ++j)
      lhs[k + 1] += theta.gradient[j] * mt.second[j][k];
  }
  for (std::size_t k = 0; k <= n; ++k)
    if (lhs[k] != rhs[k])
      throw internal_error("extremal affine function failed its identities");
  return theta;
}

// Donaldson functional (vol dDelta / vol) integral(h) - boundary(h) for a
// convex rational PL function h = -g. Nonpositive for all h iff the
// polarized manifold is K-semistable for toric degenerations.
inline Rational donaldson_functional(const DelzantPolytope& poly,
                                     const ConvexPL& h) {
  const auto mt = moments(poly);
  const ConcavePL& g = h.neg;
  return -(mt.bvol / mt.vol * integral_dv(g)) + boundary_integral(poly, g);
}

// Relative version: integral((vol dDelta / vol + theta) h) - boundary(h).
inline Rational relative_functional(const DelzantPolytope& poly,
                                    const ConvexPL& h) {
  const auto mt = moments(poly);
  const auto theta = extremal_affine(poly);
  const ConcavePL& g = h.neg;
  return -(mt.bvol / mt.vol * integral_dv(g)) -
         integral_affine_product(g, theta.gradient, theta.constant) +
         boundary_integral(poly, g);
}

// Exact leading coefficient of P(m; g)/m^{n-1} as m grows.
inline Rational p_leading(const DelzantPolytope& poly, const ConcavePL& g) {
  const auto mt = moments(poly);
  return (mt.bvol * integral_dv(g) - mt.vol * boundary_integral(poly, g)) / 2;
}

// Exact leading coefficient of Q(m; g)/m^{n-1}.
inline Rational q_leading(const DelzantPolytope& poly, const ConcavePL& g) {
  const auto theta = extremal_affine(poly);
  return p_leading(poly, g) +
         volume(poly) *
             integral_affine_product(g, theta.gradient, theta.constant) / 2;
}

// Q(m; g) = E(m) integral(g) + vol * sum_{a in A_m} (theta(a)/(2m) - 1) g(a).
inline Rational q_functional(const DelzantPolytope& poly, int m,
                             const ConcavePL& g) {
  if (m <= 0 || m % g.level != 0)
    throw input_error("functional level must be a positive multiple of the PL level");
  const auto theta = extremal_affine(poly);
  const Rational e = ehrhart(poly).eval(m);
  Rational weighted = 0;
  for (const auto& p : lattice_points(poly, m)) {
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
    weighted += (theta.at(x) / (2 * m) - 1) * best;
  }
  return e * integral_dv(g) + volume(poly) * weighted;
}

struct AsymptoticProfile {
  int base_level = 1;                            // i
  std::vector<std::pair<int, Rational>> samples;  // (k, functional at k*i)
  Rational limit;     // closed-form leading coefficient
  Rational fitted;    // normalized value at the last sample
  Rational c_bound;   // calibrated constant for the 1/k residual bound
  bool bounded = false;
};

namespace detail {

inline AsymptoticProfile leading_check(
    const DelzantPolytope& poly, int i, const ConcavePL& g, int kmax,
    const Rational& limit,
    const std::function<Rational(int)>& functional_at) {
  if (kmax < 4) throw input_error("leading check needs kmax >= 4");
  const int n = poly.dim;
  AsymptoticProfile prof;
  prof.base_level = i;
  prof.limit = limit;
  QVec normalized(kmax + 1, Rational(0));
  for (int k = 1; k <= kmax; ++k) {
    const Rational value = functional_at(k);
    prof.samples.emplace_back(k, value);
    Rational pw = 1;
    for (int j = 0; j < n - 1; ++j) pw *= k * i;
    normalized[k] = value / pw;
  }
  prof.fitted = normalized[kmax];
  // Calibrate C over k = 4,5 (both parities), then require
  // |normalized - limit| <= C/k through the sweep.
  prof.c_bound = 0;
  for (int k = 4; k <= std::min(5, kmax); ++k)
    prof.c_bound = std::max(prof.c_bound,
                            Rational(abs(normalized[k] - limit) * k));
  prof.bounded = true;
  for (int k = 4; k <= kmax; ++k)
    prof.bounded =
        prof.bounded && abs(normalized[k] - limit) * k <= prof.c_bound;
  (void)g;
  return prof;
}

}  // namespace detail

inline AsymptoticProfile p_leading_check(const DelzantPolytope& poly, int i,
                                         const ConcavePL& g, int kmax) {
  return detail::leading_check(
      poly, i, g, kmax, p_leading(poly, g),
      [&](int k) { return stability_functional(poly, k * i, g); });
}

inline AsymptoticProfile q_leading_check(const DelzantPolytope& poly, int i,
                                         const ConcavePL& g, int kmax) {
  return detail::leading_check(
      poly, i, g, kmax, q_leading(poly, g),
      [&](int k) { return q_functional(poly, k * i, g); });
}

enum class LeadingSign { positive, zero, negative };

struct KVerdict {
  LeadingSign sign = LeadingSign::zero;
  Rational leading;
};

inline KVerdict classify_leading(const Rational& leading) {
  KVerdict v;
  v.leading = leading;
  if (leading > 0)
    v.sign = LeadingSign::positive;
  else if (leading < 0)
    v.sign = LeadingSign::negative;
  else
    v.sign = LeadingSign::zero;
  return v;
}

// Per-g classification of the exact leading coefficient of P. A negative
// sign is a K-instability witness (the convex function -g violates the
// Donaldson inequality); zero is the vanishing-rate branch.
inline std::vector<KVerdict> k_semistable_for_toric_degenerations(
    const DelzantPolytope& poly, const std::vector<ConcavePL>& gs) {
  std::vector<KVerdict> out;
  out.reserve(gs.size());
  for (const auto& g : gs) out.push_back(classify_leading(p_leading(poly, g)));
  return out;
}

inline std::vector<KVerdict> relative_k_semistable(
    const DelzantPolytope& poly, const std::vector<ConcavePL>& gs) {
  std::vector<KVerdict> out;
  out.reserve(gs.size());
  for (const auto& g : gs) out.push_back(classify_leading(q_leading(poly, g)));
  return out;
}

// Relative Chow decision: membership of the theta-shifted target. For an
// unstable verdict the certificate value is the violated inequality
//   integral(g_phi) - (vol/E) sum (1 - theta(a)/(2i)) phi(a) < 0.
inline StabilityReport decide_relative_chow(const DelzantPolytope& poly, int i,
                                            int cap = 16) {
  const auto theta = extremal_affine(poly);
  const auto lp_pts = lattice_points(poly, i);
  const Rational tval = chow_target_value(poly, i);
  QVec target;
  target.reserve(lp_pts.size());
  for (const auto& p : lp_pts)
    target.push_back(tval * (1 - theta.at(p.q()) / (2 * i)));
  StabilityReport rep =
      detail::decide_membership(poly, i, target, cap, "relative-exact-lp");
  if (rep.verdict == Verdict::unstable) {
    auto g = concave_envelope(poly, rep.destabilizer);
    const Rational e(lp_pts.size());
    Rational weighted = 0;
    for (std::size_t a = 0; a < lp_pts.size(); ++a)
      weighted += (1 - theta.at(lp_pts[a].q()) / (2 * i)) *
                  rep.destabilizer.values[a];
    rep.functional_value =
        integral_dv(g) - volume(poly) / e * weighted;
    if (rep.functional_value >= 0)
      throw internal_error("relative separation is not destabilizing");
  }
  return rep;
}

// The exposed per-function inequality of the relative criterion:
//   integral(g) - (vol/E) sum (1 - theta(a)/(2i)) g(a),
// nonnegative when the theta-shifted target is in the Chow polytope.
inline Rational relative_inequality(const DelzantPolytope& poly, int i,
                                    const ConcavePL& g) {
  if (i <= 0 || i % g.level != 0)
    throw input_error("level must be a positive multiple of the PL level");
  const auto theta = extremal_affine(poly);
  const auto lp_pts = lattice_points(poly, i);
  const Rational e(lp_pts.size());
  Rational weighted = 0;
  for (const auto& p : lp_pts) {
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
    weighted += (1 - theta.at(x) / (2 * i)) * best;
  }
  return integral_dv(g) - volume(poly) / e * weighted;
}

// Concave representative of the crease function min(0, t - <nu, x>), the
// negation of the convex test function max(0, <nu,x> - t). The level is the
// smallest one whose refined lattice contains both subdivision pieces'
// vertices, so the envelope reproduces the function exactly.
inline ConcavePL crease_function(const DelzantPolytope& poly, const IVec& nu,
                                 const Rational& t) {
  std::vector<std::pair<IVec, Rational>> below, above;
  for (const auto& f : poly.facets) {
    below.emplace_back(f.normal, f.offset);
    above.emplace_back(f.normal, f.offset);
  }
  IVec neg(nu.size());
  for (std::size_t j = 0; j < nu.size(); ++j) neg[j] = -nu[j];
  below.emplace_back(nu, t);
  above.emplace_back(neg, -t);

  Int level(1);
  std::vector<QVec> piece_vertices;
  for (const auto& cons : {below, above})
    for (const auto& v : hrep_vertices(cons, poly.dim)) {
      piece_vertices.push_back(v);
      for (const auto& coord : v)
        level = level / gcd(level, denominator(coord)) * denominator(coord);
    }
  const int lev = static_cast<int>(level.convert_to<long>());

  WeightVector wv;
  wv.level = lev;
  for (const auto& p : lattice_points(poly, lev)) {
    const Rational c = t - dot(nu, p.q());
    wv.values.push_back(c < 0 ? c : Rational(0));
  }
  ConcavePL g = concave_envelope(poly, wv);

  // The envelope of sampled values can only undershoot; equality at the
  // piece vertices and the cell corners pins it.
  auto analytic = [&](const QVec& x) {
    const Rational c = t - dot(nu, x);
    return c < 0 ? c : Rational(0);
  };
  for (const auto& v : piece_vertices)
    if (eval(poly, g, v) != analytic(v))
      throw internal_error("crease function level selection failed");
  for (const auto& cell : g.cells)
    for (int j : cell.corners)
      if (eval(poly, g, g.points[j]) != analytic(g.points[j]))
        throw internal_error("crease envelope mismatch at a corner");
  return g;
}

// The generated convex test family: one affine support function per facet
// and half-integer creases along each facet normal.
inline std::vector<std::pair<std::string, ConcavePL>> standard_test_family(
    const DelzantPolytope& poly) {
  std::vector<std::pair<std::string, ConcavePL>> out;
  int fid = 0;
  for (const auto& f : poly.facets) {
    // g = <nu,x> - c is the negation of the support function c - <nu,x>.
    QVec grad = to_qvec(f.normal);
    out.emplace_back(
        "affine:facet" + std::to_string(fid),
        concave_envelope(poly,
                         weights_from_affine(poly, 1, grad, -f.offset)));
    Rational lo = dot(f.normal, to_qvec(poly.vertices[0]));
    for (const auto& v : poly.vertices)
      lo = std::min(lo, dot(f.normal, to_qvec(v)));
    for (Rational t = lo + Rational(1, 2); t < f.offset; t += Rational(1, 2))
      out.emplace_back(
          "crease:facet" + std::to_string(fid) + ":" + to_string(t),
          crease_function(poly, f.normal, t));
    ++fid;
  }
  return out;
}

}  // namespace toricstab
