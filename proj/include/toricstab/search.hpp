#pragma once

// Destabilizer search for instances beyond the exact enumeration cap. The
// search itself runs in floating point (Polyak subgradient steps on the
// convex support-function form of the functional, with restarts); every
// candidate is rounded to a bounded-denominator rational and re-verified
// with exact arithmetic before a verdict is emitted. The search never
// claims semistability.

#include <cmath>
#include <random>
#include <vector>

#include "toricstab/approx.hpp"
#include "toricstab/chow.hpp"

namespace toricstab {

struct SearchBudget {
  int restarts = 8;
  int iterations = 60;
  unsigned long long seed = 20240815ull;
};

namespace detail {

inline Rational round_to_denominator(double x, long den) {
  if (!std::isfinite(x)) return Rational(0);
  const double scaled = x * static_cast<double>(den);
  const double clamped =
      std::max(std::min(scaled, 9.0e15), -9.0e15);
  return Rational(Int(static_cast<long long>(std::llround(clamped))), Int(den));
}

}  // namespace detail

// Minimizes the convex positively homogeneous functional
//   F(phi) = max_T <phi, psi_T> - <phi, target>
// over the unit box; F < 0 exactly certifies instability via the envelope.
inline StabilityReport destabilizer_search(const DelzantPolytope& poly, int i,
                                           const SearchBudget& budget = {}) {
  const auto lp_pts = lattice_points(poly, i);
  const int npts = static_cast<int>(lp_pts.size());
  const int n = poly.dim;

  StabilityReport rep;
  rep.level = i;
  rep.verdict = Verdict::inconclusive;
  rep.obstruction = linear_obstruction(poly, i);

  Rational np1fact = 1;
  for (int j = 2; j <= n + 1; ++j) np1fact *= j;
  Rational iscale = 1;
  for (int j = 0; j < n; ++j) iscale *= i;
  const Rational tval = chow_target_value(poly, i);

  auto verify = [&](const WeightVector& phi,
                    const std::string& method) -> bool {
    auto g = concave_envelope(poly, phi);
    const Rational p = stability_functional(poly, i, g);
    if (p >= 0) return false;
    rep.verdict = Verdict::unstable;
    rep.destabilizer = phi;
    rep.functional_value = p;
    rep.method = method;
    return true;
  };

  // Exact phase: a nonzero residual of the linear necessary condition
  // yields an affine destabilizer immediately.
  bool residual_zero = true;
  for (const auto& r : rep.obstruction) residual_zero = residual_zero && r == 0;
  if (!residual_zero) {
    auto phi = weights_from_affine(poly, i, rep.obstruction, Rational(0));
    if (verify(phi, "search:affine-obstruction")) return rep;
    throw internal_error("affine obstruction failed to destabilize");
  }

  // Exact phase: single spikes.
  for (int a = 0; a < npts; ++a) {
    WeightVector spike;
    spike.level = i;
    spike.values.assign(npts, Rational(0));
    spike.values[a] = 1;
    if (verify(spike, "search:spike")) return rep;
    spike.values[a] = -1;
    if (verify(spike, "search:spike")) return rep;
  }

  // Float phase: projected Polyak subgradient descent with restarts. The
  // subgradient of the max term at phi is the weight vector of any
  // triangulation refining the envelope subdivision.
  std::mt19937_64 rng(budget.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const long den = 1000000;
  for (int restart = 0; restart < budget.restarts; ++restart) {
    std::vector<double> phi_f(npts);
    for (auto& v : phi_f) v = unit(rng);
    for (int it = 0; it < budget.iterations; ++it) {
      WeightVector phi;
      phi.level = i;
      phi.values.reserve(npts);
      for (double v : phi_f)
        phi.values.push_back(detail::round_to_denominator(v, den));
      auto g = concave_envelope(poly, phi);
      auto psi = detail::envelope_weight(poly, g);
      Rational fval = 0;  // exact F(phi)
      for (int a = 0; a < npts; ++a)
        fval += phi.values[a] * (psi.values[a] - tval);
      if (fval < 0) {
        if (!verify(phi, "search:subgradient"))
          throw internal_error("negative support functional without negative P");
        return rep;
      }
      double norm2 = 0;
      std::vector<double> grad(npts);
      for (int a = 0; a < npts; ++a) {
        grad[a] = to_double(psi.values[a] - tval);
        norm2 += grad[a] * grad[a];
      }
      if (norm2 <= 0) break;  // F is flat here; restart
      const double step = to_double(fval) / norm2;
      for (int a = 0; a < npts; ++a) {
        phi_f[a] -= step * grad[a];
        phi_f[a] = std::max(-1.0, std::min(1.0, phi_f[a]));
      }
    }
  }
  rep.method = "search:exhausted";
  return rep;
}

}  // namespace toricstab
