#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fixtures.hpp"
#include "toricstab/relative.hpp"

using namespace toricstab;
using fixtures::iv;

namespace {

ConcavePL affine_g(const DelzantPolytope& poly, const QVec& grad,
                   const Rational& cst) {
  return concave_envelope(poly, weights_from_affine(poly, 1, grad, cst));
}

ConcavePL tent02(const DelzantPolytope& seg) {
  WeightVector w;
  w.level = 1;
  w.values = {Rational(0), Rational(1), Rational(0)};
  return concave_envelope(seg, w);
}

ConcavePL square_ridge_tent(const DelzantPolytope& square) {
  WeightVector w;
  w.level = 2;
  for (const auto& p : lattice_points(square, 2)) {
    const Rational x1 = p.q()[0];
    w.values.push_back(std::min(x1, Rational(1 - x1)));
  }
  return concave_envelope(square, w);
}

}  // namespace

TEST_CASE("extremal affine function vanishes on symmetric fixtures") {
  CHECK(extremal_affine(make_delzant(fixtures::square_pm1())).is_zero());
  CHECK(extremal_affine(make_delzant(fixtures::interval(-1, 1))).is_zero());
  CHECK(extremal_affine(make_delzant(fixtures::hexagon())).is_zero());
  // the standard simplex is Kaehler-Einstein: theta vanishes there too
  CHECK(extremal_affine(make_delzant(fixtures::unit_simplex2())).is_zero());
  CHECK(extremal_affine(make_delzant(fixtures::unit_square())).is_zero());
}

TEST_CASE("the blow-up has a nonzero extremal function") {
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto theta = extremal_affine(trap);
  CHECK_FALSE(theta.is_zero());
  // integral of theta over Delta vanishes (the l = 1 identity)
  auto mt = moments(trap);
  CHECK(theta.constant * mt.vol + dot(theta.gradient, mt.first) == 0);
}

TEST_CASE("donaldson functional on basic convex functions") {
  auto seg = make_delzant(fixtures::interval(-1, 1));
  // h = |x| as the negation of min(x, -x)
  WeightVector w;
  w.level = 1;
  w.values = {Rational(-1), Rational(0), Rational(-1)};
  auto h = negation_of(concave_envelope(seg, w));
  CHECK(donaldson_functional(seg, h) == -1);

  // constant h: both terms cancel
  auto square = make_delzant(fixtures::unit_square());
  auto hc = negation_of(affine_g(square, {Rational(0), Rational(0)},
                                 Rational(-7)));
  CHECK(donaldson_functional(square, hc) == 0);

  // affine h on a centrally symmetric fixture
  auto sym = make_delzant(fixtures::square_pm1());
  auto ha = negation_of(affine_g(sym, {Rational(-2), Rational(5)},
                                 Rational(1, 3)));
  CHECK(donaldson_functional(sym, ha) == 0);

  // crease on the unit square: L(max(0, x1 - 1/2)) = -1/4
  auto crease = crease_function(square, iv({1, 0}), Rational(1, 2));
  CHECK(crease.level == 2);
  CHECK(integral_dv(crease) == Rational(-1, 8));
  CHECK(boundary_integral(square, crease) == Rational(-3, 4));
  CHECK(donaldson_functional(square, negation_of(crease)) == Rational(-1, 4));
}

TEST_CASE("relative functional vanishes exactly on affine functions") {
  std::mt19937_64 rng(91);
  std::uniform_int_distribution<int> num(-8, 8);
  for (const auto& verts :
       {fixtures::unit_square(), fixtures::blowup_trapezoid(),
        fixtures::unit_simplex2(), fixtures::hexagon()}) {
    auto poly = make_delzant(verts);
    for (int trial = 0; trial < 20; ++trial) {
      QVec grad{Rational(num(rng), 4), Rational(num(rng), 4)};
      auto h = negation_of(affine_g(poly, grad, Rational(num(rng), 4)));
      CHECK(relative_functional(poly, h) == 0);
    }
  }
}

TEST_CASE("relative functional reduces to donaldson when theta vanishes") {
  auto seg = make_delzant(fixtures::interval(-1, 1));
  WeightVector w;
  w.level = 1;
  w.values = {Rational(-1), Rational(0), Rational(-1)};
  auto h = negation_of(concave_envelope(seg, w));
  CHECK(relative_functional(seg, h) == -1);
}

TEST_CASE("relative functional is invariant under unimodular maps") {
  const IMat u = {iv({1, 1}), iv({0, 1})};
  const IVec z = iv({3, -2});
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto moved = transform(trap, u, z);
  auto crease = crease_function(trap, iv({0, 1}), Rational(1, 2));
  auto h = negation_of(crease);
  auto h_moved = negation_of(transform(crease, u, z));
  CHECK(relative_functional(moved, h_moved) == relative_functional(trap, h));
  CHECK(donaldson_functional(moved, h_moved) == donaldson_functional(trap, h));
}

TEST_CASE("p sweep of the segment tent is constant") {
  auto seg = make_delzant(fixtures::interval(0, 2));
  auto g = tent02(seg);
  auto prof = p_leading_check(seg, 1, g, 16);
  CHECK(prof.limit == 1);
  for (const auto& [k, value] : prof.samples) CHECK(value == 1);
  CHECK(prof.bounded);
  CHECK(prof.c_bound == 0);
}

TEST_CASE("p sweep vanishes for affine and constant data") {
  auto square = make_delzant(fixtures::unit_square());
  auto ga = affine_g(square, {Rational(1), Rational(-1)}, Rational(2));
  auto prof = p_leading_check(square, 1, ga, 8);
  CHECK(prof.limit == 0);
  for (const auto& [k, value] : prof.samples) CHECK(value == 0);

  auto gc = affine_g(square, {Rational(0), Rational(0)}, Rational(5));
  for (const auto& [k, value] : p_leading_check(square, 1, gc, 8).samples)
    CHECK(value == 0);
}

TEST_CASE("leading coefficient of the square ridge tent") {
  auto square = make_delzant(fixtures::unit_square());
  auto g = square_ridge_tent(square);
  // (vol(dDelta) integral - vol boundary integral)/2 = (4/4 - 1/2)/2
  CHECK(p_leading(square, g) == Rational(1, 4));
  auto prof = p_leading_check(square, 2, g, 16);
  CHECK(prof.limit == Rational(1, 4));
  CHECK(prof.bounded);

  auto verdicts = k_semistable_for_toric_degenerations(square, {g});
  REQUIRE(verdicts.size() == 1);
  CHECK(verdicts[0].sign == LeadingSign::positive);
  CHECK(verdicts[0].leading == Rational(1, 4));
}

TEST_CASE("kmax below four is rejected") {
  auto seg = make_delzant(fixtures::interval(0, 2));
  CHECK_THROWS_AS(p_leading_check(seg, 1, tent02(seg), 3), input_error);
}

TEST_CASE("q equals p exactly when theta vanishes") {
  auto square = make_delzant(fixtures::unit_square());
  auto g = square_ridge_tent(square);
  for (int k = 1; k <= 12; ++k)
    CHECK(q_functional(square, 2 * k, g) ==
          stability_functional(square, 2 * k, g));
  CHECK(q_leading(square, g) == p_leading(square, g));

  auto hex = make_delzant(fixtures::hexagon());
  auto ones = affine_g(hex, {Rational(0), Rational(0)}, Rational(1));
  for (int k = 1; k <= 8; ++k) CHECK(q_functional(hex, k, ones) == 0);
}

TEST_CASE("q sweep converges on the blow-up") {
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto crease = crease_function(trap, iv({1, 1}), Rational(3, 2));
  auto prof = q_leading_check(trap, crease.level, crease, 16);
  CHECK(prof.bounded);
  // theta is nonzero here, so q and p genuinely differ
  bool differs = false;
  for (const auto& [k, value] : prof.samples)
    differs =
        differs ||
        value != stability_functional(trap, k * crease.level, crease);
  CHECK(differs);
}

TEST_CASE("relative chow matches plain chow on symmetric fixtures") {
  for (const auto& verts :
       {fixtures::unit_square(), fixtures::unit_simplex2()}) {
    auto poly = make_delzant(verts);
    for (int i = 1; i <= 2; ++i) {
      auto plain = decide_chow(poly, i);
      auto rel = decide_relative_chow(poly, i);
      CHECK(plain.verdict == rel.verdict);
      CHECK(rel.verdict == Verdict::semistable);
    }
  }
  auto hex = make_delzant(fixtures::hexagon());
  CHECK(decide_relative_chow(hex, 1).verdict == decide_chow(hex, 1).verdict);
}

TEST_CASE("relative chow on the blow-up produces a verified certificate") {
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto rep = decide_relative_chow(trap, 1);
  if (rep.verdict == Verdict::unstable) {
    CHECK(rep.functional_value < 0);
    CHECK(rep.destabilizer.values.size() == 5);
  } else {
    REQUIRE(rep.verdict == Verdict::semistable);
    CHECK_FALSE(rep.combination.empty());
  }
}

TEST_CASE("relative inequality reduces to P/E when theta vanishes") {
  auto square = make_delzant(fixtures::unit_square());
  auto g = square_ridge_tent(square);
  const Rational e = ehrhart(square).eval(2);
  CHECK(relative_inequality(square, 2, g) ==
        stability_functional(square, 2, g) / e);
}

TEST_CASE("standard test family on the square") {
  auto square = make_delzant(fixtures::unit_square());
  auto family = standard_test_family(square);
  REQUIRE(family.size() == 8);  // four affine supports, four creases
  std::vector<ConcavePL> gs;
  for (const auto& [name, g] : family) gs.push_back(g);
  auto verdicts = k_semistable_for_toric_degenerations(square, gs);
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].first.rfind("affine:", 0) == 0)
      CHECK(verdicts[j].sign == LeadingSign::zero);
    else
      CHECK(verdicts[j].sign == LeadingSign::positive);
  }
}

TEST_CASE("the blow-up's affine family detects the nonzero futaki part") {
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto family = standard_test_family(trap);
  std::vector<ConcavePL> gs;
  for (const auto& [name, g] : family) gs.push_back(g);
  auto plain = k_semistable_for_toric_degenerations(trap, gs);
  auto rel = relative_k_semistable(trap, gs);
  bool affine_nonzero = false;
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (family[j].first.rfind("affine:", 0) == 0) {
      affine_nonzero = affine_nonzero || plain[j].sign != LeadingSign::zero;
      // relative version kills the affine directions exactly
      CHECK(rel[j].sign == LeadingSign::zero);
    }
  }
  CHECK(affine_nonzero);
}
