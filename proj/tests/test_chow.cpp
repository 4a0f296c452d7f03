#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "toricstab/chow.hpp"

using namespace toricstab;
using fixtures::iv;

namespace {

ConcavePL tent02(const DelzantPolytope& seg) {
  WeightVector w;
  w.level = 1;
  w.values = {Rational(0), Rational(1), Rational(0)};
  return concave_envelope(seg, w);
}

}  // namespace

TEST_CASE("stability functional on the segment") {
  auto seg = make_delzant(fixtures::interval(0, 2));
  auto g = tent02(seg);
  // E(1) = 3, integral 1, lattice sum 1, vol 2
  CHECK(stability_functional(seg, 1, g) == 1);

  auto c = concave_envelope(seg, weights_from_affine(seg, 1, {Rational(0)},
                                                     Rational(7, 3)));
  CHECK(stability_functional(seg, 1, c) == 0);
  CHECK(stability_functional(seg, 3, c) == 0);

  auto l = concave_envelope(
      seg, weights_from_affine(seg, 1, {Rational(1)}, Rational(0)));
  CHECK(stability_functional(seg, 1, l) == 0);

  CHECK_THROWS_AS(stability_functional(seg, 0, g), input_error);
  auto g2 = concave_envelope(seg, restrict_to_level(seg, g, 2));
  CHECK_THROWS_AS(stability_functional(seg, 3, g2), input_error);
}

TEST_CASE("linear obstruction residuals") {
  auto square = make_delzant(fixtures::unit_square());
  for (int i = 1; i <= 3; ++i)
    CHECK(linear_obstruction(square, i) == QVec{Rational(0), Rational(0)});

  auto simplex = make_delzant(fixtures::unit_simplex2());
  CHECK(linear_obstruction(simplex, 1) == QVec{Rational(0), Rational(0)});
  CHECK(linear_obstruction(simplex, 2) == QVec{Rational(0), Rational(0)});

  auto hex = make_delzant(fixtures::hexagon());
  CHECK(linear_obstruction(hex, 1) == QVec{Rational(0), Rational(0)});

  // the blow-up trapezoid misses the necessary condition at level 1
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  CHECK(linear_obstruction(trap, 1) == QVec{Rational(1, 9), Rational(-2, 9)});
}

TEST_CASE("the blow-up's affine destabilizer") {
  // P(1; l) = -vol * <u, residual> for l = <u, x>; with u = (1,-2) the
  // residual (1/9,-2/9) gives P = -(3/2)(1/9 + 4/9) = -5/6.
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto l = concave_envelope(
      trap, weights_from_affine(trap, 1, {Rational(1), Rational(-2)},
                                Rational(0)));
  CHECK(stability_functional(trap, 1, l) == Rational(-5, 6));
}

TEST_CASE("decide_chow on the known semistable fixtures") {
  auto simplex = make_delzant(fixtures::unit_simplex2());
  auto rs = decide_chow(simplex, 1);
  CHECK(rs.verdict == Verdict::semistable);
  REQUIRE(rs.combination.size() == 1);
  CHECK(rs.combination[0].second == 1);
  CHECK(chow_target_value(simplex, 1) == 1);

  auto square = make_delzant(fixtures::unit_square());
  auto rq = decide_chow(square, 1);
  CHECK(rq.verdict == Verdict::semistable);
  REQUIRE(rq.combination.size() == 2);
  CHECK(rq.combination[0].second == Rational(1, 2));
  CHECK(rq.combination[1].second == Rational(1, 2));
  CHECK(chow_target_value(square, 1) == Rational(3, 2));
  CHECK_FALSE(rq.boundary);

  auto seg = make_delzant(fixtures::interval(0, 2));
  auto ri = decide_chow(seg, 1);
  CHECK(ri.verdict == Verdict::semistable);
  // unique representation (1/3, 2/3) over {[0,2]} and {[0,1],[1,2]}
  REQUIRE(ri.combination.size() == 2);
  CHECK(ri.combination[0].second + ri.combination[1].second == 1);

  for (int i = 1; i <= 4; ++i) {
    auto unit_seg = make_delzant(fixtures::interval(0, 1));
    CHECK(decide_chow(unit_seg, i).verdict == Verdict::semistable);
  }
}

TEST_CASE("semistable certificates re-substitute exactly") {
  // decide_chow already re-substitutes internally; verify independently
  auto square = make_delzant(fixtures::unit_square());
  auto rep = decide_chow(square, 2);
  REQUIRE(rep.verdict == Verdict::semistable);
  const auto pts = lattice_points(square, 2);
  QVec combo(pts.size(), Rational(0));
  Rational total = 0;
  for (const auto& [t, lam] : rep.combination) {
    CHECK(lam > 0);
    total += lam;
    auto psi = chow_weight(square, t);
    for (std::size_t j = 0; j < combo.size(); ++j)
      combo[j] += lam * psi.values[j];
  }
  CHECK(total == 1);
  const Rational target = chow_target_value(square, 2);
  for (const auto& v : combo) CHECK(v == target);
}

TEST_CASE("decide_chow flags the blow-up as unstable") {
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  auto rep = decide_chow(trap, 1);
  CHECK(rep.verdict == Verdict::unstable);
  CHECK(rep.functional_value < 0);
  REQUIRE(rep.destabilizer.values.size() == 5);
  // re-verify the destabilizer from scratch
  auto g = concave_envelope(trap, rep.destabilizer);
  CHECK(stability_functional(trap, 1, g) == rep.functional_value);
}

TEST_CASE("decide_chow is invariant under unimodular maps") {
  const IMat u = {iv({1, 2}), iv({0, 1})};
  const IVec z = iv({-3, 5});
  auto square = make_delzant(fixtures::unit_square());
  CHECK(decide_chow(transform(square, u, z), 1).verdict ==
        Verdict::semistable);
  auto trap = make_delzant(fixtures::blowup_trapezoid());
  CHECK(decide_chow(transform(trap, u, z), 1).verdict == Verdict::unstable);
}

TEST_CASE("semistable at level i implies zero obstruction") {
  for (const auto& verts :
       {fixtures::unit_square(), fixtures::unit_simplex2(),
        fixtures::hexagon()}) {
    auto poly = make_delzant(verts);
    auto rep = decide_chow(poly, 1);
    if (rep.verdict == Verdict::semistable)
      for (const auto& r : rep.obstruction) CHECK(r == 0);
  }
}

TEST_CASE("decide_chow respects the cap") {
  auto square = make_delzant(fixtures::unit_square());
  CHECK_THROWS_AS(decide_chow(square, 4), resource_error);
}

TEST_CASE("functional scaling and affine shifts") {
  auto square = make_delzant(fixtures::unit_square());
  WeightVector w;
  w.level = 1;
  w.values = {Rational(0), Rational(2), Rational(1), Rational(0)};
  auto g = concave_envelope(square, w);
  const Rational base = stability_functional(square, 1, g);

  // scaling the data scales the functional
  WeightVector w3 = w;
  for (auto& v : w3.values) v *= 3;
  CHECK(stability_functional(square, 1, concave_envelope(square, w3)) ==
        3 * base);

  // adding a constant leaves it unchanged
  WeightVector wc = w;
  for (auto& v : wc.values) v += Rational(7, 2);
  CHECK(stability_functional(square, 1, concave_envelope(square, wc)) == base);

  // zero obstruction: adding affine samples leaves it unchanged
  auto aff = weights_from_affine(square, 1, {Rational(2), Rational(-1)},
                                 Rational(1, 3));
  WeightVector wa = w;
  for (std::size_t j = 0; j < wa.values.size(); ++j)
    wa.values[j] += aff.values[j];
  CHECK(stability_functional(square, 1, concave_envelope(square, wa)) == base);
}
