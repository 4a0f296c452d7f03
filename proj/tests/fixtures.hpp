#pragma once

// Shared polytope fixtures for the test suites. Every entry is Delzant
// except the two negative cases at the bottom.

#include <initializer_list>
#include <vector>

#include "toricstab/polytope.hpp"

namespace fixtures {

using toricstab::Int;
using toricstab::IVec;

inline IVec iv(std::initializer_list<long> xs) {
  IVec v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

inline std::vector<IVec> interval(long a, long b) {
  return {iv({a}), iv({b})};
}

inline std::vector<IVec> unit_square() {
  return {iv({0, 0}), iv({1, 0}), iv({0, 1}), iv({1, 1})};
}

inline std::vector<IVec> square_side2() {
  return {iv({0, 0}), iv({2, 0}), iv({0, 2}), iv({2, 2})};
}

inline std::vector<IVec> square_pm1() {
  return {iv({-1, -1}), iv({1, -1}), iv({-1, 1}), iv({1, 1})};
}

inline std::vector<IVec> unit_simplex2() {
  return {iv({0, 0}), iv({1, 0}), iv({0, 1})};
}

// conv{ +-e1, +-e2, +-(e1+e2) }: centrally symmetric Delzant hexagon.
inline std::vector<IVec> hexagon() {
  return {iv({1, 0}),  iv({0, 1}),  iv({1, 1}),
          iv({-1, 0}), iv({0, -1}), iv({-1, -1})};
}

inline std::vector<IVec> unit_cube() {
  return {iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 0}),
          iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1}), iv({1, 1, 1})};
}

// Delzant trapezoid of the one-point blow-up of the projective plane; the
// smallest fixture with a nonzero extremal affine function.
inline std::vector<IVec> blowup_trapezoid() {
  return {iv({0, 0}), iv({2, 0}), iv({1, 1}), iv({0, 1})};
}

// Lattice triangle violating the unimodularity condition at (1,0) and (0,2).
inline std::vector<IVec> nonsmooth_triangle() {
  return {iv({0, 0}), iv({1, 0}), iv({0, 2})};
}

// Square pyramid: the apex has four edges, so the polytope is not simple.
inline std::vector<IVec> square_pyramid() {
  return {iv({0, 0, 0}), iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 1, 0}),
          iv({0, 0, 1})};
}

}  // namespace fixtures
