#pragma once

// Floating point renderings of exact values. Kept out of the core headers
// on purpose: nothing in a decision or certificate path may include this.

#include "toricstab/rational.hpp"

namespace toricstab {

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace toricstab
