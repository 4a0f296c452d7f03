#pragma once

#include <stdexcept>
#include <string>

namespace toricstab {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent caller input (bad file, wrong level, duplicate
// vertices, ...).
struct input_error : error {
  using error::error;
};

// A point was passed that lies outside the domain of the function.
struct domain_error : error {
  using error::error;
};

// The configuration is not full-dimensional.
struct dimension_error : error {
  using error::error;
};

// A desk-scale cap was exceeded (see enumerate_triangulations).
struct resource_error : error {
  using error::error;
};

// An internal consistency probe failed; indicates a bug, not bad input.
struct internal_error : error {
  using error::error;
};

}  // namespace toricstab
