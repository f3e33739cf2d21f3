#pragma once

#include <stdexcept>
#include <string>

namespace rigidity {

/// Bad user input: malformed files, out-of-range parameters, shape mismatches.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: gap closure on a loop, insufficient resolution,
/// rank-deficient input where full rank is required.
struct numerical_error : std::runtime_error {
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rigidity
