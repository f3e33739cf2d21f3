#pragma once

#include <iosfwd>

namespace rigidity {

/// Run the acceptance suite, one pass/fail line per criterion.
/// Returns the number of failed criteria.
int run_selftest(std::ostream& out);

}  // namespace rigidity
