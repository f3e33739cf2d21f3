#pragma once

#include <map>
#include <string>
#include <vector>

#include "rigidity/polynomial.hpp"

namespace rigidity {

struct ConstraintTerm {
  int sublattice = 0;
  Offset offset;      // cell-lattice coordinates in Z^d
  double coeff = 1.0;
  int spin_sign = 1;  // collinear ground-state orientation, +1 or -1
};

struct ConstraintFamily {
  std::string label;
  std::vector<ConstraintTerm> terms;
};

/// Declarative lattice model: a d-dimensional cell lattice, S sublattices and
/// a list of linear ground-state constraint families. Immutable value type.
struct SpinModel {
  std::string name;
  int dim = 1;
  int sublattices = 1;
  std::vector<ConstraintFamily> constraints;
  std::map<std::string, std::string> metadata;
};

struct Diagnostic {
  enum Level { kWarning, kError };
  Level level;
  std::string message;
};

/// Parse and fully validate a model document. Throws input_error with a
/// position-annotated message on syntax errors, with the offending field on
/// schema violations, and with family/term coordinates on invariant
/// violations.
SpinModel parse_model(const std::string& text);

std::string serialize(const SpinModel& model);

/// Report-valued validation; empty iff all invariants hold. Ordered by
/// (family index, term index).
std::vector<Diagnostic> validate(const SpinModel& model);

const std::vector<std::string>& builtin_model_names();
SpinModel builtin_model(const std::string& name);

}  // namespace rigidity
