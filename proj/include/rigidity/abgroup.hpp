#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace rigidity {

using BigInt = mpz_class;
using IntMatrix = std::vector<std::vector<BigInt>>;  // rectangular, row-major

/// Finitely generated abelian group in invariant-factor normal form:
/// Z^free_rank + Z_{d1} + ... + Z_{dk} with d1 | d2 | ... | dk, each di >= 2.
struct AbGroup {
  int free_rank = 0;
  std::vector<long> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  bool finite() const { return free_rank == 0; }
  BigInt order() const;  // valid only when finite()

  bool operator==(const AbGroup& other) const = default;
  bool operator<(const AbGroup& other) const;

  std::string to_string() const;
  static AbGroup parse(const std::string& literal);

  /// Canonicalize an arbitrary list of cyclic factors (0 = Z) into
  /// invariant-factor form.
  static AbGroup from_factors(int free_rank, const std::vector<long>& factors);
};

AbGroup direct_sum(const AbGroup& a, const AbGroup& b);

struct SmithResult {
  IntMatrix u;  // rows x rows, unimodular
  IntMatrix d;  // rows x cols, diagonal with divisibility chain
  IntMatrix v;  // cols x cols, unimodular
};

/// U*A*V = D with D diagonal, d1 | d2 | ..., det(U), det(V) in {+1,-1}.
SmithResult smith_normal_form(const IntMatrix& a);

/// Cokernel Z^generators / (row span of relations).
AbGroup from_presentation(const IntMatrix& relations, int generators);

/// Ext^1(C, A) via Ext^1(Z,A) = 0, Ext^1(Z_n, A) = A/nA, additivity.
AbGroup ext1(const AbGroup& c, const AbGroup& a);

struct ExtensionBounds {
  int max_free_rank = 2;
  long max_factor = 64;
  long max_classes = 65536;  // cap on the cocycle enumeration
};

/// All isomorphism classes of middle terms G in 0 -> A -> G -> C -> 0,
/// sorted canonically. Always contains A + C; equals {A + C} when Ext^1 = 0.
std::vector<AbGroup> extension_candidates(const AbGroup& a, const AbGroup& c,
                                          const ExtensionBounds& bounds = {});

// Helpers shared with tests.
IntMatrix identity_matrix(int n);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
BigInt determinant(const IntMatrix& a);

}  // namespace rigidity
