#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigidity/abgroup.hpp"
#include "rigidity/polynomial.hpp"
#include "rigidity/symmetry.hpp"

namespace rigidity {

struct ClassificationQuery {
  SymmetryClass symmetry_class = SymmetryClass::AIII;
  int abs_nu = 0;  // |N - M|
  int d = 1;       // lattice dimension, 1..6
  int m = 1;       // frame ambient dimension, max(M, N)
};

/// A classification verdict: a group, the not-yet-evaluated marker, or the
/// degenerate one-point target (n = m - |nu| = 0), which carries trivial
/// group semantics but is flagged distinctly from a stored 0.
struct GroupOrStar {
  enum Kind { kGroup, kStar, kDegenerate };
  Kind kind = kGroup;
  AbGroup group;

  bool is_trivial_like() const { return kind == kDegenerate || (kind == kGroup && group.trivial()); }
  std::string to_string() const;
};

struct Classification {
  GroupOrStar verdict;
  std::string provenance;  // uniquely identifies the rule or table cell
};

/// Table lookup plus regime rules, fixed precedence:
///  (i) n = 0 -> degenerate; (ii) BDI/CII with |nu| >= ceil(d/2) -> 0;
///  (iii) BDI with m = 1 -> Z for all d; (iv) explicit table cell;
///  (v) AIII: table cell, m=1 caption rule, connectivity fallback;
///  (vi) error "outside tabulated range".
Classification classify(const ClassificationQuery& query);

/// Raw verbatim cell access for golden tests: table in {"table2a","table2b",
/// "table3"}; nullopt when no cell matches (blank shapes).
std::optional<Classification> table_cell(const std::string& table, int abs_nu,
                                         int d, int m);

/// The parsed, versioned table resource (value "star" for not-yet-evaluated).
struct TableCellData {
  std::string table;
  std::string nu_selector;  // "0","1","2",">=2",">=3"
  int d;
  std::string m_selector;   // "any","1","2","3",">=2",">=3",">=4"
  std::string value;        // group literal or "star"
  std::string ref;
};
const std::vector<TableCellData>& classification_table_cells();
int tables_version();

struct BlockReport {
  std::vector<int> row_indices;  // original row indices of the block
  std::vector<int> col_indices;
  int rows = 0;
  int cols = 0;
  SymmetryClass symmetry_class = SymmetryClass::AIII;
  int nu_signed = 0;  // N_block - M_block
  int abs_nu = 0;
  int m = 0;          // max(rows, cols)
  Classification result;
};

/// Whole-matrix verdict plus one verdict per independent block (connected
/// component of the row/column nonzero-pattern bipartite graph taken across
/// all coefficients).
struct ModelClassification {
  int d = 0;
  BlockReport whole;
  std::vector<BlockReport> blocks;
};

ModelClassification classify_model(const RigidityPolynomial& r, double tol = 1e-10);

}  // namespace rigidity
