#include "rigidity/classify.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "rigidity/resources.hpp"

namespace rigidity {

using nlohmann::json;

namespace {

struct Tables {
  int version = 0;
  std::vector<TableCellData> cells;
};

const Tables& tables() {
  static const Tables loaded = [] {
    Tables t;
    json doc = json::parse(resources::tables_json());
    t.version = doc.at("version").get<int>();
    for (const char* name : {"table2a", "table2b", "table3"}) {
      for (const auto& jcell : doc.at(name).at("cells")) {
        TableCellData cell;
        cell.table = name;
        cell.nu_selector = jcell.at("nu").get<std::string>();
        cell.d = jcell.at("d").get<int>();
        cell.m_selector = jcell.at("m").get<std::string>();
        cell.value = jcell.at("value").get<std::string>();
        cell.ref = jcell.at("ref").get<std::string>();
        t.cells.push_back(std::move(cell));
      }
    }
    return t;
  }();
  return loaded;
}

bool nu_matches(const std::string& selector, int nu) {
  if (selector.rfind(">=", 0) == 0) return nu >= std::stoi(selector.substr(2));
  return nu == std::stoi(selector);
}

// exact selectors shadow >= selectors so rows like "2" and ">=2" cannot both fire
bool nu_shadowed(const Tables& t, const std::string& table, int nu, int d) {
  for (const auto& cell : t.cells)
    if (cell.table == table && cell.d == d && cell.nu_selector.rfind(">=", 0) != 0 &&
        nu_matches(cell.nu_selector, nu))
      return true;
  return false;
}

bool m_matches(const std::string& selector, int m) {
  if (selector == "any") return true;
  if (selector.rfind(">=", 0) == 0) return m >= std::stoi(selector.substr(2));
  return m == std::stoi(selector);
}

}  // namespace

const std::vector<TableCellData>& classification_table_cells() { return tables().cells; }
int tables_version() { return tables().version; }

std::string GroupOrStar::to_string() const {
  switch (kind) {
    case kGroup: return group.to_string();
    case kStar: return "star";
    case kDegenerate: return "0 (degenerate: one-point target)";
  }
  return "?";
}

std::optional<Classification> table_cell(const std::string& table, int abs_nu, int d, int m) {
  const Tables& t = tables();
  const bool has_exact = nu_shadowed(t, table, abs_nu, d);
  for (const auto& cell : t.cells) {
    if (cell.table != table || cell.d != d) continue;
    if (!nu_matches(cell.nu_selector, abs_nu)) continue;
    if (has_exact && cell.nu_selector.rfind(">=", 0) == 0) continue;
    if (!m_matches(cell.m_selector, m)) continue;
    Classification result;
    if (cell.value == "star") {
      result.verdict.kind = GroupOrStar::kStar;
    } else {
      result.verdict.kind = GroupOrStar::kGroup;
      result.verdict.group = AbGroup::parse(cell.value);
    }
    result.provenance = cell.ref;
    return result;
  }
  return std::nullopt;
}

Classification classify(const ClassificationQuery& query) {
  if (query.d < 1 || query.d > 6)
    throw input_error("dimension out of tabulated range: d = " + std::to_string(query.d) +
                      ", supported 1..6");
  if (query.abs_nu < 0) throw input_error("|nu| must be >= 0");
  if (query.m < 1) throw input_error("frame ambient dimension m must be >= 1");
  const int n = query.m - query.abs_nu;
  if (n < 0)
    throw input_error("invalid shape: n = m - |nu| = " + std::to_string(n) + " is negative");
  if (query.symmetry_class == SymmetryClass::AIII_CII) {
    if (query.abs_nu % 2 != 0)
      throw input_error("CII with odd nu: N and M even forces nu even");
    if (query.m % 2 != 0) throw input_error("CII requires even frame dimension m");
  }

  // (i) one-point target
  if (n == 0) {
    Classification result;
    result.verdict.kind = GroupOrStar::kDegenerate;
    result.provenance = "rule:degenerate[n=m-|nu|=0, target V_0 is a point]";
    return result;
  }

  const bool equivariant = query.symmetry_class != SymmetryClass::AIII;

  // (ii) equivariant triviality above half the dimension
  if (equivariant && query.abs_nu >= (query.d + 1) / 2) {
    Classification result;
    result.verdict.kind = GroupOrStar::kGroup;
    result.provenance = "rule:trivial[|nu| >= ceil(d/2)]";
    return result;
  }

  // (iii) BDI circle target: Z in every dimension
  if (query.symmetry_class == SymmetryClass::AIII_BDI && query.m == 1) {
    Classification result;
    result.verdict.kind = GroupOrStar::kGroup;
    result.verdict.group = AbGroup{1, {}};
    result.provenance = "rule:circle[BDI, m=1: Z for all d >= 1]";
    return result;
  }

  // (iv) explicit equivariant table cell
  if (equivariant) {
    const std::string table =
        query.symmetry_class == SymmetryClass::AIII_BDI ? "table2a" : "table2b";
    if (auto cell = table_cell(table, query.abs_nu, query.d, query.m)) return *cell;
    throw input_error("outside tabulated range: " + to_string(query.symmetry_class) +
                      ", |nu| = " + std::to_string(query.abs_nu) + ", d = " +
                      std::to_string(query.d) + ", m = " + std::to_string(query.m));
  }

  // (v) AIII: Stiefel homotopy table, circle caption rule, connectivity fallback
  if (auto cell = table_cell("table3", query.abs_nu, query.d, query.m)) return *cell;
  if (query.m == 1) {  // V_1(C^1) = U(1): pi_d = 0 for d >= 2
    Classification result;
    result.verdict.kind = GroupOrStar::kGroup;
    if (query.d == 1) result.verdict.group = AbGroup{1, {}};
    result.provenance = "rule:table3-caption[m=1: pi_d(S^1) = 0 for d >= 2]";
    return result;
  }
  if (query.d <= 2 * query.abs_nu) {
    Classification result;
    result.verdict.kind = GroupOrStar::kGroup;
    result.provenance = "derived:connectivity[V_n(C^m) is 2|nu|-connected]";
    return result;
  }
  if (query.d == 2 * query.abs_nu + 1) {
    Classification result;
    result.verdict.kind = GroupOrStar::kGroup;
    result.verdict.group = AbGroup{1, {}};
    result.provenance = "derived:connectivity[pi_{2|nu|+1}(V_n(C^m)) = Z]";
    return result;
  }
  throw input_error("outside tabulated range: AIII, |nu| = " + std::to_string(query.abs_nu) +
                    ", d = " + std::to_string(query.d) + ", m = " + std::to_string(query.m));
}

namespace {

// union-find over rows and columns of the coefficient nonzero pattern
struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

BlockReport classify_block(const RigidityPolynomial& block, std::vector<int> row_idx,
                           std::vector<int> col_idx, double tol) {
  BlockReport report;
  report.row_indices = std::move(row_idx);
  report.col_indices = std::move(col_idx);
  report.rows = block.rows();
  report.cols = block.cols();
  report.symmetry_class = detect_class(block, tol).symmetry_class;
  report.nu_signed = block.cols() - block.rows();
  report.abs_nu = std::abs(report.nu_signed);
  report.m = std::max(block.rows(), block.cols());
  ClassificationQuery query{report.symmetry_class, report.abs_nu, block.dim(), report.m};
  report.result = classify(query);
  return report;
}

}  // namespace

ModelClassification classify_model(const RigidityPolynomial& r, double tol) {
  ModelClassification out;
  out.d = r.dim();

  std::vector<int> all_rows(r.rows()), all_cols(r.cols());
  for (int i = 0; i < r.rows(); ++i) all_rows[i] = i;
  for (int j = 0; j < r.cols(); ++j) all_cols[j] = j;
  out.whole = classify_block(r, all_rows, all_cols, tol);

  // nodes: rows 0..M-1, then columns M..M+N-1
  UnionFind uf(r.rows() + r.cols());
  for (const auto& [offset, coeff] : r.coeffs())
    for (int i = 0; i < r.rows(); ++i)
      for (int j = 0; j < r.cols(); ++j)
        if (coeff(i, j) != Complex(0.0, 0.0)) uf.unite(i, r.rows() + j);

  std::map<int, std::pair<std::vector<int>, std::vector<int>>> components;
  for (int i = 0; i < r.rows(); ++i) components[uf.find(i)].first.push_back(i);
  for (int j = 0; j < r.cols(); ++j) components[uf.find(r.rows() + j)].second.push_back(j);

  // deterministic order: by smallest participating row, then column
  std::vector<const std::pair<std::vector<int>, std::vector<int>>*> ordered;
  for (const auto& [root, comp] : components) ordered.push_back(&comp);
  std::sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    const int ra = a->first.empty() ? INT_MAX : a->first.front();
    const int rb = b->first.empty() ? INT_MAX : b->first.front();
    if (ra != rb) return ra < rb;
    const int ca = a->second.empty() ? INT_MAX : a->second.front();
    const int cb = b->second.empty() ? INT_MAX : b->second.front();
    return ca < cb;
  });

  for (const auto* comp : ordered) {
    const auto& [rows, cols] = *comp;
    if (rows.empty() || cols.empty()) {
      // isolated row (vacuous constraint) or column (free mode); classify the
      // 1-dimensional shape it represents
      BlockReport report;
      report.row_indices = rows;
      report.col_indices = cols;
      report.rows = static_cast<int>(rows.size());
      report.cols = static_cast<int>(cols.size());
      report.symmetry_class = SymmetryClass::AIII_BDI;  // zero block is real
      report.nu_signed = report.cols - report.rows;
      report.abs_nu = std::abs(report.nu_signed);
      report.m = std::max(report.rows, report.cols);
      report.result.verdict.kind = GroupOrStar::kDegenerate;
      report.result.provenance = rows.empty() ? "rule:isolated-column[free mode]"
                                              : "rule:isolated-row[vacuous constraint]";
      out.blocks.push_back(std::move(report));
      continue;
    }
    out.blocks.push_back(classify_block(r.extract(rows, cols), rows, cols, tol));
  }
  return out;
}

}  // namespace rigidity
