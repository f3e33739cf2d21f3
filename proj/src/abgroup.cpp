#include "rigidity/abgroup.hpp"

#include <algorithm>
#include <set>
#include <numeric>
#include <sstream>

#include "rigidity/errors.hpp"

namespace rigidity {

namespace {

int row_count(const IntMatrix& a) { return static_cast<int>(a.size()); }
int col_count(const IntMatrix& a) { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

void swap_rows(IntMatrix& m, int i, int j) { std::swap(m[i], m[j]); }

void swap_cols(IntMatrix& m, int i, int j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

void add_row(IntMatrix& m, int dst, int src, const BigInt& factor) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += factor * m[src][j];
}

void add_col(IntMatrix& m, int dst, int src, const BigInt& factor) {
  for (auto& row : m) row[dst] += factor * row[src];
}

void negate_row(IntMatrix& m, int i) {
  for (auto& x : m[i]) x = -x;
}

}  // namespace

IntMatrix identity_matrix(int n) {
  IntMatrix m(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  int n = row_count(a), k = col_count(a), p = col_count(b);
  IntMatrix c(n, std::vector<BigInt>(p, 0));
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (int j = 0; j < p; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

// Bareiss fraction-free elimination; exact for integer matrices.
BigInt determinant(const IntMatrix& a) {
  int n = row_count(a);
  if (n == 0) return 1;
  IntMatrix m = a;
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) { piv = i; break; }
      if (piv < 0) return 0;
      swap_rows(m, k, piv);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SmithResult smith_normal_form(const IntMatrix& a) {
  const int rows = row_count(a), cols = col_count(a);
  SmithResult r{identity_matrix(rows), a, identity_matrix(cols)};
  IntMatrix& d = r.d;

  const int steps = std::min(rows, cols);
  for (int t = 0; t < steps; ++t) {
    // pivot: entry of minimal nonzero magnitude in the trailing submatrix
    int pi = -1, pj = -1;
    BigInt best;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j) {
        if (d[i][j] == 0) continue;
        BigInt mag = abs(d[i][j]);
        if (pi < 0 || mag < best) {
          best = mag;
          pi = i;
          pj = j;
        }
      }
    if (pi < 0) break;  // trailing submatrix is zero
    if (pi != t) { swap_rows(d, t, pi); swap_rows(r.u, t, pi); }
    if (pj != t) { swap_cols(d, t, pj); swap_cols(r.v, t, pj); }

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        if (q != 0) { add_row(d, i, t, -q); add_row(r.u, i, t, -q); }
        if (d[i][t] != 0) {  // remainder strictly smaller: promote it
          swap_rows(d, i, t);
          swap_rows(r.u, i, t);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        if (q != 0) { add_col(d, j, t, -q); add_col(r.v, j, t, -q); }
        if (d[t][j] != 0) {
          swap_cols(d, j, t);
          swap_cols(r.v, j, t);
          clean = false;
        }
      }
      if (!clean) continue;

      // pivot must divide the whole trailing submatrix for the chain
      bool fixed = false;
      for (int i = t + 1; i < rows && !fixed; ++i)
        for (int j = t + 1; j < cols && !fixed; ++j)
          if (d[i][j] % d[t][t] != 0) {
            add_row(d, t, i, 1);
            add_row(r.u, t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }

    if (d[t][t] < 0) { negate_row(d, t); negate_row(r.u, t); }
  }
  return r;
}

BigInt AbGroup::order() const {
  BigInt n = 1;
  for (long f : torsion) n *= f;
  return n;
}

bool AbGroup::operator<(const AbGroup& other) const {
  if (free_rank != other.free_rank) return free_rank < other.free_rank;
  return torsion < other.torsion;
}

std::string AbGroup::to_string() const {
  if (trivial()) return "0";
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (long f : torsion) parts.push_back("Z_" + std::to_string(f));
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " + ";
    out += parts[i];
  }
  return out;
}

AbGroup AbGroup::parse(const std::string& literal) {
  std::string s;
  for (char c : literal)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw input_error("empty group literal");
  if (s == "0") return {};
  int free_rank = 0;
  std::vector<long> factors;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, '+')) {
    if (part == "Z") {
      ++free_rank;
    } else if (part.rfind("Z^", 0) == 0) {
      int k = std::stoi(part.substr(2));
      if (k < 0) throw input_error("bad group literal '" + literal + "'");
      free_rank += k;
    } else if (part.rfind("Z_", 0) == 0) {
      long f = std::stol(part.substr(2));
      if (f < 2) throw input_error("bad torsion factor in '" + literal + "'");
      factors.push_back(f);
    } else if (part == "0") {
      // summand of the trivial group; no-op
    } else {
      throw input_error("bad group literal '" + literal + "'");
    }
  }
  return from_factors(free_rank, factors);
}

AbGroup AbGroup::from_factors(int free_rank, const std::vector<long>& factors) {
  std::vector<long> nontrivial;
  int extra_free = 0;
  for (long f : factors) {
    if (f == 0) { ++extra_free; continue; }
    long a = f < 0 ? -f : f;
    if (a >= 2) nontrivial.push_back(a);
  }
  // canonicalize via the SNF of the diagonal relation matrix
  if (!nontrivial.empty()) {
    int n = static_cast<int>(nontrivial.size());
    IntMatrix rel(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) rel[i][i] = nontrivial[i];
    AbGroup g = from_presentation(rel, n);
    g.free_rank += free_rank + extra_free;
    return g;
  }
  AbGroup g;
  g.free_rank = free_rank + extra_free;
  return g;
}

AbGroup direct_sum(const AbGroup& a, const AbGroup& b) {
  std::vector<long> factors = a.torsion;
  factors.insert(factors.end(), b.torsion.begin(), b.torsion.end());
  return AbGroup::from_factors(a.free_rank + b.free_rank, factors);
}

AbGroup from_presentation(const IntMatrix& relations, int generators) {
  if (generators < 0) throw input_error("negative generator count");
  if (!relations.empty() && col_count(relations) != generators)
    throw input_error("relation matrix width does not match generator count");
  AbGroup g;
  if (relations.empty()) {
    g.free_rank = generators;
    return g;
  }
  SmithResult snf = smith_normal_form(relations);
  int rank = 0;
  const int steps = std::min(row_count(relations), generators);
  for (int i = 0; i < steps; ++i) {
    const BigInt& di = snf.d[i][i];
    if (di == 0) continue;
    ++rank;
    if (di >= 2) {
      if (!di.fits_slong_p())
        throw input_error("invariant factor exceeds representable range");
      g.torsion.push_back(di.get_si());
    }
  }
  g.free_rank = generators - rank;
  return g;
}

AbGroup ext1(const AbGroup& c, const AbGroup& a) {
  std::vector<long> factors;
  for (long n : c.torsion) {
    for (int i = 0; i < a.free_rank; ++i) factors.push_back(n);  // Z/nZ
    for (long m : a.torsion) {
      long g = std::gcd(m, n);
      if (g >= 2) factors.push_back(g);
    }
  }
  return AbGroup::from_factors(0, factors);
}

std::vector<AbGroup> extension_candidates(const AbGroup& a, const AbGroup& c,
                                          const ExtensionBounds& bounds) {
  auto check = [&](const AbGroup& g, const char* which) {
    if (g.free_rank > bounds.max_free_rank)
      throw input_error(std::string("candidates not enumerable; reporting symbolic extension (") +
                        which + " free rank exceeds bound)");
    for (long f : g.torsion)
      if (f > bounds.max_factor)
        throw input_error(std::string("candidates not enumerable; reporting symbolic extension (") +
                          which + " torsion factor exceeds bound)");
  };
  check(a, "subgroup");
  check(c, "quotient");

  const int p = a.free_rank;
  const auto& am = a.torsion;
  const int s = static_cast<int>(am.size());
  const int q = c.free_rank;
  const auto& cn = c.torsion;
  const int t = static_cast<int>(cn.size());
  const int gens = p + s + q + t;

  // cocycle choices: one element of A / n_j A per torsion generator of C
  std::vector<long> radix;
  long total = 1;
  for (int j = 0; j < t; ++j) {
    for (int l = 0; l < p; ++l) {
      radix.push_back(cn[j]);
      total *= cn[j];
    }
    for (int i = 0; i < s; ++i) {
      long g = std::gcd(am[i], cn[j]);
      radix.push_back(g);
      total *= g;
    }
    if (total > bounds.max_classes)
      throw input_error("candidates not enumerable; reporting symbolic extension (class count exceeds bound)");
  }

  std::set<AbGroup> found;
  std::vector<long> digits(radix.size(), 0);
  for (long idx = 0; idx < total; ++idx) {
    IntMatrix rel(s + t, std::vector<BigInt>(gens, 0));
    for (int i = 0; i < s; ++i) rel[i][p + i] = am[i];
    int cursor = 0;
    for (int j = 0; j < t; ++j) {
      auto& row = rel[s + j];
      row[p + s + q + j] = cn[j];
      for (int l = 0; l < p; ++l) row[l] = -BigInt(digits[cursor++]);
      for (int i = 0; i < s; ++i) row[p + i] = -BigInt(digits[cursor++]);
    }
    found.insert(from_presentation(rel, gens));

    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
      if (++digits[pos] < radix[pos]) break;
      digits[pos] = 0;
    }
  }
  if (found.empty()) found.insert(direct_sum(a, c));
  return {found.begin(), found.end()};
}

}  // namespace rigidity
