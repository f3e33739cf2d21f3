#include "rigidity/exactseq.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rigidity/classify.hpp"
#include "rigidity/errors.hpp"
#include "rigidity/resources.hpp"

namespace rigidity {

using nlohmann::json;

std::string to_string(ActionTag tag) { return tag == ActionTag::kBDI ? "BDI" : "CII"; }

std::string StiefelTarget::to_string() const {
  return "V_" + std::to_string(n) + "(C^" + std::to_string(m) + ")";
}

std::string HomotopyTerm::to_string() const {
  const std::string x = space.to_string();
  const std::string looped =
      loop_exponent > 0 ? "Omega^" + std::to_string(loop_exponent) + " " + x : x;
  switch (kind) {
    case TermKind::kAbsolute:
      return "pi" + std::to_string(degree) + "(" + looped + ")";
    case TermKind::kRelative:
      return "pi" + std::to_string(degree) + "(" + looped + ", (" + looped + ")^Z2)";
    case TermKind::kFixedSet:
      return "pi" + std::to_string(degree) + "(" + x + "^Z2)";
    case TermKind::kEquivariantLoop:
      return "pi" + std::to_string(degree) + "((" + looped + ")^Z2)";
  }
  return "?";
}

HomotopyTerm apply_lemma(const HomotopyTerm& term) {
  if (term.kind != TermKind::kEquivariantLoop)
    throw input_error("lemma rewrites equivariant-loop terms only, got " + term.to_string());
  if (term.loop_exponent < 1)
    throw input_error("lemma needs loop exponent >= 1, got " + term.to_string());
  if (term.degree < 0) throw input_error("lemma needs degree >= 0");
  HomotopyTerm out;
  out.kind = TermKind::kRelative;
  out.degree = term.degree + 1;
  out.loop_exponent = term.loop_exponent - 1;
  out.space = term.space;
  return out;
}

namespace {

// --- tiny match language: conjunctions of comparisons over n, m, m-n ------

bool eval_clause(const std::string& clause, int n, int m) {
  auto trim = [](std::string s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
  };
  std::string c = trim(clause);
  if (c == "true") return true;
  static const std::vector<std::string> ops = {"==", "!=", "<=", ">=", "<", ">"};
  for (const auto& op : ops) {
    auto pos = c.find(op);
    if (pos == std::string::npos) continue;
    std::string lhs = trim(c.substr(0, pos));
    std::string rhs = trim(c.substr(pos + op.size()));
    auto value_of = [&](const std::string& token) -> long {
      if (token == "n") return n;
      if (token == "m") return m;
      if (token == "m-n") return m - n;
      if (token == "n-m") return n - m;
      if (token == "m-1") return m - 1;
      try {
        return std::stol(token);
      } catch (const std::exception&) {
        throw input_error("bad token '" + token + "' in match expression");
      }
    };
    const long a = value_of(lhs), b = value_of(rhs);
    if (op == "==") return a == b;
    if (op == "!=") return a != b;
    if (op == "<=") return a <= b;
    if (op == ">=") return a >= b;
    if (op == "<") return a < b;
    return a > b;
  }
  throw input_error("bad match clause '" + clause + "'");
}

bool eval_match(const std::string& expr, int n, int m) {
  std::size_t start = 0;
  for (;;) {
    auto pos = expr.find("&&", start);
    const std::string clause = expr.substr(start, pos == std::string::npos ? pos : pos - start);
    if (!eval_clause(clause, n, m)) return false;
    if (pos == std::string::npos) return true;
    start = pos + 2;
  }
}

GroupDataFile::Entry parse_entry(const json& jentry) {
  GroupDataFile::Entry entry;
  entry.space = jentry.at("space").get<std::string>();
  if (entry.space != "complex" && entry.space != "real" && entry.space != "quaternionic")
    throw input_error("group data entry: unknown space '" + entry.space + "'");
  entry.pi = jentry.at("pi").get<int>();
  entry.match = jentry.value("match", "true");
  entry.group = AbGroup::parse(jentry.at("group").get<std::string>());
  entry.group_structure = jentry.value("group_structure", true);
  entry.provenance = jentry.value("provenance", "");
  if (entry.provenance.empty())
    throw input_error("group data entry lacks provenance (space=" + entry.space +
                      ", pi=" + std::to_string(entry.pi) + ", match=" + entry.match + ")");
  return entry;
}

}  // namespace

GroupDataFile GroupDataFile::builtin() {
  return parse(resources::groups_json());
}

GroupDataFile GroupDataFile::parse(const std::string& json_text) {
  GroupDataFile data;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("group data file: ") + e.what());
  }
  try {
    for (const auto& jentry : doc.at("entries")) data.entries_.push_back(parse_entry(jentry));
  } catch (const json::exception& e) {
    throw input_error(std::string("group data file schema: ") + e.what());
  }
  return data;
}

std::optional<GroupDataFile::Lookup> GroupDataFile::find(const std::string& space, int pi,
                                                         int n, int m) const {
  for (const auto& entry : entries_) {
    if (entry.space != space || entry.pi != pi) continue;
    if (!eval_match(entry.match, n, m)) continue;
    return Lookup{entry.group, entry.group_structure, entry.provenance};
  }
  if (space == "complex") {
    // complex Stiefel groups come from the shipped classification tables
    if (n == 0)
      return Lookup{AbGroup{}, true, "standard-reference: V_0(C^m) is a single point"};
    if (pi == 0)
      return Lookup{AbGroup{}, true, "standard-reference: complex Stiefel manifolds are connected"};
    if (pi > 6) return std::nullopt;
    try {
      Classification cell = classify({SymmetryClass::AIII, m - n, pi, m});
      if (cell.verdict.kind == GroupOrStar::kStar) return std::nullopt;
      return Lookup{cell.verdict.group, true, cell.provenance};
    } catch (const input_error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string SlotValue::to_string() const {
  switch (state) {
    case kUnknown:
      return "?";
    case kKnown: {
      std::string s = group.to_string();
      if (pointed_set) {
        s += group.finite() ? " [set of " + group.order().get_str() + "]" : " [set]";
        if (!group_structure) s += " [no group law]";
      }
      return s;
    }
    case kCandidates: {
      std::vector<std::string> names;
      for (const auto& g : candidates) names.push_back(g.to_string());
      std::string out = "{";
      for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
      }
      return out + "}";
    }
  }
  return "?";
}

std::string SlotRef::to_string() const {
  static const char* names[5] = {"pi1(fixed)", "pi1(total)", "pair", "pi0(fixed)", "pi0(total)"};
  return std::string(names[pos]) + "@level" + std::to_string(level);
}

Hint parse_hint(const std::string& text) {
  std::string body = text;
  std::string provenance = "user";
  if (auto hash = body.find('#'); hash != std::string::npos) {
    provenance = body.substr(hash + 1);
    body = body.substr(0, hash);
  }
  auto eq = body.find('=');
  if (eq == std::string::npos)
    throw input_error("bad hint '" + text + "' (expected pair@level<j>=<group>)");
  std::string slot = body.substr(0, eq);
  const std::string prefix = "pair@level";
  if (slot.rfind(prefix, 0) != 0)
    throw input_error("bad hint slot '" + slot + "' (expected pair@level<j>)");
  Hint hint;
  try {
    hint.level = std::stoi(slot.substr(prefix.size()));
  } catch (const std::exception&) {
    throw input_error("bad hint level in '" + text + "'");
  }
  hint.group = AbGroup::parse(body.substr(eq + 1));
  hint.provenance = provenance;
  return hint;
}

namespace {

struct FixedSpace {
  std::string family;  // "real" | "quaternionic"
  int n, m;
  std::string to_string() const {
    const char* letter = family == "real" ? "R" : "H";
    return "V_" + std::to_string(n) + "(" + letter + "^" + std::to_string(m) + ")";
  }
};

FixedSpace fixed_space(const StiefelTarget& x, ActionTag action) {
  if (action == ActionTag::kBDI) return {"real", x.n, x.m};
  if (x.n % 2 != 0 || x.m % 2 != 0)
    throw input_error("CII action needs even n and m (fixed set is a quaternionic Stiefel manifold); got " +
                      x.to_string());
  return {"quaternionic", x.n / 2, x.m / 2};
}

std::string slot_display(const SequenceLadder& ladder, int level, int pos) {
  const std::string x = ladder.space.to_string();
  const std::string looped =
      level > 0 ? "Omega^" + std::to_string(level) + " " + x : x;
  const FixedSpace fixed = fixed_space(ladder.space, ladder.action);
  switch (pos) {
    case kFixP1:
      return level == 0 ? "pi1(" + fixed.to_string() + ")" : "pi1((" + looped + ")^Z2)";
    case kTotP1: return "pi1(" + looped + ")";
    case kPair: return "pi1(" + looped + ", (" + looped + ")^Z2)";
    case kFixP0:
      return level == 0 ? "pi0(" + fixed.to_string() + ")" : "pi0((" + looped + ")^Z2)";
    case kTotP0: return "pi0(" + looped + ")";
  }
  return "?";
}

void fill_slot(SequenceLadder& ladder, int level, int pos, const GroupDataFile::Lookup& lookup,
               bool pointed_set) {
  SlotValue& slot = ladder.rows[level][pos];
  slot.state = SlotValue::kKnown;
  slot.group = lookup.group;
  slot.pointed_set = pointed_set;
  slot.group_structure = lookup.group_structure;
  slot.provenance = lookup.provenance;
  ladder.trace.push_back("fill " + SlotRef{level, pos}.to_string() + ": " +
                         slot_display(ladder, level, pos) + " = " + slot.to_string() + "  [" +
                         lookup.provenance + "]");
}

}  // namespace

SequenceLadder build_ladder(const StiefelTarget& space, ActionTag action, int dim,
                            const GroupDataFile& data) {
  if (dim < 1) throw input_error("ladder dimension must be >= 1");
  if (space.n < 0 || space.m < 1 || space.n > space.m)
    throw input_error("bad Stiefel target " + space.to_string());
  SequenceLadder ladder;
  ladder.space = space;
  ladder.action = action;
  ladder.dim = dim;
  ladder.rows.resize(dim);
  ladder.trace.push_back("ladder: target " + space.to_string() + ", action " + to_string(action) +
                         " (fixed set " + fixed_space(space, action).to_string() + "), " +
                         std::to_string(dim) + " row(s)");

  const FixedSpace fixed = fixed_space(space, action);
  for (int level = 0; level < dim; ++level) {
    // pi_1(Omega^level X) = pi_{level+1}(X), pi_0(Omega^level X) = pi_level(X)
    if (auto hit = data.find("complex", level + 1, space.n, space.m))
      fill_slot(ladder, level, kTotP1, *hit, false);
    if (auto hit = data.find("complex", level, space.n, space.m))
      fill_slot(ladder, level, kTotP0, *hit, true);
    if (level == 0) {
      if (auto hit = data.find(fixed.family, 1, fixed.n, fixed.m))
        fill_slot(ladder, 0, kFixP1, *hit, false);
      else
        ladder.trace.push_back("fill " + SlotRef{0, kFixP1}.to_string() + ": " +
                               slot_display(ladder, 0, kFixP1) + " = ? (no datum)");
      if (auto hit = data.find(fixed.family, 0, fixed.n, fixed.m))
        fill_slot(ladder, 0, kFixP0, *hit, true);
      else
        ladder.trace.push_back("fill " + SlotRef{0, kFixP0}.to_string() + ": " +
                               slot_display(ladder, 0, kFixP0) + " = ? (no datum)");
    } else {
      ladder.rows[level][kFixP0].pointed_set = true;
      ladder.trace.push_back("link " + SlotRef{level, kFixP0}.to_string() + " ~= " +
                             SlotRef{level - 1, kPair}.to_string() +
                             "  [loop-pair shift, D=0, j=" + std::to_string(level) + "]");
    }
  }
  return ladder;
}

namespace {

struct Propagator {
  SequenceLadder& ladder;
  bool changed = false;
  std::set<std::string> noted;

  void note(const std::string& line) {
    if (noted.insert(line).second) ladder.trace.push_back(line);
  }

  bool known_trivial(const SlotValue& s) const {
    return s.state == SlotValue::kKnown && s.group.trivial();
  }

  // set a slot to a known group, reconciling candidates and detecting
  // contradictions
  void set_known(int level, int pos, const AbGroup& g, const std::string& provenance) {
    SlotValue& slot = ladder.rows[level][pos];
    if (slot.state == SlotValue::kKnown) {
      if (!(slot.group == g))
        throw numerical_error("inconsistency at " + SlotRef{level, pos}.to_string() +
                              ": exactness needs " + g.to_string() + " but slot holds " +
                              slot.group.to_string());
      return;
    }
    if (slot.state == SlotValue::kCandidates) {
      bool member = std::find(slot.candidates.begin(), slot.candidates.end(), g) !=
                    slot.candidates.end();
      if (!member)
        throw numerical_error("inconsistency at " + SlotRef{level, pos}.to_string() + ": " +
                              g.to_string() + " is not among the extension candidates");
    }
    slot.state = SlotValue::kKnown;
    slot.group = g;
    slot.provenance = provenance;
    changed = true;
    note("deduce " + SlotRef{level, pos}.to_string() + " = " + slot.to_string() + "  [" +
         provenance + "]");
  }

  void set_candidates(int level, int pos, std::vector<AbGroup> cands,
                      const std::string& provenance) {
    SlotValue& slot = ladder.rows[level][pos];
    if (slot.state == SlotValue::kKnown) {
      if (std::find(cands.begin(), cands.end(), slot.group) == cands.end())
        throw numerical_error("inconsistency at " + SlotRef{level, pos}.to_string() +
                              ": known value " + slot.group.to_string() +
                              " is not an admissible extension");
      return;
    }
    if (cands.size() == 1) {
      set_known(level, pos, cands.front(), provenance);
      return;
    }
    if (slot.state == SlotValue::kCandidates) {
      std::vector<AbGroup> intersection;
      for (const auto& g : slot.candidates)
        if (std::find(cands.begin(), cands.end(), g) != cands.end()) intersection.push_back(g);
      if (intersection.empty())
        throw numerical_error("inconsistency at " + SlotRef{level, pos}.to_string() +
                              ": candidate sets do not intersect");
      if (intersection.size() == slot.candidates.size()) return;  // no news
      cands = std::move(intersection);
      if (cands.size() == 1) {
        slot.state = SlotValue::kUnknown;
        set_known(level, pos, cands.front(), provenance);
        return;
      }
    }
    slot.state = SlotValue::kCandidates;
    slot.candidates = std::move(cands);
    slot.provenance = provenance;
    changed = true;
    note("deduce " + SlotRef{level, pos}.to_string() + " in " + slot.to_string() + "  [" +
         provenance + "]");
  }

  // lemma edges: pair@level(j-1) and pi0(fixed)@level(j) are isomorphic
  void share_lemma_edges() {
    for (int level = 1; level < ladder.dim; ++level) {
      SlotValue& upper = ladder.rows[level][kFixP0];
      SlotValue& lower = ladder.rows[level - 1][kPair];
      const std::string tag = "lemma-edge[level " + std::to_string(level) + "]";
      if (lower.state == SlotValue::kKnown && upper.state != SlotValue::kKnown)
        set_known(level, kFixP0, lower.group, tag);
      else if (upper.state == SlotValue::kKnown && lower.state != SlotValue::kKnown)
        set_known(level - 1, kPair, upper.group, tag);
      else if (lower.state == SlotValue::kCandidates && upper.state == SlotValue::kUnknown)
        set_candidates(level, kFixP0, lower.candidates, tag);
      else if (upper.state == SlotValue::kCandidates && lower.state == SlotValue::kUnknown)
        set_candidates(level - 1, kPair, upper.candidates, tag);
      else if (upper.state == SlotValue::kKnown && lower.state == SlotValue::kKnown) {
        if (!(upper.group == lower.group))
          throw numerical_error("inconsistency across lemma edge at level " +
                                std::to_string(level));
      }
    }
  }

  void run_row(int level) {
    auto& row = ladder.rows[level];
    // map i connects slot i -> slot i+1, i in 0..3
    bool zero[4] = {false, false, false, false};
    for (int i = 0; i < 4; ++i) {
      if (known_trivial(row[i]) || known_trivial(row[i + 1])) zero[i] = true;
    }
    // torsion-into-free: pi1(fixed) -> pi1(total) kills all torsion
    if (!zero[0] && row[kFixP1].state == SlotValue::kKnown &&
        row[kTotP1].state == SlotValue::kKnown && row[kFixP1].group.finite() &&
        row[kTotP1].group.torsion.empty() && !row[kFixP1].pointed_set &&
        !row[kTotP1].pointed_set) {
      zero[0] = true;
      note("deduce map pi1(fixed)->pi1(total) at level " + std::to_string(level) +
           " is zero  [exactness:torsion-into-free]");
    }

    bool inj[4] = {false, false, false, false};
    bool surj[4] = {false, false, false, false};
    for (int i = 1; i < 4; ++i) inj[i] = zero[i - 1];
    for (int i = 0; i < 3; ++i) surj[i] = zero[i + 1];

    const std::string tag = "exactness[level " + std::to_string(level) + "]";
    for (int i = 0; i < 4; ++i) {
      if (inj[i] && known_trivial(row[i + 1]) && row[i].state != SlotValue::kKnown)
        set_known(level, i, AbGroup{}, tag + ": injects into 0");
      if (surj[i] && known_trivial(row[i]) && row[i + 1].state != SlotValue::kKnown)
        set_known(level, i + 1, AbGroup{}, tag + ": surjected by 0");
      if (inj[i] && surj[i]) {
        if (row[i].state == SlotValue::kKnown && row[i + 1].state != SlotValue::kKnown)
          set_known(level, i + 1, row[i].group, tag + ": isomorphism");
        else if (row[i + 1].state == SlotValue::kKnown && row[i].state != SlotValue::kKnown)
          set_known(level, i, row[i + 1].group, tag + ": isomorphism");
        else if (row[i].state == SlotValue::kKnown && row[i + 1].state == SlotValue::kKnown &&
                 !(row[i].group == row[i + 1].group))
          throw numerical_error("inconsistency at " + SlotRef{level, i}.to_string() +
                                ": forced isomorphism between " + row[i].group.to_string() +
                                " and " + row[i + 1].group.to_string());
        else if (row[i].state == SlotValue::kCandidates &&
                 row[i + 1].state == SlotValue::kUnknown)
          set_candidates(level, i + 1, row[i].candidates, tag + ": isomorphism");
        else if (row[i + 1].state == SlotValue::kCandidates &&
                 row[i].state == SlotValue::kUnknown)
          set_candidates(level, i, row[i + 1].candidates, tag + ": isomorphism");
      }
    }

    // short exact 0 -> pi1(total) -> pair -> pi0(fixed) -> 0
    if (inj[1] && surj[2] && row[kTotP1].state == SlotValue::kKnown &&
        row[kFixP0].state == SlotValue::kKnown && row[kFixP0].group_structure) {
      const AbGroup& a = row[kTotP1].group;
      const AbGroup& c = row[kFixP0].group;
      if (!(a.trivial() || c.trivial())) {  // trivial flank already handled above
        try {
          std::vector<AbGroup> cands = extension_candidates(a, c);
          set_candidates(level, kPair, std::move(cands),
                         tag + ": extension 0 -> " + a.to_string() + " -> G -> " +
                             c.to_string() + " -> 0");
        } catch (const input_error&) {
          note("note " + SlotRef{level, kPair}.to_string() +
               ": extension candidates not enumerable; kept symbolic  [" + tag + "]");
        }
      }
    }
  }

  bool pass() {
    changed = false;
    share_lemma_edges();
    for (int level = 0; level < ladder.dim; ++level) run_row(level);
    share_lemma_edges();
    return changed;
  }
};

}  // namespace

ResolutionReport propagate(SequenceLadder& ladder, const std::vector<Hint>& hints) {
  Propagator prop{ladder};
  for (const auto& hint : hints) {
    if (hint.level < 0 || hint.level >= ladder.dim)
      throw input_error("hint level " + std::to_string(hint.level) + " outside ladder (0.." +
                        std::to_string(ladder.dim - 1) + ")");
    ladder.trace.push_back("hint " + SlotRef{hint.level, kPair}.to_string() + " = " +
                           hint.group.to_string() + "  [" + hint.provenance + "]");
    prop.set_known(hint.level, kPair, hint.group, hint.provenance);
  }

  for (int iter = 0; iter < 64; ++iter)
    if (!prop.pass()) break;

  ResolutionReport report;
  for (int level = 0; level < ladder.dim; ++level)
    for (int pos = 0; pos < 5; ++pos) {
      SlotReport slot;
      slot.ref = {level, pos};
      slot.value = ladder.rows[level][pos];
      switch (slot.value.state) {
        case SlotValue::kKnown: slot.status = SlotStatus::kDetermined; break;
        case SlotValue::kCandidates: slot.status = SlotStatus::kUpToExtension; break;
        default: slot.status = SlotStatus::kUnknown; break;
      }
      report.slots.push_back(std::move(slot));
    }
  const SlotRef answer_ref = ladder.answer_slot();
  for (const auto& slot : report.slots)
    if (slot.ref.level == answer_ref.level && slot.ref.pos == answer_ref.pos)
      report.answer = slot;
  report.trace = ladder.trace;
  return report;
}

ParsedQuery parse_query(const std::string& query) {
  // grammar: pi<D> (Omega^<j> V_<n>(C^<m>))^Z2 [BDI|CII]
  std::string s;
  for (char c : query)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;

  auto fail = [&]() -> ParsedQuery {
    throw input_error("cannot parse query '" + query +
                      "'; expected: pi<D> (Omega^<j> V_<n>(C^<m>))^Z2 [BDI|CII]");
  };

  std::size_t pos = 0;
  auto expect = [&](const std::string& token) {
    if (s.compare(pos, token.size(), token) != 0) fail();
    pos += token.size();
  };
  auto read_int = [&]() {
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail();
    return std::stoi(s.substr(start, pos - start));
  };

  expect("pi");
  const int degree = read_int();
  expect("(");
  int loops = 0;
  if (s.compare(pos, 6, "Omega^") == 0) {
    pos += 6;
    loops = read_int();
  }
  expect("V_");
  const int n = read_int();
  expect("(C^");
  const int m = read_int();
  expect("))^Z2[");
  auto close = s.find(']', pos);
  if (close == std::string::npos) fail();
  const std::string tag = s.substr(pos, close - pos);
  pos = close + 1;
  if (pos != s.size()) fail();

  ParsedQuery parsed;
  parsed.term.degree = degree;
  parsed.term.loop_exponent = loops;
  parsed.term.kind = loops > 0 ? TermKind::kEquivariantLoop : TermKind::kFixedSet;
  parsed.term.space = {n, m};
  if (tag == "BDI")
    parsed.action = ActionTag::kBDI;
  else if (tag == "CII")
    parsed.action = ActionTag::kCII;
  else
    throw input_error("unknown action tag '" + tag + "' (supported: BDI, CII)");
  return parsed;
}

ResolutionReport derive_query(const std::string& query, const GroupDataFile& data,
                              const std::vector<Hint>& hints) {
  const ParsedQuery parsed = parse_query(query);
  const HomotopyTerm& term = parsed.term;
  std::vector<std::string> preamble;
  preamble.push_back("query: " + term.to_string() + " [" + to_string(parsed.action) + "]");

  if (term.loop_exponent == 0) {
    // direct fixed-set lookup inside a 1-row ladder
    SequenceLadder ladder = build_ladder(term.space, parsed.action, 1, data);
    ladder.trace.insert(ladder.trace.begin(), preamble.begin(), preamble.end());
    ResolutionReport report = propagate(ladder, hints);
    if (term.degree <= 1) {
      const SlotRef ref{0, term.degree == 0 ? kFixP0 : kFixP1};
      for (const auto& slot : report.slots)
        if (slot.ref.level == ref.level && slot.ref.pos == ref.pos) report.answer = slot;
    } else {
      report.answer = SlotReport{};
      report.answer.ref = {-1, -1};
      report.trace.push_back("note: fixed-set degree " + std::to_string(term.degree) +
                             " lies outside the tracked ladder; unknown");
    }
    return report;
  }

  const HomotopyTerm rewritten = apply_lemma(term);
  preamble.push_back("lemma: " + term.to_string() + " ~= " + rewritten.to_string() +
                     "  [loop-pair shift, D=" + std::to_string(term.degree) +
                     ", j=" + std::to_string(term.loop_exponent) + "]");

  if (term.degree == 0) {
    SequenceLadder ladder = build_ladder(term.space, parsed.action, term.loop_exponent, data);
    ladder.trace.insert(ladder.trace.begin(), preamble.begin(), preamble.end());
    return propagate(ladder, hints);
  }
  if (term.degree == 1) {
    // pi1((Omega^j X)^Z2) is the leading slot of row j
    SequenceLadder ladder = build_ladder(term.space, parsed.action, term.loop_exponent + 1, data);
    ladder.trace.insert(ladder.trace.begin(), preamble.begin(), preamble.end());
    ResolutionReport report = propagate(ladder, hints);
    const SlotRef ref{term.loop_exponent, kFixP1};
    for (const auto& slot : report.slots)
      if (slot.ref.level == ref.level && slot.ref.pos == ref.pos) report.answer = slot;
    return report;
  }

  SequenceLadder ladder = build_ladder(term.space, parsed.action, term.loop_exponent, data);
  ladder.trace.insert(ladder.trace.begin(), preamble.begin(), preamble.end());
  ResolutionReport report = propagate(ladder, hints);
  report.answer = SlotReport{};
  report.answer.ref = {-1, -1};
  report.trace.push_back("note: relative degree " + std::to_string(rewritten.degree) +
                         " lies outside the tracked five-term rows; unknown");
  return report;
}

}  // namespace rigidity
