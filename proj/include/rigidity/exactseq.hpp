#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rigidity/abgroup.hpp"

namespace rigidity {

enum class ActionTag { kBDI, kCII };
std::string to_string(ActionTag tag);

/// Symbolic complex Stiefel target V_n(C^m).
struct StiefelTarget {
  int n = 1;
  int m = 1;
  std::string to_string() const;
};

enum class TermKind { kAbsolute, kRelative, kFixedSet, kEquivariantLoop };

/// One symbolic homotopy term:
///   absolute         pi_D(Omega^j X)
///   relative         pi_D(Omega^j X, (Omega^j X)^Z2), D >= 1
///   fixed-set        pi_D(X^Z2)                        (loop exponent 0)
///   equivariant-loop pi_D((Omega^j X)^Z2), j >= 1
struct HomotopyTerm {
  TermKind kind = TermKind::kAbsolute;
  int degree = 0;
  int loop_exponent = 0;
  StiefelTarget space;

  std::string to_string() const;
};

/// Lemma rewrite: pi_D((Omega^j X)^Z2) ~= pi_{D+1}(Omega^{j-1} X,
/// (Omega^{j-1} X)^Z2); the j = 1 case lands on the plain pair (X, X^Z2).
/// Throws input_error on non-rewritable kinds.
HomotopyTerm apply_lemma(const HomotopyTerm& term);

/// Known homotopy groups with provenance; the shipped default carries the
/// complex Stiefel table plus verified real/quaternionic Stiefel facts.
class GroupDataFile {
 public:
  struct Entry {
    std::string space;  // "complex" | "real" | "quaternionic"
    int pi = 0;
    std::string match;  // conjunctions of comparisons over n, m, m-n; "true"
    AbGroup group;
    bool group_structure = true;
    std::string provenance;  // mandatory; loader rejects empty
  };

  static GroupDataFile builtin();
  /// A user data file replaces the shipped real/quaternionic entries (so
  /// deliberately omitted facts leave slots unknown); complex Stiefel groups
  /// are always resolved through the shipped tables resource, with explicit
  /// entries taking precedence.
  static GroupDataFile parse(const std::string& json_text);

  struct Lookup {
    AbGroup group;
    bool group_structure = true;
    std::string provenance;
  };
  /// Group of pi_D of the named Stiefel space, or nullopt if not covered.
  std::optional<Lookup> find(const std::string& space, int pi, int n, int m) const;

  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

/// Value of a ladder slot.
struct SlotValue {
  enum State { kUnknown, kKnown, kCandidates };
  State state = kUnknown;
  AbGroup group;                  // when kKnown
  std::vector<AbGroup> candidates;  // when kCandidates (sorted, deduplicated)
  bool pointed_set = false;       // pi_0-type slot (set semantics)
  bool group_structure = true;    // meaningful for pointed sets
  std::string provenance;

  std::string to_string() const;
};

/// Slot positions inside one five-term row
///   pi_1((O^j X)^Z2) -> pi_1(O^j X) -> pi_1(O^j X, (O^j X)^Z2)
///     -> pi_0((O^j X)^Z2) -> pi_0(O^j X)
enum SlotPos { kFixP1 = 0, kTotP1 = 1, kPair = 2, kFixP0 = 3, kTotP0 = 4 };

struct SlotRef {
  int level = 0;  // loop exponent j of the row
  int pos = 0;    // SlotPos
  std::string to_string() const;
};

/// The stacked exact rows, one per loop level 0..dim-1, linked by the lemma
/// isomorphism pair@level(j) ~= pi_0(equivariant)@level(j+1); the top pair
/// slot carries the equivariant classes in dimension dim.
struct SequenceLadder {
  StiefelTarget space;
  ActionTag action = ActionTag::kBDI;
  int dim = 1;
  std::vector<std::array<SlotValue, 5>> rows;
  std::vector<std::string> trace;

  SlotValue& at(const SlotRef& ref) { return rows[ref.level][ref.pos]; }
  const SlotValue& at(const SlotRef& ref) const { return rows[ref.level][ref.pos]; }
  SlotRef answer_slot() const { return {dim - 1, kPair}; }
};

/// Resolution hint: assigns a group to a pair slot, e.g. "pair@level0=Z".
/// An optional "#provenance" suffix overrides the default "user".
struct Hint {
  int level = 0;
  AbGroup group;
  std::string provenance = "user";
};
Hint parse_hint(const std::string& text);

SequenceLadder build_ladder(const StiefelTarget& space, ActionTag action, int dim,
                            const GroupDataFile& data);

enum class SlotStatus { kDetermined, kUpToExtension, kUnknown };

struct SlotReport {
  SlotRef ref;
  SlotStatus status = SlotStatus::kUnknown;
  SlotValue value;
};

struct ResolutionReport {
  std::vector<SlotReport> slots;  // row-major, deterministic order
  std::vector<std::string> trace;
  SlotReport answer;
};

/// Fixed-point propagation of the exactness deduction rules; deterministic
/// and idempotent. Throws numerical-consistency errors naming the slot when
/// the data contradict exactness.
ResolutionReport propagate(SequenceLadder& ladder,
                           const std::vector<Hint>& hints = {});

/// Parse "pi<D> (Omega^<j> V_<n>(C^<m>))^Z2 [BDI|CII]", rewrite via the
/// lemma until a ladder slot is reached, build, propagate, and report with a
/// full derivation trace.
ResolutionReport derive_query(const std::string& query, const GroupDataFile& data,
                              const std::vector<Hint>& hints = {});

struct ParsedQuery {
  HomotopyTerm term;
  ActionTag action;
};
ParsedQuery parse_query(const std::string& query);

}  // namespace rigidity
