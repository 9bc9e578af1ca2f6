// rules.hpp -- the seven rule forms, op codes and op sets
#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "memforge/membrane.hpp"
#include "memforge/multiset.hpp"

namespace memforge {

// [i a -> v] : inside a membrane labelled `host`, one `trigger` becomes the
// multiset `output`.
struct Rewrite {
  Label host;
  Symbol trigger;
  Multiset output;
};

// [i a] -> b [j] : `trigger` leaves the membrane as `sent`; the membrane is
// relabelled to `relabel` (equal to host for the plain form). From the skin
// the object goes to the environment.
struct SendOut {
  Label host;
  Symbol trigger;
  Symbol sent;
  Label relabel;
};

// a [i] -> [j b] : `trigger` in the parent enters a child labelled `target`
// as `moved`; the child is relabelled to `relabel`.
struct SendIn {
  Symbol trigger;
  Label target;
  Symbol moved;
  Label relabel;
};

// [i a -> [j v]] : `trigger` is consumed and a fresh elementary membrane
// labelled `created` appears with contents `payload` (possibly empty or
// larger than a singleton).
struct Create {
  Label host;
  Symbol trigger;
  Label created;
  Multiset payload;
};

// [i a] -> [k b] [j c] : the membrane splits in two; contents and subtrees
// are copied into both, with the trigger replaced per side.
struct Divide {
  Label host;
  Symbol trigger;
  Label left_label;
  Symbol left_object;
  Label right_label;
  Symbol right_object;
};

// [i a] -> [k b [j c]] : the membrane is relabelled to `inner_label` with
// the trigger becoming `inner_object`, and gains a new enclosing membrane
// `outer_label` holding `outer_object`.
struct Duplicate {
  Label host;
  Symbol trigger;
  Label outer_label;
  Symbol outer_object;
  Label inner_label;
  Symbol inner_object;
};

// [i a] -> v : the membrane vanishes; its contents and children spill into
// the parent, with the trigger replaced by `result` (identity in the base
// form, arbitrary in the generalized one).
struct Dissolve {
  Label host;
  Symbol trigger;
  Multiset result;
};

using Rule = std::variant<Rewrite, SendOut, SendIn, Create, Divide, Duplicate, Dissolve>;

enum class OpCode {
  A,
  B,
  BPrime,
  C,
  CPrime,
  D,
  DStar,
  E,
  EPrime,
  F,
  FPrime,
  G,
  GPrime,
  GStar,
};

std::string to_string(OpCode code);
std::optional<OpCode> parse_opcode(const std::string& token);

// A subset of op codes. Primed structural codes (e', f', g') admit their
// rule family on elementary membranes only; d*/g* admit the generalized
// creation/dissolution payloads.
class OpSet {
public:
  OpSet() = default;
  OpSet(std::initializer_list<OpCode> codes) : codes_(codes) {}

  static OpSet all();

  bool contains(OpCode code) const { return codes_.count(code) != 0; }
  void insert(OpCode code) { codes_.insert(code); }
  bool empty() const { return codes_.empty(); }
  const std::set<OpCode>& codes() const { return codes_; }

  // True when the family's rules are confined to elementary membranes:
  // the primed code is declared without its unprimed generalization.
  bool elementary_only(OpCode unprimed) const;

  bool is_subset_of(const OpSet& other) const;
  bool operator==(const OpSet& other) const = default;

  std::string to_string() const;  // "a b c' d*" in canonical order

private:
  std::set<OpCode> codes_;
};

// The most specific code for a rule. The hint marks structural rules whose
// system confines them to elementary membranes; generalized payloads win
// over the primed annotation (a non-identity dissolve is g* even when
// elementary-only).
OpCode classify_rule(const Rule& rule, bool elementary_only_hint = false);

// Labels mentioned by a rule (hosts, targets, relabels).
std::vector<Label> rule_labels(const Rule& rule);
// Object symbols mentioned by a rule (triggers, results, payloads).
std::vector<Symbol> rule_symbols(const Rule& rule);

bool rules_equal(const Rule& a, const Rule& b);

}  // namespace memforge
