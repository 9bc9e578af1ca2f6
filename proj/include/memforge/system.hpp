// system.hpp -- whole membrane systems and their signature accounting
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "memforge/membrane.hpp"
#include "memforge/rules.hpp"

namespace memforge {

// A P system with active membranes: alphabets, labels, allowed op set,
// initial configuration, rules, the output alphabet shared by all four
// output modes, and an optional traveller object for traces.
struct PSystem {
  std::set<Symbol> objects;
  std::set<Label> labels;  // K; never contains the skin label "0"
  OpSet ops = OpSet::all();
  bool ops_declared = false;  // false: "ops:" header absent, fully permissive
  Configuration init;
  std::vector<Rule> rules;
  std::set<std::string> output_alphabet;  // matched against labels or objects per mode
  std::optional<Symbol> traveller;
};

struct LopSignature {
  std::size_t m = 0;  // membranes in the initial configuration
  std::size_t n = 0;  // |K ∪ {0}| counting labels actually used in init or rules
};

LopSignature lop_signature(const PSystem& system);

// Labels appearing in the initial tree or mentioned by any rule, skin
// included when used.
std::set<Label> used_labels(const PSystem& system);

}  // namespace memforge
