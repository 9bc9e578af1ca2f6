// outputs.hpp -- string extraction from halting configurations and event logs
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "memforge/engine.hpp"
#include "memforge/membrane.hpp"

namespace memforge {

enum class OutputMode { Lab, Obj, Traces, Ext };

std::string to_string(OutputMode mode);
std::optional<OutputMode> parse_output_mode(const std::string& token);

using Alphabet = std::set<std::string>;

struct StringSet {
  std::set<std::string> strings;
  bool cap_hit = false;

  bool operator==(const StringSet& other) const = default;
};

// Preorder visit of the membrane tree. lab concatenates labels (the skin's
// never), obj concatenates every permutation of each membrane's contents;
// sibling membranes contribute in every possible order. Everything is
// projected onto the output alphabet. At most `cap` strings are kept.
StringSet traversal_strings(const Configuration& config, OutputMode mode, const Alphabet& alphabet,
                            std::size_t cap);

// Labels of membranes crossed by the traveller, in temporal order,
// projected. Throws MultipleTravellerCrossingsError when one step shows
// more than one traveller crossing.
std::string trace_string(const std::vector<StepEvents>& events, const Symbol& traveller,
                         const Alphabet& alphabet);

// Per step, every permutation of the step's emitted multiset (projected),
// concatenated across steps in temporal order.
StringSet external_strings(const std::vector<EnvEmission>& env_log, const Alphabet& alphabet,
                           std::size_t cap);

// All distinct orderings of a projected multiset, as concatenated token
// strings. Shared by obj traversal and the ext mode.
std::vector<std::string> multiset_permutations(const Multiset& ms, const Alphabet& alphabet);

}  // namespace memforge
