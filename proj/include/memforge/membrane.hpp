// membrane.hpp -- labelled membrane trees, configurations, canonical keys
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memforge/multiset.hpp"

namespace memforge {

using Label = std::string;
using MembraneId = std::uint64_t;

// The skin (root) membrane always carries this label; it is never a member
// of the declared label set K.
inline const Label kSkinLabel = "0";

// One membrane: a labelled region holding a multiset of objects and an
// ordered list of child membranes. Sibling order is kept for deterministic
// serialization but is semantically irrelevant; equality questions go
// through canonical_key().
struct Membrane {
  MembraneId id = 0;
  Label label;
  Multiset contents;
  std::vector<Membrane> children;

  bool elementary() const { return children.empty(); }
};

// Objects emitted past the skin during one step.
struct EnvEmission {
  std::uint64_t step = 0;  // 1-based index of the step that emitted
  Multiset objects;
};

// A full instantaneous description: the membrane tree plus the emission log
// that feeds the ext output mode. step_index counts completed steps.
// next_id is the id allocator watermark for membranes created later.
struct Configuration {
  Membrane root;
  std::uint64_t step_index = 0;
  std::vector<EnvEmission> environment_log;
  MembraneId next_id = 1;
};

using CanonicalKey = std::string;

// Key equal for two trees iff they are isomorphic under reordering of
// sibling membranes; computed recursively as (label, sorted contents,
// sorted child keys). Length-prefixed encoding keeps arbitrary tokens
// unambiguous. step_index and the environment log are deliberately not
// part of the key.
CanonicalKey canonical_key(const Membrane& m);
CanonicalKey canonical_key(const Configuration& config);

// Tree construction helper for tests and parsers: assigns fresh ids in
// preorder starting at the given watermark.
MembraneId assign_ids(Membrane& m, MembraneId next);

// Wraps a root membrane into a Configuration, assigning ids.
Configuration make_configuration(Membrane root);

std::size_t membrane_count(const Membrane& m);
Count object_count(const Membrane& m);

// Pointer to the membrane with the given id, or nullptr.
const Membrane* find_membrane(const Membrane& m, MembraneId id);

// Bracket rendering, e.g. "[0 a [1 b b]]"; objects sorted, children in
// stored order.
std::string format_membrane(const Membrane& m);

}  // namespace memforge
