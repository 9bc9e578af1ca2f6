// psys_format.hpp -- the .psys textual format
//
// Whitespace-separated tokens; '[' and ']' always stand alone; any other
// run of non-whitespace, non-bracket characters is one token (primes,
// commas, parens included, so names like l''_0 and (a,l') work as-is).
// A line whose first non-blank character is '#' is a comment; '#' is an
// ordinary token elsewhere, which keeps trap rules like [# # -> #]
// parseable. Rules live one per line after the "rules:" marker.
#pragma once

#include <string>
#include <vector>

#include "memforge/errors.hpp"
#include "memforge/system.hpp"

namespace memforge {

PSystem parse_psystem(const std::string& text);

// Canonical rendering; parse(serialize(s)) == s up to membrane ids.
std::string serialize_psystem(const PSystem& system);

// Same, with one "# gadget: <tag>" comment line per rule. `annotations`
// parallels system.rules; empty strings suppress the comment.
std::string serialize_psystem(const PSystem& system, const std::vector<std::string>& annotations);

std::string serialize_rule(const Rule& rule);

// Bare-tree helpers shared with tests: "[0 a [1 b b]]".
Membrane parse_tree(const std::string& text);

}  // namespace memforge
