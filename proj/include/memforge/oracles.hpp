// oracles.hpp -- reference interpreters for register machines and matrix
// grammars, used as ground truth for the compiled membrane systems
#pragma once

#include <cstdint>
#include <vector>

#include "memforge/mg.hpp"
#include "memforge/outputs.hpp"
#include "memforge/rm.hpp"

namespace memforge {

// Breadth-first closure over machine states (label, registers, tape).
// Branches on ADD continuations, prunes tapes longer than max_len and
// states past max_steps; registers are capped (cap breaches and live
// states at the step horizon set cap_hit). Returns all halting tapes of
// length <= max_len.
StringSet rm_enumerate(const RegisterMachine& machine, std::size_t max_len, std::uint64_t max_steps,
                       Count register_cap = 64);

using SententialForm = std::vector<Symbol>;

// Applies the matrix's rules in order; each context-free rule rewrites one
// nondeterministically chosen occurrence (all choices returned), an
// appearance-checking rule is skipped exactly when its left symbol is
// absent. Throws NotApplicableError when a non-checking rule's left symbol
// is absent.
std::vector<SententialForm> mg_apply_matrix(const SententialForm& form, const Matrix& matrix);

// Breadth-first closure from S over the initial, type 2/3 and terminal
// matrices; forms containing # are pruned immediately. Collects terminal
// forms whose concatenation is at most max_len characters.
StringSet mg_enumerate(const MatrixGrammar& grammar, std::size_t max_len, std::uint64_t max_derivation);

}  // namespace memforge
