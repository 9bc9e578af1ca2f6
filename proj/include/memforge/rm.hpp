// rm.hpp -- register machines with output tape (.rm format)
#pragma once

#include <map>
#include <string>
#include <vector>

#include "memforge/errors.hpp"
#include "memforge/multiset.hpp"

namespace memforge {

struct RmInstruction {
  enum class Kind { Add, Sub, Write, Halt };
  Kind kind = Kind::Halt;
  int reg = 0;            // Add/Sub
  Symbol write_symbol;    // Write
  std::string target_j;   // Add/Sub first continuation, Write continuation
  std::string target_k;   // Add/Sub second continuation
};

// M = (n, T, H, l0, lh, I); labels map to instructions one-to-one, the
// halt instruction only ever sits at lh (and is implicit there when not
// written out).
struct RegisterMachine {
  int registers = 0;
  std::vector<Symbol> output_alphabet;
  std::string start;
  std::string halt;
  std::map<std::string, RmInstruction> instructions;
};

// Format:
//   registers: N
//   output: a b ...
//   start: l0
//   halt: lh
//   l: ADD r lj lk | SUB r lj lk | WRITE a lnext | HALT
RegisterMachine parse_rm(const std::string& text);
std::string serialize_rm(const RegisterMachine& machine);

}  // namespace memforge
