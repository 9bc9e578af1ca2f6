// compilers.hpp -- register machine and matrix grammar to membrane system
//
// compile_rm simulates a 2-register machine with output tape: registers
// are membranes 1/2 holding a_i tokens, WRITE grows a nested chain of
// letter-labelled membranes ending in [$], SUB zero-tests through a
// created membrane 3, and the mode decides how the finished chain is read
// out (tree visit, traveller walk, or emission shuttle). compile_mg
// simulates a matrix grammar in Z-binary normal form: the sentential form
// lives in the chain's labels, matrices walk a control object down and
// back, appearance checks divert into a self-rewriting trap, and a final
// sweep validates terminality and deposits or emits the letters.
#pragma once

#include <string>
#include <vector>

#include "memforge/mg.hpp"
#include "memforge/outputs.hpp"
#include "memforge/rm.hpp"
#include "memforge/system.hpp"

namespace memforge {

enum class GadgetTag {
  Bootstrap,
  Add,
  Sub,
  Write,
  Cleanup,
  TravellerWalk,
  ExtShuttle,
  Deposit,
  MgInit,
  MgDescent,
  MgRewrite1,
  MgInsert2,
  MgAppearanceCheck,
  MgTrap,
  MgSweep,
};

std::string to_string(GadgetTag tag);

struct CompiledSystem {
  PSystem system;
  std::vector<GadgetTag> gadgets;  // parallel to system.rules
  std::vector<std::string> warnings;

  // The emitted document with "# gadget:" annotations.
  std::string to_psys() const;
  // The system minus all rules of one tag, for load-bearing checks.
  PSystem without_gadget(GadgetTag tag) const;
};

// Theorem-style simulation of a 2-register machine; all four modes.
// Throws NeedsTwoRegistersError for other register counts.
CompiledSystem compile_rm(const RegisterMachine& machine, OutputMode mode);

// Matrix grammar simulation; lab/obj/ext only, throws
// TracesUnsupportedError for traces.
CompiledSystem compile_mg(const MatrixGrammar& grammar, OutputMode mode);

namespace compile_detail {

// Hands out names, bumping with primes on collision; every rename is
// reported so callers can surface a warning.
class NameAllocator {
public:
  void reserve(const std::string& name) { taken_.insert(name); }
  std::string fresh(const std::string& base) {
    std::string name = base;
    while (taken_.count(name)) name += '\'';
    if (name != base) renames_.push_back(base + " -> " + name);
    taken_.insert(name);
    return name;
  }
  const std::vector<std::string>& renames() const { return renames_; }

private:
  std::set<std::string> taken_;
  std::vector<std::string> renames_;
};

}  // namespace compile_detail

}  // namespace memforge
