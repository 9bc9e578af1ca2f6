#include "memforge/oracles.hpp"

#include <algorithm>
#include <set>

namespace memforge {

namespace {

struct RmState {
  std::string label;
  std::vector<Count> registers;
  std::string tape;

  bool operator<(const RmState& other) const {
    return std::tie(label, registers, tape) < std::tie(other.label, other.registers, other.tape);
  }
};

}  // namespace

StringSet rm_enumerate(const RegisterMachine& machine, std::size_t max_len, std::uint64_t max_steps,
                       Count register_cap) {
  StringSet out;
  std::set<RmState> visited;
  std::vector<RmState> frontier;

  RmState init{machine.start, std::vector<Count>(static_cast<std::size_t>(machine.registers), 0), ""};
  visited.insert(init);
  frontier.push_back(std::move(init));

  auto push = [&](RmState state, std::vector<RmState>& next) {
    if (state.tape.size() > max_len) return;  // tapes only grow
    for (Count reg : state.registers)
      if (reg > register_cap) {
        out.cap_hit = true;
        return;
      }
    if (visited.insert(state).second) next.push_back(std::move(state));
  };

  for (std::uint64_t step = 0; step < max_steps && !frontier.empty(); ++step) {
    std::vector<RmState> next;
    for (const RmState& state : frontier) {
      const RmInstruction& inst = machine.instructions.at(state.label);
      switch (inst.kind) {
        case RmInstruction::Kind::Halt:
          if (state.tape.size() <= max_len) out.strings.insert(state.tape);
          break;
        case RmInstruction::Kind::Add: {
          RmState s = state;
          s.registers[static_cast<std::size_t>(inst.reg - 1)] += 1;
          RmState branch = s;
          s.label = inst.target_j;
          push(std::move(s), next);
          branch.label = inst.target_k;
          push(std::move(branch), next);
          break;
        }
        case RmInstruction::Kind::Sub: {
          RmState s = state;
          Count& reg = s.registers[static_cast<std::size_t>(inst.reg - 1)];
          if (reg > 0) {
            reg -= 1;
            s.label = inst.target_j;
          } else {
            s.label = inst.target_k;
          }
          push(std::move(s), next);
          break;
        }
        case RmInstruction::Kind::Write: {
          RmState s = state;
          s.tape += inst.write_symbol;
          s.label = inst.target_j;
          push(std::move(s), next);
          break;
        }
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) out.cap_hit = true;  // live states at the horizon
  return out;
}

namespace {

// All ways to rewrite one occurrence of lhs by rhs.
std::vector<SententialForm> rewrite_occurrences(const SententialForm& form, const Symbol& lhs,
                                                const std::vector<Symbol>& rhs) {
  std::vector<SententialForm> out;
  for (std::size_t i = 0; i < form.size(); ++i) {
    if (form[i] != lhs) continue;
    SententialForm next;
    next.reserve(form.size() + rhs.size());
    next.insert(next.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(i));
    next.insert(next.end(), rhs.begin(), rhs.end());
    next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(i) + 1, form.end());
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<SententialForm> apply_rule(const SententialForm& form, const Symbol& lhs,
                                       const std::vector<Symbol>& rhs, bool appearance_check) {
  const bool present = std::count(form.begin(), form.end(), lhs) != 0;
  if (!present) {
    if (appearance_check) return {form};  // skipped
    throw NotApplicableError("rule left symbol '" + lhs + "' does not occur");
  }
  return rewrite_occurrences(form, lhs, rhs);
}

}  // namespace

std::vector<SententialForm> mg_apply_matrix(const SententialForm& form, const Matrix& matrix) {
  std::vector<SententialForm> after_first =
      apply_rule(form, matrix.first_lhs, {matrix.first_rhs}, false);
  std::set<SententialForm> results;
  for (const SententialForm& mid : after_first)
    for (SententialForm& done :
         apply_rule(mid, matrix.second_lhs, matrix.second_rhs, matrix.appearance_check))
      results.insert(std::move(done));
  return {results.begin(), results.end()};
}

StringSet mg_enumerate(const MatrixGrammar& grammar, std::size_t max_len,
                       std::uint64_t max_derivation) {
  StringSet out;
  std::set<SententialForm> visited;
  std::vector<SententialForm> frontier;

  const SententialForm axiom{kAxiom};
  visited.insert(axiom);
  frontier.push_back(axiom);

  auto is_marker = [&](const Symbol& s) {
    return s == kAxiom || s == kFinisher || grammar.in_n1(s);
  };
  auto dead_or_oversized = [&](const SententialForm& form) {
    std::size_t floor = 0;  // every N2/T symbol yields at least one character
    for (const Symbol& s : form) {
      if (s == kTrap) return true;
      if (!is_marker(s)) ++floor;
    }
    return floor > max_len;
  };

  auto consider = [&](SententialForm form, std::vector<SententialForm>& next) {
    if (dead_or_oversized(form)) return;
    if (std::all_of(form.begin(), form.end(), [&](const Symbol& s) { return grammar.in_t(s); })) {
      std::string word;
      for (const Symbol& s : form) word += s;
      if (word.size() <= max_len) out.strings.insert(word);
      return;
    }
    // No N1/Z symbol left to drive further matrices: a stuck non-terminal.
    if (std::none_of(form.begin(), form.end(), is_marker)) return;
    if (visited.insert(form).second) next.push_back(std::move(form));
  };

  for (std::uint64_t depth = 0; depth < max_derivation && !frontier.empty(); ++depth) {
    std::vector<SententialForm> next;
    for (const SententialForm& form : frontier) {
      // Initial matrix (S -> X A).
      if (std::count(form.begin(), form.end(), kAxiom)) {
        for (SententialForm& f :
             rewrite_occurrences(form, kAxiom, {grammar.init_n1, grammar.init_n2}))
          consider(std::move(f), next);
      }
      // Terminal matrix (Z -> lambda).
      if (std::count(form.begin(), form.end(), kFinisher)) {
        for (SententialForm& f : rewrite_occurrences(form, kFinisher, {})) consider(std::move(f), next);
      }
      for (const Matrix& matrix : grammar.matrices) {
        try {
          for (SententialForm& f : mg_apply_matrix(form, matrix)) consider(std::move(f), next);
        } catch (const NotApplicableError&) {
        }
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty()) out.cap_hit = true;
  return out;
}

}  // namespace memforge
