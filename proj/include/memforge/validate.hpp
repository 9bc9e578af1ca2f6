// validate.hpp -- system validation against declared alphabets and op sets
#pragma once

#include <string>
#include <vector>

#include "memforge/system.hpp"

namespace memforge {

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::size_t line = 0;  // 0 when the system was built in memory
  std::size_t column = 0;
  std::string message;
};

struct ValidationReport {
  bool ok = true;
  OpSet op_codes_used;
  LopSignature lop;
  std::vector<Diagnostic> diagnostics;

  void error(const std::string& message, std::size_t line = 0, std::size_t column = 0) {
    diagnostics.push_back({Severity::Error, line, column, message});
    ok = false;
  }
  void warn(const std::string& message, std::size_t line = 0, std::size_t column = 0) {
    diagnostics.push_back({Severity::Warning, line, column, message});
  }
};

// Checks alphabet discipline, rule well-formedness, traveller immutability
// and op-set conformance against `declared_ops`. Primed structural
// declarations cannot be checked statically per membrane; they install the
// engine's elementary-only guard instead, which classify_rule reflects via
// the primed codes in op_codes_used.
ValidationReport validate_psystem(const PSystem& system, const OpSet& declared_ops);

// Same, against the system's own declared op set.
ValidationReport validate_psystem(const PSystem& system);

}  // namespace memforge
