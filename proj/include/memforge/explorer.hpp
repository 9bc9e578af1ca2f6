// explorer.hpp -- bounded exhaustive exploration and seeded single runs
//
// explore() walks the computation space breadth-first up to max_steps,
// which acts as the exploration horizon: the reported language is the set
// of outputs of computations that halt within that many steps. Cycle
// detection (canonical-form states) and exact length pruning make the
// search quiesce on systems whose runs either halt, loop, or provably
// outgrow max_string_len. `truncated` is set only when a resource cap
// (max_configs, max_membranes, max_objects, max_strings) cut behaviour the
// search had not finished examining; reaching the step horizon or dropping
// provably over-long branches does not truncate.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "memforge/engine.hpp"
#include "memforge/outputs.hpp"
#include "memforge/system.hpp"

namespace memforge {

struct Limits {
  std::uint64_t max_steps = 500;
  std::uint64_t max_configs = 100000;
  std::uint64_t max_membranes = 256;
  std::uint64_t max_objects = 65536;
  std::uint64_t max_string_len = 8;
  std::uint64_t max_strings = 10000;
};

struct ExploreStats {
  std::uint64_t states = 0;   // distinct exploration states visited
  std::uint64_t halting = 0;  // states with no applicable rule
  std::uint64_t cycles = 0;   // successor edges into already-seen states
  std::uint64_t pruned = 0;   // horizon, length and resource prunes
};

struct LanguageSample {
  StringSet strings;
  // Length bound the sample is exhaustive for (within the step horizon);
  // 0 when truncated.
  std::uint64_t complete_up_to = 0;
  bool truncated = false;
  ExploreStats stats;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<StepEvents> log;
  Configuration final_config;
  bool halted = false;
  StringSet outputs;  // empty unless halted
};

// Enumerate the language generated under `mode`. Throws
// IncompatibleModeError for traces without a declared traveller.
LanguageSample explore(const PSystem& system, OutputMode mode, const Limits& limits,
                       const EngineOptions& options);

// One seeded trajectory: deterministic under a fixed seed, halting or
// cut at max_steps.
RunReport random_run(const PSystem& system, OutputMode mode, std::uint64_t seed, const Limits& limits,
                     const EngineOptions& options);

namespace explorer_detail {

// True when no rule can decrease the number of alphabet-labelled membranes
// (resp. alphabet objects in the tree); enables exact pruning of states
// whose eventual lab (resp. obj) output must exceed the length bound.
bool alphabet_labels_monotone(const PSystem& system, const Alphabet& alphabet);
bool alphabet_objects_monotone(const PSystem& system, const Alphabet& alphabet);

std::size_t count_alphabet_labels(const Membrane& root, const Alphabet& alphabet);
Count count_alphabet_objects(const Membrane& m, const Alphabet& alphabet);

std::size_t worker_threads();  // MEMFORGE_THREADS override, else hardware

}  // namespace explorer_detail

}  // namespace memforge
