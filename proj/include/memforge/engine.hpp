// engine.hpp -- two-phase maximally parallel nondeterministic step semantics
//
// One step: objects evolve first by rewrite/send-out/send-in/create, then
// membranes by divide/duplicate/dissolve. Phase 1 applicability is judged
// against the configuration at phase start; phase 2 against the
// post-phase-1 configuration, so an object produced in phase 1 can trigger
// a structural rule the same step. All functions are pure.
#pragma once

#include <cstdint>
#include <vector>

#include "memforge/errors.hpp"
#include "memforge/system.hpp"

namespace memforge {

enum class CrossingPolicy {
  Single,  // each membrane crossed by at most one send-out/send-in per phase
  Multi,   // crossings unbounded; label-changing crossings stay exclusive
};

struct EngineOptions {
  CrossingPolicy crossing_policy = CrossingPolicy::Single;
  bool record_events = true;  // crossing events; emissions are always tracked
};

enum class CrossDirection { In, Out };

struct Crossing {
  Symbol object;        // the matched (pre-rule) object
  MembraneId membrane;  // the membrane crossed
  Label label_at_match; // its label before any relabelling this step
  CrossDirection direction;
};

struct StepEvents {
  std::vector<Crossing> crossings;
  Multiset emissions;  // objects sent past the skin this step
  std::vector<MembraneId> dissolved;
  std::vector<MembraneId> created;
  std::vector<MembraneId> divided;
  std::vector<MembraneId> duplicated;

  void merge(const StepEvents& other);
  // Identifier-free fingerprint used to deduplicate successors.
  std::string digest() const;
};

struct Successor {
  Configuration config;
  StepEvents events;
};

// Every maximal outcome of the object phase. When nothing is applicable the
// sole successor is the configuration itself with empty events.
std::vector<Successor> object_phase_successors(const Configuration& config, const PSystem& system,
                                               const EngineOptions& options);

// Every outcome of the membrane phase: each membrane with an applicable
// structural rule fires exactly one, applied bottom-up (a child's effect
// precedes its parent's). Identity outcome when nothing is applicable.
std::vector<Successor> membrane_phase_successors(const Configuration& config, const PSystem& system,
                                                 const EngineOptions& options);

// Both phases composed; step_index advanced, emissions appended to the
// environment log, results deduplicated by canonical key and event digest
// and sorted deterministically. Empty iff the configuration is halting.
std::vector<Successor> step_successors(const Configuration& config, const PSystem& system,
                                       const EngineOptions& options);

bool is_halting(const Configuration& config, const PSystem& system, const EngineOptions& options);

// One successor sampled from step_successors via a deterministic
// pseudorandom stream. Throws HaltedError when no successor exists.
Successor seeded_step(const Configuration& config, const PSystem& system, const EngineOptions& options,
                      std::uint64_t seed);

namespace engine_detail {

// One applicable placement of a phase-1 rule, judged at phase start.
struct ObjectInstance {
  std::size_t rule_index;
  MembraneId host;    // membrane whose contents hold the trigger
  MembraneId target;  // SendIn target child; equal to host otherwise

  bool operator==(const ObjectInstance&) const = default;
};

struct InstanceUse {
  ObjectInstance instance;
  Count multiplicity;
};

using ObjectAssignment = std::vector<InstanceUse>;

// Remaining capacities while building an assignment.
struct Resources {
  std::map<std::pair<MembraneId, Symbol>, Count> objects;
  std::map<MembraneId, Count> crossings;  // absent under Multi policy
  std::map<MembraneId, Count> relabels;
  bool single_policy = true;

  // Largest multiplicity of `inst` still admissible.
  Count headroom(const ObjectInstance& inst, const PSystem& system, const Configuration& config) const;
  void consume(const ObjectInstance& inst, const PSystem& system, const Configuration& config, Count n);
};

std::vector<ObjectInstance> object_instances(const Configuration& config, const PSystem& system);
Resources initial_resources(const Configuration& config, const EngineOptions& options);

// All maximal assignments: no instance can be added without breaching an
// object count or crossing constraint.
std::vector<ObjectAssignment> object_assignments(const Configuration& config, const PSystem& system,
                                                 const EngineOptions& options);

// Structural options per membrane for the current tree.
struct StructuralOption {
  MembraneId membrane;
  std::size_t rule_index;
};
std::vector<StructuralOption> structural_options(const Configuration& config, const PSystem& system);

}  // namespace engine_detail

}  // namespace memforge
