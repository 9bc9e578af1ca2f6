// naive_engine.hpp -- brute-force reference semantics for cross-checking
//
// Enumerates assignments at the level of individual object instances (one
// slot per object copy, a cartesian product of per-slot choices) instead of
// the engine's instance-type multiplicities, filters for crossing validity
// and maximality, and applies effects with its own tree rebuild. Slow and
// only fit for tiny configurations, which is the point.
#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "memforge/engine.hpp"

namespace memforge::naive {

std::vector<Successor> object_phase(const Configuration& config, const PSystem& system,
                                    const EngineOptions& options);
std::vector<Successor> membrane_phase(const Configuration& config, const PSystem& system,
                                      const EngineOptions& options);
std::vector<Successor> step(const Configuration& config, const PSystem& system,
                            const EngineOptions& options);

// Comparison form: canonical key plus event digest, as a set.
std::set<std::pair<std::string, std::string>> keyed(const std::vector<Successor>& successors);

}  // namespace memforge::naive
