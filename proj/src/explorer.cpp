#include "memforge/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <thread>
#include <unordered_set>

namespace memforge {

namespace explorer_detail {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int alpha(const Alphabet& alphabet, const std::string& name) { return alphabet.count(name) ? 1 : 0; }

Count alpha_total(const Multiset& ms, const Alphabet& alphabet) {
  Count n = 0;
  for (const auto& [sym, count] : ms.items())
    if (alphabet.count(sym)) n += count;
  return n;
}

}  // namespace

bool alphabet_labels_monotone(const PSystem& system, const Alphabet& alphabet) {
  for (const Rule& rule : system.rules) {
    const int delta = std::visit(
        Overloaded{
            [&](const Rewrite&) { return 0; },
            [&](const SendOut& r) { return alpha(alphabet, r.relabel) - alpha(alphabet, r.host); },
            [&](const SendIn& r) { return alpha(alphabet, r.relabel) - alpha(alphabet, r.target); },
            [&](const Create&) { return 0; },
            [&](const Divide& r) {
              return alpha(alphabet, r.left_label) + alpha(alphabet, r.right_label) -
                     alpha(alphabet, r.host);
            },
            [&](const Duplicate& r) {
              return alpha(alphabet, r.outer_label) + alpha(alphabet, r.inner_label) -
                     alpha(alphabet, r.host);
            },
            [&](const Dissolve& r) { return -alpha(alphabet, r.host); },
        },
        rule);
    if (delta < 0) return false;
  }
  return true;
}

bool alphabet_objects_monotone(const PSystem& system, const Alphabet& alphabet) {
  for (const Rule& rule : system.rules) {
    const Count delta = std::visit(
        Overloaded{
            [&](const Rewrite& r) -> Count {
              return alpha_total(r.output, alphabet) - alpha(alphabet, r.trigger);
            },
            [&](const SendOut& r) -> Count {
              // From the skin the object leaves the tree entirely.
              if (r.host == kSkinLabel) return -alpha(alphabet, r.trigger);
              return alpha(alphabet, r.sent) - alpha(alphabet, r.trigger);
            },
            [&](const SendIn& r) -> Count {
              return alpha(alphabet, r.moved) - alpha(alphabet, r.trigger);
            },
            [&](const Create& r) -> Count {
              return alpha_total(r.payload, alphabet) - alpha(alphabet, r.trigger);
            },
            [&](const Divide& r) -> Count {
              return alpha(alphabet, r.left_object) + alpha(alphabet, r.right_object) -
                     alpha(alphabet, r.trigger);
            },
            [&](const Duplicate& r) -> Count {
              return alpha(alphabet, r.outer_object) + alpha(alphabet, r.inner_object) -
                     alpha(alphabet, r.trigger);
            },
            [&](const Dissolve& r) -> Count {
              return alpha_total(r.result, alphabet) - alpha(alphabet, r.trigger);
            },
        },
        rule);
    if (delta < 0) return false;
  }
  return true;
}

std::size_t count_alphabet_labels(const Membrane& root, const Alphabet& alphabet) {
  std::size_t n = 0;
  for (const Membrane& c : root.children) {
    n += count_alphabet_labels(c, alphabet);
    if (alphabet.count(c.label)) ++n;
  }
  return n;
}

Count count_alphabet_objects(const Membrane& m, const Alphabet& alphabet) {
  Count n = alpha_total(m.contents, alphabet);
  for (const Membrane& c : m.children) n += count_alphabet_objects(c, alphabet);
  return n;
}

std::size_t worker_threads() {
  if (const char* env = std::getenv("MEMFORGE_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(std::min<long>(v, 64));
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return std::clamp<std::size_t>(hw == 0 ? 1 : hw, 1, 8);
}

}  // namespace explorer_detail

namespace {

struct State {
  Configuration config;
  std::string trace_acc;                 // traces mode
  std::set<std::string> ext_prefixes;    // ext mode
};

std::string state_id(const State& s, OutputMode mode) {
  std::string id = canonical_key(s.config);
  if (mode == OutputMode::Traces) {
    id += "|T";
    id += s.trace_acc;
  } else if (mode == OutputMode::Ext) {
    id += "|E";
    for (const std::string& p : s.ext_prefixes) {
      id += std::to_string(p.size());
      id += ':';
      id += p;
    }
  }
  return id;
}

struct Expansion {
  bool halted = false;
  std::vector<std::string> outputs;  // pre length-filter
  bool outputs_cap_hit = false;
  std::vector<State> successors;
  std::uint64_t pruned = 0;
  std::uint64_t resource_truncations = 0;
};

struct ExpandContext {
  const PSystem& system;
  OutputMode mode;
  const Limits& limits;
  const EngineOptions& options;
  bool labels_monotone;
  bool objects_monotone;
};

Expansion expand(const ExpandContext& ctx, const State& state, bool at_horizon) {
  Expansion out;
  const Alphabet& alphabet = ctx.system.output_alphabet;

  if (is_halting(state.config, ctx.system, ctx.options)) {
    out.halted = true;
    switch (ctx.mode) {
      case OutputMode::Lab:
      case OutputMode::Obj: {
        StringSet set = traversal_strings(state.config, ctx.mode, alphabet, ctx.limits.max_strings);
        out.outputs.assign(set.strings.begin(), set.strings.end());
        out.outputs_cap_hit = set.cap_hit;
        break;
      }
      case OutputMode::Traces:
        out.outputs.push_back(state.trace_acc);
        break;
      case OutputMode::Ext:
        out.outputs.assign(state.ext_prefixes.begin(), state.ext_prefixes.end());
        break;
    }
    return out;
  }

  if (at_horizon) {
    ++out.pruned;
    return out;
  }

  for (Successor& succ : step_successors(state.config, ctx.system, ctx.options)) {
    if (membrane_count(succ.config.root) > ctx.limits.max_membranes ||
        static_cast<std::uint64_t>(object_count(succ.config.root)) > ctx.limits.max_objects) {
      ++out.pruned;
      ++out.resource_truncations;
      continue;
    }

    State next;
    next.trace_acc = state.trace_acc;
    next.ext_prefixes = state.ext_prefixes;

    if (ctx.mode == OutputMode::Traces && ctx.system.traveller) {
      for (const Crossing& c : succ.events.crossings) {
        if (c.object != *ctx.system.traveller) continue;
        if (alphabet.count(c.label_at_match)) next.trace_acc += c.label_at_match;
      }
      if (next.trace_acc.size() > ctx.limits.max_string_len) {
        ++out.pruned;  // the trace only grows; exact
        continue;
      }
    }

    if (ctx.mode == OutputMode::Ext) {
      if (!succ.events.emissions.empty()) {
        std::set<std::string> grown;
        bool over = false;
        for (const std::string& head : next.ext_prefixes)
          for (const std::string& part : multiset_permutations(succ.events.emissions, alphabet)) {
            std::string s = head + part;
            if (s.size() > ctx.limits.max_string_len) continue;  // exact: emissions only append
            grown.insert(std::move(s));
            if (grown.size() > ctx.limits.max_strings) {
              over = true;
              break;
            }
          }
        if (over) {
          ++out.resource_truncations;
          while (grown.size() > ctx.limits.max_strings) grown.erase(std::prev(grown.end()));
        }
        if (grown.empty()) {
          ++out.pruned;
          continue;
        }
        next.ext_prefixes = std::move(grown);
      }
    }

    if (ctx.mode == OutputMode::Lab && ctx.labels_monotone &&
        explorer_detail::count_alphabet_labels(succ.config.root, alphabet) > ctx.limits.max_string_len) {
      ++out.pruned;  // the count never decreases; exact
      continue;
    }
    if (ctx.mode == OutputMode::Obj && ctx.objects_monotone &&
        static_cast<std::uint64_t>(explorer_detail::count_alphabet_objects(succ.config.root, alphabet)) >
            ctx.limits.max_string_len) {
      ++out.pruned;
      continue;
    }

    next.config = std::move(succ.config);
    out.successors.push_back(std::move(next));
  }
  return out;
}

}  // namespace

LanguageSample explore(const PSystem& system, OutputMode mode, const Limits& limits,
                       const EngineOptions& options) {
  if (mode == OutputMode::Traces && !system.traveller)
    throw IncompatibleModeError("traces mode requires a traveller");

  EngineOptions engine_options = options;
  engine_options.record_events = true;

  ExpandContext ctx{system,
                    mode,
                    limits,
                    engine_options,
                    explorer_detail::alphabet_labels_monotone(system, system.output_alphabet),
                    explorer_detail::alphabet_objects_monotone(system, system.output_alphabet)};

  LanguageSample sample;
  std::unordered_set<std::string> visited;

  State init;
  init.config = system.init;
  init.ext_prefixes.insert("");
  visited.insert(state_id(init, mode));
  sample.stats.states = 1;

  std::vector<State> frontier;
  frontier.push_back(std::move(init));

  auto collect = [&](const Expansion& ex) {
    sample.stats.pruned += ex.pruned;
    if (ex.resource_truncations > 0) sample.truncated = true;
    if (ex.halted) {
      ++sample.stats.halting;
      if (ex.outputs_cap_hit) sample.truncated = true;
      for (const std::string& s : ex.outputs) {
        if (s.size() > limits.max_string_len) continue;
        if (sample.strings.strings.size() >= limits.max_strings &&
            !sample.strings.strings.count(s)) {
          sample.strings.cap_hit = true;
          sample.truncated = true;
          continue;
        }
        sample.strings.strings.insert(s);
      }
    }
  };

  const std::size_t threads = explorer_detail::worker_threads();
  std::uint64_t depth = 0;
  bool config_cap_hit = false;

  while (!frontier.empty() && !config_cap_hit) {
    const bool at_horizon = depth >= limits.max_steps;
    std::vector<Expansion> expansions(frontier.size());

    if (threads > 1 && frontier.size() > 1) {
      std::atomic<std::size_t> cursor{0};
      auto worker = [&]() {
        for (;;) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= frontier.size()) return;
          expansions[i] = expand(ctx, frontier[i], at_horizon);
        }
      };
      std::vector<std::thread> pool;
      const std::size_t n = std::min(threads, frontier.size());
      pool.reserve(n);
      for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
      for (std::thread& t : pool) t.join();
    } else {
      for (std::size_t i = 0; i < frontier.size(); ++i)
        expansions[i] = expand(ctx, frontier[i], at_horizon);
    }

    std::vector<State> next_frontier;
    for (Expansion& ex : expansions) {
      collect(ex);
      for (State& succ : ex.successors) {
        std::string id = state_id(succ, mode);
        if (visited.count(id)) {
          ++sample.stats.cycles;
          continue;
        }
        if (visited.size() >= limits.max_configs) {
          sample.truncated = true;
          config_cap_hit = true;
          break;
        }
        visited.insert(std::move(id));
        ++sample.stats.states;
        next_frontier.push_back(std::move(succ));
      }
      if (config_cap_hit) break;
    }
    frontier = std::move(next_frontier);
    ++depth;
  }

  sample.complete_up_to = sample.truncated ? 0 : limits.max_string_len;
  return sample;
}

RunReport random_run(const PSystem& system, OutputMode mode, std::uint64_t seed, const Limits& limits,
                     const EngineOptions& options) {
  if (mode == OutputMode::Traces && !system.traveller)
    throw IncompatibleModeError("traces mode requires a traveller");

  EngineOptions engine_options = options;
  engine_options.record_events = true;

  RunReport report;
  report.seed = seed;

  std::mt19937_64 rng(seed);
  Configuration config = system.init;
  for (std::uint64_t step = 0; step < limits.max_steps; ++step) {
    if (is_halting(config, system, engine_options)) break;
    Successor succ = seeded_step(config, system, engine_options, rng());
    report.log.push_back(succ.events);
    config = std::move(succ.config);
  }

  report.halted = is_halting(config, system, engine_options);
  report.final_config = std::move(config);
  if (report.halted) {
    switch (mode) {
      case OutputMode::Lab:
      case OutputMode::Obj:
        report.outputs =
            traversal_strings(report.final_config, mode, system.output_alphabet, limits.max_strings);
        break;
      case OutputMode::Traces:
        report.outputs.strings.insert(
            trace_string(report.log, *system.traveller, system.output_alphabet));
        break;
      case OutputMode::Ext:
        report.outputs = external_strings(report.final_config.environment_log, system.output_alphabet,
                                          limits.max_strings);
        break;
    }
  }
  return report;
}

}  // namespace memforge
