#include "memforge/engine.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <utility>

namespace memforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct TreeIndex {
  std::map<MembraneId, const Membrane*> nodes;
  std::map<MembraneId, MembraneId> parent;  // no entry for the root

  void build(const Membrane& m) {
    nodes[m.id] = &m;
    for (const Membrane& c : m.children) {
      parent[c.id] = m.id;
      build(c);
    }
  }
};

// What one copy of an instance consumes.
struct Needs {
  MembraneId object_membrane;
  Symbol object;
  bool crosses = false;
  MembraneId crossed = 0;
  bool relabels = false;
};

Needs instance_needs(const Rule& rule, const engine_detail::ObjectInstance& inst) {
  Needs needs;
  needs.object_membrane = inst.host;
  std::visit(Overloaded{
                 [&](const Rewrite& r) { needs.object = r.trigger; },
                 [&](const SendOut& r) {
                   needs.object = r.trigger;
                   needs.crosses = true;
                   needs.crossed = inst.host;
                   needs.relabels = r.relabel != r.host;
                 },
                 [&](const SendIn& r) {
                   needs.object = r.trigger;
                   needs.crosses = true;
                   needs.crossed = inst.target;
                   needs.relabels = r.relabel != r.target;
                 },
                 [&](const Create& r) { needs.object = r.trigger; },
                 [&](const Divide&) {},
                 [&](const Duplicate&) {},
                 [&](const Dissolve&) {},
             },
             rule);
  return needs;
}

bool is_object_rule(const Rule& rule) {
  return std::holds_alternative<Rewrite>(rule) || std::holds_alternative<SendOut>(rule) ||
         std::holds_alternative<SendIn>(rule) || std::holds_alternative<Create>(rule);
}

// Deep copy assigning fresh ids; returns new watermark, appends new ids.
Membrane copy_with_fresh_ids(const Membrane& m, MembraneId& next, std::vector<MembraneId>& created) {
  Membrane out;
  out.id = next++;
  created.push_back(out.id);
  out.label = m.label;
  out.contents = m.contents;
  out.children.reserve(m.children.size());
  for (const Membrane& c : m.children) out.children.push_back(copy_with_fresh_ids(c, next, created));
  return out;
}

struct PhaseOneEffects {
  std::map<MembraneId, Multiset> consumed;
  std::map<MembraneId, Multiset> added;
  std::map<MembraneId, Label> relabelled;
  std::map<MembraneId, std::vector<Membrane>> new_children;
  StepEvents events;
};

Membrane rebuild_after_objects(const Membrane& m, const PhaseOneEffects& fx) {
  Membrane out;
  out.id = m.id;
  auto lab = fx.relabelled.find(m.id);
  out.label = lab == fx.relabelled.end() ? m.label : lab->second;
  out.contents = m.contents;
  if (auto it = fx.consumed.find(m.id); it != fx.consumed.end()) out.contents.remove(it->second);
  if (auto it = fx.added.find(m.id); it != fx.added.end()) out.contents.add(it->second);
  out.children.reserve(m.children.size());
  for (const Membrane& c : m.children) out.children.push_back(rebuild_after_objects(c, fx));
  if (auto it = fx.new_children.find(m.id); it != fx.new_children.end())
    for (const Membrane& nc : it->second) out.children.push_back(nc);
  return out;
}

Successor apply_object_assignment(const Configuration& config, const PSystem& system,
                                  const EngineOptions& options, const TreeIndex& index,
                                  const engine_detail::ObjectAssignment& assignment) {
  PhaseOneEffects fx;
  MembraneId next_id = config.next_id;

  for (const auto& use : assignment) {
    const Rule& rule = system.rules[use.instance.rule_index];
    const Membrane* host = index.nodes.at(use.instance.host);
    const Count n = use.multiplicity;

    std::visit(
        Overloaded{
            [&](const Rewrite& r) {
              fx.consumed[host->id].add(r.trigger, n);
              for (Count i = 0; i < n; ++i) fx.added[host->id].add(r.output);
            },
            [&](const SendOut& r) {
              fx.consumed[host->id].add(r.trigger, n);
              if (host->id == config.root.id) {
                fx.events.emissions.add(r.sent, n);
              } else {
                fx.added[index.parent.at(host->id)].add(r.sent, n);
              }
              if (r.relabel != r.host) fx.relabelled[host->id] = r.relabel;
              if (options.record_events)
                for (Count i = 0; i < n; ++i)
                  fx.events.crossings.push_back({r.trigger, host->id, host->label, CrossDirection::Out});
            },
            [&](const SendIn& r) {
              const Membrane* target = index.nodes.at(use.instance.target);
              fx.consumed[host->id].add(r.trigger, n);
              fx.added[target->id].add(r.moved, n);
              if (r.relabel != r.target) fx.relabelled[target->id] = r.relabel;
              if (options.record_events)
                for (Count i = 0; i < n; ++i)
                  fx.events.crossings.push_back({r.trigger, target->id, target->label, CrossDirection::In});
            },
            [&](const Create& r) {
              fx.consumed[host->id].add(r.trigger, n);
              for (Count i = 0; i < n; ++i) {
                Membrane fresh;
                fresh.id = next_id++;
                fresh.label = r.created;
                fresh.contents = r.payload;
                fx.events.created.push_back(fresh.id);
                fx.new_children[host->id].push_back(std::move(fresh));
              }
            },
            [&](const Divide&) {},
            [&](const Duplicate&) {},
            [&](const Dissolve&) {},
        },
        rule);
  }

  Successor out;
  out.config.root = rebuild_after_objects(config.root, fx);
  out.config.step_index = config.step_index;
  out.config.environment_log = config.environment_log;
  out.config.next_id = next_id;
  out.events = std::move(fx.events);
  return out;
}

void sort_and_dedup(std::vector<Successor>& successors) {
  std::vector<std::pair<std::string, std::size_t>> keyed;
  keyed.reserve(successors.size());
  for (std::size_t i = 0; i < successors.size(); ++i)
    keyed.emplace_back(canonical_key(successors[i].config) + "\n" + successors[i].events.digest(), i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Successor> out;
  out.reserve(keyed.size());
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
    out.push_back(std::move(successors[keyed[i].second]));
  }
  successors = std::move(out);
}

// Structural rule family's unprimed code, for the elementary-only guard.
OpCode structural_base(const Rule& rule) {
  if (std::holds_alternative<Divide>(rule)) return OpCode::E;
  if (std::holds_alternative<Duplicate>(rule)) return OpCode::F;
  return OpCode::G;
}

struct StructuralApplier {
  const PSystem& system;
  const std::map<MembraneId, std::size_t>& choice;
  MembraneId next_id;
  StepEvents events;

  std::pair<std::vector<Membrane>, Multiset> apply(const Membrane& m, bool is_root) {
    std::vector<Membrane> children;
    Multiset released;
    for (const Membrane& c : m.children) {
      auto [reps, rel] = apply(c, false);
      for (Membrane& r : reps) children.push_back(std::move(r));
      released.add(rel);
    }
    Multiset contents = m.contents;
    contents.add(released);

    auto it = choice.find(m.id);
    if (is_root || it == choice.end()) {
      Membrane out;
      out.id = m.id;
      out.label = m.label;
      out.contents = std::move(contents);
      out.children = std::move(children);
      return {make_vec(std::move(out)), Multiset{}};
    }

    const Rule& rule = system.rules[it->second];
    return std::visit(
        Overloaded{
            [&](const Dissolve& r) -> std::pair<std::vector<Membrane>, Multiset> {
              contents.remove(r.trigger);
              contents.add(r.result);
              events.dissolved.push_back(m.id);
              return {std::move(children), std::move(contents)};
            },
            [&](const Divide& r) -> std::pair<std::vector<Membrane>, Multiset> {
              contents.remove(r.trigger);
              Membrane left;
              left.id = m.id;
              left.label = r.left_label;
              left.contents = contents;
              left.contents.add(r.left_object);
              left.children = children;
              Membrane right;
              right.id = next_id++;
              events.created.push_back(right.id);
              right.label = r.right_label;
              right.contents = contents;
              right.contents.add(r.right_object);
              right.children.reserve(children.size());
              for (const Membrane& c : children)
                right.children.push_back(copy_with_fresh_ids(c, next_id, events.created));
              events.divided.push_back(m.id);
              std::vector<Membrane> reps;
              reps.push_back(std::move(left));
              reps.push_back(std::move(right));
              return {std::move(reps), Multiset{}};
            },
            [&](const Duplicate& r) -> std::pair<std::vector<Membrane>, Multiset> {
              contents.remove(r.trigger);
              contents.add(r.inner_object);
              Membrane inner;
              inner.id = m.id;
              inner.label = r.inner_label;
              inner.contents = std::move(contents);
              inner.children = std::move(children);
              Membrane outer;
              outer.id = next_id++;
              events.created.push_back(outer.id);
              outer.label = r.outer_label;
              outer.contents.add(r.outer_object);
              outer.children.push_back(std::move(inner));
              events.duplicated.push_back(m.id);
              return {make_vec(std::move(outer)), Multiset{}};
            },
            [&](const auto&) -> std::pair<std::vector<Membrane>, Multiset> {
              assert(false && "non-structural rule in membrane phase");
              return {};
            },
        },
        rule);
  }

  static std::vector<Membrane> make_vec(Membrane m) {
    std::vector<Membrane> v;
    v.push_back(std::move(m));
    return v;
  }
};

}  // namespace

void StepEvents::merge(const StepEvents& other) {
  crossings.insert(crossings.end(), other.crossings.begin(), other.crossings.end());
  emissions.add(other.emissions);
  dissolved.insert(dissolved.end(), other.dissolved.begin(), other.dissolved.end());
  created.insert(created.end(), other.created.begin(), other.created.end());
  divided.insert(divided.end(), other.divided.begin(), other.divided.end());
  duplicated.insert(duplicated.end(), other.duplicated.begin(), other.duplicated.end());
}

std::string StepEvents::digest() const {
  std::vector<std::string> xs;
  xs.reserve(crossings.size());
  for (const Crossing& c : crossings)
    xs.push_back(std::to_string(c.object.size()) + ":" + c.object + std::to_string(c.label_at_match.size()) +
                 ":" + c.label_at_match + (c.direction == CrossDirection::In ? "i" : "o"));
  std::sort(xs.begin(), xs.end());
  std::string out = "X";
  for (const std::string& x : xs) out += x + ";";
  out += "E" + emissions.to_key();
  out += "d" + std::to_string(dissolved.size());
  out += "v" + std::to_string(divided.size());
  out += "u" + std::to_string(duplicated.size());
  out += "c" + std::to_string(created.size());
  return out;
}

namespace engine_detail {

Count Resources::headroom(const ObjectInstance& inst, const PSystem& system,
                          const Configuration& config) const {
  (void)config;
  const Needs needs = instance_needs(system.rules[inst.rule_index], inst);
  auto it = objects.find({needs.object_membrane, needs.object});
  Count room = it == objects.end() ? 0 : it->second;
  if (needs.crosses && single_policy) {
    auto cx = crossings.find(needs.crossed);
    room = std::min(room, cx == crossings.end() ? Count{1} : cx->second);
  }
  if (needs.relabels) {
    auto rl = relabels.find(needs.crossed);
    room = std::min(room, rl == relabels.end() ? Count{1} : rl->second);
  }
  return room;
}

void Resources::consume(const ObjectInstance& inst, const PSystem& system, const Configuration& config,
                        Count n) {
  (void)config;
  if (n == 0) return;
  const Needs needs = instance_needs(system.rules[inst.rule_index], inst);
  objects[{needs.object_membrane, needs.object}] -= n;
  if (needs.crosses && single_policy) {
    auto [it, fresh] = crossings.try_emplace(needs.crossed, 1);
    it->second -= n;
  }
  if (needs.relabels) {
    auto [it, fresh] = relabels.try_emplace(needs.crossed, 1);
    it->second -= n;
  }
}

std::vector<ObjectInstance> object_instances(const Configuration& config, const PSystem& system) {
  std::vector<ObjectInstance> out;
  std::function<void(const Membrane&)> walk = [&](const Membrane& m) {
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      const Rule& rule = system.rules[i];
      if (!is_object_rule(rule)) continue;
      std::visit(Overloaded{
                     [&](const Rewrite& r) {
                       if (r.host == m.label && m.contents.contains(r.trigger))
                         out.push_back({i, m.id, m.id});
                     },
                     [&](const SendOut& r) {
                       if (r.host == m.label && m.contents.contains(r.trigger))
                         out.push_back({i, m.id, m.id});
                     },
                     [&](const SendIn& r) {
                       if (!m.contents.contains(r.trigger)) return;
                       for (const Membrane& c : m.children)
                         if (c.label == r.target) out.push_back({i, m.id, c.id});
                     },
                     [&](const Create& r) {
                       if (r.host == m.label && m.contents.contains(r.trigger))
                         out.push_back({i, m.id, m.id});
                     },
                     [&](const auto&) {},
                 },
                 rule);
    }
    for (const Membrane& c : m.children) walk(c);
  };
  walk(config.root);
  std::sort(out.begin(), out.end(), [](const ObjectInstance& a, const ObjectInstance& b) {
    return std::tie(a.rule_index, a.host, a.target) < std::tie(b.rule_index, b.host, b.target);
  });
  return out;
}

Resources initial_resources(const Configuration& config, const EngineOptions& options) {
  Resources res;
  res.single_policy = options.crossing_policy == CrossingPolicy::Single;
  std::function<void(const Membrane&)> walk = [&](const Membrane& m) {
    for (const auto& [sym, n] : m.contents.items()) res.objects[{m.id, sym}] = n;
    for (const Membrane& c : m.children) walk(c);
  };
  walk(config.root);
  return res;
}

std::vector<ObjectAssignment> object_assignments(const Configuration& config, const PSystem& system,
                                                 const EngineOptions& options) {
  const std::vector<ObjectInstance> instances = object_instances(config, system);
  if (instances.empty()) return {};

  // Group instances into components by shared resources; independent
  // components multiply instead of entangling the search.
  auto resource_keys = [&](const ObjectInstance& inst) {
    const Needs needs = instance_needs(system.rules[inst.rule_index], inst);
    std::vector<std::string> keys;
    keys.push_back("O" + std::to_string(needs.object_membrane) + "/" + needs.object);
    if (needs.crosses && options.crossing_policy == CrossingPolicy::Single)
      keys.push_back("X" + std::to_string(needs.crossed));
    if (needs.relabels) keys.push_back("R" + std::to_string(needs.crossed));
    return keys;
  };

  std::vector<std::size_t> comp_of(instances.size());
  std::iota(comp_of.begin(), comp_of.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (comp_of[x] != x) x = comp_of[x] = comp_of[comp_of[x]];
    return x;
  };
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    for (const std::string& key : resource_keys(instances[i])) {
      auto [it, fresh] = owner.try_emplace(key, i);
      if (!fresh) comp_of[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < instances.size(); ++i) components[find(i)].push_back(i);

  const Resources base = initial_resources(config, options);

  // Enumerate maximal assignments per component.
  std::vector<std::vector<ObjectAssignment>> per_component;
  for (const auto& [rep, members] : components) {
    std::vector<ObjectAssignment> local;
    std::vector<Count> mult(members.size(), 0);
    std::function<void(std::size_t, Resources&)> dfs = [&](std::size_t idx, Resources& res) {
      if (idx == members.size()) {
        for (std::size_t j = 0; j < members.size(); ++j)
          if (res.headroom(instances[members[j]], system, config) > 0) return;
        ObjectAssignment a;
        for (std::size_t j = 0; j < members.size(); ++j)
          if (mult[j] > 0) a.push_back({instances[members[j]], mult[j]});
        local.push_back(std::move(a));
        return;
      }
      const ObjectInstance& inst = instances[members[idx]];
      const Count top = res.headroom(inst, system, config);
      for (Count k = top; k >= 0; --k) {
        Resources next = res;
        next.consume(inst, system, config, k);
        mult[idx] = k;
        dfs(idx + 1, next);
      }
      mult[idx] = 0;
    };
    Resources res = base;
    dfs(0, res);
    per_component.push_back(std::move(local));
  }

  // Cartesian product across components.
  std::vector<ObjectAssignment> result;
  result.emplace_back();
  for (const auto& locals : per_component) {
    std::vector<ObjectAssignment> next;
    next.reserve(result.size() * locals.size());
    for (const ObjectAssignment& head : result) {
      for (const ObjectAssignment& tail : locals) {
        ObjectAssignment merged = head;
        merged.insert(merged.end(), tail.begin(), tail.end());
        next.push_back(std::move(merged));
      }
    }
    result = std::move(next);
  }
  return result;
}

std::vector<StructuralOption> structural_options(const Configuration& config, const PSystem& system) {
  std::vector<StructuralOption> out;
  std::function<void(const Membrane&, bool)> walk = [&](const Membrane& m, bool is_root) {
    if (!is_root) {
      for (std::size_t i = 0; i < system.rules.size(); ++i) {
        const Rule& rule = system.rules[i];
        if (is_object_rule(rule)) continue;
        const Label* host = std::visit(Overloaded{
                                           [](const Divide& r) { return &r.host; },
                                           [](const Duplicate& r) { return &r.host; },
                                           [](const Dissolve& r) { return &r.host; },
                                           [](const auto&) -> const Label* { return nullptr; },
                                       },
                                       rule);
        const Symbol* trigger = std::visit(Overloaded{
                                               [](const Divide& r) { return &r.trigger; },
                                               [](const Duplicate& r) { return &r.trigger; },
                                               [](const Dissolve& r) { return &r.trigger; },
                                               [](const auto&) -> const Symbol* { return nullptr; },
                                           },
                                           rule);
        if (!host || *host != m.label || !m.contents.contains(*trigger)) continue;
        if (system.ops.elementary_only(structural_base(rule)) && !m.elementary()) continue;
        out.push_back({m.id, i});
      }
    }
    for (const Membrane& c : m.children) walk(c, false);
  };
  walk(config.root, true);
  return out;
}

}  // namespace engine_detail

std::vector<Successor> object_phase_successors(const Configuration& config, const PSystem& system,
                                               const EngineOptions& options) {
  const auto assignments = engine_detail::object_assignments(config, system, options);
  std::vector<Successor> out;
  if (assignments.empty()) {
    out.push_back({config, StepEvents{}});
    return out;
  }
  TreeIndex index;
  index.build(config.root);
  out.reserve(assignments.size());
  for (const auto& assignment : assignments)
    out.push_back(apply_object_assignment(config, system, options, index, assignment));
  sort_and_dedup(out);
  return out;
}

std::vector<Successor> membrane_phase_successors(const Configuration& config, const PSystem& system,
                                                 const EngineOptions& options) {
  (void)options;
  const auto options_list = engine_detail::structural_options(config, system);
  std::vector<Successor> out;
  if (options_list.empty()) {
    out.push_back({config, StepEvents{}});
    return out;
  }

  std::map<MembraneId, std::vector<std::size_t>> per_membrane;
  for (const auto& opt : options_list) per_membrane[opt.membrane].push_back(opt.rule_index);

  std::vector<MembraneId> membranes;
  for (const auto& [id, rules] : per_membrane) membranes.push_back(id);

  std::vector<std::size_t> odometer(membranes.size(), 0);
  while (true) {
    std::map<MembraneId, std::size_t> choice;
    for (std::size_t i = 0; i < membranes.size(); ++i)
      choice[membranes[i]] = per_membrane[membranes[i]][odometer[i]];

    StructuralApplier applier{system, choice, config.next_id, StepEvents{}};
    auto [reps, released] = applier.apply(config.root, true);
    assert(reps.size() == 1 && released.empty());
    Successor succ;
    succ.config.root = std::move(reps.front());
    succ.config.step_index = config.step_index;
    succ.config.environment_log = config.environment_log;
    succ.config.next_id = applier.next_id;
    succ.events = std::move(applier.events);
    out.push_back(std::move(succ));

    std::size_t pos = 0;
    while (pos < membranes.size()) {
      if (++odometer[pos] < per_membrane[membranes[pos]].size()) break;
      odometer[pos] = 0;
      ++pos;
    }
    if (pos == membranes.size()) break;
  }
  sort_and_dedup(out);
  return out;
}

bool is_halting(const Configuration& config, const PSystem& system, const EngineOptions& options) {
  (void)options;
  return engine_detail::object_instances(config, system).empty() &&
         engine_detail::structural_options(config, system).empty();
}

std::vector<Successor> step_successors(const Configuration& config, const PSystem& system,
                                       const EngineOptions& options) {
  if (is_halting(config, system, options)) return {};

  std::vector<Successor> composed;
  for (const Successor& obj : object_phase_successors(config, system, options)) {
    for (Successor mem : membrane_phase_successors(obj.config, system, options)) {
      Successor step;
      step.config = std::move(mem.config);
      step.events = obj.events;
      step.events.merge(mem.events);
      step.config.step_index = config.step_index + 1;
      if (!step.events.emissions.empty())
        step.config.environment_log.push_back({step.config.step_index, step.events.emissions});
      composed.push_back(std::move(step));
    }
  }
  sort_and_dedup(composed);
  return composed;
}

Successor seeded_step(const Configuration& config, const PSystem& system, const EngineOptions& options,
                      std::uint64_t seed) {
  std::vector<Successor> successors = step_successors(config, system, options);
  if (successors.empty()) throw HaltedError{};
  std::mt19937_64 gen(seed);
  return successors[static_cast<std::size_t>(gen() % successors.size())];
}

}  // namespace memforge
