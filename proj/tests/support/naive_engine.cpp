#include "naive_engine.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace memforge::naive {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct Slot {
  MembraneId membrane;
  Symbol object;
};

struct Option {
  std::size_t rule_index;
  MembraneId target;  // send-in destination; otherwise the slot's membrane
};

struct Walk {
  std::map<MembraneId, const Membrane*> nodes;
  std::map<MembraneId, MembraneId> parent;

  void build(const Membrane& m) {
    nodes[m.id] = &m;
    for (const Membrane& c : m.children) {
      parent[c.id] = m.id;
      build(c);
    }
  }
};

// Crossing footprint of applying `opt` at `slot`.
struct Footprint {
  bool crosses = false;
  MembraneId crossed = 0;
  bool relabels = false;
};

Footprint footprint(const PSystem& system, const Slot& slot, const Option& opt) {
  Footprint fp;
  std::visit(Overloaded{
                 [&](const SendOut& r) {
                   fp.crosses = true;
                   fp.crossed = slot.membrane;
                   fp.relabels = r.relabel != r.host;
                 },
                 [&](const SendIn& r) {
                   fp.crosses = true;
                   fp.crossed = opt.target;
                   fp.relabels = r.relabel != r.target;
                 },
                 [&](const auto&) {},
             },
             system.rules[opt.rule_index]);
  return fp;
}

bool fits(const Footprint& fp, const EngineOptions& options, const std::map<MembraneId, int>& crossings,
          const std::map<MembraneId, int>& relabels) {
  if (fp.crosses && options.crossing_policy == CrossingPolicy::Single) {
    auto it = crossings.find(fp.crossed);
    if (it != crossings.end() && it->second >= 1) return false;
  }
  if (fp.relabels) {
    auto it = relabels.find(fp.crossed);
    if (it != relabels.end() && it->second >= 1) return false;
  }
  return true;
}

Successor apply_choices(const Configuration& config, const PSystem& system, const Walk& walk,
                        const std::vector<Slot>& slots, const std::vector<int>& choice,
                        const std::vector<std::vector<Option>>& options) {
  std::map<MembraneId, Multiset> consumed, added;
  std::map<MembraneId, Label> relabelled;
  std::map<MembraneId, std::vector<Membrane>> created;
  StepEvents events;
  MembraneId next_id = config.next_id;

  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (choice[s] < 0) continue;
    const Slot& slot = slots[s];
    const Option& opt = options[s][static_cast<std::size_t>(choice[s])];
    consumed[slot.membrane].add(slot.object);
    std::visit(
        Overloaded{
            [&](const Rewrite& r) { added[slot.membrane].add(r.output); },
            [&](const SendOut& r) {
              if (slot.membrane == config.root.id) {
                events.emissions.add(r.sent);
              } else {
                added[walk.parent.at(slot.membrane)].add(r.sent);
              }
              if (r.relabel != r.host) relabelled[slot.membrane] = r.relabel;
              events.crossings.push_back(
                  {r.trigger, slot.membrane, walk.nodes.at(slot.membrane)->label, CrossDirection::Out});
            },
            [&](const SendIn& r) {
              added[opt.target].add(r.moved);
              if (r.relabel != r.target) relabelled[opt.target] = r.relabel;
              events.crossings.push_back(
                  {r.trigger, opt.target, walk.nodes.at(opt.target)->label, CrossDirection::In});
            },
            [&](const Create& r) {
              Membrane fresh;
              fresh.id = next_id++;
              fresh.label = r.created;
              fresh.contents = r.payload;
              events.created.push_back(fresh.id);
              created[slot.membrane].push_back(std::move(fresh));
            },
            [&](const auto&) {},
        },
        system.rules[opt.rule_index]);
  }

  std::function<Membrane(const Membrane&)> rebuild = [&](const Membrane& m) {
    Membrane out;
    out.id = m.id;
    out.label = relabelled.count(m.id) ? relabelled.at(m.id) : m.label;
    out.contents = m.contents;
    if (consumed.count(m.id)) out.contents.remove(consumed.at(m.id));
    if (added.count(m.id)) out.contents.add(added.at(m.id));
    for (const Membrane& c : m.children) out.children.push_back(rebuild(c));
    if (created.count(m.id))
      for (const Membrane& nc : created.at(m.id)) out.children.push_back(nc);
    return out;
  };

  Successor succ;
  succ.config.root = rebuild(config.root);
  succ.config.step_index = config.step_index;
  succ.config.environment_log = config.environment_log;
  succ.config.next_id = next_id;
  succ.events = std::move(events);
  return succ;
}

void dedup(std::vector<Successor>& successors) {
  std::map<std::pair<std::string, std::string>, std::size_t> seen;
  std::vector<Successor> out;
  for (Successor& s : successors) {
    auto key = std::make_pair(canonical_key(s.config), s.events.digest());
    if (seen.emplace(key, out.size()).second) out.push_back(std::move(s));
  }
  successors = std::move(out);
}

std::vector<std::pair<MembraneId, std::vector<std::size_t>>> structural_menu(const Configuration& config,
                                                                             const PSystem& system) {
  std::vector<std::pair<MembraneId, std::vector<std::size_t>>> menu;
  std::function<void(const Membrane&, bool)> walk = [&](const Membrane& m, bool root) {
    if (!root) {
      std::vector<std::size_t> applicable;
      for (std::size_t i = 0; i < system.rules.size(); ++i) {
        bool ok = false;
        std::visit(Overloaded{
                       [&](const Divide& r) {
                         ok = r.host == m.label && m.contents.contains(r.trigger) &&
                              (!system.ops.elementary_only(OpCode::E) || m.elementary());
                       },
                       [&](const Duplicate& r) {
                         ok = r.host == m.label && m.contents.contains(r.trigger) &&
                              (!system.ops.elementary_only(OpCode::F) || m.elementary());
                       },
                       [&](const Dissolve& r) {
                         ok = r.host == m.label && m.contents.contains(r.trigger) &&
                              (!system.ops.elementary_only(OpCode::G) || m.elementary());
                       },
                       [&](const auto&) {},
                   },
                   system.rules[i]);
        if (ok) applicable.push_back(i);
      }
      if (!applicable.empty()) menu.emplace_back(m.id, std::move(applicable));
    }
    for (const Membrane& c : m.children) walk(c, false);
  };
  walk(config.root, true);
  return menu;
}

struct StructuralResult {
  std::vector<Membrane> replacements;
  Multiset released;
};

StructuralResult apply_structural(const Membrane& m, bool root, const PSystem& system,
                                  const std::map<MembraneId, std::size_t>& choice, MembraneId& next_id,
                                  StepEvents& events) {
  StructuralResult result;
  std::vector<Membrane> children;
  Multiset inherited;
  for (const Membrane& c : m.children) {
    StructuralResult sub = apply_structural(c, false, system, choice, next_id, events);
    for (Membrane& r : sub.replacements) children.push_back(std::move(r));
    inherited.add(sub.released);
  }
  Multiset contents = m.contents;
  contents.add(inherited);

  auto it = choice.find(m.id);
  if (root || it == choice.end()) {
    Membrane keep;
    keep.id = m.id;
    keep.label = m.label;
    keep.contents = std::move(contents);
    keep.children = std::move(children);
    result.replacements.push_back(std::move(keep));
    return result;
  }

  std::function<Membrane(const Membrane&)> fresh_copy = [&](const Membrane& src) {
    Membrane copy;
    copy.id = next_id++;
    events.created.push_back(copy.id);
    copy.label = src.label;
    copy.contents = src.contents;
    for (const Membrane& c : src.children) copy.children.push_back(fresh_copy(c));
    return copy;
  };

  std::visit(Overloaded{
                 [&](const Dissolve& r) {
                   contents.remove(r.trigger);
                   contents.add(r.result);
                   events.dissolved.push_back(m.id);
                   result.replacements = std::move(children);
                   result.released = std::move(contents);
                 },
                 [&](const Divide& r) {
                   contents.remove(r.trigger);
                   Membrane left{m.id, r.left_label, contents, children};
                   left.contents.add(r.left_object);
                   Membrane right;
                   right.id = next_id++;
                   events.created.push_back(right.id);
                   right.label = r.right_label;
                   right.contents = contents;
                   right.contents.add(r.right_object);
                   for (const Membrane& c : children) right.children.push_back(fresh_copy(c));
                   events.divided.push_back(m.id);
                   result.replacements.push_back(std::move(left));
                   result.replacements.push_back(std::move(right));
                 },
                 [&](const Duplicate& r) {
                   contents.remove(r.trigger);
                   contents.add(r.inner_object);
                   Membrane inner{m.id, r.inner_label, std::move(contents), std::move(children)};
                   Membrane outer;
                   outer.id = next_id++;
                   events.created.push_back(outer.id);
                   outer.label = r.outer_label;
                   outer.contents.add(r.outer_object);
                   outer.children.push_back(std::move(inner));
                   events.duplicated.push_back(m.id);
                   result.replacements.push_back(std::move(outer));
                 },
                 [&](const auto&) {},
             },
             system.rules[it->second]);
  return result;
}

}  // namespace

std::vector<Successor> object_phase(const Configuration& config, const PSystem& system,
                                    const EngineOptions& options) {
  Walk walk;
  walk.build(config.root);

  std::vector<Slot> slots;
  for (const auto& [id, node] : walk.nodes)
    for (const auto& [sym, n] : node->contents.items())
      for (Count i = 0; i < n; ++i) slots.push_back({id, sym});

  std::vector<std::vector<Option>> menu(slots.size());
  bool anything = false;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const Membrane* host = walk.nodes.at(slots[s].membrane);
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      std::visit(Overloaded{
                     [&](const Rewrite& r) {
                       if (r.host == host->label && r.trigger == slots[s].object)
                         menu[s].push_back({i, host->id});
                     },
                     [&](const SendOut& r) {
                       if (r.host == host->label && r.trigger == slots[s].object)
                         menu[s].push_back({i, host->id});
                     },
                     [&](const SendIn& r) {
                       if (r.trigger != slots[s].object) return;
                       for (const Membrane& c : host->children)
                         if (c.label == r.target) menu[s].push_back({i, c.id});
                     },
                     [&](const Create& r) {
                       if (r.host == host->label && r.trigger == slots[s].object)
                         menu[s].push_back({i, host->id});
                     },
                     [&](const auto&) {},
                 },
                 system.rules[i]);
    }
    anything = anything || !menu[s].empty();
  }

  std::vector<Successor> out;
  if (!anything) {
    out.push_back({config, StepEvents{}});
    return out;
  }

  std::vector<int> choice(slots.size(), -1);
  std::map<MembraneId, int> crossings, relabels;

  std::function<void(std::size_t)> dfs = [&](std::size_t s) {
    if (s == slots.size()) {
      // Maximal iff no unconsumed slot still has a fitting option.
      for (std::size_t u = 0; u < slots.size(); ++u) {
        if (choice[u] >= 0) continue;
        for (const Option& opt : menu[u])
          if (fits(footprint(system, slots[u], opt), options, crossings, relabels)) return;
      }
      out.push_back(apply_choices(config, system, walk, slots, choice, menu));
      return;
    }
    for (std::size_t o = 0; o < menu[s].size(); ++o) {
      const Footprint fp = footprint(system, slots[s], menu[s][o]);
      if (!fits(fp, options, crossings, relabels)) continue;
      if (fp.crosses) crossings[fp.crossed]++;
      if (fp.relabels) relabels[fp.crossed]++;
      choice[s] = static_cast<int>(o);
      dfs(s + 1);
      choice[s] = -1;
      if (fp.crosses) crossings[fp.crossed]--;
      if (fp.relabels) relabels[fp.crossed]--;
    }
    dfs(s + 1);  // leave this copy unconsumed
  };
  dfs(0);

  dedup(out);
  return out;
}

std::vector<Successor> membrane_phase(const Configuration& config, const PSystem& system,
                                      const EngineOptions& options) {
  (void)options;
  const auto menu = structural_menu(config, system);
  std::vector<Successor> out;
  if (menu.empty()) {
    out.push_back({config, StepEvents{}});
    return out;
  }

  // Odometer over (options + none) per membrane, then maximality filter.
  std::vector<std::size_t> pick(menu.size(), 0);
  while (true) {
    bool maximal = true;
    std::map<MembraneId, std::size_t> choice;
    for (std::size_t i = 0; i < menu.size(); ++i) {
      if (pick[i] == menu[i].second.size()) {
        maximal = false;  // membrane skipped although a rule applies
      } else {
        choice[menu[i].first] = menu[i].second[pick[i]];
      }
    }
    if (maximal) {
      StepEvents events;
      MembraneId next_id = config.next_id;
      StructuralResult result =
          apply_structural(config.root, true, system, choice, next_id, events);
      Successor succ;
      succ.config.root = std::move(result.replacements.front());
      succ.config.step_index = config.step_index;
      succ.config.environment_log = config.environment_log;
      succ.config.next_id = next_id;
      succ.events = std::move(events);
      out.push_back(std::move(succ));
    }
    std::size_t i = 0;
    while (i < pick.size()) {
      if (++pick[i] <= menu[i].second.size()) break;
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }

  dedup(out);
  return out;
}

std::vector<Successor> step(const Configuration& config, const PSystem& system,
                            const EngineOptions& options) {
  const bool object_active = [&] {
    auto succ = object_phase(config, system, options);
    return succ.size() != 1 || canonical_key(succ.front().config) != canonical_key(config) ||
           !succ.front().events.digest().empty();
  };
  (void)object_active;

  if (is_halting(config, system, options)) return {};

  std::vector<Successor> composed;
  for (const Successor& obj : object_phase(config, system, options)) {
    for (Successor mem : membrane_phase(obj.config, system, options)) {
      Successor s;
      s.config = std::move(mem.config);
      s.events = obj.events;
      s.events.merge(mem.events);
      s.config.step_index = config.step_index + 1;
      if (!s.events.emissions.empty())
        s.config.environment_log.push_back({s.config.step_index, s.events.emissions});
      composed.push_back(std::move(s));
    }
  }
  dedup(composed);
  return composed;
}

std::set<std::pair<std::string, std::string>> keyed(const std::vector<Successor>& successors) {
  std::set<std::pair<std::string, std::string>> out;
  for (const Successor& s : successors) out.emplace(canonical_key(s.config), s.events.digest());
  return out;
}

}  // namespace memforge::naive
