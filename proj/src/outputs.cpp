#include "memforge/outputs.hpp"

#include <algorithm>
#include <numeric>

namespace memforge {

namespace {

void trim_to_cap(StringSet& out, std::size_t cap) {
  if (out.strings.size() <= cap) return;
  out.cap_hit = true;
  auto it = out.strings.begin();
  std::advance(it, cap);
  out.strings.erase(it, out.strings.end());
}

// Cross-product concatenation of two string sets under a cap.
void append_all(StringSet& acc, const std::vector<std::string>& parts, std::size_t cap) {
  if (parts.size() == 1 && parts.front().empty()) return;
  std::set<std::string> next;
  for (const std::string& head : acc.strings)
    for (const std::string& part : parts) next.insert(head + part);
  acc.strings = std::move(next);
  trim_to_cap(acc, cap);
}

}  // namespace

std::string to_string(OutputMode mode) {
  switch (mode) {
    case OutputMode::Lab: return "lab";
    case OutputMode::Obj: return "obj";
    case OutputMode::Traces: return "traces";
    case OutputMode::Ext: return "ext";
  }
  return "?";
}

std::optional<OutputMode> parse_output_mode(const std::string& token) {
  if (token == "lab") return OutputMode::Lab;
  if (token == "obj") return OutputMode::Obj;
  if (token == "traces") return OutputMode::Traces;
  if (token == "ext") return OutputMode::Ext;
  return std::nullopt;
}

std::vector<std::string> multiset_permutations(const Multiset& ms, const Alphabet& alphabet) {
  std::vector<Symbol> items;
  for (const auto& [sym, n] : ms.items()) {
    if (!alphabet.count(sym)) continue;
    for (Count i = 0; i < n; ++i) items.push_back(sym);
  }
  std::vector<std::string> out;
  if (items.empty()) {
    out.emplace_back();
    return out;
  }
  std::sort(items.begin(), items.end());
  do {
    std::string s;
    for (const Symbol& sym : items) s += sym;
    out.push_back(std::move(s));
  } while (std::next_permutation(items.begin(), items.end()));
  return out;
}

namespace {

// Strings contributed by one membrane subtree.
StringSet visit(const Membrane& m, OutputMode mode, const Alphabet& alphabet, std::size_t cap,
                bool is_root) {
  StringSet acc;
  acc.strings.insert("");

  if (mode == OutputMode::Lab) {
    if (!is_root && alphabet.count(m.label)) append_all(acc, {m.label}, cap);
  } else {
    append_all(acc, multiset_permutations(m.contents, alphabet), cap);
  }

  if (!m.children.empty()) {
    std::vector<StringSet> child_sets;
    child_sets.reserve(m.children.size());
    bool child_cap_hit = false;
    for (const Membrane& c : m.children) {
      StringSet cs = visit(c, mode, alphabet, cap, false);
      child_cap_hit = child_cap_hit || cs.cap_hit;
      child_sets.push_back(std::move(cs));
    }
    // Visit siblings in every order; each order concatenates the children's
    // contributions.
    std::vector<std::size_t> order(child_sets.size());
    std::iota(order.begin(), order.end(), 0);
    StringSet combined;
    do {
      StringSet one = acc;
      for (std::size_t idx : order) {
        std::vector<std::string> parts(child_sets[idx].strings.begin(), child_sets[idx].strings.end());
        append_all(one, parts, cap);
      }
      combined.strings.insert(one.strings.begin(), one.strings.end());
      combined.cap_hit = combined.cap_hit || one.cap_hit;
    } while (std::next_permutation(order.begin(), order.end()));
    combined.cap_hit = combined.cap_hit || child_cap_hit;
    trim_to_cap(combined, cap);
    return combined;
  }
  return acc;
}

}  // namespace

StringSet traversal_strings(const Configuration& config, OutputMode mode, const Alphabet& alphabet,
                            std::size_t cap) {
  if (mode != OutputMode::Lab && mode != OutputMode::Obj)
    throw IncompatibleModeError("traversal_strings handles lab/obj only");
  return visit(config.root, mode, alphabet, cap, true);
}

std::string trace_string(const std::vector<StepEvents>& events, const Symbol& traveller,
                         const Alphabet& alphabet) {
  std::string out;
  for (const StepEvents& step : events) {
    std::size_t seen = 0;
    for (const Crossing& c : step.crossings) {
      if (c.object != traveller) continue;
      if (++seen > 1)
        throw MultipleTravellerCrossingsError("traveller crossed more than one membrane in a step");
      if (alphabet.count(c.label_at_match)) out += c.label_at_match;
    }
  }
  return out;
}

StringSet external_strings(const std::vector<EnvEmission>& env_log, const Alphabet& alphabet,
                           std::size_t cap) {
  StringSet acc;
  acc.strings.insert("");
  for (const EnvEmission& emission : env_log)
    append_all(acc, multiset_permutations(emission.objects, alphabet), cap);
  return acc;
}

}  // namespace memforge
