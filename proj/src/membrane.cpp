#include "memforge/membrane.hpp"

#include <algorithm>

namespace memforge {

namespace {

std::string enc(const std::string& s) {
  return std::to_string(s.size()) + ":" + s;
}

}  // namespace

CanonicalKey canonical_key(const Membrane& m) {
  std::vector<CanonicalKey> child_keys;
  child_keys.reserve(m.children.size());
  for (const Membrane& c : m.children) child_keys.push_back(canonical_key(c));
  std::sort(child_keys.begin(), child_keys.end());

  CanonicalKey key = "(" + enc(m.label) + "|" + m.contents.to_key() + "|";
  for (const CanonicalKey& k : child_keys) key += k;
  key += ")";
  return key;
}

CanonicalKey canonical_key(const Configuration& config) {
  return canonical_key(config.root);
}

MembraneId assign_ids(Membrane& m, MembraneId next) {
  m.id = next++;
  for (Membrane& c : m.children) next = assign_ids(c, next);
  return next;
}

Configuration make_configuration(Membrane root) {
  Configuration config;
  config.root = std::move(root);
  config.next_id = assign_ids(config.root, 0);
  return config;
}

std::size_t membrane_count(const Membrane& m) {
  std::size_t n = 1;
  for (const Membrane& c : m.children) n += membrane_count(c);
  return n;
}

Count object_count(const Membrane& m) {
  Count n = m.contents.total();
  for (const Membrane& c : m.children) n += object_count(c);
  return n;
}

const Membrane* find_membrane(const Membrane& m, MembraneId id) {
  if (m.id == id) return &m;
  for (const Membrane& c : m.children) {
    if (const Membrane* hit = find_membrane(c, id)) return hit;
  }
  return nullptr;
}

std::string format_membrane(const Membrane& m) {
  std::string out = "[" + m.label;
  for (const auto& [sym, n] : m.contents.items()) {
    for (Count i = 0; i < n; ++i) {
      out += ' ';
      out += sym;
    }
  }
  for (const Membrane& c : m.children) {
    out += ' ';
    out += format_membrane(c);
  }
  out += ']';
  return out;
}

}  // namespace memforge
