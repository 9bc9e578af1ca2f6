#include "memforge/system.hpp"

namespace memforge {

namespace {

void collect_tree_labels(const Membrane& m, std::set<Label>& out) {
  out.insert(m.label);
  for (const Membrane& c : m.children) collect_tree_labels(c, out);
}

}  // namespace

std::set<Label> used_labels(const PSystem& system) {
  std::set<Label> out;
  collect_tree_labels(system.init.root, out);
  for (const Rule& rule : system.rules)
    for (const Label& l : rule_labels(rule)) out.insert(l);
  return out;
}

LopSignature lop_signature(const PSystem& system) {
  LopSignature sig;
  sig.m = membrane_count(system.init.root);
  std::set<Label> labels = used_labels(system);
  labels.insert(kSkinLabel);
  sig.n = labels.size();
  return sig;
}

}  // namespace memforge
