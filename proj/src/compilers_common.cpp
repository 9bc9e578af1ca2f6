#include "memforge/compilers.hpp"

#include "memforge/psys_format.hpp"

namespace memforge {

std::string to_string(GadgetTag tag) {
  switch (tag) {
    case GadgetTag::Bootstrap: return "Bootstrap";
    case GadgetTag::Add: return "Add";
    case GadgetTag::Sub: return "Sub";
    case GadgetTag::Write: return "Write";
    case GadgetTag::Cleanup: return "Cleanup";
    case GadgetTag::TravellerWalk: return "TravellerWalk";
    case GadgetTag::ExtShuttle: return "ExtShuttle";
    case GadgetTag::Deposit: return "Deposit";
    case GadgetTag::MgInit: return "MgInit";
    case GadgetTag::MgDescent: return "MgDescent";
    case GadgetTag::MgRewrite1: return "MgRewrite1";
    case GadgetTag::MgInsert2: return "MgInsert2";
    case GadgetTag::MgAppearanceCheck: return "MgAppearanceCheck";
    case GadgetTag::MgTrap: return "MgTrap";
    case GadgetTag::MgSweep: return "MgSweep";
  }
  return "?";
}

std::string CompiledSystem::to_psys() const {
  std::vector<std::string> annotations;
  annotations.reserve(gadgets.size());
  for (GadgetTag tag : gadgets) annotations.push_back(memforge::to_string(tag));
  return serialize_psystem(system, annotations);
}

PSystem CompiledSystem::without_gadget(GadgetTag tag) const {
  PSystem out = system;
  out.rules.clear();
  for (std::size_t i = 0; i < system.rules.size(); ++i)
    if (gadgets[i] != tag) out.rules.push_back(system.rules[i]);
  return out;
}

}  // namespace memforge
