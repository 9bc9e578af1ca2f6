#include <algorithm>
#include <functional>
#include <map>

#include "memforge/compilers.hpp"

namespace memforge {

namespace {

using compile_detail::NameAllocator;

struct RmBuilder {
  RmBuilder(const RegisterMachine& m, OutputMode o) : machine(m), mode(o) {}

  const RegisterMachine& machine;
  OutputMode mode;

  NameAllocator label_names;
  NameAllocator object_names;
  CompiledSystem out;

  // Membrane labels.
  std::vector<Label> letter_labels;  // one per T letter, same spelling
  Label reg_label[3];                // index 1, 2
  Label zerotest;                    // "3"
  Label traveller_home;              // "4", traces only
  Label end_marker;                  // "$"

  // Objects.
  std::map<std::string, Symbol> label_obj;  // machine label -> instruction object
  Symbol reg_token[3];                      // a_1, a_2
  Symbol reg_entry[3];                      // b_1, b_2
  Symbol dollar_obj;

  void emit(Rule rule, GadgetTag tag) {
    for (const Rule& existing : out.system.rules)
      if (rules_equal(existing, rule)) return;
    out.system.rules.push_back(std::move(rule));
    out.gadgets.push_back(tag);
  }

  Symbol stage(const std::string& machine_label, int primes, int reg) {
    std::string base = machine_label;
    base.append(static_cast<std::size_t>(primes), '\'');
    base += "_" + std::to_string(reg);
    return object_names.fresh(base);
  }

  void allocate_names() {
    for (const Symbol& t : machine.output_alphabet) {
      label_names.reserve(t);
      letter_labels.push_back(t);
    }
    reg_label[1] = label_names.fresh("1");
    reg_label[2] = label_names.fresh("2");
    zerotest = label_names.fresh("3");
    if (mode == OutputMode::Traces) traveller_home = label_names.fresh("4");
    end_marker = label_names.fresh("$");

    // Deposited letters share the spelling of their labels.
    if (mode != OutputMode::Traces)
      for (const Symbol& t : machine.output_alphabet) object_names.reserve(t);
    for (const auto& [label, inst] : machine.instructions) label_obj[label] = object_names.fresh(label);
    for (int i : {1, 2}) {
      reg_token[i] = object_names.fresh("a_" + std::to_string(i));
      reg_entry[i] = object_names.fresh("b_" + std::to_string(i));
    }
    dollar_obj = object_names.fresh("$");
  }

  void bootstrap() {
    const Symbol prim1 = object_names.fresh("1'");
    const Symbol prim2 = object_names.fresh("2'");
    const Symbol primS = object_names.fresh("$'");
    const Symbol lp0 = object_names.fresh(machine.start + "'");
    const Symbol lpp0 = object_names.fresh(machine.start + "''");

    emit(Rewrite{kSkinLabel, lp0, Multiset{{prim1, 1}, {prim2, 1}, {primS, 1}, {lpp0, 1}}},
         GadgetTag::Bootstrap);
    emit(Rewrite{kSkinLabel, lpp0, Multiset::singleton(label_obj.at(machine.start))},
         GadgetTag::Bootstrap);
    emit(Create{kSkinLabel, prim1, reg_label[1], Multiset{}}, GadgetTag::Bootstrap);
    emit(Create{kSkinLabel, prim2, reg_label[2], Multiset{}}, GadgetTag::Bootstrap);
    emit(Create{kSkinLabel, primS, end_marker, Multiset{}}, GadgetTag::Bootstrap);

    Membrane root;
    root.label = kSkinLabel;
    root.contents.add(lp0);
    if (mode == OutputMode::Traces) {
      const Symbol t = object_names.fresh("t");
      out.system.traveller = t;
      Membrane home;
      home.label = traveller_home;
      home.contents.add(t);
      root.children.push_back(std::move(home));
    }
    out.system.init = make_configuration(std::move(root));
  }

  void add_instruction(const std::string& label, const RmInstruction& inst) {
    const int i = inst.reg;
    emit(Rewrite{kSkinLabel, label_obj.at(label),
                 Multiset{{reg_entry[i], 1}, {label_obj.at(inst.target_j), 1}}},
         GadgetTag::Add);
    emit(Rewrite{kSkinLabel, label_obj.at(label),
                 Multiset{{reg_entry[i], 1}, {label_obj.at(inst.target_k), 1}}},
         GadgetTag::Add);
    emit(SendIn{reg_entry[i], reg_label[i], reg_token[i], reg_label[i]}, GadgetTag::Add);
  }

  void sub_instruction(const std::string& label, const RmInstruction& inst) {
    const int i = inst.reg;
    const Symbol probe = stage(label, 0, i);       // enters the register
    const Symbol opened = stage(label, 1, i);      // seeds the zero-test membrane
    const Symbol waiting = stage(label, 2, i);     // present while a_i may arrive
    const Symbol nonzero = stage(label, 3, i);     // register was non-empty
    const Symbol zero = stage(label, 4, i);        // register was empty

    emit(Rewrite{kSkinLabel, label_obj.at(label), Multiset::singleton(probe)}, GadgetTag::Sub);
    emit(SendIn{probe, reg_label[i], probe, reg_label[i]}, GadgetTag::Sub);
    emit(Create{reg_label[i], probe, zerotest, Multiset::singleton(opened)}, GadgetTag::Sub);
    emit(Rewrite{zerotest, opened, Multiset::singleton(waiting)}, GadgetTag::Sub);
    emit(SendIn{reg_token[i], zerotest, reg_token[i], zerotest}, GadgetTag::Sub);
    emit(Dissolve{zerotest, reg_token[i], Multiset{}}, GadgetTag::Sub);
    // The a_i dissolution can fire the same step `waiting` appears, dropping
    // it into the register; it must still progress there.
    emit(Rewrite{reg_label[i], waiting, Multiset::singleton(nonzero)}, GadgetTag::Sub);
    emit(Rewrite{zerotest, waiting, Multiset::singleton(nonzero)}, GadgetTag::Sub);
    emit(Dissolve{zerotest, nonzero, Multiset::singleton(zero)}, GadgetTag::Sub);
    emit(SendOut{reg_label[i], nonzero, label_obj.at(inst.target_j), reg_label[i]}, GadgetTag::Sub);
    emit(SendOut{reg_label[i], zero, label_obj.at(inst.target_k), reg_label[i]}, GadgetTag::Sub);
  }

  void write_instruction(const std::string& label, const RmInstruction& inst) {
    const Symbol& a = inst.write_symbol;
    const Symbol next = label_obj.at(inst.target_j);
    const Symbol pair = object_names.fresh("(" + a + "," + next + ")");
    const Symbol bar = object_names.fresh(pair + "~");

    emit(Rewrite{kSkinLabel, label_obj.at(label), Multiset::singleton(pair)}, GadgetTag::Write);
    for (const Label& b : letter_labels) emit(SendIn{pair, b, pair, b}, GadgetTag::Write);
    emit(SendIn{pair, end_marker, pair, end_marker}, GadgetTag::Write);
    emit(Dissolve{end_marker, pair, Multiset::singleton(bar)}, GadgetTag::Write);
    // The freshly written letter membrane appears under the innermost chain
    // membrane, or directly under the skin for the first letter.
    const Multiset payload{{next, 1}, {dollar_obj, 1}};
    for (const Label& b : letter_labels) emit(Create{b, bar, a, payload}, GadgetTag::Write);
    emit(Create{kSkinLabel, bar, a, payload}, GadgetTag::Write);
  }

  void write_shared() {
    const bool any_write =
        std::any_of(machine.instructions.begin(), machine.instructions.end(),
                    [](const auto& kv) { return kv.second.kind == RmInstruction::Kind::Write; });
    if (!any_write) return;
    for (const Label& a : letter_labels)
      emit(Create{a, dollar_obj, end_marker, Multiset{}}, GadgetTag::Write);
    // Continuation objects climb back to the skin through the chain.
    for (const auto& [label, inst] : machine.instructions)
      for (const Label& b : letter_labels)
        emit(SendOut{b, label_obj.at(label), label_obj.at(label), b}, GadgetTag::Write);
  }

  void cleanup() {
    const Symbol lh = label_obj.at(machine.halt);
    const Symbol lhp = object_names.fresh(machine.halt + "'");

    emit(SendIn{lh, reg_label[1], lh, reg_label[1]}, GadgetTag::Cleanup);
    emit(Dissolve{reg_label[1], lh, Multiset::singleton(lhp)}, GadgetTag::Cleanup);
    emit(SendIn{lhp, reg_label[2], lhp, reg_label[2]}, GadgetTag::Cleanup);
    emit(Rewrite{kSkinLabel, reg_token[1], Multiset{}}, GadgetTag::Cleanup);
    emit(Rewrite{kSkinLabel, reg_token[2], Multiset{}}, GadgetTag::Cleanup);

    if (mode == OutputMode::Traces) {
      const Symbol lhpp = object_names.fresh(machine.halt + "''");
      emit(Dissolve{reg_label[2], lhp, Multiset::singleton(lhpp)}, GadgetTag::Cleanup);
      emit(SendIn{lhpp, traveller_home, lhpp, traveller_home}, GadgetTag::Cleanup);
      emit(Dissolve{traveller_home, lhpp, Multiset{}}, GadgetTag::Cleanup);
      for (const Label& a : letter_labels)
        emit(SendIn{*out.system.traveller, a, *out.system.traveller, a}, GadgetTag::TravellerWalk);
      return;
    }

    const Symbol f = object_names.fresh("f");
    const Symbol fp = object_names.fresh(f + "'");
    emit(Dissolve{reg_label[2], lhp, Multiset::singleton(f)}, GadgetTag::Cleanup);

    const GadgetTag descent_tag = mode == OutputMode::Ext ? GadgetTag::ExtShuttle : GadgetTag::Deposit;
    for (const Label& a : letter_labels) {
      emit(SendIn{f, a, fp, a}, descent_tag);
      emit(Rewrite{a, fp, Multiset{{a, 1}, {f, 1}}}, descent_tag);
    }
    if (mode == OutputMode::Ext) {
      for (const Label& b : letter_labels)
        for (const Symbol& a : machine.output_alphabet)
          emit(SendOut{b, a, a, b}, GadgetTag::ExtShuttle);
      for (const Symbol& a : machine.output_alphabet)
        emit(SendOut{kSkinLabel, a, a, kSkinLabel}, GadgetTag::ExtShuttle);
    }
  }

  void finish() {
    PSystem& sys = out.system;
    for (const Symbol& t : machine.output_alphabet) sys.output_alphabet.insert(t);

    std::function<void(const Membrane&)> collect = [&](const Membrane& m) {
      if (m.label != kSkinLabel) sys.labels.insert(m.label);
      for (const auto& [sym, n] : m.contents.items()) sys.objects.insert(sym);
      for (const Membrane& c : m.children) collect(c);
    };
    collect(sys.init.root);
    for (const Rule& rule : sys.rules) {
      for (const Symbol& sym : rule_symbols(rule)) sys.objects.insert(sym);
      for (const Label& lab : rule_labels(rule))
        if (lab != kSkinLabel) sys.labels.insert(lab);
    }

    sys.ops = OpSet{};
    sys.ops_declared = true;
    bool any_dissolve = false;
    for (const Rule& rule : sys.rules) {
      if (std::holds_alternative<Dissolve>(rule)) any_dissolve = true;
      sys.ops.insert(classify_rule(rule, true));
    }
    if (any_dissolve) sys.ops.insert(OpCode::GPrime);

    out.warnings = label_names.renames();
    for (const std::string& r : object_names.renames()) out.warnings.push_back(r);
  }
};

}  // namespace

CompiledSystem compile_rm(const RegisterMachine& machine, OutputMode mode) {
  if (machine.registers != 2)
    throw NeedsTwoRegistersError("this construction simulates exactly 2 registers, machine has " +
                                 std::to_string(machine.registers));

  RmBuilder b(machine, mode);
  b.allocate_names();
  b.bootstrap();
  for (const auto& [label, inst] : machine.instructions) {
    switch (inst.kind) {
      case RmInstruction::Kind::Add: b.add_instruction(label, inst); break;
      case RmInstruction::Kind::Sub: b.sub_instruction(label, inst); break;
      case RmInstruction::Kind::Write: b.write_instruction(label, inst); break;
      case RmInstruction::Kind::Halt: break;
    }
  }
  b.write_shared();
  b.cleanup();
  b.finish();
  return std::move(b.out);
}

}  // namespace memforge
