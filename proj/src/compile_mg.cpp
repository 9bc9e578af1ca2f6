#include <functional>
#include <map>

#include "memforge/compilers.hpp"

namespace memforge {

namespace {

using compile_detail::NameAllocator;

struct MgBuilder {
  MgBuilder(const MatrixGrammar& g, OutputMode o) : grammar(g), mode(o) {}

  const MatrixGrammar& grammar;
  OutputMode mode;

  NameAllocator label_names;
  NameAllocator object_names;
  CompiledSystem out;

  Label end_marker;  // "$"
  Label trap_label;  // "#"

  std::map<Symbol, Symbol> n1_obj;                // N1 symbol -> object
  Symbol axiom, finisher, trap_obj;
  std::vector<Symbol> control;                    // Y_i per matrix
  std::vector<Symbol> control_back;               // Y'_i per matrix
  std::map<std::pair<std::size_t, Symbol>, Symbol> carry;  // (matrix, carried symbol)

  // Chain symbols double as membrane labels with the same spelling.
  std::vector<Symbol> chain_symbols;  // N2 ∪ T

  void emit(Rule rule, GadgetTag tag) {
    for (const Rule& existing : out.system.rules)
      if (rules_equal(existing, rule)) return;
    out.system.rules.push_back(std::move(rule));
    out.gadgets.push_back(tag);
  }

  Symbol result_object(const Symbol& first_rhs) {
    return first_rhs == kFinisher ? finisher : n1_obj.at(first_rhs);
  }

  void allocate_names() {
    for (const Symbol& s : grammar.n2) {
      label_names.reserve(s);
      chain_symbols.push_back(s);
    }
    for (const Symbol& s : grammar.t) {
      label_names.reserve(s);
      chain_symbols.push_back(s);
    }
    end_marker = label_names.fresh("$");
    trap_label = label_names.fresh("#");

    for (const Symbol& s : grammar.t) object_names.reserve(s);  // deposited letters
    axiom = object_names.fresh(kAxiom);
    finisher = object_names.fresh(kFinisher);
    trap_obj = object_names.fresh(kTrap);
    for (const Symbol& x : grammar.n1) n1_obj[x] = object_names.fresh(x);

    for (std::size_t i = 0; i < grammar.matrices.size(); ++i) {
      const Matrix& m = grammar.matrices[i];
      control.push_back(object_names.fresh(m.first_rhs + "_" + m.name));
      control_back.push_back(object_names.fresh(m.first_rhs + "'_" + m.name));
      if (!m.appearance_check && m.second_rhs.size() == 2) {
        for (const Symbol& b : chain_symbols)
          carry[{i, b}] = object_names.fresh(m.first_rhs + "_{" + m.name + "," + b + "}");
        carry[{i, end_marker}] =
            object_names.fresh(m.first_rhs + "_{" + m.name + "," + end_marker + "}");
      }
    }
  }

  void init_gadget() {
    const Symbol seed = object_names.fresh(grammar.init_n1 + "_" + grammar.init_n2);
    const Symbol lift = object_names.fresh(grammar.init_n1 + "'_" + grammar.init_n2);
    emit(Create{kSkinLabel, axiom, grammar.init_n2, Multiset::singleton(seed)}, GadgetTag::MgInit);
    emit(Create{grammar.init_n2, seed, end_marker, Multiset::singleton(lift)}, GadgetTag::MgInit);
    emit(SendOut{end_marker, lift, lift, end_marker}, GadgetTag::MgInit);
    emit(SendOut{grammar.init_n2, lift, n1_obj.at(grammar.init_n1), grammar.init_n2},
         GadgetTag::MgInit);

    Membrane root;
    root.label = kSkinLabel;
    root.contents.add(axiom);
    out.system.init = make_configuration(std::move(root));
  }

  void matrix_gadgets() {
    for (std::size_t i = 0; i < grammar.matrices.size(); ++i) {
      const Matrix& m = grammar.matrices[i];
      const Symbol& y = control[i];
      const Symbol& yp = control_back[i];

      emit(Rewrite{kSkinLabel, n1_obj.at(m.first_lhs), Multiset::singleton(y)}, GadgetTag::MgDescent);
      for (const Symbol& s : chain_symbols)
        if (s != m.second_lhs) emit(SendIn{y, s, y, s}, GadgetTag::MgDescent);

      // The way back to the skin is common to every matrix kind.
      for (const Symbol& s : chain_symbols) emit(SendOut{s, yp, yp, s}, GadgetTag::MgRewrite1);
      emit(SendOut{end_marker, yp, yp, end_marker}, GadgetTag::MgRewrite1);
      emit(Rewrite{kSkinLabel, yp, Multiset::singleton(result_object(m.first_rhs))},
           GadgetTag::MgRewrite1);

      if (m.appearance_check) {
        emit(SendIn{y, m.second_lhs, trap_obj, trap_label}, GadgetTag::MgAppearanceCheck);
        emit(SendIn{y, end_marker, yp, end_marker}, GadgetTag::MgAppearanceCheck);
        continue;
      }

      // Reaching the chain bottom without meeting the rewritten symbol
      // means the matrix was not applicable: diverge.
      emit(SendIn{y, end_marker, trap_obj, trap_label}, GadgetTag::MgTrap);

      if (m.second_rhs.size() == 1) {
        emit(SendIn{y, m.second_lhs, yp, m.second_rhs.front()}, GadgetTag::MgRewrite1);
      } else {
        const Symbol& a1 = m.second_rhs[0];
        const Symbol& a2 = m.second_rhs[1];
        emit(SendIn{y, m.second_lhs, carry.at({i, a2}), a1}, GadgetTag::MgInsert2);
        for (const Symbol& b : chain_symbols) {
          for (const Symbol& c : chain_symbols)
            emit(SendIn{carry.at({i, b}), c, carry.at({i, c}), b}, GadgetTag::MgInsert2);
          emit(SendIn{carry.at({i, b}), end_marker, carry.at({i, end_marker}), b},
               GadgetTag::MgInsert2);
          emit(Create{b, carry.at({i, end_marker}), end_marker, Multiset::singleton(yp)},
               GadgetTag::MgInsert2);
        }
      }
    }
    emit(Rewrite{trap_label, trap_obj, Multiset::singleton(trap_obj)}, GadgetTag::MgTrap);
  }

  void sweep_gadget() {
    const Symbol sweeper = object_names.fresh("D");
    const Symbol paused = object_names.fresh(sweeper + "'");

    emit(Rewrite{kSkinLabel, finisher, Multiset::singleton(sweeper)}, GadgetTag::MgSweep);
    for (const Symbol& a : grammar.t) {
      emit(SendIn{sweeper, a, paused, a}, GadgetTag::MgSweep);
      if (mode == OutputMode::Lab) {
        emit(Rewrite{a, paused, Multiset::singleton(sweeper)}, GadgetTag::MgSweep);
      } else {
        emit(Rewrite{a, paused, Multiset{{a, 1}, {sweeper, 1}}}, GadgetTag::MgSweep);
      }
    }
    for (const Symbol& n : grammar.n2)
      emit(SendIn{sweeper, n, trap_obj, trap_label}, GadgetTag::MgSweep);
    emit(SendIn{sweeper, end_marker, paused, end_marker}, GadgetTag::MgSweep);

    if (mode == OutputMode::Ext) {
      for (const Symbol& b : grammar.t)
        for (const Symbol& a : grammar.t) emit(SendOut{b, a, a, b}, GadgetTag::MgSweep);
      for (const Symbol& a : grammar.t) emit(SendOut{kSkinLabel, a, a, kSkinLabel}, GadgetTag::MgSweep);
    }
  }

  void finish() {
    PSystem& sys = out.system;
    for (const Symbol& t : grammar.t) sys.output_alphabet.insert(t);

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
    for (const Rule& rule : sys.rules) sys.ops.insert(classify_rule(rule, false));

    out.warnings = label_names.renames();
    for (const std::string& r : object_names.renames()) out.warnings.push_back(r);
  }
};

}  // namespace

CompiledSystem compile_mg(const MatrixGrammar& grammar, OutputMode mode) {
  if (mode == OutputMode::Traces)
    throw TracesUnsupportedError("the matrix grammar construction has no traveller");

  MgBuilder b(grammar, mode);
  b.allocate_names();
  b.init_gadget();
  b.matrix_gadgets();
  b.sweep_gadget();
  b.finish();
  return std::move(b.out);
}

}  // namespace memforge
