#include "memforge/validate.hpp"

#include <functional>

#include "memforge/psys_format.hpp"

namespace memforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Count occurrences(const Membrane& m, const Symbol& sym) {
  Count n = m.contents.count(sym);
  for (const Membrane& c : m.children) n += occurrences(c, sym);
  return n;
}

void check_tree(const Membrane& m, bool is_root, const PSystem& system, ValidationReport& report) {
  if (is_root) {
    if (m.label != kSkinLabel) report.error("initial configuration root must carry the skin label 0");
  } else if (m.label == kSkinLabel) {
    report.error("non-root membrane carries the skin label 0");
  } else if (!system.labels.count(m.label)) {
    report.error("membrane label '" + m.label + "' in init is not declared");
  }
  for (const auto& [sym, n] : m.contents.items())
    if (!system.objects.count(sym)) report.error("object '" + sym + "' in init is not declared");
  for (const Membrane& c : m.children) check_tree(c, false, system, report);
}

bool mentions(const Multiset& ms, const Symbol& sym) { return ms.contains(sym); }

}  // namespace

ValidationReport validate_psystem(const PSystem& system, const OpSet& declared_ops) {
  ValidationReport report;
  report.lop = lop_signature(system);

  if (system.labels.count(kSkinLabel)) report.error("the label set K must not contain the skin label 0");
  check_tree(system.init.root, true, system, report);

  auto has = [&](OpCode c) { return declared_ops.contains(c); };

  for (std::size_t i = 0; i < system.rules.size(); ++i) {
    const Rule& rule = system.rules[i];
    const std::string where = "rule " + std::to_string(i + 1) + " (" + serialize_rule(rule) + ")";

    for (const Symbol& sym : rule_symbols(rule))
      if (!system.objects.count(sym)) report.error(where + ": object '" + sym + "' is not declared");
    for (const Label& lab : rule_labels(rule))
      if (lab != kSkinLabel && !system.labels.count(lab))
        report.error(where + ": label '" + lab + "' is not declared");

    std::visit(
        Overloaded{
            [&](const Rewrite&) {
              if (!has(OpCode::A)) report.error(where + ": op a is not in the declared op set");
            },
            [&](const SendOut& r) {
              if (r.host == kSkinLabel && r.relabel != kSkinLabel)
                report.error(where + ": a send-out from the skin cannot change its label");
              if (r.relabel == r.host) {
                if (!has(OpCode::B) && !has(OpCode::BPrime))
                  report.error(where + ": op b is not in the declared op set");
              } else if (!has(OpCode::BPrime)) {
                report.error(where + ": label-changing send-out needs op b'");
              }
            },
            [&](const SendIn& r) {
              if (r.target == kSkinLabel) report.warn(where + ": send-in targeting the skin never applies");
              if (r.relabel == kSkinLabel && r.target != kSkinLabel)
                report.error(where + ": a send-in cannot relabel a membrane to the skin label");
              if (r.relabel == r.target) {
                if (!has(OpCode::C) && !has(OpCode::CPrime))
                  report.error(where + ": op c is not in the declared op set");
              } else if (!has(OpCode::CPrime)) {
                report.error(where + ": label-changing send-in needs op c'");
              }
            },
            [&](const Create& r) {
              if (r.created == kSkinLabel)
                report.error(where + ": membrane creation cannot produce a skin-labelled membrane");
              if (r.payload.total() == 1) {
                if (!has(OpCode::D) && !has(OpCode::DStar))
                  report.error(where + ": op d is not in the declared op set");
              } else if (!has(OpCode::DStar)) {
                report.error(where + ": non-singleton creation payload needs op d*");
              }
            },
            [&](const Divide& r) {
              if (r.host == kSkinLabel) report.error(where + ": the skin membrane cannot divide");
              if (r.left_label == kSkinLabel || r.right_label == kSkinLabel)
                report.error(where + ": division cannot introduce a skin-labelled membrane");
              if (!has(OpCode::E) && !has(OpCode::EPrime))
                report.error(where + ": op e is not in the declared op set");
            },
            [&](const Duplicate& r) {
              if (r.host == kSkinLabel) report.error(where + ": the skin membrane cannot be duplicated");
              if (r.outer_label == kSkinLabel || r.inner_label == kSkinLabel)
                report.error(where + ": duplication cannot introduce a skin-labelled membrane");
              if (!has(OpCode::F) && !has(OpCode::FPrime))
                report.error(where + ": op f is not in the declared op set");
            },
            [&](const Dissolve& r) {
              if (r.host == kSkinLabel) report.error(where + ": the skin membrane cannot dissolve");
              if (r.result == Multiset::singleton(r.trigger)) {
                if (!has(OpCode::G) && !has(OpCode::GPrime))
                  report.error(where + ": op g is not in the declared op set");
              } else {
                if (!has(OpCode::GStar))
                  report.error(where + ": generalized dissolution result needs op g*");
                if (!has(OpCode::G) && !has(OpCode::GPrime))
                  report.error(where + ": op g* also needs g or g' declared");
              }
            },
        },
        rule);
  }

  if (system.traveller) {
    const Symbol& t = *system.traveller;
    if (!system.objects.count(t)) report.error("traveller '" + t + "' is not a declared object");
    const Count n = occurrences(system.init.root, t);
    if (n != 1)
      report.error("traveller '" + t + "' must occur exactly once in init (found " + std::to_string(n) +
                   ")");
    for (std::size_t i = 0; i < system.rules.size(); ++i) {
      const Rule& rule = system.rules[i];
      const std::string where = "rule " + std::to_string(i + 1) + " (" + serialize_rule(rule) + ")";
      std::visit(Overloaded{
                     [&](const Rewrite& r) {
                       if (r.trigger == t || mentions(r.output, t))
                         report.error(where + ": the traveller cannot be rewritten or created");
                     },
                     [&](const SendOut& r) {
                       if ((r.trigger == t) != (r.sent == t))
                         report.error(where + ": the traveller cannot be modified while moving");
                     },
                     [&](const SendIn& r) {
                       if ((r.trigger == t) != (r.moved == t))
                         report.error(where + ": the traveller cannot be modified while moving");
                     },
                     [&](const Create& r) {
                       if (r.trigger == t || mentions(r.payload, t))
                         report.error(where + ": the traveller cannot be consumed or created");
                     },
                     [&](const Divide& r) {
                       if (r.trigger == t || r.left_object == t || r.right_object == t)
                         report.error(where + ": the traveller cannot take part in a division rule");
                     },
                     [&](const Duplicate& r) {
                       if (r.trigger == t || r.outer_object == t || r.inner_object == t)
                         report.error(where + ": the traveller cannot take part in a duplication rule");
                     },
                     [&](const Dissolve& r) {
                       if (r.trigger == t || mentions(r.result, t))
                         report.error(where + ": the traveller cannot trigger or result from dissolution");
                     },
                 },
                 rule);
    }
  }

  // Most specific codes actually used, with the elementary-only hint taken
  // from the declared set.
  for (const Rule& rule : system.rules) {
    bool hint = false;
    if (std::holds_alternative<Divide>(rule)) hint = declared_ops.elementary_only(OpCode::E);
    if (std::holds_alternative<Duplicate>(rule)) hint = declared_ops.elementary_only(OpCode::F);
    if (std::holds_alternative<Dissolve>(rule)) hint = declared_ops.elementary_only(OpCode::G);
    report.op_codes_used.insert(classify_rule(rule, hint));
  }

  // Unused declarations are worth a note, not a failure.
  std::set<Symbol> seen_objects;
  std::function<void(const Membrane&)> collect = [&](const Membrane& m) {
    for (const auto& [sym, n] : m.contents.items()) seen_objects.insert(sym);
    for (const Membrane& c : m.children) collect(c);
  };
  collect(system.init.root);
  for (const Rule& rule : system.rules)
    for (const Symbol& sym : rule_symbols(rule)) seen_objects.insert(sym);
  if (system.traveller) seen_objects.insert(*system.traveller);
  for (const Symbol& sym : system.objects)
    if (!seen_objects.count(sym)) report.warn("declared object '" + sym + "' is never used");
  const std::set<Label> labels_in_use = used_labels(system);
  for (const Label& lab : system.labels)
    if (!labels_in_use.count(lab)) report.warn("declared label '" + lab + "' is never used");

  return report;
}

ValidationReport validate_psystem(const PSystem& system) {
  return validate_psystem(system, system.ops);
}

}  // namespace memforge
