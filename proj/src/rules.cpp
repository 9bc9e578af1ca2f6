#include "memforge/rules.hpp"

#include <algorithm>
#include <array>

namespace memforge {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr std::array<std::pair<OpCode, const char*>, 14> kOpNames{{
    {OpCode::A, "a"},
    {OpCode::B, "b"},
    {OpCode::BPrime, "b'"},
    {OpCode::C, "c"},
    {OpCode::CPrime, "c'"},
    {OpCode::D, "d"},
    {OpCode::DStar, "d*"},
    {OpCode::E, "e"},
    {OpCode::EPrime, "e'"},
    {OpCode::F, "f"},
    {OpCode::FPrime, "f'"},
    {OpCode::G, "g"},
    {OpCode::GPrime, "g'"},
    {OpCode::GStar, "g*"},
}};

}  // namespace

std::string to_string(OpCode code) {
  for (const auto& [c, name] : kOpNames)
    if (c == code) return name;
  return "?";
}

std::optional<OpCode> parse_opcode(const std::string& token) {
  for (const auto& [c, name] : kOpNames)
    if (token == name) return c;
  return std::nullopt;
}

OpSet OpSet::all() {
  OpSet out;
  for (const auto& [c, name] : kOpNames) out.insert(c);
  return out;
}

bool OpSet::elementary_only(OpCode unprimed) const {
  OpCode primed;
  switch (unprimed) {
    case OpCode::E: primed = OpCode::EPrime; break;
    case OpCode::F: primed = OpCode::FPrime; break;
    case OpCode::G: primed = OpCode::GPrime; break;
    default: return false;
  }
  return contains(primed) && !contains(unprimed);
}

bool OpSet::is_subset_of(const OpSet& other) const {
  return std::includes(other.codes_.begin(), other.codes_.end(), codes_.begin(), codes_.end());
}

std::string OpSet::to_string() const {
  std::string out;
  for (const auto& [c, name] : kOpNames) {
    if (!contains(c)) continue;
    if (!out.empty()) out += ' ';
    out += name;
  }
  return out;
}

OpCode classify_rule(const Rule& rule, bool elementary_only_hint) {
  return std::visit(
      Overloaded{
          [](const Rewrite&) { return OpCode::A; },
          [](const SendOut& r) { return r.relabel != r.host ? OpCode::BPrime : OpCode::B; },
          [](const SendIn& r) { return r.relabel != r.target ? OpCode::CPrime : OpCode::C; },
          [](const Create& r) { return r.payload.total() != 1 ? OpCode::DStar : OpCode::D; },
          [&](const Divide&) { return elementary_only_hint ? OpCode::EPrime : OpCode::E; },
          [&](const Duplicate&) { return elementary_only_hint ? OpCode::FPrime : OpCode::F; },
          [&](const Dissolve& r) {
            if (r.result != Multiset::singleton(r.trigger)) return OpCode::GStar;
            return elementary_only_hint ? OpCode::GPrime : OpCode::G;
          },
      },
      rule);
}

std::vector<Label> rule_labels(const Rule& rule) {
  return std::visit(
      Overloaded{
          [](const Rewrite& r) { return std::vector<Label>{r.host}; },
          [](const SendOut& r) { return std::vector<Label>{r.host, r.relabel}; },
          [](const SendIn& r) { return std::vector<Label>{r.target, r.relabel}; },
          [](const Create& r) { return std::vector<Label>{r.host, r.created}; },
          [](const Divide& r) { return std::vector<Label>{r.host, r.left_label, r.right_label}; },
          [](const Duplicate& r) { return std::vector<Label>{r.host, r.outer_label, r.inner_label}; },
          [](const Dissolve& r) { return std::vector<Label>{r.host}; },
      },
      rule);
}

std::vector<Symbol> rule_symbols(const Rule& rule) {
  auto with_multiset = [](std::vector<Symbol> syms, const Multiset& ms) {
    for (const auto& [sym, n] : ms.items()) syms.push_back(sym);
    return syms;
  };
  return std::visit(
      Overloaded{
          [&](const Rewrite& r) { return with_multiset({r.trigger}, r.output); },
          [](const SendOut& r) { return std::vector<Symbol>{r.trigger, r.sent}; },
          [](const SendIn& r) { return std::vector<Symbol>{r.trigger, r.moved}; },
          [&](const Create& r) { return with_multiset({r.trigger}, r.payload); },
          [](const Divide& r) { return std::vector<Symbol>{r.trigger, r.left_object, r.right_object}; },
          [](const Duplicate& r) { return std::vector<Symbol>{r.trigger, r.outer_object, r.inner_object}; },
          [&](const Dissolve& r) { return with_multiset({r.trigger}, r.result); },
      },
      rule);
}

bool rules_equal(const Rule& a, const Rule& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& ra) {
        using T = std::decay_t<decltype(ra)>;
        const auto& rb = std::get<T>(b);
        if constexpr (std::is_same_v<T, Rewrite>) {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.output == rb.output;
        } else if constexpr (std::is_same_v<T, SendOut>) {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.sent == rb.sent && ra.relabel == rb.relabel;
        } else if constexpr (std::is_same_v<T, SendIn>) {
          return ra.trigger == rb.trigger && ra.target == rb.target && ra.moved == rb.moved &&
                 ra.relabel == rb.relabel;
        } else if constexpr (std::is_same_v<T, Create>) {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.created == rb.created &&
                 ra.payload == rb.payload;
        } else if constexpr (std::is_same_v<T, Divide>) {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.left_label == rb.left_label &&
                 ra.left_object == rb.left_object && ra.right_label == rb.right_label &&
                 ra.right_object == rb.right_object;
        } else if constexpr (std::is_same_v<T, Duplicate>) {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.outer_label == rb.outer_label &&
                 ra.outer_object == rb.outer_object && ra.inner_label == rb.inner_label &&
                 ra.inner_object == rb.inner_object;
        } else {
          return ra.host == rb.host && ra.trigger == rb.trigger && ra.result == rb.result;
        }
      },
      a);
}

}  // namespace memforge
