#include "memforge/psys_format.hpp"

#include <algorithm>
#include <cctype>

namespace memforge {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

bool is_comment_line(const std::string& line) {
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    return ch == '#';
  }
  return false;
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> tokens;
  std::size_t line_no = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    if (!is_comment_line(line)) {
      std::size_t i = 0;
      while (i < line.size()) {
        const char ch = line[i];
        if (std::isspace(static_cast<unsigned char>(ch))) {
          ++i;
          continue;
        }
        if (ch == '[' || ch == ']') {
          tokens.push_back({std::string(1, ch), line_no, i + 1});
          ++i;
          continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '[' &&
               line[j] != ']')
          ++j;
        tokens.push_back({line.substr(i, j - i), line_no, i + 1});
        i = j;
      }
    }
    ++line_no;
    start = end + 1;
    if (end == text.size()) break;
  }
  return tokens;
}

const std::vector<std::string> kHeaderKeywords = {"objects:", "labels:", "output:",
                                                  "ops:",     "traveller:", "init:"};

bool is_keyword(const std::string& tok) {
  if (tok == "rules:") return true;
  return std::find(kHeaderKeywords.begin(), kHeaderKeywords.end(), tok) != kHeaderKeywords.end();
}

class Cursor {
public:
  Cursor(const std::vector<Token>& tokens, std::size_t begin, std::size_t end)
      : tokens_(tokens), pos_(begin), end_(end) {}

  bool done() const { return pos_ >= end_; }
  const Token& peek() const {
    if (done()) throw ParseError(last_line(), 1, "unexpected end of input");
    return tokens_[pos_];
  }
  Token next() {
    const Token tok = peek();
    ++pos_;
    return tok;
  }
  void expect(const std::string& text) {
    const Token tok = next();
    if (tok.text != text)
      throw ParseError(tok.line, tok.column, "expected '" + text + "', found '" + tok.text + "'");
  }
  std::string expect_name(const char* what) {
    const Token tok = next();
    if (tok.text == "[" || tok.text == "]" || tok.text == "->")
      throw ParseError(tok.line, tok.column, std::string("expected ") + what + ", found '" + tok.text + "'");
    return tok.text;
  }
  std::size_t last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

private:
  const std::vector<Token>& tokens_;
  std::size_t pos_;
  std::size_t end_;
};

Membrane parse_tree_tokens(Cursor& cur) {
  cur.expect("[");
  Membrane m;
  m.label = cur.expect_name("a membrane label");
  while (cur.peek().text != "]") {
    if (cur.peek().text == "[") {
      m.children.push_back(parse_tree_tokens(cur));
    } else {
      m.contents.add(cur.expect_name("an object"));
    }
  }
  cur.expect("]");
  return m;
}

Rule parse_rule_tokens(Cursor& cur) {
  if (cur.peek().text != "[") {
    // a [i] -> [j b]   (send-in)
    SendIn r;
    r.trigger = cur.expect_name("an object");
    cur.expect("[");
    r.target = cur.expect_name("a membrane label");
    cur.expect("]");
    cur.expect("->");
    cur.expect("[");
    r.relabel = cur.expect_name("a membrane label");
    r.moved = cur.expect_name("an object");
    cur.expect("]");
    return r;
  }

  cur.expect("[");
  const Label host = cur.expect_name("a membrane label");
  const Symbol trigger = cur.expect_name("an object");

  if (cur.peek().text == "->") {
    cur.next();
    if (!cur.done() && cur.peek().text == "[") {
      // [i a -> [j v]]   (creation)
      cur.next();
      Create r;
      r.host = host;
      r.trigger = trigger;
      r.created = cur.expect_name("a membrane label");
      while (cur.peek().text != "]") r.payload.add(cur.expect_name("an object"));
      cur.expect("]");
      cur.expect("]");
      return r;
    }
    // [i a -> v]   (rewrite)
    Rewrite r;
    r.host = host;
    r.trigger = trigger;
    while (!cur.done() && cur.peek().text != "]") r.output.add(cur.expect_name("an object"));
    cur.expect("]");
    return r;
  }

  cur.expect("]");
  cur.expect("->");

  if (!cur.done() && cur.peek().text == "[") {
    // [i a] -> [k b] [j c]  or  [i a] -> [k b [j c]]
    cur.next();
    const Label first_label = cur.expect_name("a membrane label");
    const Symbol first_object = cur.expect_name("an object");
    if (cur.peek().text == "[") {
      cur.next();
      Duplicate r;
      r.host = host;
      r.trigger = trigger;
      r.outer_label = first_label;
      r.outer_object = first_object;
      r.inner_label = cur.expect_name("a membrane label");
      r.inner_object = cur.expect_name("an object");
      cur.expect("]");
      cur.expect("]");
      return r;
    }
    cur.expect("]");
    cur.expect("[");
    Divide r;
    r.host = host;
    r.trigger = trigger;
    r.left_label = first_label;
    r.left_object = first_object;
    r.right_label = cur.expect_name("a membrane label");
    r.right_object = cur.expect_name("an object");
    cur.expect("]");
    return r;
  }

  // Either  [i a] -> b [i]  (send-out)  or  [i a] -> v  (dissolution)
  std::vector<Symbol> names;
  while (!cur.done() && cur.peek().text != "[") names.push_back(cur.expect_name("an object"));
  if (!cur.done() && cur.peek().text == "[") {
    if (names.size() != 1) {
      const Token& tok = cur.peek();
      throw ParseError(tok.line, tok.column, "send-out rule takes exactly one object before '['");
    }
    cur.next();
    SendOut r;
    r.host = host;
    r.trigger = trigger;
    r.sent = names.front();
    r.relabel = cur.expect_name("a membrane label");
    cur.expect("]");
    return r;
  }
  Dissolve r;
  r.host = host;
  r.trigger = trigger;
  for (const Symbol& sym : names) r.result.add(sym);
  return r;
}

std::string multiset_tokens(const Multiset& ms) {
  std::string out;
  for (const auto& [sym, n] : ms.items())
    for (Count i = 0; i < n; ++i) {
      if (!out.empty()) out += ' ';
      out += sym;
    }
  return out;
}

std::string serialize_tree(const Membrane& m) {
  std::string out = "[" + m.label;
  const std::string objs = multiset_tokens(m.contents);
  if (!objs.empty()) out += " " + objs;
  for (const Membrane& c : m.children) out += " " + serialize_tree(c);
  out += "]";
  return out;
}

}  // namespace

Membrane parse_tree(const std::string& text) {
  const std::vector<Token> tokens = tokenize(text);
  Cursor cur(tokens, 0, tokens.size());
  Membrane m = parse_tree_tokens(cur);
  if (!cur.done()) {
    const Token& tok = cur.peek();
    throw ParseError(tok.line, tok.column, "trailing input after membrane tree");
  }
  assign_ids(m, 0);
  return m;
}

PSystem parse_psystem(const std::string& text) {
  const std::vector<Token> tokens = tokenize(text);

  std::size_t rules_at = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i)
    if (tokens[i].text == "rules:") {
      rules_at = i;
      break;
    }
  if (rules_at == tokens.size()) throw ParseError(1, 1, "missing 'rules:' section");

  PSystem system;
  bool have_objects = false, have_labels = false, have_init = false, have_traveller = false;
  Membrane init_root;

  Cursor cur(tokens, 0, rules_at);
  while (!cur.done()) {
    const Token key = cur.next();
    if (key.text == "objects:" || key.text == "labels:" || key.text == "output:" || key.text == "ops:") {
      while (!cur.done() && !is_keyword(cur.peek().text)) {
        const Token tok = cur.next();
        if (tok.text == "[" || tok.text == "]")
          throw ParseError(tok.line, tok.column, "brackets are not allowed in '" + key.text + "'");
        if (key.text == "objects:") {
          system.objects.insert(tok.text);
          have_objects = true;
        } else if (key.text == "labels:") {
          if (tok.text == kSkinLabel)
            throw ParseError(tok.line, tok.column, "the skin label 0 is reserved and never part of K");
          system.labels.insert(tok.text);
          have_labels = true;
        } else if (key.text == "output:") {
          system.output_alphabet.insert(tok.text);
        } else {
          auto code = parse_opcode(tok.text);
          if (!code) throw ParseError(tok.line, tok.column, "unknown op code '" + tok.text + "'");
          if (!system.ops_declared) system.ops = OpSet{};
          system.ops_declared = true;
          system.ops.insert(*code);
        }
      }
      if (key.text == "objects:") have_objects = true;
      if (key.text == "labels:") have_labels = true;
    } else if (key.text == "traveller:") {
      if (have_traveller) throw ParseError(key.line, key.column, "duplicate 'traveller:' header");
      system.traveller = cur.expect_name("an object");
      have_traveller = true;
    } else if (key.text == "init:") {
      if (have_init) throw ParseError(key.line, key.column, "duplicate 'init:' header");
      init_root = parse_tree_tokens(cur);
      have_init = true;
    } else {
      throw ParseError(key.line, key.column, "expected a header keyword, found '" + key.text + "'");
    }
  }

  if (!have_objects) throw ParseError(1, 1, "missing 'objects:' header");
  if (!have_labels && membrane_count(init_root) > 1)
    throw ParseError(1, 1, "missing 'labels:' header");
  if (!have_init) throw ParseError(1, 1, "missing 'init:' header");

  system.init = make_configuration(std::move(init_root));

  // One rule per line after "rules:".
  std::size_t i = rules_at + 1;
  while (i < tokens.size()) {
    std::size_t j = i;
    while (j < tokens.size() && tokens[j].line == tokens[i].line) ++j;
    Cursor rule_cur(tokens, i, j);
    system.rules.push_back(parse_rule_tokens(rule_cur));
    if (!rule_cur.done()) {
      const Token& tok = tokens[i];
      throw ParseError(tok.line, tok.column, "trailing tokens after rule (one rule per line)");
    }
    i = j;
  }
  return system;
}

std::string serialize_rule(const Rule& rule) {
  struct Visitor {
    std::string operator()(const Rewrite& r) const {
      std::string out = "[" + r.host + " " + r.trigger + " ->";
      const std::string v = multiset_tokens(r.output);
      if (!v.empty()) out += " " + v;
      return out + "]";
    }
    std::string operator()(const SendOut& r) const {
      return "[" + r.host + " " + r.trigger + "] -> " + r.sent + " [" + r.relabel + "]";
    }
    std::string operator()(const SendIn& r) const {
      return r.trigger + " [" + r.target + "] -> [" + r.relabel + " " + r.moved + "]";
    }
    std::string operator()(const Create& r) const {
      std::string out = "[" + r.host + " " + r.trigger + " -> [" + r.created;
      const std::string v = multiset_tokens(r.payload);
      if (!v.empty()) out += " " + v;
      return out + "]]";
    }
    std::string operator()(const Divide& r) const {
      return "[" + r.host + " " + r.trigger + "] -> [" + r.left_label + " " + r.left_object + "] [" +
             r.right_label + " " + r.right_object + "]";
    }
    std::string operator()(const Duplicate& r) const {
      return "[" + r.host + " " + r.trigger + "] -> [" + r.outer_label + " " + r.outer_object + " [" +
             r.inner_label + " " + r.inner_object + "]]";
    }
    std::string operator()(const Dissolve& r) const {
      std::string out = "[" + r.host + " " + r.trigger + "] ->";
      const std::string v = multiset_tokens(r.result);
      if (!v.empty()) out += " " + v;
      return out;
    }
  };
  return std::visit(Visitor{}, rule);
}

std::string serialize_psystem(const PSystem& system) {
  return serialize_psystem(system, {});
}

std::string serialize_psystem(const PSystem& system, const std::vector<std::string>& annotations) {
  std::string out;
  auto header = [&out](const std::string& key, const auto& items) {
    out += key;
    for (const auto& item : items) {
      out += ' ';
      out += item;
    }
    out += '\n';
  };
  header("objects:", system.objects);
  header("labels:", system.labels);
  header("output:", system.output_alphabet);
  if (system.ops_declared) {
    out += "ops: " + system.ops.to_string() + "\n";
  }
  if (system.traveller) out += "traveller: " + *system.traveller + "\n";
  out += "init: " + serialize_tree(system.init.root) + "\n";
  out += "rules:\n";
  for (std::size_t i = 0; i < system.rules.size(); ++i) {
    if (i < annotations.size() && !annotations[i].empty()) out += "# gadget: " + annotations[i] + "\n";
    out += serialize_rule(system.rules[i]) + "\n";
  }
  return out;
}

}  // namespace memforge
