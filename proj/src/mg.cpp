#include "memforge/mg.hpp"

#include <algorithm>
#include <sstream>

namespace memforge {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  // Commas separate even without surrounding spaces.
  std::string spaced;
  for (char ch : line) {
    if (ch == ',') {
      spaced += " , ";
    } else {
      spaced += ch;
    }
  }
  std::vector<std::string> words;
  std::istringstream in(spaced);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

bool contains(const std::vector<Symbol>& xs, const Symbol& s) {
  return std::count(xs.begin(), xs.end(), s) != 0;
}

}  // namespace

bool MatrixGrammar::in_n1(const Symbol& s) const { return contains(n1, s); }
bool MatrixGrammar::in_n2(const Symbol& s) const { return contains(n2, s); }
bool MatrixGrammar::in_t(const Symbol& s) const { return contains(t, s); }

MatrixGrammar parse_mg(const std::string& text) {
  MatrixGrammar g;
  bool have_n1 = false, have_n2 = false, have_t = false, have_init = false, have_terminal = false;
  std::vector<Matrix> type2, type3;

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::vector<std::string> words = split_words(line);
    if (words.empty() || words.front().front() == '#') continue;

    const std::string& head = words.front();
    auto rest = [&](std::vector<Symbol>& into) {
      for (std::size_t i = 1; i < words.size(); ++i) into.push_back(words[i]);
    };

    if (head == "N1:") {
      rest(g.n1);
      have_n1 = true;
    } else if (head == "N2:") {
      rest(g.n2);
      have_n2 = true;
    } else if (head == "T:") {
      rest(g.t);
      have_t = true;
    } else if (head == "init:") {
      // init: S -> X A
      if (words.size() != 5 || words[1] != kAxiom || words[2] != "->")
        throw ParseError(line_no, 1, "expected 'init: S -> X A'");
      g.init_n1 = words[3];
      g.init_n2 = words[4];
      have_init = true;
    } else if (head == "terminal:") {
      if (words.size() != 4 || words[1] != kFinisher || words[2] != "->" || words[3] != "lambda")
        throw ParseError(line_no, 1, "expected 'terminal: Z -> lambda'");
      if (have_terminal) throw ParseError(line_no, 1, "duplicate terminal matrix");
      have_terminal = true;
    } else {
      if (head.back() != ':')
        throw ParseError(line_no, 1, "expected a matrix row 'mI: X -> Y , A -> x'");
      Matrix m;
      m.name = head.substr(0, head.size() - 1);

      std::size_t i = 1;
      auto need = [&](const char* what) -> const std::string& {
        if (i >= words.size()) throw ParseError(line_no, 1, std::string("matrix row ends before ") + what);
        return words[i++];
      };
      m.first_lhs = need("the first rule's left symbol");
      if (need("'->'") != "->") throw ParseError(line_no, 1, "expected '->' in the first rule");
      m.first_rhs = need("the first rule's right symbol");
      if (need("','") != ",") throw ParseError(line_no, 1, "expected ',' between the two rules");
      m.second_lhs = need("the second rule's left symbol");
      if (need("'->'") != "->") throw ParseError(line_no, 1, "expected '->' in the second rule");
      while (i < words.size() && words[i] != "(ac)") m.second_rhs.push_back(words[i++]);
      if (i < words.size() && words[i] == "(ac)") {
        m.appearance_check = true;
        ++i;
      }
      if (i < words.size()) throw ParseError(line_no, 1, "trailing tokens after matrix row");
      if (m.second_rhs.empty())
        throw ParseError(line_no, 1, "the second rule of a matrix needs a right side");

      const bool is_trap = m.second_rhs.size() == 1 && m.second_rhs.front() == kTrap;
      if (m.appearance_check && !is_trap)
        throw ParseError(line_no, 1, "(ac) is only valid on a '" + kTrap + "' rule");
      m.appearance_check = is_trap;
      if (is_trap) {
        type3.push_back(std::move(m));
      } else {
        if (m.second_rhs.size() > 2)
          throw ParseError(line_no, 1, "matrix right side '|x| <= 2' violated (" +
                                           std::to_string(m.second_rhs.size()) + " symbols)");
        type2.push_back(std::move(m));
      }
    }
  }

  if (!have_n1) throw ParseError(line_no, 1, "missing 'N1:' header");
  if (!have_n2) throw ParseError(line_no, 1, "missing 'N2:' header");
  if (!have_t) throw ParseError(line_no, 1, "missing 'T:' header");
  if (!have_init) throw ParseError(line_no, 1, "missing initial matrix 'init: S -> X A'");
  if (!have_terminal) throw ParseError(line_no, 1, "missing terminal matrix 'terminal: Z -> lambda'");

  // Alphabet discipline: N1, N2, T and {S, Z, #} mutually disjoint.
  auto disjoint = [&](const std::vector<Symbol>& xs, const std::vector<Symbol>& ys, const char* a,
                      const char* b) {
    for (const Symbol& s : xs)
      if (contains(ys, s))
        throw ParseError(1, 1, std::string("symbol '") + s + "' appears in both " + a + " and " + b);
  };
  disjoint(g.n1, g.n2, "N1", "N2");
  disjoint(g.n1, g.t, "N1", "T");
  disjoint(g.n2, g.t, "N2", "T");
  for (const Symbol& s : {kAxiom, kFinisher, kTrap})
    if (contains(g.n1, s) || contains(g.n2, s) || contains(g.t, s))
      throw ParseError(1, 1, "distinguished symbol '" + s + "' cannot be declared in N1/N2/T");

  if (!g.in_n1(g.init_n1)) throw ParseError(1, 1, "initial matrix: '" + g.init_n1 + "' is not in N1");
  if (!g.in_n2(g.init_n2)) throw ParseError(1, 1, "initial matrix: '" + g.init_n2 + "' is not in N2");

  auto check_matrix = [&](const Matrix& m, bool trap) {
    if (!g.in_n1(m.first_lhs))
      throw ParseError(1, 1, "matrix " + m.name + ": '" + m.first_lhs + "' is not in N1");
    if (!g.in_n1(m.first_rhs) && m.first_rhs != kFinisher)
      throw ParseError(1, 1, "matrix " + m.name + ": '" + m.first_rhs + "' is not in N1 ∪ {Z}");
    if (!g.in_n2(m.second_lhs))
      throw ParseError(1, 1, "matrix " + m.name + ": '" + m.second_lhs + "' is not in N2");
    if (!trap)
      for (const Symbol& s : m.second_rhs)
        if (!g.in_n2(s) && !g.in_t(s))
          throw ParseError(1, 1, "matrix " + m.name + ": '" + s + "' is not in N2 ∪ T");
  };
  for (const Matrix& m : type2) check_matrix(m, false);
  for (const Matrix& m : type3) check_matrix(m, true);

  g.type2_count = type2.size();
  g.matrices = std::move(type2);
  for (Matrix& m : type3) g.matrices.push_back(std::move(m));
  return g;
}

std::string serialize_mg(const MatrixGrammar& g) {
  auto list = [](const std::string& key, const std::vector<Symbol>& syms) {
    std::string out = key;
    for (const Symbol& s : syms) out += " " + s;
    return out + "\n";
  };
  std::string out = list("N1:", g.n1) + list("N2:", g.n2) + list("T:", g.t);
  out += "init: " + kAxiom + " -> " + g.init_n1 + " " + g.init_n2 + "\n";
  for (const Matrix& m : g.matrices) {
    out += m.name + ": " + m.first_lhs + " -> " + m.first_rhs + " , " + m.second_lhs + " ->";
    for (const Symbol& s : m.second_rhs) out += " " + s;
    if (m.appearance_check) out += " (ac)";
    out += "\n";
  }
  out += "terminal: " + kFinisher + " -> lambda\n";
  return out;
}

}  // namespace memforge
