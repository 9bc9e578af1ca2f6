// mg.hpp -- matrix grammars with appearance checking in Z-binary normal form
#pragma once

#include <string>
#include <vector>

#include "memforge/errors.hpp"
#include "memforge/multiset.hpp"

namespace memforge {

// One matrix (X -> Y, A -> x). Type 2 has x over N2 ∪ T with 1 <= |x| <= 2;
// type 3 has x = # with the rule applied in appearance-checking mode.
struct Matrix {
  std::string name;  // label from the source, e.g. "m3"
  Symbol first_lhs;  // X ∈ N1
  Symbol first_rhs;  // Y ∈ N1 ∪ {Z}
  Symbol second_lhs; // A ∈ N2
  std::vector<Symbol> second_rhs;  // x, or {"#"} for type 3
  bool appearance_check = false;   // true exactly for type 3
};

// G = (N, T, S, M, F) with N = N1 ∪ N2 ∪ {S, Z, #}. The initial matrix is
// (S -> X A) and the unique terminal matrix is (Z -> lambda). Matrices of
// type 2 are indexed 1..k and type 3 k+1..n, in source order.
struct MatrixGrammar {
  std::vector<Symbol> n1;
  std::vector<Symbol> n2;
  std::vector<Symbol> t;
  Symbol init_n1;  // X of the initial matrix
  Symbol init_n2;  // A of the initial matrix
  std::vector<Matrix> matrices;  // type 2 first, then type 3
  std::size_t type2_count = 0;   // k

  bool in_n1(const Symbol& s) const;
  bool in_n2(const Symbol& s) const;
  bool in_t(const Symbol& s) const;
};

inline const Symbol kAxiom = "S";
inline const Symbol kFinisher = "Z";
inline const Symbol kTrap = "#";

// Format:
//   N1: X ...
//   N2: A ...
//   T: a ...
//   init: S -> X A
//   mI: X -> Y , A -> x        (optional trailing "(ac)" on type-3 rows)
//   terminal: Z -> lambda
MatrixGrammar parse_mg(const std::string& text);
std::string serialize_mg(const MatrixGrammar& grammar);

}  // namespace memforge
