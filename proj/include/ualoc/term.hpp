#pragma once

#include <span>
#include <string>
#include <vector>

#include "ualoc/algebra.hpp"

namespace ualoc {

// A term over an algebra's signature: either a variable x<i> or an operation
// symbol applied to child terms. Plain value type; copying copies the tree.
class Term {
 public:
  Term() = default;  // the variable x0

  static Term variable(int index);
  static Term apply(std::string symbol, std::vector<Term> children);

  bool is_variable() const { return var_ >= 0; }
  int var_index() const { return var_; }
  const std::string& symbol() const { return symbol_; }
  const std::vector<Term>& children() const { return children_; }

  // Largest variable index occurring in the term, -1 if none.
  int max_variable() const;
  std::size_t node_count() const;

 private:
  int var_ = 0;  // >= 0: variable index; < 0: application node
  std::string symbol_;
  std::vector<Term> children_;
};

bool operator==(const Term& a, const Term& b);

// Value of the induced term operation at args. Throws precondition_error on
// an unknown symbol, an arity mismatch inside the term, or too few args.
int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> args);

// Replaces variable xi by replacements[i]. Variables beyond the replacement
// list are left untouched.
Term substitute(const Term& t, std::span<const Term> replacements);

std::string to_string(const Term& t);

}  // namespace ualoc
