#include "ualoc/term.hpp"

#include <algorithm>

#include "ualoc/errors.hpp"

namespace ualoc {

Term Term::variable(int index) {
  Term t;
  t.var_ = index;
  return t;
}

Term Term::apply(std::string symbol, std::vector<Term> children) {
  Term t;
  t.var_ = -1;
  t.symbol_ = std::move(symbol);
  t.children_ = std::move(children);
  return t;
}

int Term::max_variable() const {
  if (is_variable()) return var_;
  int m = -1;
  for (const Term& c : children_) m = std::max(m, c.max_variable());
  return m;
}

std::size_t Term::node_count() const {
  if (is_variable()) return 1;
  std::size_t n = 1;
  for (const Term& c : children_) n += c.node_count();
  return n;
}

bool operator==(const Term& a, const Term& b) {
  if (a.is_variable() != b.is_variable()) return false;
  if (a.is_variable()) return a.var_index() == b.var_index();
  return a.symbol() == b.symbol() && a.children() == b.children();
}

int eval_term(const FiniteAlgebra& a, const Term& t, std::span<const int> args) {
  if (t.is_variable()) {
    if (t.var_index() >= static_cast<int>(args.size()))
      throw precondition_error("term variable x" + std::to_string(t.var_index()) +
                               " has no argument");
    return args[t.var_index()];
  }
  const OperationTable* op = a.find_op(t.symbol());
  if (!op)
    throw precondition_error("unknown operation symbol '" + t.symbol() + "' in algebra '" +
                             a.name + "'");
  if (static_cast<int>(t.children().size()) != op->arity)
    throw precondition_error("operation '" + t.symbol() + "' applied to " +
                             std::to_string(t.children().size()) + " arguments, arity is " +
                             std::to_string(op->arity));
  std::vector<int> vals(t.children().size());
  for (std::size_t i = 0; i < t.children().size(); ++i)
    vals[i] = eval_term(a, t.children()[i], args);
  return op->apply(vals, a.size);
}

Term substitute(const Term& t, std::span<const Term> replacements) {
  if (t.is_variable()) {
    if (t.var_index() < static_cast<int>(replacements.size()))
      return replacements[t.var_index()];
    return t;
  }
  std::vector<Term> children;
  children.reserve(t.children().size());
  for (const Term& c : t.children()) children.push_back(substitute(c, replacements));
  return Term::apply(t.symbol(), std::move(children));
}

std::string to_string(const Term& t) {
  if (t.is_variable()) return "x" + std::to_string(t.var_index());
  std::string s = t.symbol();
  s += '(';
  for (std::size_t i = 0; i < t.children().size(); ++i) {
    if (i) s += ", ";
    s += to_string(t.children()[i]);
  }
  s += ')';
  return s;
}

}  // namespace ualoc
