#include "ualoc/algebra.hpp"

#include <algorithm>
#include <set>

#include "ualoc/errors.hpp"

namespace ualoc {

const OperationTable* FiniteAlgebra::find_op(std::string_view symbol) const {
  for (const auto& op : ops)
    if (op.symbol == symbol) return &op;
  return nullptr;
}

std::vector<std::pair<std::string, int>> FiniteAlgebra::signature() const {
  std::vector<std::pair<std::string, int>> sig;
  sig.reserve(ops.size());
  for (const auto& op : ops) sig.emplace_back(op.symbol, op.arity);
  return sig;
}

void FiniteAlgebra::validate() const {
  if (size < 1) throw precondition_error("algebra '" + name + "': size must be at least 1");
  std::set<std::string> seen;
  for (const auto& op : ops) {
    if (op.symbol.empty())
      throw precondition_error("algebra '" + name + "': empty operation symbol");
    if (!seen.insert(op.symbol).second)
      throw precondition_error("algebra '" + name + "': duplicate operation symbol '" +
                               op.symbol + "'");
    if (op.arity < 0)
      throw precondition_error("algebra '" + name + "': negative arity for '" + op.symbol + "'");
    std::size_t expect = 1;
    for (int i = 0; i < op.arity; ++i) {
      expect *= static_cast<std::size_t>(size);
      if (expect > (std::size_t{1} << 40))
        throw precondition_error("algebra '" + name + "': table of '" + op.symbol +
                                 "' is too large to represent");
    }
    if (op.table.size() != expect)
      throw precondition_error("algebra '" + name + "': table of '" + op.symbol + "' has " +
                               std::to_string(op.table.size()) + " entries, expected " +
                               std::to_string(expect));
    for (int v : op.table)
      if (v < 0 || v >= size)
        throw precondition_error("algebra '" + name + "': table entry " + std::to_string(v) +
                                 " of '" + op.symbol + "' is outside the universe");
  }
}

bool same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.ops.size() != b.ops.size()) return false;
  for (std::size_t i = 0; i < a.ops.size(); ++i)
    if (a.ops[i].symbol != b.ops[i].symbol || a.ops[i].arity != b.ops[i].arity) return false;
  return true;
}

bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.name != b.name || a.size != b.size || a.ops.size() != b.ops.size()) return false;
  for (std::size_t i = 0; i < a.ops.size(); ++i) {
    if (a.ops[i].symbol != b.ops[i].symbol || a.ops[i].arity != b.ops[i].arity ||
        a.ops[i].table != b.ops[i].table)
      return false;
  }
  return true;
}

bool SubUniverse::contains(int x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

}  // namespace ualoc
