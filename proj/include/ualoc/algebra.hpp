#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ualoc {

// A finitary operation given by its full value table. Entries are stored
// row-major with the LAST argument varying fastest; a 0-ary operation has a
// single entry.
struct OperationTable {
  std::string symbol;
  int arity = 0;
  std::vector<int> table;

  int apply(std::span<const int> args, int universe_size) const {
    std::size_t idx = 0;
    for (int a : args)
      idx = idx * static_cast<std::size_t>(universe_size) + static_cast<std::size_t>(a);
    return table[idx];
  }
};

// A finite algebra on the universe {0, ..., size-1} with named operations.
struct FiniteAlgebra {
  std::string name;
  int size = 0;
  std::vector<OperationTable> ops;

  const OperationTable* find_op(std::string_view symbol) const;
  std::vector<std::pair<std::string, int>> signature() const;

  // Throws precondition_error on malformed tables, duplicate symbols or a
  // non-positive universe.
  void validate() const;
};

bool same_signature(const FiniteAlgebra& a, const FiniteAlgebra& b);
bool operator==(const FiniteAlgebra& a, const FiniteAlgebra& b);

// A subset of a parent universe closed under every parent operation
// (0-ary values included). Elements are sorted ascending.
struct SubUniverse {
  const FiniteAlgebra* parent = nullptr;
  std::vector<int> elements;

  bool contains(int x) const;
  bool is_full() const { return parent && static_cast<int>(elements.size()) == parent->size; }
};

}  // namespace ualoc
