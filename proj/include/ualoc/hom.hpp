#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/limits.hpp"

namespace ualoc {

// The graph of a total homomorphism, stored as the image vector.
struct HomGraph {
  const FiniteAlgebra* dom = nullptr;
  const FiniteAlgebra* cod = nullptr;
  std::vector<int> map;

  std::vector<std::pair<int, int>> pairs() const;
  bool is_bijective() const;
};

bool operator==(const HomGraph& a, const HomGraph& b);

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const int> map);

// Small generating set found greedily (largest closure gain, smallest element
// on ties), starting from the closure of the constants.
std::vector<int> greedy_generating_set(const FiniteAlgebra& a);

// Exact smallest generating set (lexicographically least among the smallest).
std::vector<int> minimum_generating_set(const FiniteAlgebra& a);

// All total homomorphisms A -> B in lexicographic order of their image
// vectors. Backtracks over images of a generating set, extending partial maps
// by closure; every result is re-verified against every basic operation.
std::vector<HomGraph> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                              const Limits& limits = {});

}  // namespace ualoc
