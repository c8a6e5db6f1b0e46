#pragma once

#include <cstdint>

namespace ualoc {

// Explicit resource bounds for the search and closure kernels. Exceeding a
// bound raises resource_limit_error; nothing is silently truncated.
struct Limits {
  // Largest direct product (element count) that may be materialized, and the
  // conceptual power size admitted by the Mal'cev probe.
  std::uint64_t max_product_elements = std::uint64_t{1} << 24;
  // Largest single operation table that may be materialized.
  std::uint64_t max_table_entries = std::uint64_t{1} << 24;
  // Backtracking nodes for homomorphism / isomorphism search.
  std::uint64_t max_search_nodes = 10'000'000;
  // Members of the unary term monoid (absolute ceiling is n^n).
  std::uint64_t max_monoid_maps = 1'000'000;
  // Tuples in a subpower closure (clone fragments, free algebras, probes).
  std::uint64_t max_closure_tuples = 1'000'000;
  // Candidate maps enumerated between two neighborhoods.
  std::uint64_t max_local_maps = 1'000'000;
  // |U|^k positions admitted when listing a localized clone fragment.
  std::uint64_t max_fragment_positions = 64;
  // Coordinates of a subpower (free algebra exponent, probe index set).
  int max_power_coordinates = 4096;
  // Universe size admitted by all_subuniverses (subset enumeration).
  int subuniverse_bound = 12;
  // Carrier size admitted by all_congruences (partition enumeration).
  int congruence_carrier_bound = 10;
  // Universe size admitted by the brute-force separation oracle.
  int lemma21_bound = 6;
  // Fragment arity used by the classification and term-condition checks.
  int arity_bound = 3;
  // Worker threads for the parallel-capable scans.
  int jobs = 1;
};

}  // namespace ualoc
