#pragma once

#include <span>
#include <utility>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/limits.hpp"

namespace ualoc {

// A compatible partition of a carrier (the full universe or a subuniverse).
// class_of is indexed by carrier position and normalized to first-occurrence
// class ids, so equal partitions compare equal.
struct Congruence {
  const FiniteAlgebra* parent = nullptr;
  std::vector<int> carrier;   // sorted parent elements
  std::vector<int> class_of;  // by carrier position

  int carrier_index(int element) const;  // -1 if absent
  bool related(int a, int b) const;      // parent labels
  int num_classes() const;
  bool is_equality() const;
  bool is_full() const;
  // All related pairs in parent labels, diagonal included, sorted.
  std::vector<std::pair<int, int>> related_pairs() const;
};

bool operator==(const Congruence& a, const Congruence& b);

// Partition generated by pairs via union-find; no compatibility check.
Congruence congruence_from_pairs(const FiniteAlgebra& a, std::span<const int> carrier,
                                 std::span<const std::pair<int, int>> pairs);

// Least congruence containing the seed pairs: transitive closure of the
// subuniverse of the square generated by the pairs, their converses and the
// diagonal.
Congruence congruence_generated(const FiniteAlgebra& a,
                                std::span<const std::pair<int, int>> seed_pairs,
                                const Limits& limits = {});
Congruence congruence_generated(const SubUniverse& s,
                                std::span<const std::pair<int, int>> seed_pairs,
                                const Limits& limits = {});

// Full congruence list via partition enumeration filtered by compatibility.
// Bounded by limits.congruence_carrier_bound.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a, const Limits& limits = {});
std::vector<Congruence> all_congruences(const SubUniverse& s, const Limits& limits = {});

// Re-checks compatibility of a partition against every operation.
bool is_congruence(const Congruence& c);

}  // namespace ualoc
