#pragma once

#include <span>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/limits.hpp"
#include "ualoc/term.hpp"

namespace ualoc {

// A unary term operation: the self-map it induces plus a witness term in one
// variable that evaluates to exactly that map.
struct UnaryTermMap {
  std::vector<int> map;
  Term witness;
  bool is_constant = false;
};

bool operator==(const UnaryTermMap& a, const UnaryTermMap& b);  // compares maps

// The monoid of all unary term operations, closed under m -> f(m1,...,mk) for
// every basic f. Members are kept in breadth-first generation order, so each
// witness is the first (smallest) term that produced its map.
struct UnaryMonoid {
  const FiniteAlgebra* parent = nullptr;
  std::vector<UnaryTermMap> members;

  const UnaryTermMap* find(std::span<const int> map) const;
};

UnaryMonoid unary_term_monoid(const FiniteAlgebra& a, const Limits& limits = {});

// Members with m∘m = m, sorted lexicographically by map. Contains the
// identity and every constant member.
std::vector<UnaryTermMap> idempotent_unary_terms(const FiniteAlgebra& a, const Limits& limits = {});

// Nonconstant idempotents whose range is inclusion-minimal among ranges of
// nonconstant idempotents, sorted lexicographically by map. Requires |A| >= 2.
std::vector<UnaryTermMap> minimal_idempotents(const FiniteAlgebra& a, const Limits& limits = {});

// The lexicographically least minimal idempotent: the tie-break every
// downstream pipeline uses.
UnaryTermMap chosen_minimal_idempotent(const FiniteAlgebra& a, const Limits& limits = {});

}  // namespace ualoc
