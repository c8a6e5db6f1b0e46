#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/limits.hpp"
#include "ualoc/term.hpp"

namespace ualoc {

// --- generated subuniverses -------------------------------------------------

// Least closed subset containing seed and all 0-ary values. Throws
// precondition_error when seed is empty and the algebra has no constants.
std::vector<int> subuniverse_generated_elements(const FiniteAlgebra& a, std::span<const int> seed);
SubUniverse subuniverse_generated(const FiniteAlgebra& a, std::span<const int> seed);

// Every nonempty closed subset, sorted by size then lexicographically.
// Subset enumeration; bounded by limits.subuniverse_bound.
std::vector<SubUniverse> all_subuniverses(const FiniteAlgebra& a, const Limits& limits = {});

// Relabels a closed subset as an algebra on {0..m-1}. to_parent maps new
// labels back to parent elements; from_parent is -1 outside the subset.
struct InducedAlgebra {
  FiniteAlgebra algebra;
  std::vector<int> to_parent;
  std::vector<int> from_parent;
};
InducedAlgebra induce(const FiniteAlgebra& a, std::span<const int> elements, std::string name = {});

// --- direct products ---------------------------------------------------------

// Materialized direct product. Elements are encoded in mixed radix with
// factor 0 most significant. Operations act coordinatewise.
FiniteAlgebra direct_product(std::span<const FiniteAlgebra* const> factors, const Limits& limits = {});
FiniteAlgebra direct_power(const FiniteAlgebra& a, int exponent, const Limits& limits = {});

std::vector<int> product_decode(std::uint64_t code, std::span<const int> sizes);
std::uint64_t product_encode(std::span<const int> coords, std::span<const int> sizes);

// --- subpower closure engine -------------------------------------------------

struct IntVecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

// Closure of seed tuples inside a product of similar algebras, computed on
// tuples directly; the ambient product is never materialized. Members appear
// in breadth-first order. When seed witnesses are supplied, every member
// carries the first term that produced it.
struct TupleClosure {
  std::vector<std::vector<int>> members;
  std::vector<Term> witnesses;  // parallel to members; empty when untracked
  std::unordered_map<std::vector<int>, std::size_t, IntVecHash> index;
  bool stopped_early = false;  // a visitor requested early exit

  std::optional<std::size_t> find(const std::vector<int>& t) const {
    auto it = index.find(t);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

// Visitor invoked for each new member; returning true stops the closure.
using TupleVisitor =
    std::function<bool(const std::vector<int>& member, const Term* witness, std::size_t idx)>;

TupleClosure subpower_generated(std::span<const FiniteAlgebra* const> factors,
                                std::vector<std::vector<int>> seeds,
                                std::vector<Term> seed_witnesses,
                                std::uint64_t max_tuples,
                                const TupleVisitor& on_new = {});

// Power of a single algebra with `coords` coordinates.
TupleClosure subpower_generated(const FiniteAlgebra& a, int coords,
                                std::vector<std::vector<int>> seeds,
                                std::vector<Term> seed_witnesses,
                                std::uint64_t max_tuples,
                                const TupleVisitor& on_new = {});

}  // namespace ualoc
