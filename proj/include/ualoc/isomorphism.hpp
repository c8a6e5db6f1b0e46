#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/hom.hpp"
#include "ualoc/limits.hpp"
#include "ualoc/localization.hpp"
#include "ualoc/term.hpp"
#include "ualoc/verdict.hpp"

namespace ualoc {

struct SearchStats {
  std::uint64_t nodes = 0;       // backtracking assignments tried
  std::uint64_t candidates = 0;  // complete bijections examined
};

enum class IsoMethod { brute, localized };

struct IsoReport {
  Verdict isomorphic = Verdict::unknown;
  std::optional<HomGraph> witness;  // bijective, verified in both directions
  IsoMethod method = IsoMethod::brute;
  SearchStats stats;
  std::string fallback_reason;  // why a localized run fell back to brute force
};

// Backtracking over bijections respecting the tables; returns the
// lexicographically least isomorphism. Resource bound -> unknown.
IsoReport brute_force_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                  const Limits& limits = {});

// All bijections U_A -> U_B that pass is_local_hom in both directions, in
// lexicographic order. e is a unary term of the common language, evaluated in
// each algebra.
std::vector<LocalMap> localized_isomorphism_search(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                   const Term& e_witness,
                                                   const Limits& limits = {});

// Isomorphism through the localization: searches |U|! local bijections
// instead of |A|! global ones, lifts each hit and re-verifies it. Falls back
// to brute force (with a recorded reason) when the hypotheses fail.
IsoReport iso_via_localization(const FiniteAlgebra& a, const FiniteAlgebra& b,
                               const Limits& limits = {});

struct HomRestrictionReport {
  std::vector<HomGraph> homs;
  std::vector<LocalMap> local_homs;
  std::vector<std::size_t> restriction_of;  // homs[i] restricts to local_homs[restriction_of[i]]
  bool dense_for_dom = false;
  bool separating_for_cod = false;
  bool injective = false;
  bool surjective = false;
  std::optional<std::pair<std::size_t, std::size_t>> collision;  // two homs, equal restriction
};

// Computes Hom(A,B), the local homs of the localizations, and the restriction
// map between them, reporting injectivity and surjectivity.
HomRestrictionReport hom_restriction_report(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            const Term& e_witness, const Limits& limits = {});

struct FreeAlgebraResult {
  FiniteAlgebra algebra;        // the free algebra on `rank` generators
  std::vector<int> generators;  // the projection elements
  // evaluation_homs[p] maps the free algebra onto A by evaluating at the
  // p-th argument tuple; position_tuples[p] is that tuple.
  std::vector<std::vector<int>> evaluation_homs;
  std::vector<std::vector<int>> position_tuples;
};

// Free algebra on `rank` generators in ISP(A), realized as the subalgebra of
// A^(A^rank) generated by the projection tuples.
FreeAlgebraResult free_algebra(const FiniteAlgebra& a, int rank, const Limits& limits = {});

struct RetractReport {
  Verdict retract = Verdict::unknown;
  int rank = 0;
  int free_size = 0;
  std::optional<HomGraph> sigma;  // surjection F -> P
  std::optional<HomGraph> tau;    // section P -> F with sigma∘tau = id
  struct LVariant {
    bool ran = false;
    int l_size = 0;
    bool p_dense = false;
    bool restrictions_surjective = false;  // every surjective σ|L still covers P
  } l_variant;
};

// Retract-of-free oracle: yes iff some surjection σ: F(A,rank) -> P admits a
// section. Also runs the L-variant, replacing F by Sg(e(F)) and checking that
// every σ|L stays surjective when P is e-dense. Resource bounds -> unknown,
// never no.
RetractReport retract_oracle(const FiniteAlgebra& p, const FiniteAlgebra& a,
                             std::optional<int> rank = std::nullopt, const Limits& limits = {});

}  // namespace ualoc
