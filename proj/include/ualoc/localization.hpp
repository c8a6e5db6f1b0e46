#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/congruence.hpp"
#include "ualoc/hom.hpp"
#include "ualoc/limits.hpp"
#include "ualoc/term.hpp"
#include "ualoc/unary_clone.hpp"
#include "ualoc/verdict.hpp"

namespace ualoc {

// An idempotent unary term operation e together with its range U = e(A):
// the locus of localization.
struct Neighborhood {
  const FiniteAlgebra* parent = nullptr;
  UnaryTermMap e;
  std::vector<int> elements;  // U, sorted

  int position_of(int element) const;  // index in U, -1 if absent
};

// Checks idempotence of e and computes U.
Neighborhood make_neighborhood(const FiniteAlgebra& a, UnaryTermMap e);

// Neighborhood of the chosen (lexicographically least) minimal idempotent.
Neighborhood chosen_neighborhood(const FiniteAlgebra& a, const Limits& limits = {});

// Evaluates a unary witness term in another algebra of the same signature.
UnaryTermMap interpret_unary_term(const FiniteAlgebra& b, const Term& witness);

// Interprets e's witness in b and forms the neighborhood there; throws
// precondition_error when the interpretation is not idempotent.
Neighborhood interpret_neighborhood(const FiniteAlgebra& b, const Term& witness);

// The restriction of e∘t to U for a k-ary term t: all values lie in U and the
// table is indexed by U-tuples (positions in U, last argument fastest).
struct LocalOperation {
  int arity = 0;
  std::vector<int> table;  // parent labels, all in U
  Term witness;            // the term t; the operation is e∘t restricted to U
};

// A total map between two neighborhoods over similar parents; image[i] is the
// image (a parent label in dst's U) of the i-th element of src's U.
struct LocalMap {
  Neighborhood src;
  Neighborhood dst;
  std::vector<int> image;

  std::vector<std::pair<int, int>> graph() const;
  int apply(int element) const;  // src parent label in U -> dst parent label
};

bool operator==(const LocalMap& a, const LocalMap& b);

// --- separation and density ---------------------------------------------------

struct SeparationWitness {
  std::pair<int, int> elements;
  Term separator;  // a term e(g(x0)) taking distinct values at the pair
};

struct SeparationReport {
  bool separating = false;
  std::optional<std::pair<int, int>> inseparable_pair;
  std::vector<SeparationWitness> witnesses;  // one per pair when separating
};

// e separates A iff every pair of distinct elements is distinguished by some
// e∘g with g in the unary term monoid.
SeparationReport separates(const Neighborhood& e, const Limits& limits = {});

enum class Lemma21Domain {
  intersect,            // "identity on e(A) ∩ dom(φ)"
  require_containment,  // only isomorphisms whose domain contains e(A)
};

struct Lemma21IsoCounterexample {
  std::vector<int> domain;                    // parent labels
  std::vector<std::pair<int, int>> mapping;   // the offending isomorphism
};

struct Lemma21CongruenceCounterexample {
  std::vector<int> carrier;
  std::vector<int> class_of;  // by carrier position
};

struct Lemma21Report {
  bool holds = false;
  std::optional<Lemma21IsoCounterexample> iso;
  std::optional<Lemma21CongruenceCounterexample> congruence;
};

// Brute-force equivalent of separation: (1) every isomorphism between
// subalgebras that fixes e(A) on its domain is the identity, and (2) every
// congruence on a subalgebra that restricts trivially to e(A) is trivial.
Lemma21Report lemma21_oracle(const Neighborhood& e,
                             Lemma21Domain domain = Lemma21Domain::intersect,
                             const Limits& limits = {});

// e is dense when its range generates the whole algebra.
bool is_dense(const Neighborhood& e);

// The subalgebra generated by e(A); e is dense for it and has the same range.
SubUniverse densify(const Neighborhood& e);

// --- localized homomorphisms ---------------------------------------------------

// The restriction of a total homomorphism to the source neighborhood. Checks
// the landing condition φ(e(x)) = e(φ(x)) at runtime.
LocalMap restrict_hom(const HomGraph& phi, const Neighborhood& e_dom, const Neighborhood& e_cod);

// Decides whether λ is a homomorphism of the localized algebras: true iff
// e(Sg^{A×B}(graph λ)) = graph λ with e acting coordinatewise. This closure
// test covers every localized operation e∘t at once, with no arity cutoff.
bool is_local_hom(const LocalMap& lambda, const Limits& limits = {});

// Lifts a local homomorphism to the full algebras: the subuniverse of A×B
// generated by the graph is total, single-valued and restricts back to λ.
// Requires is_local_hom(λ), e dense for the source and separating for the
// target.
HomGraph lift_local_hom(const LocalMap& lambda, const Limits& limits = {});

// All maps between two neighborhoods passing is_local_hom, in lexicographic
// order of their image vectors.
std::vector<LocalMap> enumerate_local_homs(const Neighborhood& src, const Neighborhood& dst,
                                           const Limits& limits = {});

// --- localized congruences ------------------------------------------------------

// Partitions of U that are congruences of the localized algebra, certified by
// the closure test e(Sg^{A²}(θ ∪ Δ_U)) = θ on pair sets.
std::vector<Congruence> enumerate_local_congruences(const Neighborhood& e,
                                                    const Limits& limits = {});
bool certify_local_congruence(const Neighborhood& e, const Congruence& theta,
                              const Limits& limits = {});

// Lifts a certified local congruence: the transitive closure of
// Sg^{A²}(θ ∪ Δ_A ∪ converses). The identity e(θ̂)|U = θ is verified.
Congruence lift_local_congruence(const Neighborhood& e, const Congruence& theta,
                                 const Limits& limits = {});

// --- clone fragments and the Mal'cev probe ---------------------------------------

// The set of ALL k-ary localized operations: functions U^k -> A realized by
// terms (fixed-point closure seeded with projections), post-composed with e
// and restricted, deduplicated, sorted by table. Each survivor carries one
// witness term.
std::vector<LocalOperation> localize_clone_fragment(const FiniteAlgebra& a, const Neighborhood& e,
                                                    int arity, const Limits& limits = {});

struct MalcevProbe {
  Verdict found = Verdict::unknown;
  std::optional<Term> witness;  // t with e∘t|U satisfying m(x,y,y)=x, m(x,x,y)=y
  std::string route;            // "subpower" or "fragment"
};

// Searches for a Mal'cev operation in the localized clone: first through a
// designed subpower of A whose coordinates record the two Mal'cev equations,
// then through the ternary fragment. Resource bounds yield "unknown".
MalcevProbe malcev_probe(const FiniteAlgebra& a, const Neighborhood& e, const Limits& limits = {});

bool essentially_unary(const LocalOperation& op, int neighborhood_size);

}  // namespace ualoc
