#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ualoc/algebra.hpp"
#include "ualoc/limits.hpp"
#include "ualoc/localization.hpp"
#include "ualoc/term.hpp"
#include "ualoc/verdict.hpp"

namespace ualoc {

// True iff every principal congruence Cg(a,b) with a != b is the full
// relation. Requires |A| >= 2.
bool is_simple(const FiniteAlgebra& a, const Limits& limits = {});

// Finite, simple, and every subuniverse is a singleton or the whole algebra.
bool is_strictly_simple(const FiniteAlgebra& a, const Limits& limits = {});

struct AbelianReport {
  bool abelian = false;
  // ((a,a),(c,d)) in the diagonal-generated congruence of A×A with c != d.
  std::optional<std::array<int, 4>> witness;
};

// Diagonal test in A×A: the congruence generated by all ((a,a),(b,b)) must
// keep every diagonal element's class inside the diagonal.
AbelianReport is_abelian(const FiniteAlgebra& a, const Limits& limits = {});

struct TermConditionViolation {
  Term term;
  int arity = 0;
  int x = 0, y = 0;
  std::vector<int> u, v;  // the (k-1)-tuples
};

struct TermConditionReport {
  bool violated = false;
  std::optional<TermConditionViolation> witness;
  int max_arity_checked = 0;
};

// Independent bounded-arity oracle for abelianness: checks
// t(x,u) = t(x,v) => t(y,u) = t(y,v) for every term operation of arity <= K,
// generated as clone fragments of A itself.
TermConditionReport term_condition_oracle(const FiniteAlgebra& a, int max_arity,
                                          const Limits& limits = {});

enum class LocalKind { gset_regular, gset_irregular, affine, nonabelian, unknown };

std::string_view to_string(LocalKind k);

struct LocalClassification {
  LocalKind kind = LocalKind::unknown;
  Neighborhood neighborhood;
  std::optional<int> group_order;                    // gset-* kinds
  std::optional<Term> malcev_witness;                // affine kind
  std::optional<TermConditionViolation> tc_violation;  // nonabelian kind
  bool local_trivial_subuniverse = false;  // some u in U fixed by every unary local map
  std::string detail;
};

// Classification of the localization of a strictly simple algebra at its
// chosen minimal idempotent: nonabelian via a term-condition violation,
// affine via a Mal'cev witness, G-set kinds via an essentially unary fragment
// with a permutation group of unary local maps, otherwise unknown.
LocalClassification classify_local(const FiniteAlgebra& a, const Limits& limits = {});

// yes iff the localization is essentially unary (gset-* kinds), no for the
// affine and nonabelian kinds, unknown otherwise.
Verdict strongly_abelian_verdict(const FiniteAlgebra& a, const Limits& limits = {});

struct ProjectivityVerdict {
  Verdict projective = Verdict::unknown;
  std::string reason;
  LocalClassification classification;
};

// Projectivity of a strictly simple algebra in the variety it generates,
// decided through the classification of its localization.
ProjectivityVerdict projectivity_verdict(const FiniteAlgebra& a, const Limits& limits = {});

// Some element generating a one-element subalgebra, if any.
std::optional<int> has_trivial_subuniverse(const FiniteAlgebra& a);

}  // namespace ualoc
