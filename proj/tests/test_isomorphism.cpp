#include <algorithm>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/hom.hpp"
#include "ualoc/isomorphism.hpp"
#include "ualoc/localization.hpp"
#include "ualoc/structure.hpp"
#include "ualoc/unary_clone.hpp"

using namespace ualoc;

TEST_SUITE("isomorphism") {

TEST_CASE("brute force finds the least witness") {
  const FiniteAlgebra& c3 = builtin_algebra("C3");
  const IsoReport rr = brute_force_isomorphism(c3, c3);
  REQUIRE(rr.isomorphic == Verdict::yes);
  CHECK(rr.witness->map == std::vector<int>{0, 1, 2});

  // conjugated copy: recover the relabeling
  const std::vector<int> perm{1, 0, 2};
  const FiniteAlgebra c3p = testing::relabel(c3, perm, "C3p");
  const IsoReport rp = brute_force_isomorphism(c3, c3p);
  REQUIRE(rp.isomorphic == Verdict::yes);
  CHECK(is_homomorphism(c3, c3p, rp.witness->map));
  CHECK(rp.witness->is_bijective());

  // SL2 against the join table: the swap works
  FiniteAlgebra jsl{"JSL2", 2, {{"meet", 2, {0, 1, 1, 1}}}};
  jsl.validate();
  const IsoReport rj = brute_force_isomorphism(builtin_algebra("SL2"), jsl);
  REQUIRE(rj.isomorphic == Verdict::yes);
  CHECK(rj.witness->map == std::vector<int>{1, 0});

  CHECK_THROWS_AS(brute_force_isomorphism(c3, builtin_algebra("S3ACT")), precondition_error);

  // same signature, different sizes: immediate no
  FiniteAlgebra c2{"C2", 2, {{"s", 1, {1, 0}}}};
  c2.validate();
  CHECK(brute_force_isomorphism(c3, c2).isomorphic == Verdict::no);
}

TEST_CASE("localized search lists the local isomorphisms") {
  const FiniteAlgebra& c3 = builtin_algebra("C3");
  const Term id = Term::variable(0);
  CHECK(localized_isomorphism_search(c3, c3, id).size() == 3);

  const std::vector<int> perm{2, 1, 0};
  const FiniteAlgebra c3p = testing::relabel(c3, perm, "C3p");
  CHECK(localized_isomorphism_search(c3, c3p, id).size() == 3);

  // SEP3 at its chosen idempotent: only the identity map survives both ways,
  // and the set is a group under composition
  const FiniteAlgebra& sep3 = builtin_algebra("SEP3");
  const Neighborhood nb = chosen_neighborhood(sep3);
  const auto isos = localized_isomorphism_search(sep3, sep3, nb.e.witness);
  REQUIRE(isos.size() == 1);
  CHECK(isos[0].image == std::vector<int>{0, 1});

  // contains the identity when A = B
  bool has_identity = false;
  for (const auto& lm : isos)
    if (lm.image == nb.elements) has_identity = true;
  CHECK(has_identity);
}

TEST_CASE("iso via localization agrees with brute force on the corpus") {
  for (const FiniteAlgebra& a : builtin_corpus()) {
    const IsoReport brute = brute_force_isomorphism(a, a);
    const IsoReport local = iso_via_localization(a, a);
    CHECK(brute.isomorphic == Verdict::yes);
    CHECK(local.isomorphic == Verdict::yes);
    REQUIRE(local.witness.has_value());
    CHECK(is_homomorphism(a, a, local.witness->map));
    CHECK(local.witness->is_bijective());
  }
}

TEST_CASE("localized pipeline examines fewer candidates on SEP3") {
  const FiniteAlgebra& sep3 = builtin_algebra("SEP3");
  const IsoReport r = iso_via_localization(sep3, sep3);
  CHECK(r.method == IsoMethod::localized);
  CHECK(r.fallback_reason.empty());
  CHECK(r.stats.candidates <= 2);  // |U|! = 2!
  CHECK(r.stats.candidates < 6);   // strictly fewer than |A|! = 3!
}

TEST_CASE("pipeline falls back when the hypotheses fail") {
  const FiniteAlgebra& nsep = builtin_algebra("NSEP");
  const IsoReport r = iso_via_localization(nsep, nsep);
  CHECK(r.isomorphic == Verdict::yes);
  CHECK(r.method == IsoMethod::brute);
  CHECK(r.fallback_reason.find("separate") != std::string::npos);
}

TEST_CASE("agreement on seeded random pairs including relabelings") {
  std::mt19937 rng(0xC0FFEEu);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const FiniteAlgebra a = testing::random_binary_algebra(rng, n, "A");
    FiniteAlgebra b;
    if (trial % 2 == 0) {
      b = testing::relabel(a, testing::random_permutation(rng, n), "B");
    } else {
      b = testing::random_binary_algebra(rng, n, "B");
    }
    const IsoReport brute = brute_force_isomorphism(a, b);
    const IsoReport local = iso_via_localization(a, b);
    REQUIRE(brute.isomorphic != Verdict::unknown);
    REQUIRE(local.isomorphic != Verdict::unknown);
    CHECK(brute.isomorphic == local.isomorphic);
    if (trial % 2 == 0) CHECK(brute.isomorphic == Verdict::yes);
    if (local.witness) {
      CHECK(is_homomorphism(a, b, local.witness->map));
      CHECK(local.witness->is_bijective());
    }
  }
}

TEST_CASE("hom restriction report") {
  const FiniteAlgebra& c3 = builtin_algebra("C3");
  const HomRestrictionReport rc = hom_restriction_report(c3, c3, Term::variable(0));
  CHECK(rc.homs.size() == 3);
  CHECK(rc.local_homs.size() == 3);
  CHECK(rc.injective);
  CHECK(rc.surjective);

  const FiniteAlgebra& sep3 = builtin_algebra("SEP3");
  const Neighborhood nb = chosen_neighborhood(sep3);
  const HomRestrictionReport rs = hom_restriction_report(sep3, sep3, nb.e.witness);
  CHECK(rs.homs.size() == 3);
  CHECK(rs.local_homs.size() == 3);
  CHECK(rs.injective);
  CHECK(rs.surjective);

  // NSEP's idempotent is not dense: injectivity fails with an exhibited pair
  const FiniteAlgebra& nsep = builtin_algebra("NSEP");
  const Neighborhood ne = chosen_neighborhood(nsep);
  const HomRestrictionReport rn = hom_restriction_report(nsep, nsep, ne.e.witness);
  CHECK(!rn.dense_for_dom);
  CHECK(!rn.injective);
  REQUIRE(rn.collision.has_value());
  const auto [i, j] = *rn.collision;
  CHECK(rn.homs[i].map != rn.homs[j].map);
  CHECK(rn.restriction_of[i] == rn.restriction_of[j]);
}

TEST_CASE("free algebra sizes and the universal property") {
  const FreeAlgebraResult f_sl2 = free_algebra(builtin_algebra("SL2"), 2);
  CHECK(f_sl2.algebra.size == 3);
  const FreeAlgebraResult f_c3 = free_algebra(builtin_algebra("C3"), 1);
  CHECK(f_c3.algebra.size == 3);
  const FreeAlgebraResult f_s3 = free_algebra(builtin_algebra("S3ACT"), 1);
  CHECK(f_s3.algebra.size == 6);

  // sizes are monotone in the rank
  CHECK(free_algebra(builtin_algebra("SL2"), 1).algebra.size <= f_sl2.algebra.size);

  // every evaluation map is a homomorphism onto its image; every assignment
  // of generators is realized by the evaluation at that position
  for (const auto* f : {&f_sl2, &f_c3, &f_s3}) {
    const FiniteAlgebra& base =
        f == &f_sl2 ? builtin_algebra("SL2") : (f == &f_c3 ? builtin_algebra("C3")
                                                           : builtin_algebra("S3ACT"));
    for (std::size_t p = 0; p < f->evaluation_homs.size(); ++p) {
      CHECK(is_homomorphism(f->algebra, base, f->evaluation_homs[p]));
      for (std::size_t g = 0; g < f->generators.size(); ++g)
        CHECK(f->evaluation_homs[p][f->generators[g]] == f->position_tuples[p][g]);
    }
  }

  // the free algebra surjects onto every corpus member generated by <= rank
  // elements (here: onto the base algebra itself)
  for (const char* name : {"C3", "S3ACT", "Z3AFF"}) {
    const FiniteAlgebra& a = builtin_algebra(name);
    REQUIRE(minimum_generating_set(a).size() == 1);
    const FreeAlgebraResult f = free_algebra(a, 1);
    bool some_surjective = false;
    for (const auto& eval : f.evaluation_homs) {
      std::set<int> image(eval.begin(), eval.end());
      if (static_cast<int>(image.size()) == a.size) some_surjective = true;
    }
    CHECK(some_surjective);
  }
}

TEST_CASE("retract oracle on the corpus") {
  const RetractReport c3 = retract_oracle(builtin_algebra("C3"), builtin_algebra("C3"), 1);
  CHECK(c3.retract == Verdict::yes);

  const RetractReport s3 = retract_oracle(builtin_algebra("S3ACT"), builtin_algebra("S3ACT"), 1);
  CHECK(s3.retract == Verdict::no);
  CHECK(s3.free_size == 6);
  // the refusal comes from the empty hom-set S3ACT -> F(1)
  CHECK(enumerate_homomorphisms(builtin_algebra("S3ACT"), free_algebra(builtin_algebra("S3ACT"), 1).algebra)
            .empty());

  const RetractReport sl2 = retract_oracle(builtin_algebra("SL2"), builtin_algebra("SL2"), 2);
  CHECK(sl2.retract == Verdict::yes);
  REQUIRE(sl2.sigma.has_value());
  // σ∘τ = id
  for (int x = 0; x < 2; ++x) CHECK(sl2.sigma->map[sl2.tau->map[x]] == x);

  const RetractReport z3 = retract_oracle(builtin_algebra("Z3AFF"), builtin_algebra("Z3AFF"), 1);
  CHECK(z3.retract == Verdict::yes);

  // default rank comes from the least generating set
  const RetractReport def = retract_oracle(builtin_algebra("SL2"), builtin_algebra("SL2"));
  CHECK(def.rank == 2);
}

TEST_CASE("retract oracle L-variant matches the dense-projective computation") {
  for (const char* name : {"C3", "SL2", "Z3AFF", "SEP3"}) {
    const FiniteAlgebra& a = builtin_algebra(name);
    const RetractReport r = retract_oracle(a, a);
    REQUIRE(r.l_variant.ran);
    if (r.l_variant.p_dense) CHECK(r.l_variant.restrictions_surjective);
  }
}

TEST_CASE("retract verdict never contradicts the projectivity verdict") {
  for (const char* name : {"SL2", "C3", "S3ACT", "Z3AFF", "SEP3"}) {
    const FiniteAlgebra& a = builtin_algebra(name);
    const Verdict proj = projectivity_verdict(a).projective;
    const Verdict retract = retract_oracle(a, a).retract;
    if (retract == Verdict::yes) CHECK(proj != Verdict::no);
    if (retract == Verdict::no) CHECK(proj != Verdict::yes);
  }
}

}  // TEST_SUITE
