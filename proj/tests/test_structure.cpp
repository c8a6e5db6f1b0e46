#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"
#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/structure.hpp"

using namespace ualoc;

TEST_SUITE("structure") {

TEST_CASE("simplicity") {
  CHECK(is_simple(builtin_algebra("SL2")));
  CHECK(is_simple(builtin_algebra("C3")));
  CHECK(is_simple(builtin_algebra("Z3AFF")));
  const FiniteAlgebra& sl2 = builtin_algebra("SL2");
  const FiniteAlgebra* fs[2] = {&sl2, &sl2};
  CHECK(!is_simple(direct_product(fs)));
  const FiniteAlgebra one{"one", 1, {}};
  CHECK_THROWS_AS(is_simple(one), precondition_error);
}

TEST_CASE("strict simplicity") {
  for (const char* name : {"SL2", "C3", "S3ACT", "Z3AFF", "SEP3"})
    CHECK(is_strictly_simple(builtin_algebra(name)));
  CHECK(!is_strictly_simple(builtin_algebra("NSEP")));  // {0,1} is proper, size 2
  const FiniteAlgebra one{"one", 1, {}};
  CHECK(!is_strictly_simple(one));
}

TEST_CASE("abelian diagonal test with witnesses") {
  CHECK(is_abelian(builtin_algebra("C3")).abelian);
  CHECK(is_abelian(builtin_algebra("Z3AFF")).abelian);
  CHECK(is_abelian(builtin_algebra("S3ACT")).abelian);
  const AbelianReport r = is_abelian(builtin_algebra("SL2"));
  CHECK(!r.abelian);
  REQUIRE(r.witness.has_value());
  const auto& w = *r.witness;
  CHECK(w[0] == w[1]);
  CHECK(w[2] != w[3]);
}

TEST_CASE("term condition oracle") {
  const TermConditionReport sl2 = term_condition_oracle(builtin_algebra("SL2"), 2);
  CHECK(sl2.violated);
  REQUIRE(sl2.witness.has_value());
  // replay the violation through the witness term
  {
    const FiniteAlgebra& a = builtin_algebra("SL2");
    const auto& v = *sl2.witness;
    std::vector<int> xu{v.x}, xv{v.x}, yu{v.y}, yv{v.y};
    xu.insert(xu.end(), v.u.begin(), v.u.end());
    xv.insert(xv.end(), v.v.begin(), v.v.end());
    yu.insert(yu.end(), v.u.begin(), v.u.end());
    yv.insert(yv.end(), v.v.begin(), v.v.end());
    CHECK(eval_term(a, v.term, xu) == eval_term(a, v.term, xv));
    CHECK(eval_term(a, v.term, yu) != eval_term(a, v.term, yv));
  }

  CHECK(!term_condition_oracle(builtin_algebra("C3"), 3).violated);
  CHECK(!term_condition_oracle(builtin_algebra("Z3AFF"), 3).violated);
  const FiniteAlgebra one{"one", 1, {{"f", 2, {0, 0, 0, 0}}}};
  CHECK(!term_condition_oracle(one, 3).violated);
}

TEST_CASE("diagonal test against the bounded oracle on corpus and random algebras") {
  std::mt19937 rng(0x5EEDu);
  std::vector<FiniteAlgebra> algebras(builtin_corpus());
  for (int i = 0; i < 100; ++i)
    algebras.push_back(testing::random_binary_algebra(rng, 2 + static_cast<int>(rng() % 2), "R"));

  int oracle_silent_on_nonabelian = 0;
  for (const FiniteAlgebra& a : algebras) {
    const bool diag = is_abelian(a).abelian;
    Limits tight;
    tight.max_closure_tuples = 60'000;
    bool violated = false;
    bool completed = true;
    try {
      violated = term_condition_oracle(a, 3, tight).violated;
    } catch (const resource_limit_error&) {
      completed = false;
    }
    if (diag) {
      // a diagonal-test "true" with an oracle violation is a hard failure
      if (completed) CHECK(!violated);
    } else if (completed && !violated) {
      // allowed only when the violating term needs arity > 3; record by
      // escalating the arity until the violation shows
      ++oracle_silent_on_nonabelian;
      bool found_higher = false;
      for (int k = 4; k <= 5 && !found_higher; ++k) {
        try {
          found_higher = term_condition_oracle(a, k, tight).violated;
        } catch (const resource_limit_error&) {
          break;
        }
      }
      MESSAGE("diagonal-false with oracle silence at K=3 on ", a.name,
              "; higher-arity violation found: ", found_higher);
    }
  }
  // the escape hatch should be rare
  CHECK(oracle_silent_on_nonabelian <= 3);
}

TEST_CASE("classification of the corpus") {
  CHECK(classify_local(builtin_algebra("SL2")).kind == LocalKind::nonabelian);
  CHECK(classify_local(builtin_algebra("Z3AFF")).kind == LocalKind::affine);
  const LocalClassification c3 = classify_local(builtin_algebra("C3"));
  CHECK(c3.kind == LocalKind::gset_regular);
  CHECK(*c3.group_order == 3);
  const LocalClassification s3 = classify_local(builtin_algebra("S3ACT"));
  CHECK(s3.kind == LocalKind::gset_irregular);
  CHECK(*s3.group_order == 6);
  CHECK(classify_local(builtin_algebra("SEP3")).kind == LocalKind::nonabelian);

  CHECK_THROWS_AS(classify_local(builtin_algebra("NSEP")), precondition_error);
}

TEST_CASE("classification evidence is mutually exclusive") {
  for (const char* name : {"SL2", "C3", "S3ACT", "Z3AFF", "SEP3"}) {
    const LocalClassification cl = classify_local(builtin_algebra(name));
    if (cl.kind == LocalKind::gset_regular || cl.kind == LocalKind::gset_irregular)
      CHECK(!cl.malcev_witness.has_value());
    if (cl.kind == LocalKind::affine) {
      CHECK(!cl.tc_violation.has_value());
      CHECK(cl.malcev_witness.has_value());
    }
    if (cl.kind == LocalKind::nonabelian) CHECK(cl.tc_violation.has_value());
  }
}

TEST_CASE("strongly abelian verdicts") {
  CHECK(strongly_abelian_verdict(builtin_algebra("C3")) == Verdict::yes);
  CHECK(strongly_abelian_verdict(builtin_algebra("S3ACT")) == Verdict::yes);
  CHECK(strongly_abelian_verdict(builtin_algebra("Z3AFF")) == Verdict::no);
  CHECK(strongly_abelian_verdict(builtin_algebra("SL2")) == Verdict::no);

  // C3's unary monoid is a group acting regularly
  const LocalClassification c3 = classify_local(builtin_algebra("C3"));
  CHECK(c3.kind == LocalKind::gset_regular);
  CHECK(*c3.group_order == static_cast<int>(c3.neighborhood.elements.size()));
}

TEST_CASE("projectivity verdicts carry the classification branch") {
  const ProjectivityVerdict sl2 = projectivity_verdict(builtin_algebra("SL2"));
  CHECK(sl2.projective == Verdict::yes);
  CHECK(sl2.reason.find("nonabelian") != std::string::npos);

  const ProjectivityVerdict z3 = projectivity_verdict(builtin_algebra("Z3AFF"));
  CHECK(z3.projective == Verdict::yes);
  CHECK(z3.reason.find("affine") != std::string::npos);

  const ProjectivityVerdict c3 = projectivity_verdict(builtin_algebra("C3"));
  CHECK(c3.projective == Verdict::yes);
  CHECK(c3.reason.find("regular") != std::string::npos);

  const ProjectivityVerdict s3 = projectivity_verdict(builtin_algebra("S3ACT"));
  CHECK(s3.projective == Verdict::no);
  CHECK(s3.reason.find("gset-irregular") != std::string::npos);

  CHECK(projectivity_verdict(builtin_algebra("SEP3")).projective == Verdict::yes);
}

TEST_CASE("an irregular localization with a trivial subalgebra stays projective") {
  // the two-element set: strictly simple, localization is itself, the group
  // is trivial, and both singletons are subuniverses
  FiniteAlgebra set2{"set2", 2, {{"u", 1, {0, 1}}}};
  set2.validate();
  REQUIRE(is_strictly_simple(set2));
  const LocalClassification cl = classify_local(set2);
  CHECK(cl.kind == LocalKind::gset_irregular);
  CHECK(cl.local_trivial_subuniverse);
  const ProjectivityVerdict v = projectivity_verdict(set2);
  CHECK(v.projective == Verdict::yes);
  CHECK(v.reason.find("trivial") != std::string::npos);
}

TEST_CASE("trivial subuniverses") {
  CHECK(has_trivial_subuniverse(builtin_algebra("SL2")) == std::optional<int>(0));
  CHECK(!has_trivial_subuniverse(builtin_algebra("Z3AFF")).has_value());
  CHECK(!has_trivial_subuniverse(builtin_algebra("C3")).has_value());
}

}  // TEST_SUITE
