// Acceptance suite: each criterion prints one PASS/FAIL line with its
// runtime; the process exits with the number of failed criteria.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "ualoc/cli.hpp"
#include "ualoc/closure.hpp"
#include "ualoc/congruence.hpp"
#include "ualoc/corpus.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/hom.hpp"
#include "ualoc/io.hpp"
#include "ualoc/isomorphism.hpp"
#include "ualoc/localization.hpp"
#include "ualoc/structure.hpp"
#include "ualoc/unary_clone.hpp"

using namespace ualoc;

namespace {

struct Criterion {
  std::string name;
  double budget_seconds;
  std::function<bool(std::string&)> check;
};

bool check_lemma21_equivalence(std::string& detail) {
  int checked = 0;
  auto agree = [&](const FiniteAlgebra& a) {
    for (const UnaryTermMap& e : idempotent_unary_terms(a)) {
      if (e.is_constant) continue;
      const Neighborhood nb = make_neighborhood(a, e);
      const bool direct = separates(nb).separating;
      const bool oracle = lemma21_oracle(nb).holds;
      ++checked;
      if (direct != oracle) {
        detail = "disagreement on " + a.name;
        return false;
      }
    }
    return true;
  };
  for (const FiniteAlgebra& a : builtin_corpus())
    if (!agree(a)) return false;
  std::mt19937 rng(0xA11CE5u);
  for (int i = 0; i < 200; ++i) {
    const FiniteAlgebra a =
        testing::random_binary_algebra(rng, 2 + static_cast<int>(rng() % 2), "R" + std::to_string(i));
    if (!agree(a)) return false;
  }
  detail = std::to_string(checked) + " (algebra, idempotent) pairs agreed";
  return true;
}

bool check_homset_bijection(std::string& detail) {
  std::string summary;
  for (const char* name : {"C3", "SEP3", "SL2"}) {
    const FiniteAlgebra& a = builtin_algebra(name);
    const Neighborhood nb = chosen_neighborhood(a);
    const HomRestrictionReport r = hom_restriction_report(a, a, nb.e.witness);
    if (r.dense_for_dom && !r.injective) {
      detail = std::string(name) + ": restriction not injective despite density";
      return false;
    }
    if (r.dense_for_dom && r.separating_for_cod) {
      if (!r.injective || !r.surjective || r.homs.size() != r.local_homs.size()) {
        detail = std::string(name) + ": restriction not bijective";
        return false;
      }
    }
    if (std::string(name) == "C3" && (r.homs.size() != 3 || r.local_homs.size() != 3)) {
      detail = "C3 counts differ from 3 = 3";
      return false;
    }
    summary += std::string(name) + ":" + std::to_string(r.homs.size()) + "=" +
               std::to_string(r.local_homs.size()) + " ";
  }
  detail = summary;
  return true;
}

bool check_corollary24(std::string& detail) {
  const auto& corpus = builtin_corpus();
  for (const FiniteAlgebra& a : corpus) {
    for (const FiniteAlgebra& b : corpus) {
      if (!same_signature(a, b)) continue;
      const IsoReport brute = brute_force_isomorphism(a, b);
      const IsoReport local = iso_via_localization(a, b);
      if (brute.isomorphic != local.isomorphic) {
        detail = "verdicts differ on (" + a.name + ", " + b.name + ")";
        return false;
      }
    }
  }
  std::mt19937 rng(0xBEEFu);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const FiniteAlgebra a = testing::random_binary_algebra(rng, n, "A");
    const FiniteAlgebra b = trial % 2 == 0
                                ? testing::relabel(a, testing::random_permutation(rng, n), "B")
                                : testing::random_binary_algebra(rng, n, "B");
    const IsoReport brute = brute_force_isomorphism(a, b);
    const IsoReport local = iso_via_localization(a, b);
    if (brute.isomorphic != local.isomorphic) {
      detail = "verdicts differ on random pair " + std::to_string(trial);
      return false;
    }
    if (trial % 2 == 0 && brute.isomorphic != Verdict::yes) {
      detail = "relabeled copy not recognized on trial " + std::to_string(trial);
      return false;
    }
  }
  // the SEP3 statistics witness: |U|! = 2 candidates against |A|! = 6
  const IsoReport sep = iso_via_localization(builtin_algebra("SEP3"), builtin_algebra("SEP3"));
  if (sep.method != IsoMethod::localized || sep.stats.candidates > 2 ||
      sep.stats.candidates >= 6) {
    detail = "SEP3 localized search examined " + std::to_string(sep.stats.candidates) +
             " candidates";
    return false;
  }
  detail = "corpus pairs + 50 random pairs agree; SEP3 candidates = " +
           std::to_string(sep.stats.candidates);
  return true;
}

bool check_congruence_lifting(std::string& detail) {
  int lifted = 0;
  for (const FiniteAlgebra& a : builtin_corpus()) {
    const Neighborhood nb = chosen_neighborhood(a);
    for (const Congruence& theta : enumerate_local_congruences(nb)) {
      const Congruence hat = lift_local_congruence(nb, theta);
      // e(θ̂)|U = θ, element by element
      for (int u : nb.elements)
        for (int v : nb.elements) {
          bool in_lift = false;
          for (std::size_t i = 0; i < hat.carrier.size() && !in_lift; ++i)
            for (std::size_t j = 0; j < hat.carrier.size(); ++j)
              if (hat.class_of[i] == hat.class_of[j] && nb.e.map[hat.carrier[i]] == u &&
                  nb.e.map[hat.carrier[j]] == v) {
                in_lift = true;
                break;
              }
          if (in_lift != theta.related(u, v)) {
            detail = a.name + ": e(lift) differs from theta";
            return false;
          }
        }
      ++lifted;
    }
  }
  detail = std::to_string(lifted) + " certified local congruences lifted exactly";
  return true;
}

bool check_classification_table(std::string& detail) {
  const struct {
    const char* name;
    LocalKind kind;
    Verdict strongly_abelian;
    Verdict projective;
    int retract_rank;
  } rows[] = {
      {"SL2", LocalKind::nonabelian, Verdict::no, Verdict::yes, 2},
      {"Z3AFF", LocalKind::affine, Verdict::no, Verdict::yes, 1},
      {"C3", LocalKind::gset_regular, Verdict::yes, Verdict::yes, 1},
      {"S3ACT", LocalKind::gset_irregular, Verdict::yes, Verdict::no, 1},
  };
  for (const auto& row : rows) {
    const FiniteAlgebra& a = builtin_algebra(row.name);
    const LocalClassification cl = classify_local(a);
    if (cl.kind != row.kind) {
      detail = std::string(row.name) + " classified as " + std::string(to_string(cl.kind));
      return false;
    }
    if (strongly_abelian_verdict(a) != row.strongly_abelian) {
      detail = std::string(row.name) + " wrong strongly-abelian verdict";
      return false;
    }
    const ProjectivityVerdict pv = projectivity_verdict(a);
    if (pv.projective != row.projective) {
      detail = std::string(row.name) + " wrong projectivity verdict";
      return false;
    }
    // cross-check 1: the diagonal abelian test against the bounded oracle
    const bool diag = is_abelian(a).abelian;
    const bool violated = term_condition_oracle(a, 3).violated;
    if (diag == violated) {
      detail = std::string(row.name) + ": is_abelian disagrees with the term condition";
      return false;
    }
    // cross-check 2: projectivity against the retract oracle
    const RetractReport rr = retract_oracle(a, a, row.retract_rank);
    if (rr.retract == Verdict::unknown ||
        (rr.retract == Verdict::yes) != (row.projective == Verdict::yes)) {
      detail = std::string(row.name) + ": retract oracle disagrees";
      return false;
    }
    if (std::string(row.name) == "S3ACT") {
      if (rr.free_size != 6) {
        detail = "S3ACT free algebra size is not 6";
        return false;
      }
      if (!enumerate_homomorphisms(a, free_algebra(a, 1).algebra).empty()) {
        detail = "Hom(S3ACT, F(1)) is unexpectedly nonempty";
        return false;
      }
    }
  }
  detail = "all six verdict columns and both cross-checks agree";
  return true;
}

bool check_free_sizes(std::string& detail) {
  const int sl2 = free_algebra(builtin_algebra("SL2"), 2).algebra.size;
  const int c3 = free_algebra(builtin_algebra("C3"), 1).algebra.size;
  const int s3 = free_algebra(builtin_algebra("S3ACT"), 1).algebra.size;
  detail = "|F(SL2,2)| = " + std::to_string(sl2) + ", |F(C3,1)| = " + std::to_string(c3) +
           ", |F(S3ACT,1)| = " + std::to_string(s3);
  return sl2 == 3 && c3 == 3 && s3 == 6;
}

bool check_prevariety_closure(std::string& detail) {
  int checked = 0;
  for (const FiniteAlgebra& a : builtin_corpus()) {
    if (a.size < 2) continue;
    const Neighborhood nb = chosen_neighborhood(a);
    if (!separates(nb).separating) continue;
    for (const SubUniverse& s : all_subuniverses(a)) {
      if (s.elements.size() < 2) continue;
      const InducedAlgebra ind = induce(a, s.elements);
      const UnaryTermMap sub_e = interpret_unary_term(ind.algebra, nb.e.witness);
      if (!separates(make_neighborhood(ind.algebra, sub_e)).separating) {
        detail = a.name + ": separation lost on a subalgebra";
        return false;
      }
      ++checked;
    }
    const FiniteAlgebra* fs[2] = {&a, &a};
    const FiniteAlgebra sq = direct_product(fs);
    const UnaryTermMap sq_e = interpret_unary_term(sq, nb.e.witness);
    if (!separates(make_neighborhood(sq, sq_e)).separating) {
      detail = a.name + ": separation lost on the square";
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " subalgebras and squares stay separated";
  return true;
}

bool check_determinism(std::string& detail) {
  std::vector<std::vector<std::string>> commands = {
      {"info", "builtin:SEP3"},
      {"unary-monoid", "builtin:S3ACT"},
      {"idempotents", "builtin:NSEP"},
      {"minimal-idempotents", "builtin:SEP3"},
      {"localize", "builtin:SEP3"},
      {"separates", "builtin:NSEP"},
      {"dense", "builtin:SEP3"},
      {"densify", "builtin:NSEP"},
      {"simple", "builtin:SL2"},
      {"strictly-simple", "builtin:SEP3"},
      {"abelian", "builtin:SL2"},
      {"classify", "builtin:Z3AFF"},
      {"strongly-abelian", "builtin:C3"},
      {"projective", "builtin:S3ACT"},
      {"iso", "builtin:SEP3", "builtin:SEP3", "--method", "both"},
      {"homs", "builtin:NSEP", "builtin:NSEP"},
      {"local-homs", "builtin:C3", "builtin:C3"},
      {"lift", "builtin:C3", "builtin:C3", "--map", "1,2,0"},
      {"free", "builtin:S3ACT", "--gens", "1"},
      {"retract-oracle", "builtin:SL2", "builtin:SL2", "--gens", "2"},
      {"oracle-lemma21", "builtin:NSEP"},
  };
  const std::string corpus_dir =
      (std::filesystem::temp_directory_path() / "ualoc_acceptance_corpus").string();
  std::filesystem::create_directories(corpus_dir);
  commands.push_back({"corpus", "--dir", corpus_dir});
  for (const auto& cmd : commands) {
    auto invoke = [&](const std::vector<std::string>& c) {
      std::ostringstream out, err;
      const int code = run(c, out, err);
      return std::make_pair(code, out.str());
    };
    const auto first = invoke(cmd);
    const auto second = invoke(cmd);
    if (first != second) {
      detail = "rerun of '" + cmd[0] + "' differs";
      return false;
    }
    std::vector<std::string> json_cmd = cmd;
    json_cmd.push_back("--format");
    json_cmd.push_back("json");
    if (invoke(json_cmd) != invoke(json_cmd)) {
      detail = "json rerun of '" + cmd[0] + "' differs";
      return false;
    }
    std::vector<std::string> jobs_cmd = cmd;
    jobs_cmd.push_back("--jobs");
    jobs_cmd.push_back("2");
    if (invoke(jobs_cmd).second != first.second) {
      detail = "'" + cmd[0] + "' differs under --jobs 2";
      return false;
    }
  }
  detail = std::to_string(commands.size()) + " commands byte-identical across reruns and jobs";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"1 lemma 2.1 equivalence (corpus + 200 random)", 30.0, check_lemma21_equivalence},
      {"2 lemma 2.2 homset bijection", 5.0, check_homset_bijection},
      {"3 corollary 2.4 agreement (corpus + 50 random)", 20.0, check_corollary24},
      {"4 congruence lifting identity", 5.0, check_congruence_lifting},
      {"5 classification table + cross-checks", 30.0, check_classification_table},
      {"6 free algebra sizes", 5.0, check_free_sizes},
      {"7 prevariety closure of separation", 10.0, check_prevariety_closure},
      {"8 determinism of reports", 30.0, check_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.check(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      ok = false;
      detail += " [over budget " + std::to_string(c.budget_seconds) + "s]";
    }
    std::printf("%s  criterion %s  (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.name.c_str(), seconds,
                detail.empty() ? "" : "  -- ", detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("acceptance: %zu/%zu criteria passed\n", criteria.size() - failures,
              criteria.size());
  return failures;
}
