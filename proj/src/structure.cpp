#include "ualoc/structure.hpp"

#include <algorithm>
#include <set>

#include "ualoc/closure.hpp"
#include "ualoc/congruence.hpp"
#include "ualoc/errors.hpp"

namespace ualoc {

bool is_simple(const FiniteAlgebra& a, const Limits& limits) {
  if (a.size < 2) throw precondition_error("is_simple: the algebra must have at least 2 elements");
  for (int x = 0; x < a.size; ++x)
    for (int y = x + 1; y < a.size; ++y) {
      const std::pair<int, int> p{x, y};
      if (!congruence_generated(a, {&p, 1}, limits).is_full()) return false;
    }
  return true;
}

bool is_strictly_simple(const FiniteAlgebra& a, const Limits& limits) {
  if (a.size < 2) return false;
  for (int x = 0; x < a.size; ++x) {
    const int one[1] = {x};
    const std::size_t m = subuniverse_generated_elements(a, one).size();
    if (m != 1 && m != static_cast<std::size_t>(a.size)) return false;
  }
  for (int x = 0; x < a.size; ++x)
    for (int y = x + 1; y < a.size; ++y) {
      const int two[2] = {x, y};
      if (static_cast<int>(subuniverse_generated_elements(a, two).size()) != a.size) return false;
    }
  return is_simple(a, limits);
}

AbelianReport is_abelian(const FiniteAlgebra& a, const Limits& limits) {
  const FiniteAlgebra* factors[2] = {&a, &a};
  const FiniteAlgebra square = direct_product(factors, limits);
  const int n = a.size;
  auto diag = [n](int x) { return x * n + x; };

  std::vector<std::pair<int, int>> seeds;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) seeds.emplace_back(diag(x), diag(y));
  const Congruence theta = congruence_generated(square, seeds, limits);

  AbelianReport report;
  for (int x = 0; x < n; ++x) {
    for (int other = 0; other < square.size; ++other) {
      if (!theta.related(diag(x), other)) continue;
      const int c = other / n, d = other % n;
      if (c != d) {
        report.abelian = false;
        report.witness = std::array<int, 4>{x, x, c, d};
        return report;
      }
    }
  }
  report.abelian = true;
  return report;
}

namespace {

// Identity neighborhood: e = x0, U = the whole universe.
Neighborhood identity_neighborhood(const FiniteAlgebra& a) {
  UnaryTermMap id;
  id.map.resize(a.size);
  for (int x = 0; x < a.size; ++x) id.map[x] = x;
  id.witness = Term::variable(0);
  id.is_constant = a.size == 1;
  return make_neighborhood(a, std::move(id));
}

// Checks the term condition for one localized table over U; returns a
// violating assignment if any, with variable 0 singled out. Covering the
// first position suffices because the fragment contains every variable
// permutation of each operation.
std::optional<TermConditionViolation> tc_check_table(const std::vector<int>& table, int arity,
                                                     const std::vector<int>& u) {
  if (arity < 1) return std::nullopt;
  const std::size_t usz = u.size();
  std::size_t rest_count = 1;
  for (int i = 0; i < arity - 1; ++i) rest_count *= usz;

  auto value = [&](std::size_t x_digit, std::size_t rest) {
    return table[x_digit * rest_count + rest];
  };
  for (std::size_t xi = 0; xi < usz; ++xi) {
    for (std::size_t yi = 0; yi < usz; ++yi) {
      if (xi == yi) continue;
      for (std::size_t ru = 0; ru < rest_count; ++ru) {
        for (std::size_t rv = 0; rv < rest_count; ++rv) {
          if (value(xi, ru) == value(xi, rv) && value(yi, ru) != value(yi, rv)) {
            TermConditionViolation viol;
            viol.arity = arity;
            viol.x = u[xi];
            viol.y = u[yi];
            std::size_t du = ru, dv = rv;
            viol.u.assign(arity - 1, 0);
            viol.v.assign(arity - 1, 0);
            for (int j = arity - 2; j >= 0; --j) {
              viol.u[j] = u[du % usz];
              viol.v[j] = u[dv % usz];
              du /= usz;
              dv /= usz;
            }
            return viol;
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct TcScan {
  bool violated = false;
  TermConditionViolation witness;
  bool resource_hit = false;
  int max_arity_completed = 0;
};

// Incremental fragment generation with an early exit on the first violating
// localized operation.
TcScan tc_scan(const FiniteAlgebra& a, const Neighborhood& e, int max_arity,
               const Limits& limits) {
  TcScan scan;
  const std::vector<int>& u = e.elements;
  for (int k = 2; k <= max_arity && !scan.violated; ++k) {
    std::uint64_t positions = 1;
    bool fits = true;
    for (int i = 0; i < k; ++i) {
      positions *= static_cast<std::uint64_t>(u.size());
      if (positions > limits.max_fragment_positions) fits = false;
    }
    if (!fits) {
      scan.resource_hit = true;
      return scan;
    }

    std::vector<std::vector<int>> seeds;
    std::vector<Term> witnesses;
    for (int j = 0; j < k; ++j) {
      std::vector<int> proj(positions);
      for (std::uint64_t pos = 0; pos < positions; ++pos) {
        std::uint64_t rest = pos;
        int digit = 0;
        for (int i = k - 1; i >= 0; --i) {
          const int d = static_cast<int>(rest % u.size());
          rest /= u.size();
          if (i == j) digit = d;
        }
        proj[pos] = u[digit];
      }
      seeds.push_back(std::move(proj));
      witnesses.push_back(Term::variable(j));
    }

    std::set<std::vector<int>> seen;
    auto visitor = [&](const std::vector<int>& member, const Term* w, std::size_t) {
      std::vector<int> localized(member.size());
      for (std::size_t p = 0; p < member.size(); ++p) localized[p] = e.e.map[member[p]];
      if (!seen.insert(localized).second) return false;
      if (auto viol = tc_check_table(localized, k, u)) {
        scan.violated = true;
        scan.witness = std::move(*viol);
        scan.witness.term = *w;
        return true;
      }
      return false;
    };
    try {
      subpower_generated(a, static_cast<int>(positions), std::move(seeds), std::move(witnesses),
                         limits.max_closure_tuples, visitor);
    } catch (const resource_limit_error&) {
      scan.resource_hit = true;
      return scan;
    }
    if (!scan.violated) scan.max_arity_completed = k;
  }
  if (scan.violated) scan.max_arity_completed = scan.witness.arity;
  return scan;
}

}  // namespace

TermConditionReport term_condition_oracle(const FiniteAlgebra& a, int max_arity,
                                          const Limits& limits) {
  // Fragments of A itself: localize at the identity, U = A.
  const Neighborhood id = identity_neighborhood(a);
  TcScan scan = tc_scan(a, id, max_arity, limits);
  if (scan.resource_hit && !scan.violated)
    throw resource_limit_error("term_condition_oracle: fragment bound hit before arity " +
                               std::to_string(max_arity));
  TermConditionReport report;
  report.violated = scan.violated;
  if (scan.violated) report.witness = std::move(scan.witness);
  report.max_arity_checked = scan.violated ? scan.witness.arity : max_arity;
  return report;
}

std::string_view to_string(LocalKind k) {
  switch (k) {
    case LocalKind::gset_regular:
      return "gset-regular";
    case LocalKind::gset_irregular:
      return "gset-irregular";
    case LocalKind::affine:
      return "affine";
    case LocalKind::nonabelian:
      return "nonabelian";
    default:
      return "unknown";
  }
}

LocalClassification classify_local(const FiniteAlgebra& a, const Limits& limits) {
  if (!is_strictly_simple(a, limits))
    throw precondition_error("classify_local: '" + a.name + "' is not strictly simple");

  LocalClassification out;
  out.neighborhood = chosen_neighborhood(a, limits);
  const Neighborhood& e = out.neighborhood;

  if (!separates(e, limits).separating)
    throw invariant_error("classify_local: the minimal idempotent fails to separate");
  if (!is_dense(e)) throw invariant_error("classify_local: the minimal idempotent is not dense");

  // (b) bounded term-condition scan over the localized fragments
  TcScan tc = tc_scan(a, e, limits.arity_bound, limits);
  if (tc.violated) {
    out.kind = LocalKind::nonabelian;
    out.tc_violation = std::move(tc.witness);
    return out;
  }

  // (c) Mal'cev probe
  const MalcevProbe probe = malcev_probe(a, e, limits);
  if (probe.found == Verdict::yes) {
    out.kind = LocalKind::affine;
    out.malcev_witness = probe.witness;
    return out;
  }
  if (probe.found == Verdict::unknown) {
    out.kind = LocalKind::unknown;
    out.detail = "Mal'cev probe hit a resource bound";
    return out;
  }
  if (tc.resource_hit) {
    out.kind = LocalKind::unknown;
    out.detail = "term-condition scan incomplete at arity " +
                 std::to_string(tc.max_arity_completed + 1);
    return out;
  }

  // (d) essentially unary fragments with a permutation group of unary maps
  std::vector<std::vector<LocalOperation>> fragments;
  try {
    for (int k = 1; k <= limits.arity_bound; ++k)
      fragments.push_back(localize_clone_fragment(a, e, k, limits));
  } catch (const resource_limit_error&) {
    out.kind = LocalKind::unknown;
    out.detail = "fragment listing hit a resource bound";
    return out;
  }

  const std::vector<int>& u = e.elements;
  const int usz = static_cast<int>(u.size());
  std::set<std::vector<int>> unary_maps;  // position form: U index -> U index
  bool all_bijective = true;
  for (const LocalOperation& op : fragments[0]) {
    std::vector<int> pos_map(usz);
    std::vector<char> hit(usz, 0);
    for (int i = 0; i < usz; ++i) {
      pos_map[i] = e.position_of(op.table[i]);
      if (pos_map[i] < 0 || hit[pos_map[i]]) all_bijective = false;
      if (pos_map[i] >= 0) hit[pos_map[i]] = 1;
    }
    unary_maps.insert(std::move(pos_map));
  }

  // a point of U fixed by every unary local map yields a trivial subuniverse
  // of the localization
  for (int i = 0; i < usz && !out.local_trivial_subuniverse; ++i) {
    bool fixed = true;
    for (const auto& m : unary_maps)
      if (m[i] != i) {
        fixed = false;
        break;
      }
    if (fixed) out.local_trivial_subuniverse = true;
  }

  bool all_unary = true;
  for (const auto& frag : fragments)
    for (const LocalOperation& op : frag)
      if (!essentially_unary(op, usz)) all_unary = false;

  bool group = all_bijective;
  if (group) {
    for (const auto& m1 : unary_maps) {
      for (const auto& m2 : unary_maps) {
        std::vector<int> comp(usz);
        for (int i = 0; i < usz; ++i) comp[i] = m1[m2[i]];
        if (!unary_maps.count(comp)) {
          group = false;
          break;
        }
      }
      if (!group) break;
    }
  }

  if (all_unary && group) {
    out.group_order = static_cast<int>(unary_maps.size());
    std::vector<char> orbit(usz, 0);
    orbit[0] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (const auto& m : unary_maps)
        for (int i = 0; i < usz; ++i)
          if (orbit[i] && !orbit[m[i]]) {
            orbit[m[i]] = 1;
            grew = true;
          }
    }
    const bool transitive = std::all_of(orbit.begin(), orbit.end(), [](char c) { return c == 1; });
    bool free_action = true;
    std::vector<int> id(usz);
    for (int i = 0; i < usz; ++i) id[i] = i;
    for (const auto& m : unary_maps) {
      if (m == id) continue;
      for (int i = 0; i < usz; ++i)
        if (m[i] == i) free_action = false;
    }
    const bool regular = static_cast<int>(unary_maps.size()) == usz && transitive && free_action;
    out.kind = regular ? LocalKind::gset_regular : LocalKind::gset_irregular;
    return out;
  }

  out.kind = LocalKind::unknown;
  out.detail = all_unary ? "unary local maps do not form a permutation group"
                         : "fragments are not essentially unary, with no abelian evidence";
  return out;
}

Verdict strongly_abelian_verdict(const FiniteAlgebra& a, const Limits& limits) {
  switch (classify_local(a, limits).kind) {
    case LocalKind::gset_regular:
    case LocalKind::gset_irregular:
      return Verdict::yes;
    case LocalKind::affine:
    case LocalKind::nonabelian:
      return Verdict::no;
    default:
      return Verdict::unknown;
  }
}

ProjectivityVerdict projectivity_verdict(const FiniteAlgebra& a, const Limits& limits) {
  ProjectivityVerdict out;
  out.classification = classify_local(a, limits);
  switch (out.classification.kind) {
    case LocalKind::nonabelian:
      out.projective = Verdict::yes;
      out.reason = "nonabelian localization";
      break;
    case LocalKind::affine:
      out.projective = Verdict::yes;
      out.reason = "affine localization (free on one generator)";
      break;
    case LocalKind::gset_regular:
      out.projective = Verdict::yes;
      out.reason = "regular G-set localization (isomorphic to the left regular representation)";
      break;
    case LocalKind::gset_irregular:
      if (out.classification.local_trivial_subuniverse) {
        // a trivial subalgebra of the localization makes it projective even
        // though the action is not regular
        out.projective = Verdict::yes;
        out.reason = "localization has a trivial subalgebra";
      } else {
        out.projective = Verdict::no;
        out.reason = "gset-irregular: localization is an irregular G-set (group order " +
                     std::to_string(*out.classification.group_order) + " on " +
                     std::to_string(out.classification.neighborhood.elements.size()) + " points)";
      }
      break;
    default:
      out.projective = Verdict::unknown;
      out.reason = "classification unknown: " + out.classification.detail;
      break;
  }
  return out;
}

std::optional<int> has_trivial_subuniverse(const FiniteAlgebra& a) {
  for (int x = 0; x < a.size; ++x) {
    const int one[1] = {x};
    if (subuniverse_generated_elements(a, one).size() == 1) return x;
  }
  return std::nullopt;
}

}  // namespace ualoc
