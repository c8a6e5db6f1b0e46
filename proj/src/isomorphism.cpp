#include "ualoc/isomorphism.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/unary_clone.hpp"

namespace ualoc {

namespace {

// Partial-map consistency: every operation application whose arguments and
// value are all assigned must commute.
bool consistent(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<int>& img) {
  std::vector<int> args_a, args_b, assigned;
  for (int x = 0; x < a.size; ++x)
    if (img[x] >= 0) assigned.push_back(x);
  for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
    const OperationTable& fa = a.ops[oi];
    const OperationTable& fb = b.ops[oi];
    const int k = fa.arity;
    if (k == 0) {
      if (img[fa.table[0]] >= 0 && img[fa.table[0]] != fb.table[0]) return false;
      continue;
    }
    if (assigned.empty()) continue;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
      args_a.resize(k);
      args_b.resize(k);
      for (int j = 0; j < k; ++j) {
        args_a[j] = assigned[idx[j]];
        args_b[j] = img[args_a[j]];
      }
      const int ra = fa.apply(args_a, a.size);
      if (img[ra] >= 0 && img[ra] != fb.apply(args_b, b.size)) return false;
      int j = k - 1;
      while (j >= 0 && ++idx[j] == assigned.size()) idx[j--] = 0;
      if (j < 0) break;
    }
  }
  return true;
}

std::vector<int> inverse_map(const std::vector<int>& map) {
  std::vector<int> inv(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) inv[map[x]] = static_cast<int>(x);
  return inv;
}

}  // namespace

IsoReport brute_force_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                  const Limits& limits) {
  if (!same_signature(a, b))
    throw precondition_error("isomorphism: '" + a.name + "' and '" + b.name +
                             "' have different signatures");
  IsoReport report;
  report.method = IsoMethod::brute;
  if (a.size != b.size) {
    report.isomorphic = Verdict::no;
    return report;
  }

  std::vector<int> img(a.size, -1);
  std::vector<char> used(b.size, 0);
  bool done = false;

  std::function<void(int)> dfs = [&](int x) {
    if (done) return;
    if (x == a.size) {
      ++report.stats.candidates;
      if (is_homomorphism(a, b, img) && is_homomorphism(b, a, inverse_map(img))) {
        report.isomorphic = Verdict::yes;
        report.witness = HomGraph{&a, &b, img};
        done = true;
      }
      return;
    }
    for (int y = 0; y < b.size && !done; ++y) {
      if (used[y]) continue;
      if (++report.stats.nodes > limits.max_search_nodes)
        throw resource_limit_error("brute_force_isomorphism: node bound exceeded");
      img[x] = y;
      used[y] = 1;
      if (consistent(a, b, img)) dfs(x + 1);
      img[x] = -1;
      used[y] = 0;
    }
  };

  try {
    dfs(0);
  } catch (const resource_limit_error&) {
    report.isomorphic = Verdict::unknown;
    return report;
  }
  if (!done) report.isomorphic = Verdict::no;
  return report;
}

std::vector<LocalMap> localized_isomorphism_search(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                   const Term& e_witness, const Limits& limits) {
  if (!same_signature(a, b))
    throw precondition_error("isomorphism: '" + a.name + "' and '" + b.name +
                             "' have different signatures");
  const Neighborhood ea = interpret_neighborhood(a, e_witness);
  const Neighborhood eb = interpret_neighborhood(b, e_witness);
  std::vector<LocalMap> out;
  if (ea.elements.size() != eb.elements.size()) return out;

  const std::size_t m = ea.elements.size();
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<int> image(m);
    for (std::size_t i = 0; i < m; ++i) image[i] = eb.elements[perm[i]];
    LocalMap lm{ea, eb, image};
    if (!is_local_hom(lm, limits)) continue;
    std::vector<int> inv(m);
    for (std::size_t i = 0; i < m; ++i) inv[perm[i]] = ea.elements[i];
    LocalMap back{eb, ea, inv};
    if (!is_local_hom(back, limits)) continue;
    out.push_back(std::move(lm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

IsoReport iso_via_localization(const FiniteAlgebra& a, const FiniteAlgebra& b,
                               const Limits& limits) {
  if (!same_signature(a, b))
    throw precondition_error("isomorphism: '" + a.name + "' and '" + b.name +
                             "' have different signatures");

  std::string fallback;
  Term e_witness;
  Neighborhood ea, eb;
  if (a.size < 2) {
    fallback = "no minimal idempotent on a one-element algebra";
  } else {
    ea = chosen_neighborhood(a, limits);
    e_witness = ea.e.witness;
    try {
      eb = interpret_neighborhood(b, e_witness);
    } catch (const precondition_error&) {
      fallback = "the chosen idempotent of " + a.name + " is not idempotent in " + b.name;
    }
  }
  if (fallback.empty() && a.size >= 2) {
    if (!separates(ea, limits).separating)
      fallback = "e does not separate " + a.name;
    else if (!separates(eb, limits).separating)
      fallback = "e does not separate " + b.name;
    else if (!is_dense(ea))
      fallback = "e is not dense for " + a.name;
    else if (!is_dense(eb))
      fallback = "e is not dense for " + b.name;
  }
  if (!fallback.empty()) {
    IsoReport report = brute_force_isomorphism(a, b, limits);
    report.fallback_reason = std::move(fallback);
    return report;
  }

  IsoReport report;
  report.method = IsoMethod::localized;
  std::vector<LocalMap> hits;
  try {
    hits = localized_isomorphism_search(a, b, e_witness, limits);
  } catch (const resource_limit_error&) {
    report.isomorphic = Verdict::unknown;
    return report;
  }
  std::uint64_t candidates = 1;
  for (std::size_t i = 2; i <= ea.elements.size(); ++i) candidates *= i;
  report.stats.candidates = ea.elements.size() == eb.elements.size() ? candidates : 0;

  for (const LocalMap& hit : hits) {
    const HomGraph lift = lift_local_hom(hit, limits);
    if (lift.is_bijective() && is_homomorphism(a, b, lift.map) &&
        is_homomorphism(b, a, inverse_map(lift.map))) {
      report.isomorphic = Verdict::yes;
      report.witness = lift;
      return report;
    }
  }
  report.isomorphic = Verdict::no;
  return report;
}

HomRestrictionReport hom_restriction_report(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                            const Term& e_witness, const Limits& limits) {
  HomRestrictionReport report;
  const Neighborhood ea = interpret_neighborhood(a, e_witness);
  const Neighborhood eb = interpret_neighborhood(b, e_witness);
  report.dense_for_dom = is_dense(ea);
  report.separating_for_cod = separates(eb, limits).separating;
  report.homs = enumerate_homomorphisms(a, b, limits);
  report.local_homs = enumerate_local_homs(ea, eb, limits);

  std::vector<std::vector<int>> images;
  for (const HomGraph& phi : report.homs) {
    const LocalMap lm = restrict_hom(phi, ea, eb);
    auto it = std::find_if(report.local_homs.begin(), report.local_homs.end(),
                           [&](const LocalMap& x) { return x.image == lm.image; });
    if (it == report.local_homs.end())
      throw invariant_error("hom_restriction_report: a restriction is not a local hom");
    report.restriction_of.push_back(
        static_cast<std::size_t>(it - report.local_homs.begin()));
    images.push_back(lm.image);
  }

  report.injective = true;
  for (std::size_t i = 0; i < images.size() && report.injective; ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (images[i] == images[j]) {
        report.injective = false;
        report.collision = std::make_pair(i, j);
        break;
      }

  std::vector<char> hit(report.local_homs.size(), 0);
  for (std::size_t idx : report.restriction_of) hit[idx] = 1;
  report.surjective = std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; });
  return report;
}

FreeAlgebraResult free_algebra(const FiniteAlgebra& a, int rank, const Limits& limits) {
  if (rank < 1) throw precondition_error("free_algebra: rank must be at least 1");
  std::uint64_t positions = 1;
  for (int i = 0; i < rank; ++i) {
    positions *= static_cast<std::uint64_t>(a.size);
    if (positions > static_cast<std::uint64_t>(limits.max_power_coordinates))
      throw resource_limit_error("free_algebra: |A|^rank exceeds the coordinate bound");
  }

  // position p encodes the argument tuple with component 0 most significant
  std::vector<std::vector<int>> tuples(positions, std::vector<int>(rank));
  for (std::uint64_t p = 0; p < positions; ++p) {
    std::uint64_t rest = p;
    for (int j = rank - 1; j >= 0; --j) {
      tuples[p][j] = static_cast<int>(rest % a.size);
      rest /= a.size;
    }
  }

  std::vector<std::vector<int>> seeds;
  for (int j = 0; j < rank; ++j) {
    std::vector<int> proj(positions);
    for (std::uint64_t p = 0; p < positions; ++p) proj[p] = tuples[p][j];
    seeds.push_back(std::move(proj));
  }
  std::vector<std::vector<int>> gen_tuples = seeds;
  TupleClosure cl =
      subpower_generated(a, static_cast<int>(positions), std::move(seeds), {},
                         limits.max_closure_tuples);

  FreeAlgebraResult out;
  // the closure order is deterministic, so use it as the element order
  std::vector<std::vector<int>> members = cl.members;
  const int m = static_cast<int>(members.size());
  out.algebra.name = "F" + std::to_string(rank) + "(" + a.name + ")";
  out.algebra.size = m;
  for (const auto& op : a.ops) {
    OperationTable t;
    t.symbol = op.symbol;
    t.arity = op.arity;
    std::uint64_t entries = 1;
    for (int i = 0; i < op.arity; ++i) {
      entries *= static_cast<std::uint64_t>(m);
      if (entries > limits.max_table_entries)
        throw resource_limit_error("free_algebra: induced table exceeds the entry bound");
    }
    t.table.resize(entries);
    std::vector<const std::vector<int>*> args(op.arity);
    for (std::uint64_t ecode = 0; ecode < entries; ++ecode) {
      std::uint64_t rest = ecode;
      for (int j = op.arity - 1; j >= 0; --j) {
        args[j] = &members[rest % m];
        rest /= m;
      }
      std::vector<int> res(positions);
      for (std::uint64_t p = 0; p < positions; ++p) {
        std::size_t idx = 0;
        for (int j = 0; j < op.arity; ++j)
          idx = idx * static_cast<std::size_t>(a.size) +
                static_cast<std::size_t>((*args[j])[p]);
        res[p] = op.table[idx];
      }
      const auto found = cl.find(res);
      if (!found) throw invariant_error("free_algebra: closure is not closed");
      t.table[ecode] = static_cast<int>(*found);
    }
    out.algebra.ops.push_back(std::move(t));
  }

  for (const auto& g : gen_tuples) out.generators.push_back(static_cast<int>(*cl.find(g)));
  for (std::uint64_t p = 0; p < positions; ++p) {
    std::vector<int> eval(m);
    for (int w = 0; w < m; ++w) eval[w] = members[w][p];
    out.evaluation_homs.push_back(std::move(eval));
    out.position_tuples.push_back(tuples[p]);
  }
  return out;
}

RetractReport retract_oracle(const FiniteAlgebra& p, const FiniteAlgebra& a,
                             std::optional<int> rank, const Limits& limits) {
  if (!same_signature(p, a))
    throw precondition_error("retract_oracle: '" + p.name + "' and '" + a.name +
                             "' have different signatures");
  RetractReport report;
  try {
    const int k = rank ? *rank : std::max<int>(1, static_cast<int>(minimum_generating_set(p).size()));
    report.rank = k;
    const FreeAlgebraResult free = free_algebra(a, k, limits);
    report.free_size = free.algebra.size;

    const std::vector<HomGraph> down = enumerate_homomorphisms(free.algebra, p, limits);
    const std::vector<HomGraph> up = enumerate_homomorphisms(p, free.algebra, limits);

    std::vector<const HomGraph*> surjections;
    for (const HomGraph& sigma : down) {
      std::vector<char> hit(p.size, 0);
      for (int y : sigma.map) hit[y] = 1;
      if (std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; }))
        surjections.push_back(&sigma);
    }

    report.retract = Verdict::no;
    for (const HomGraph* sigma : surjections) {
      for (const HomGraph& tau : up) {
        bool identity = true;
        for (int x = 0; x < p.size; ++x)
          if (sigma->map[tau.map[x]] != x) {
            identity = false;
            break;
          }
        if (identity) {
          report.retract = Verdict::yes;
          report.sigma = *sigma;
          report.tau = tau;
          break;
        }
      }
      if (report.retract == Verdict::yes) break;
    }

    // L-variant: replace F by the subalgebra generated by e(F) and check the
    // restricted surjections still cover P when P is e-dense.
    if (a.size >= 2) {
      const UnaryTermMap e = chosen_minimal_idempotent(a, limits);
      Neighborhood ef, ep;
      bool interpretable = true;
      try {
        ef = interpret_neighborhood(free.algebra, e.witness);
        ep = interpret_neighborhood(p, e.witness);
      } catch (const precondition_error&) {
        interpretable = false;
      }
      if (interpretable) {
        const SubUniverse l = densify(ef);
        report.l_variant.ran = true;
        report.l_variant.l_size = static_cast<int>(l.elements.size());
        report.l_variant.p_dense = is_dense(ep);
        if (report.l_variant.p_dense) {
          bool all_surjective = true;
          for (const HomGraph* sigma : surjections) {
            std::vector<char> hit(p.size, 0);
            for (int x : l.elements) hit[sigma->map[x]] = 1;
            if (!std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; }))
              all_surjective = false;
          }
          report.l_variant.restrictions_surjective = all_surjective;
        }
      }
    }
  } catch (const resource_limit_error&) {
    report.retract = Verdict::unknown;
  }
  return report;
}

}  // namespace ualoc
