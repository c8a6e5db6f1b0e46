#include "ualoc/localization.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"
#include "ualoc/parallel.hpp"

namespace ualoc {

int Neighborhood::position_of(int element) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), element);
  if (it == elements.end() || *it != element) return -1;
  return static_cast<int>(it - elements.begin());
}

Neighborhood make_neighborhood(const FiniteAlgebra& a, UnaryTermMap e) {
  if (static_cast<int>(e.map.size()) != a.size)
    throw precondition_error("neighborhood: map length does not match the universe");
  for (int x = 0; x < a.size; ++x)
    if (e.map[e.map[x]] != e.map[x])
      throw precondition_error("neighborhood: the unary term is not idempotent");
  Neighborhood n;
  n.parent = &a;
  n.elements.assign(e.map.begin(), e.map.end());
  std::sort(n.elements.begin(), n.elements.end());
  n.elements.erase(std::unique(n.elements.begin(), n.elements.end()), n.elements.end());
  n.e = std::move(e);
  return n;
}

Neighborhood chosen_neighborhood(const FiniteAlgebra& a, const Limits& limits) {
  return make_neighborhood(a, chosen_minimal_idempotent(a, limits));
}

UnaryTermMap interpret_unary_term(const FiniteAlgebra& b, const Term& witness) {
  if (witness.max_variable() > 0)
    throw precondition_error("interpret_unary_term: the witness is not unary");
  UnaryTermMap m;
  m.map.resize(b.size);
  for (int x = 0; x < b.size; ++x) {
    const int arg[1] = {x};
    m.map[x] = eval_term(b, witness, arg);
  }
  m.witness = witness;
  m.is_constant = std::all_of(m.map.begin(), m.map.end(), [&](int v) { return v == m.map[0]; });
  return m;
}

Neighborhood interpret_neighborhood(const FiniteAlgebra& b, const Term& witness) {
  return make_neighborhood(b, interpret_unary_term(b, witness));
}

std::vector<std::pair<int, int>> LocalMap::graph() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) out.emplace_back(src.elements[i], image[i]);
  return out;
}

int LocalMap::apply(int element) const {
  const int i = src.position_of(element);
  if (i < 0) throw precondition_error("local map applied outside its neighborhood");
  return image[i];
}

bool operator==(const LocalMap& a, const LocalMap& b) { return a.image == b.image; }

// --- separation ----------------------------------------------------------------

SeparationReport separates(const Neighborhood& e, const Limits& limits) {
  const FiniteAlgebra& a = *e.parent;
  const UnaryMonoid monoid = unary_term_monoid(a, limits);

  std::vector<std::pair<int, int>> pairs;
  for (int x = 0; x < a.size; ++x)
    for (int y = x + 1; y < a.size; ++y) pairs.emplace_back(x, y);

  // one slot per pair: the index of the first separating monoid member, or -1
  std::vector<int> separator(pairs.size(), -1);
  parallel_chunks(limits.jobs, pairs.size(), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto [x, y] = pairs[i];
      for (std::size_t g = 0; g < monoid.members.size(); ++g) {
        const auto& m = monoid.members[g].map;
        if (e.e.map[m[x]] != e.e.map[m[y]]) {
          separator[i] = static_cast<int>(g);
          break;
        }
      }
    }
  });

  SeparationReport report;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (separator[i] < 0) {
      report.separating = false;
      report.inseparable_pair = pairs[i];
      report.witnesses.clear();
      return report;
    }
    const Term g = monoid.members[separator[i]].witness;
    report.witnesses.push_back(SeparationWitness{pairs[i], substitute(e.e.witness, {&g, 1})});
  }
  report.separating = true;
  return report;
}

// --- Lemma 2.1 oracle ------------------------------------------------------------

Lemma21Report lemma21_oracle(const Neighborhood& e, Lemma21Domain domain, const Limits& limits) {
  const FiniteAlgebra& a = *e.parent;
  if (a.size > limits.lemma21_bound)
    throw resource_limit_error("lemma21_oracle: universe size exceeds the brute-force bound");

  const std::vector<SubUniverse> subs = all_subuniverses(a, limits);
  Lemma21Report report;

  // (1) isomorphisms between subalgebras fixing the neighborhood pointwise
  for (const SubUniverse& b : subs) {
    const InducedAlgebra ib = induce(a, b.elements);
    for (const SubUniverse& c : subs) {
      if (b.elements.size() != c.elements.size()) continue;
      const InducedAlgebra ic = induce(a, c.elements);
      for (const HomGraph& phi : enumerate_homomorphisms(ib.algebra, ic.algebra, limits)) {
        if (!phi.is_bijective()) continue;
        if (domain == Lemma21Domain::require_containment) {
          bool contained = true;
          for (int u : e.elements)
            if (!b.contains(u)) contained = false;
          if (!contained) continue;
        }
        bool fixes_neighborhood = true;
        for (int u : e.elements) {
          const int i = ib.from_parent.size() > static_cast<std::size_t>(u) ? ib.from_parent[u] : -1;
          if (i < 0) continue;  // outside dom(φ)
          if (ic.to_parent[phi.map[i]] != u) {
            fixes_neighborhood = false;
            break;
          }
        }
        if (!fixes_neighborhood) continue;
        bool identity = true;
        for (std::size_t i = 0; i < b.elements.size(); ++i)
          if (ic.to_parent[phi.map[i]] != b.elements[i]) {
            identity = false;
            break;
          }
        if (!identity) {
          Lemma21IsoCounterexample ce;
          ce.domain = b.elements;
          for (std::size_t i = 0; i < b.elements.size(); ++i)
            ce.mapping.emplace_back(b.elements[i], ic.to_parent[phi.map[i]]);
          report.holds = false;
          report.iso = std::move(ce);
          return report;
        }
      }
    }
  }

  // (2) congruences on subalgebras restricting trivially to the neighborhood
  for (const SubUniverse& b : subs) {
    for (const Congruence& alpha : all_congruences(b, limits)) {
      if (alpha.is_equality()) continue;
      bool trivial_on_u = true;
      for (std::size_t i = 0; i < alpha.carrier.size() && trivial_on_u; ++i) {
        if (e.position_of(alpha.carrier[i]) < 0) continue;
        for (std::size_t j = i + 1; j < alpha.carrier.size(); ++j) {
          if (e.position_of(alpha.carrier[j]) < 0) continue;
          if (alpha.class_of[i] == alpha.class_of[j]) {
            trivial_on_u = false;
            break;
          }
        }
      }
      if (trivial_on_u) {
        report.holds = false;
        report.congruence = Lemma21CongruenceCounterexample{alpha.carrier, alpha.class_of};
        return report;
      }
    }
  }

  report.holds = true;
  return report;
}

// --- density ---------------------------------------------------------------------

bool is_dense(const Neighborhood& e) {
  return static_cast<int>(subuniverse_generated_elements(*e.parent, e.elements).size()) ==
         e.parent->size;
}

SubUniverse densify(const Neighborhood& e) {
  return subuniverse_generated(*e.parent, e.elements);
}

// --- localized homomorphisms -------------------------------------------------------

LocalMap restrict_hom(const HomGraph& phi, const Neighborhood& e_dom, const Neighborhood& e_cod) {
  const FiniteAlgebra& a = *phi.dom;
  const FiniteAlgebra& b = *phi.cod;
  if (e_dom.parent != &a || e_cod.parent != &b)
    throw precondition_error("restrict_hom: neighborhoods do not match the homomorphism");
  // landing condition: a homomorphism commutes with the term e
  for (int x = 0; x < a.size; ++x)
    if (phi.map[e_dom.e.map[x]] != e_cod.e.map[phi.map[x]])
      throw invariant_error("restrict_hom: φ(e(x)) != e(φ(x)); corrupted homomorphism");
  LocalMap lm;
  lm.src = e_dom;
  lm.dst = e_cod;
  lm.image.reserve(e_dom.elements.size());
  for (int u : e_dom.elements) lm.image.push_back(phi.map[u]);
  return lm;
}

bool is_local_hom(const LocalMap& lambda, const Limits& limits) {
  const FiniteAlgebra& a = *lambda.src.parent;
  const FiniteAlgebra& b = *lambda.dst.parent;
  if (!same_signature(a, b))
    throw precondition_error("is_local_hom: parents have different signatures");

  std::vector<std::vector<int>> seeds;
  std::set<std::pair<int, int>> graph;
  for (std::size_t i = 0; i < lambda.src.elements.size(); ++i) {
    seeds.push_back({lambda.src.elements[i], lambda.image[i]});
    graph.emplace(lambda.src.elements[i], lambda.image[i]);
  }
  const FiniteAlgebra* factors[2] = {&a, &b};
  const std::uint64_t bound = std::min<std::uint64_t>(
      limits.max_closure_tuples,
      static_cast<std::uint64_t>(a.size) * static_cast<std::uint64_t>(b.size));
  const TupleClosure cl = subpower_generated(factors, std::move(seeds), {}, bound);

  // e(Sg(λ)) ⊆ λ decides the matter: the reverse inclusion always holds.
  for (const auto& t : cl.members) {
    const std::pair<int, int> image{lambda.src.e.map[t[0]], lambda.dst.e.map[t[1]]};
    if (!graph.count(image)) return false;
  }
  return true;
}

HomGraph lift_local_hom(const LocalMap& lambda, const Limits& limits) {
  const FiniteAlgebra& a = *lambda.src.parent;
  const FiniteAlgebra& b = *lambda.dst.parent;
  if (!is_local_hom(lambda, limits))
    throw precondition_error("lift_local_hom: the map is not a local homomorphism");
  if (!is_dense(lambda.src))
    throw precondition_error("lift_local_hom: the idempotent is not dense for the source");
  if (!separates(lambda.dst, limits).separating)
    throw precondition_error("lift_local_hom: the idempotent does not separate the target");

  std::vector<std::vector<int>> seeds;
  for (std::size_t i = 0; i < lambda.src.elements.size(); ++i)
    seeds.push_back({lambda.src.elements[i], lambda.image[i]});
  const FiniteAlgebra* factors[2] = {&a, &b};
  const std::uint64_t bound = std::min<std::uint64_t>(
      limits.max_closure_tuples,
      static_cast<std::uint64_t>(a.size) * static_cast<std::uint64_t>(b.size));
  const TupleClosure cl = subpower_generated(factors, std::move(seeds), {}, bound);

  HomGraph hom;
  hom.dom = &a;
  hom.cod = &b;
  hom.map.assign(a.size, -1);
  for (const auto& t : cl.members) {
    if (hom.map[t[0]] >= 0 && hom.map[t[0]] != t[1])
      throw invariant_error("lift_local_hom: the lift is not single-valued (separation failure)");
    hom.map[t[0]] = t[1];
  }
  for (int x = 0; x < a.size; ++x)
    if (hom.map[x] < 0)
      throw invariant_error("lift_local_hom: the lift is not total (density failure)");
  if (!is_homomorphism(a, b, hom.map))
    throw invariant_error("lift_local_hom: the lift is not a homomorphism");
  const LocalMap back = restrict_hom(hom, lambda.src, lambda.dst);
  if (!(back == lambda))
    throw invariant_error("lift_local_hom: the lift does not restrict to the local map");
  return hom;
}

std::vector<LocalMap> enumerate_local_homs(const Neighborhood& src, const Neighborhood& dst,
                                           const Limits& limits) {
  const std::size_t s = src.elements.size();
  const std::size_t d = dst.elements.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s; ++i) {
    total *= static_cast<std::uint64_t>(d);
    if (total > limits.max_local_maps)
      throw resource_limit_error("enumerate_local_homs: candidate count exceeds the bound");
  }

  const std::size_t chunks = chunk_count(limits.jobs, static_cast<std::size_t>(total));
  std::vector<std::vector<LocalMap>> found(chunks);
  parallel_chunks(limits.jobs, static_cast<std::size_t>(total),
                  [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                    std::vector<int> image(s);
                    for (std::size_t code = begin; code < end; ++code) {
                      std::size_t rest = code;
                      for (std::size_t i = s; i-- > 0;) {
                        image[i] = dst.elements[rest % d];
                        rest /= d;
                      }
                      LocalMap lm{src, dst, image};
                      if (is_local_hom(lm, limits)) found[chunk].push_back(std::move(lm));
                    }
                  });
  std::vector<LocalMap> out;
  for (auto& f : found)
    for (auto& lm : f) out.push_back(std::move(lm));
  return out;
}

// --- localized congruences ----------------------------------------------------------

bool certify_local_congruence(const Neighborhood& e, const Congruence& theta,
                              const Limits& limits) {
  const FiniteAlgebra& a = *e.parent;
  if (theta.carrier != e.elements)
    throw precondition_error("local congruence carrier must equal the neighborhood");
  std::set<std::pair<int, int>> pairs;
  std::vector<std::vector<int>> seeds;
  for (const auto& [x, y] : theta.related_pairs()) {
    pairs.emplace(x, y);
    seeds.push_back({x, y});
  }
  const std::uint64_t bound = std::min<std::uint64_t>(
      limits.max_closure_tuples,
      static_cast<std::uint64_t>(a.size) * static_cast<std::uint64_t>(a.size));
  const TupleClosure cl = subpower_generated(a, 2, std::move(seeds), {}, bound);
  for (const auto& t : cl.members) {
    const std::pair<int, int> image{e.e.map[t[0]], e.e.map[t[1]]};
    if (!pairs.count(image)) return false;
  }
  return true;
}

std::vector<Congruence> enumerate_local_congruences(const Neighborhood& e, const Limits& limits) {
  const std::size_t m = e.elements.size();
  if (static_cast<int>(m) > limits.congruence_carrier_bound)
    throw resource_limit_error("enumerate_local_congruences: neighborhood too large");
  std::vector<Congruence> out;
  std::vector<int> rgs(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxc) {
    if (i == m) {
      Congruence theta;
      theta.parent = e.parent;
      theta.carrier = e.elements;
      theta.class_of = rgs;
      if (certify_local_congruence(e, theta, limits)) out.push_back(std::move(theta));
      return;
    }
    for (int c = 0; c <= maxc + 1; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(maxc, c));
    }
  };
  rec(0, -1);
  return out;
}

Congruence lift_local_congruence(const Neighborhood& e, const Congruence& theta,
                                 const Limits& limits) {
  const FiniteAlgebra& a = *e.parent;
  if (!certify_local_congruence(e, theta, limits))
    throw precondition_error(
        "lift_local_congruence: the partition is not a congruence of the localization");

  std::vector<std::pair<int, int>> seed_pairs = theta.related_pairs();
  Congruence lifted = congruence_generated(a, seed_pairs, limits);

  // e(θ̂) restricted to U must reproduce θ exactly.
  for (std::size_t i = 0; i < lifted.carrier.size(); ++i) {
    for (std::size_t j = 0; j < lifted.carrier.size(); ++j) {
      if (lifted.class_of[i] != lifted.class_of[j]) continue;
      const int eu = e.e.map[lifted.carrier[i]];
      const int ev = e.e.map[lifted.carrier[j]];
      if (!theta.related(eu, ev))
        throw invariant_error("lift_local_congruence: e(θ̂) does not restrict to θ");
    }
  }
  for (const auto& [x, y] : theta.related_pairs())
    if (!lifted.related(x, y))
      throw invariant_error("lift_local_congruence: θ̂ lost a seed pair");
  return lifted;
}

// --- clone fragments -------------------------------------------------------------

std::vector<LocalOperation> localize_clone_fragment(const FiniteAlgebra& a, const Neighborhood& e,
                                                    int arity, const Limits& limits) {
  if (arity < 0) throw precondition_error("localize_clone_fragment: negative arity");
  const std::size_t u = e.elements.size();
  std::uint64_t positions = 1;
  for (int i = 0; i < arity; ++i) {
    positions *= static_cast<std::uint64_t>(u);
    if (positions > limits.max_fragment_positions)
      throw resource_limit_error("localize_clone_fragment: |U|^k exceeds the position bound");
  }

  // Seed the closure with the projections; members are the functions
  // U^k -> A realized by terms.
  std::vector<std::vector<int>> seeds;
  std::vector<Term> witnesses;
  for (int j = 0; j < arity; ++j) {
    std::vector<int> proj(positions);
    for (std::uint64_t pos = 0; pos < positions; ++pos) {
      std::uint64_t rest = pos;
      int digit = 0;
      for (int i = arity - 1; i >= 0; --i) {
        const int d = static_cast<int>(rest % u);
        rest /= u;
        if (i == j) digit = d;
      }
      proj[pos] = e.elements[digit];
    }
    seeds.push_back(std::move(proj));
    witnesses.push_back(Term::variable(j));
  }
  TupleClosure cl = subpower_generated(a, static_cast<int>(positions), std::move(seeds),
                                       std::move(witnesses), limits.max_closure_tuples);

  // Post-compose with e, restrict, deduplicate (first witness wins), sort.
  std::map<std::vector<int>, Term> dedup;
  for (std::size_t i = 0; i < cl.members.size(); ++i) {
    std::vector<int> table(cl.members[i].size());
    for (std::size_t p = 0; p < table.size(); ++p) table[p] = e.e.map[cl.members[i][p]];
    dedup.emplace(std::move(table), cl.witnesses[i]);
  }
  std::vector<LocalOperation> out;
  out.reserve(dedup.size());
  for (auto& [table, witness] : dedup)
    out.push_back(LocalOperation{arity, table, witness});
  return out;
}

bool essentially_unary(const LocalOperation& op, int neighborhood_size) {
  const int u = neighborhood_size;
  int dependent = 0;
  std::size_t stride = 1;
  std::vector<std::size_t> strides(op.arity);
  for (int i = op.arity - 1; i >= 0; --i) {
    strides[i] = stride;
    stride *= static_cast<std::size_t>(u);
  }
  for (int var = 0; var < op.arity; ++var) {
    bool depends = false;
    for (std::size_t pos = 0; pos < op.table.size() && !depends; ++pos) {
      const int digit = static_cast<int>(pos / strides[var] % static_cast<std::size_t>(u));
      if (digit != 0) continue;
      for (int alt = 1; alt < u; ++alt)
        if (op.table[pos] != op.table[pos + strides[var] * static_cast<std::size_t>(alt)]) {
          depends = true;
          break;
        }
    }
    if (depends) ++dependent;
  }
  return dependent <= 1;
}

// --- the Mal'cev probe ----------------------------------------------------------------

namespace {

bool verify_malcev(const FiniteAlgebra& a, const Neighborhood& e, const Term& t) {
  for (int x : e.elements) {
    for (int y : e.elements) {
      const int xyy[3] = {x, y, y};
      const int xxy[3] = {x, x, y};
      if (e.e.map[eval_term(a, t, xyy)] != x) return false;
      if (e.e.map[eval_term(a, t, xxy)] != y) return false;
    }
  }
  return true;
}

}  // namespace

MalcevProbe malcev_probe(const FiniteAlgebra& a, const Neighborhood& e, const Limits& limits) {
  const std::vector<int>& u = e.elements;
  MalcevProbe result;

  // Route 1: closure of three designed tuples in a power of A whose
  // coordinates record the equations m(x,y,y) = x (all pairs, the diagonal
  // included) and m(x,x,y) = y (distinct pairs).
  const std::size_t coords = u.size() * u.size() + u.size() * (u.size() - 1);
  bool power_ok = static_cast<int>(coords) <= limits.max_power_coordinates;
  if (power_ok) {
    long double power_size = 1;
    for (std::size_t i = 0; i < coords && power_ok; ++i) {
      power_size *= a.size;
      if (power_size > static_cast<long double>(limits.max_product_elements)) power_ok = false;
    }
  }
  if (power_ok) {
    std::vector<int> sx, sy, sz, target;
    for (int x : u)
      for (int y : u) {
        sx.push_back(x);
        sy.push_back(y);
        sz.push_back(y);
        target.push_back(x);
      }
    for (int x : u)
      for (int y : u) {
        if (x == y) continue;
        sx.push_back(x);
        sy.push_back(x);
        sz.push_back(y);
        target.push_back(y);
      }
    std::optional<Term> witness;
    auto visitor = [&](const std::vector<int>& member, const Term* w, std::size_t) {
      for (std::size_t c = 0; c < coords; ++c)
        if (e.e.map[member[c]] != target[c]) return false;
      witness = *w;
      return true;
    };
    try {
      TupleClosure cl = subpower_generated(
          a, static_cast<int>(coords), {sx, sy, sz},
          {Term::variable(0), Term::variable(1), Term::variable(2)}, limits.max_closure_tuples,
          visitor);
      if (witness) {
        if (!verify_malcev(a, e, *witness))
          throw invariant_error("malcev_probe: the probe witness fails the identities");
        result.found = Verdict::yes;
        result.witness = std::move(witness);
        result.route = "subpower";
        return result;
      }
      if (!cl.stopped_early) {
        result.found = Verdict::no;
        result.route = "subpower";
        return result;
      }
    } catch (const resource_limit_error&) {
      // fall through to the fragment route
    }
  }

  // Route 2: exhaust the ternary fragment.
  try {
    for (const LocalOperation& op : localize_clone_fragment(a, e, 3, limits)) {
      Term t = op.witness;
      if (verify_malcev(a, e, t)) {
        result.found = Verdict::yes;
        result.witness = std::move(t);
        result.route = "fragment";
        return result;
      }
    }
    result.found = Verdict::no;
    result.route = "fragment";
    return result;
  } catch (const resource_limit_error&) {
    result.found = Verdict::unknown;
    result.route = "fragment";
    return result;
  }
}

}  // namespace ualoc
