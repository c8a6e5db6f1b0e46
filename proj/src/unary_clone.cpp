#include "ualoc/unary_clone.hpp"

#include <algorithm>
#include <numeric>

#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"

namespace ualoc {

bool operator==(const UnaryTermMap& a, const UnaryTermMap& b) { return a.map == b.map; }

const UnaryTermMap* UnaryMonoid::find(std::span<const int> map) const {
  for (const auto& m : members)
    if (std::equal(m.map.begin(), m.map.end(), map.begin(), map.end())) return &m;
  return nullptr;
}

namespace {

bool constant_map(const std::vector<int>& map) {
  for (int v : map)
    if (v != map[0]) return false;
  return true;
}

}  // namespace

UnaryMonoid unary_term_monoid(const FiniteAlgebra& a, const Limits& limits) {
  // The monoid is the closure of the identity tuple in A^A: members are the
  // graphs of the unary term operations, and the closure engine keeps the
  // first (breadth-first, hence smallest) witness for each map.
  std::vector<int> identity(a.size);
  std::iota(identity.begin(), identity.end(), 0);
  TupleClosure cl = subpower_generated(a, a.size, {identity}, {Term::variable(0)},
                                       limits.max_monoid_maps);
  UnaryMonoid out;
  out.parent = &a;
  out.members.reserve(cl.members.size());
  for (std::size_t i = 0; i < cl.members.size(); ++i)
    out.members.push_back(UnaryTermMap{cl.members[i], cl.witnesses[i], constant_map(cl.members[i])});
  return out;
}

std::vector<UnaryTermMap> idempotent_unary_terms(const FiniteAlgebra& a, const Limits& limits) {
  std::vector<UnaryTermMap> out;
  for (const auto& m : unary_term_monoid(a, limits).members) {
    bool idem = true;
    for (int x = 0; x < a.size; ++x)
      if (m.map[m.map[x]] != m.map[x]) {
        idem = false;
        break;
      }
    if (idem) out.push_back(m);
  }
  std::sort(out.begin(), out.end(),
            [](const UnaryTermMap& x, const UnaryTermMap& y) { return x.map < y.map; });
  return out;
}

std::vector<UnaryTermMap> minimal_idempotents(const FiniteAlgebra& a, const Limits& limits) {
  if (a.size < 2)
    throw precondition_error("minimal_idempotents: the algebra must have at least 2 elements");
  std::vector<UnaryTermMap> idems = idempotent_unary_terms(a, limits);
  std::vector<UnaryTermMap> nonconstant;
  for (auto& m : idems)
    if (!m.is_constant) nonconstant.push_back(std::move(m));

  auto range_of = [](const UnaryTermMap& m) {
    std::vector<int> r(m.map);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  };

  std::vector<UnaryTermMap> out;
  for (const auto& m : nonconstant) {
    const std::vector<int> rm = range_of(m);
    bool minimal = true;
    for (const auto& other : nonconstant) {
      const std::vector<int> ro = range_of(other);
      if (ro.size() < rm.size() &&
          std::includes(rm.begin(), rm.end(), ro.begin(), ro.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(m);
  }
  std::sort(out.begin(), out.end(),
            [](const UnaryTermMap& x, const UnaryTermMap& y) { return x.map < y.map; });
  return out;
}

UnaryTermMap chosen_minimal_idempotent(const FiniteAlgebra& a, const Limits& limits) {
  return minimal_idempotents(a, limits).front();
}

}  // namespace ualoc
