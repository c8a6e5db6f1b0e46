#include "ualoc/congruence.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"

namespace ualoc {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) { parent[find(x)] = find(y); }
};

// RGS-normalizes class ids to first-occurrence order.
std::vector<int> normalize_classes(std::vector<int> raw) {
  std::vector<int> remap(raw.size(), -1);
  int next = 0;
  for (int& c : raw) {
    if (remap[c] < 0) remap[c] = next++;
    c = remap[c];
  }
  return raw;
}

}  // namespace

int Congruence::carrier_index(int element) const {
  auto it = std::lower_bound(carrier.begin(), carrier.end(), element);
  if (it == carrier.end() || *it != element) return -1;
  return static_cast<int>(it - carrier.begin());
}

bool Congruence::related(int a, int b) const {
  const int i = carrier_index(a), j = carrier_index(b);
  if (i < 0 || j < 0) throw precondition_error("congruence: element outside the carrier");
  return class_of[i] == class_of[j];
}

int Congruence::num_classes() const {
  return class_of.empty() ? 0 : *std::max_element(class_of.begin(), class_of.end()) + 1;
}

bool Congruence::is_equality() const { return num_classes() == static_cast<int>(carrier.size()); }

bool Congruence::is_full() const { return num_classes() <= 1; }

std::vector<std::pair<int, int>> Congruence::related_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = 0; j < carrier.size(); ++j)
      if (class_of[i] == class_of[j]) out.emplace_back(carrier[i], carrier[j]);
  return out;
}

bool operator==(const Congruence& a, const Congruence& b) {
  return a.parent == b.parent && a.carrier == b.carrier && a.class_of == b.class_of;
}

Congruence congruence_from_pairs(const FiniteAlgebra& a, std::span<const int> carrier,
                                 std::span<const std::pair<int, int>> pairs) {
  Congruence c;
  c.parent = &a;
  c.carrier.assign(carrier.begin(), carrier.end());
  std::sort(c.carrier.begin(), c.carrier.end());
  UnionFind uf(static_cast<int>(c.carrier.size()));
  for (const auto& [x, y] : pairs) {
    const int i = c.carrier_index(x), j = c.carrier_index(y);
    if (i < 0 || j < 0) throw precondition_error("congruence pair outside the carrier");
    uf.unite(i, j);
  }
  std::vector<int> raw(c.carrier.size());
  for (std::size_t i = 0; i < c.carrier.size(); ++i) raw[i] = uf.find(static_cast<int>(i));
  c.class_of = normalize_classes(std::move(raw));
  return c;
}

Congruence congruence_generated(const FiniteAlgebra& a,
                                std::span<const std::pair<int, int>> seed_pairs,
                                const Limits& limits) {
  // Sg in the square of the seed pairs, converses and the diagonal, then the
  // transitive closure. Valid because the transitive closure of a reflexive
  // symmetric subuniverse of A^2 is compatible.
  std::vector<std::vector<int>> seeds;
  for (const auto& [x, y] : seed_pairs) {
    if (x < 0 || x >= a.size || y < 0 || y >= a.size)
      throw precondition_error("congruence seed pair outside the universe");
    seeds.push_back({x, y});
    seeds.push_back({y, x});
  }
  for (int x = 0; x < a.size; ++x) seeds.push_back({x, x});
  const std::uint64_t bound =
      std::min<std::uint64_t>(limits.max_closure_tuples,
                              static_cast<std::uint64_t>(a.size) * static_cast<std::uint64_t>(a.size));
  TupleClosure cl = subpower_generated(a, 2, std::move(seeds), {}, bound);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(cl.members.size());
  for (const auto& t : cl.members) pairs.emplace_back(t[0], t[1]);
  std::vector<int> carrier(a.size);
  std::iota(carrier.begin(), carrier.end(), 0);
  return congruence_from_pairs(a, carrier, pairs);
}

Congruence congruence_generated(const SubUniverse& s,
                                std::span<const std::pair<int, int>> seed_pairs,
                                const Limits& limits) {
  InducedAlgebra ind = induce(*s.parent, s.elements);
  std::vector<std::pair<int, int>> relabeled;
  for (const auto& [x, y] : seed_pairs) {
    const int i = ind.from_parent[x], j = ind.from_parent[y];
    if (i < 0 || j < 0) throw precondition_error("congruence seed pair outside the carrier");
    relabeled.emplace_back(i, j);
  }
  Congruence inner = congruence_generated(ind.algebra, relabeled, limits);
  Congruence c;
  c.parent = s.parent;
  c.carrier = s.elements;
  c.class_of = inner.class_of;
  return c;
}

namespace {

// Compatibility one coordinate at a time; equivalent to the full definition
// by transitivity.
bool partition_compatible(const FiniteAlgebra& a, const std::vector<int>& class_of) {
  const int n = a.size;
  std::vector<int> args;
  for (const auto& op : a.ops) {
    const int k = op.arity;
    if (k == 0) continue;
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) {
        if (class_of[x] != class_of[y]) continue;
        for (int pos = 0; pos < k; ++pos) {
          std::size_t rest_count = 1;
          for (int i = 0; i < k - 1; ++i) rest_count *= static_cast<std::size_t>(n);
          for (std::size_t rest = 0; rest < rest_count; ++rest) {
            args.assign(k, 0);
            std::size_t r = rest;
            for (int j = k - 1; j >= 0; --j) {
              if (j == pos) continue;
              args[j] = static_cast<int>(r % n);
              r /= n;
            }
            args[pos] = x;
            const int rx = op.apply(args, n);
            args[pos] = y;
            const int ry = op.apply(args, n);
            if (class_of[rx] != class_of[ry]) return false;
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

std::vector<Congruence> all_congruences(const FiniteAlgebra& a, const Limits& limits) {
  if (a.size > limits.congruence_carrier_bound)
    throw resource_limit_error("all_congruences: carrier size " + std::to_string(a.size) +
                               " exceeds the bound " +
                               std::to_string(limits.congruence_carrier_bound));
  std::vector<Congruence> out;
  std::vector<int> carrier(a.size);
  std::iota(carrier.begin(), carrier.end(), 0);
  std::vector<int> rgs(a.size, 0);

  // Restricted growth strings enumerate every partition exactly once.
  auto emit = [&]() {
    if (partition_compatible(a, rgs)) {
      Congruence c;
      c.parent = &a;
      c.carrier = carrier;
      c.class_of = rgs;
      out.push_back(std::move(c));
    }
  };
  std::function<void(int, int)> rec = [&](int i, int maxc) {
    if (i == a.size) {
      emit();
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

std::vector<Congruence> all_congruences(const SubUniverse& s, const Limits& limits) {
  InducedAlgebra ind = induce(*s.parent, s.elements);
  std::vector<Congruence> inner = all_congruences(ind.algebra, limits);
  std::vector<Congruence> out;
  out.reserve(inner.size());
  for (auto& c : inner) {
    Congruence o;
    o.parent = s.parent;
    o.carrier = s.elements;
    o.class_of = std::move(c.class_of);
    out.push_back(std::move(o));
  }
  return out;
}

bool is_congruence(const Congruence& c) {
  InducedAlgebra ind = induce(*c.parent, c.carrier);
  return partition_compatible(ind.algebra, c.class_of);
}

}  // namespace ualoc
