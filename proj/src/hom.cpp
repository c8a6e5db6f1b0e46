#include "ualoc/hom.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ualoc/closure.hpp"
#include "ualoc/errors.hpp"

namespace ualoc {

std::vector<std::pair<int, int>> HomGraph::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(map.size());
  for (std::size_t x = 0; x < map.size(); ++x) out.emplace_back(static_cast<int>(x), map[x]);
  return out;
}

bool HomGraph::is_bijective() const {
  if (!dom || !cod || dom->size != cod->size) return false;
  std::vector<char> hit(map.size(), 0);
  for (int y : map) {
    if (y < 0 || y >= static_cast<int>(map.size()) || hit[y]) return false;
    hit[y] = 1;
  }
  return true;
}

bool operator==(const HomGraph& a, const HomGraph& b) { return a.map == b.map; }

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, std::span<const int> map) {
  if (static_cast<int>(map.size()) != a.size) return false;
  for (int y : map)
    if (y < 0 || y >= b.size) return false;
  if (!same_signature(a, b)) return false;
  std::vector<int> args_a, args_b;
  for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
    const OperationTable& fa = a.ops[oi];
    const OperationTable& fb = b.ops[oi];
    const int k = fa.arity;
    if (k == 0) {
      if (map[fa.table[0]] != fb.table[0]) return false;
      continue;
    }
    std::size_t tuples = 1;
    for (int i = 0; i < k; ++i) tuples *= static_cast<std::size_t>(a.size);
    for (std::size_t e = 0; e < tuples; ++e) {
      std::size_t rest = e;
      args_a.assign(k, 0);
      args_b.assign(k, 0);
      for (int j = k - 1; j >= 0; --j) {
        args_a[j] = static_cast<int>(rest % a.size);
        args_b[j] = map[args_a[j]];
        rest /= a.size;
      }
      if (map[fa.apply(args_a, a.size)] != fb.apply(args_b, b.size)) return false;
    }
  }
  return true;
}

std::vector<int> greedy_generating_set(const FiniteAlgebra& a) {
  bool has_constant = false;
  for (const auto& op : a.ops)
    if (op.arity == 0) has_constant = true;

  std::vector<int> closed;
  if (has_constant) closed = subuniverse_generated_elements(a, {});
  std::vector<char> in(a.size, 0);
  for (int x : closed) in[x] = 1;

  std::vector<int> gens;
  std::vector<int> trial;
  while (static_cast<int>(closed.size()) < a.size) {
    int best = -1;
    std::size_t best_size = 0;
    for (int x = 0; x < a.size; ++x) {
      if (in[x]) continue;
      trial = closed;
      trial.push_back(x);
      const std::size_t grown = subuniverse_generated_elements(a, trial).size();
      if (grown > best_size) {
        best = x;
        best_size = grown;
      }
    }
    gens.push_back(best);
    trial = closed;
    trial.push_back(best);
    closed = subuniverse_generated_elements(a, trial);
    for (int x : closed) in[x] = 1;
  }
  return gens;
}

std::vector<int> minimum_generating_set(const FiniteAlgebra& a) {
  bool has_constant = false;
  for (const auto& op : a.ops)
    if (op.arity == 0) has_constant = true;
  if (has_constant && static_cast<int>(subuniverse_generated_elements(a, {}).size()) == a.size)
    return {};

  for (int s = 1; s <= a.size; ++s) {
    // lexicographically first subset of size s that generates
    std::vector<int> comb(s);
    std::iota(comb.begin(), comb.end(), 0);
    while (true) {
      if (static_cast<int>(subuniverse_generated_elements(a, comb).size()) == a.size) return comb;
      int i = s - 1;
      while (i >= 0 && comb[i] == a.size - s + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw invariant_error("minimum_generating_set: the full universe failed to generate itself");
}

namespace {

// Extends a partial image map to the closure of its defined set; false on
// conflict.
bool propagate(const FiniteAlgebra& a, const FiniteAlgebra& b, std::vector<int>& img) {
  std::vector<int> args_a, args_b, defined;
  bool changed = true;
  while (changed) {
    changed = false;
    defined.clear();
    for (int x = 0; x < a.size; ++x)
      if (img[x] >= 0) defined.push_back(x);
    for (std::size_t oi = 0; oi < a.ops.size(); ++oi) {
      const OperationTable& fa = a.ops[oi];
      const OperationTable& fb = b.ops[oi];
      const int k = fa.arity;
      if (k == 0) {
        const int ra = fa.table[0], rb = fb.table[0];
        if (img[ra] < 0) {
          img[ra] = rb;
          changed = true;
        } else if (img[ra] != rb) {
          return false;
        }
        continue;
      }
      if (defined.empty()) continue;
      std::vector<std::size_t> idx(k, 0);
      while (true) {
        args_a.resize(k);
        args_b.resize(k);
        for (int j = 0; j < k; ++j) {
          args_a[j] = defined[idx[j]];
          args_b[j] = img[args_a[j]];
        }
        const int ra = fa.apply(args_a, a.size);
        const int rb = fb.apply(args_b, b.size);
        if (img[ra] < 0) {
          img[ra] = rb;
          changed = true;
        } else if (img[ra] != rb) {
          return false;
        }
        int j = k - 1;
        while (j >= 0 && ++idx[j] == defined.size()) idx[j--] = 0;
        if (j < 0) break;
      }
    }
  }
  return true;
}

}  // namespace

std::vector<HomGraph> enumerate_homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                              const Limits& limits) {
  if (!same_signature(a, b))
    throw precondition_error("enumerate_homomorphisms: '" + a.name + "' and '" + b.name +
                             "' have different signatures");
  const std::vector<int> gens = greedy_generating_set(a);

  std::vector<HomGraph> out;
  std::vector<int> img(a.size, -1);
  if (!propagate(a, b, img)) return out;

  std::uint64_t nodes = 0;
  std::function<void(std::size_t, std::vector<int>&)> dfs = [&](std::size_t pos,
                                                                std::vector<int>& cur) {
    if (pos == gens.size()) {
      for (int x = 0; x < a.size; ++x)
        if (cur[x] < 0)
          throw invariant_error("hom search: generators assigned but the map is partial");
      if (is_homomorphism(a, b, cur)) out.push_back(HomGraph{&a, &b, cur});
      return;
    }
    const int g = gens[pos];
    if (cur[g] >= 0) {
      dfs(pos + 1, cur);
      return;
    }
    for (int v = 0; v < b.size; ++v) {
      if (++nodes > limits.max_search_nodes)
        throw resource_limit_error("enumerate_homomorphisms: node bound exceeded");
      std::vector<int> next = cur;
      next[g] = v;
      if (propagate(a, b, next)) dfs(pos + 1, next);
    }
  };
  dfs(0, img);
  std::sort(out.begin(), out.end(),
            [](const HomGraph& x, const HomGraph& y) { return x.map < y.map; });
  return out;
}

}  // namespace ualoc
