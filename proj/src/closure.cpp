#include "ualoc/closure.hpp"

#include <algorithm>
#include <numeric>

namespace ualoc {

// --- generated subuniverses -------------------------------------------------

std::vector<int> subuniverse_generated_elements(const FiniteAlgebra& a, std::span<const int> seed) {
  bool has_constant = false;
  for (const auto& op : a.ops)
    if (op.arity == 0) has_constant = true;
  if (seed.empty() && !has_constant)
    throw precondition_error("empty seed and no constants: the generated subuniverse is empty");
  for (int x : seed)
    if (x < 0 || x >= a.size)
      throw precondition_error("seed element " + std::to_string(x) + " outside the universe of '" +
                               a.name + "'");

  std::vector<std::vector<int>> seeds;
  seeds.reserve(seed.size());
  for (int x : seed) seeds.push_back({x});
  TupleClosure cl = subpower_generated(a, 1, std::move(seeds), {},
                                       static_cast<std::uint64_t>(a.size));
  std::vector<int> out;
  out.reserve(cl.members.size());
  for (const auto& t : cl.members) out.push_back(t[0]);
  std::sort(out.begin(), out.end());
  return out;
}

SubUniverse subuniverse_generated(const FiniteAlgebra& a, std::span<const int> seed) {
  return SubUniverse{&a, subuniverse_generated_elements(a, seed)};
}

std::vector<SubUniverse> all_subuniverses(const FiniteAlgebra& a, const Limits& limits) {
  if (a.size > limits.subuniverse_bound)
    throw resource_limit_error("all_subuniverses: universe size " + std::to_string(a.size) +
                               " exceeds the bound " + std::to_string(limits.subuniverse_bound));
  std::vector<int> constants;
  for (const auto& op : a.ops)
    if (op.arity == 0) constants.push_back(op.table[0]);

  std::vector<SubUniverse> out;
  const std::uint32_t total = 1u << a.size;
  std::vector<int> elems;
  std::vector<int> args;
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    bool ok = true;
    for (int c : constants)
      if (!(mask & (1u << c))) { ok = false; break; }
    if (!ok) continue;
    elems.clear();
    for (int x = 0; x < a.size; ++x)
      if (mask & (1u << x)) elems.push_back(x);
    for (const auto& op : a.ops) {
      const int k = op.arity;
      if (k == 0) continue;
      std::vector<std::size_t> idx(k, 0);
      while (ok) {
        args.resize(k);
        for (int j = 0; j < k; ++j) args[j] = elems[idx[j]];
        const int r = op.apply(args, a.size);
        if (!(mask & (1u << r))) { ok = false; break; }
        int j = k - 1;
        while (j >= 0 && ++idx[j] == elems.size()) idx[j--] = 0;
        if (j < 0) break;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(SubUniverse{&a, elems});
  }
  std::sort(out.begin(), out.end(), [](const SubUniverse& x, const SubUniverse& y) {
    if (x.elements.size() != y.elements.size()) return x.elements.size() < y.elements.size();
    return x.elements < y.elements;
  });
  return out;
}

InducedAlgebra induce(const FiniteAlgebra& a, std::span<const int> elements, std::string name) {
  InducedAlgebra out;
  out.to_parent.assign(elements.begin(), elements.end());
  if (!std::is_sorted(out.to_parent.begin(), out.to_parent.end()))
    std::sort(out.to_parent.begin(), out.to_parent.end());
  out.from_parent.assign(a.size, -1);
  for (std::size_t i = 0; i < out.to_parent.size(); ++i)
    out.from_parent[out.to_parent[i]] = static_cast<int>(i);

  const int m = static_cast<int>(out.to_parent.size());
  out.algebra.name = name.empty() ? a.name + "|" + std::to_string(m) : std::move(name);
  out.algebra.size = m;
  std::vector<int> args;
  for (const auto& op : a.ops) {
    OperationTable t;
    t.symbol = op.symbol;
    t.arity = op.arity;
    std::size_t entries = 1;
    for (int i = 0; i < op.arity; ++i) entries *= static_cast<std::size_t>(m);
    t.table.resize(entries);
    for (std::size_t e = 0; e < entries; ++e) {
      std::size_t rest = e;
      args.assign(op.arity, 0);
      for (int j = op.arity - 1; j >= 0; --j) {
        args[j] = out.to_parent[rest % m];
        rest /= m;
      }
      const int r = op.apply(args, a.size);
      if (out.from_parent[r] < 0)
        throw precondition_error("induce: subset of '" + a.name + "' is not closed under '" +
                                 op.symbol + "'");
      t.table[e] = out.from_parent[r];
    }
    out.algebra.ops.push_back(std::move(t));
  }
  return out;
}

// --- direct products ---------------------------------------------------------

std::vector<int> product_decode(std::uint64_t code, std::span<const int> sizes) {
  std::vector<int> coords(sizes.size());
  for (std::size_t i = sizes.size(); i-- > 0;) {
    coords[i] = static_cast<int>(code % static_cast<std::uint64_t>(sizes[i]));
    code /= static_cast<std::uint64_t>(sizes[i]);
  }
  return coords;
}

std::uint64_t product_encode(std::span<const int> coords, std::span<const int> sizes) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    code = code * static_cast<std::uint64_t>(sizes[i]) + static_cast<std::uint64_t>(coords[i]);
  return code;
}

FiniteAlgebra direct_product(std::span<const FiniteAlgebra* const> factors, const Limits& limits) {
  if (factors.empty()) throw precondition_error("direct_product: no factors");
  const FiniteAlgebra& f0 = *factors[0];
  std::uint64_t size = 1;
  std::string name = "prod(";
  std::vector<int> sizes;
  sizes.reserve(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const FiniteAlgebra& f = *factors[i];
    if (!same_signature(f0, f))
      throw precondition_error("direct_product: factor '" + f.name +
                               "' does not share the signature of '" + f0.name + "'");
    size *= static_cast<std::uint64_t>(f.size);
    if (size > limits.max_product_elements)
      throw resource_limit_error("direct_product: size exceeds the bound of " +
                                 std::to_string(limits.max_product_elements) + " elements");
    sizes.push_back(f.size);
    if (i) name += ",";
    name += f.name;
  }
  name += ")";

  FiniteAlgebra out;
  out.name = std::move(name);
  out.size = static_cast<int>(size);
  std::vector<int> args;            // product codes
  std::vector<int> coord_args;      // per-factor arguments
  std::vector<std::vector<int>> decoded;
  for (std::size_t oi = 0; oi < f0.ops.size(); ++oi) {
    const int k = f0.ops[oi].arity;
    OperationTable t;
    t.symbol = f0.ops[oi].symbol;
    t.arity = k;
    std::uint64_t entries = 1;
    for (int i = 0; i < k; ++i) {
      entries *= size;
      if (entries > limits.max_table_entries)
        throw resource_limit_error("direct_product: table of '" + t.symbol +
                                   "' exceeds the entry bound");
    }
    t.table.resize(entries);
    for (std::uint64_t e = 0; e < entries; ++e) {
      std::uint64_t rest = e;
      args.assign(k, 0);
      for (int j = k - 1; j >= 0; --j) {
        args[j] = static_cast<int>(rest % size);
        rest /= size;
      }
      decoded.clear();
      for (int j = 0; j < k; ++j)
        decoded.push_back(product_decode(static_cast<std::uint64_t>(args[j]), sizes));
      std::vector<int> result(factors.size());
      coord_args.resize(k);
      for (std::size_t c = 0; c < factors.size(); ++c) {
        for (int j = 0; j < k; ++j) coord_args[j] = decoded[j][c];
        result[c] = factors[c]->ops[oi].apply(coord_args, factors[c]->size);
      }
      t.table[e] = static_cast<int>(product_encode(result, sizes));
    }
    out.ops.push_back(std::move(t));
  }
  return out;
}

FiniteAlgebra direct_power(const FiniteAlgebra& a, int exponent, const Limits& limits) {
  if (exponent < 1) throw precondition_error("direct_power: exponent must be positive");
  std::vector<const FiniteAlgebra*> factors(static_cast<std::size_t>(exponent), &a);
  FiniteAlgebra out = direct_product(factors, limits);
  out.name = a.name + "^" + std::to_string(exponent);
  return out;
}

// --- subpower closure engine ---------------------------------------------------

TupleClosure subpower_generated(std::span<const FiniteAlgebra* const> factors,
                                std::vector<std::vector<int>> seeds,
                                std::vector<Term> seed_witnesses,
                                std::uint64_t max_tuples,
                                const TupleVisitor& on_new) {
  if (factors.empty()) throw precondition_error("subpower: no coordinates");
  const FiniteAlgebra& a0 = *factors[0];
  for (const FiniteAlgebra* f : factors)
    if (!same_signature(a0, *f)) throw precondition_error("subpower: factors differ in signature");
  const std::size_t coords = factors.size();
  const bool track = !seed_witnesses.empty();
  if (track && seed_witnesses.size() != seeds.size())
    throw precondition_error("subpower: witness count does not match seed count");

  TupleClosure cl;
  bool stopped = false;

  auto add = [&](std::vector<int>&& t, Term&& w) {
    if (stopped) return;
    auto it = cl.index.find(t);
    if (it != cl.index.end()) return;
    if (static_cast<std::uint64_t>(cl.members.size()) >= max_tuples)
      throw resource_limit_error("subpower closure exceeded the bound of " +
                                 std::to_string(max_tuples) + " tuples");
    const std::size_t id = cl.members.size();
    cl.index.emplace(t, id);
    cl.members.push_back(std::move(t));
    if (track) cl.witnesses.push_back(std::move(w));
    if (on_new && on_new(cl.members[id], track ? &cl.witnesses[id] : nullptr, id)) {
      stopped = true;
      cl.stopped_early = true;
    }
  };

  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (seeds[i].size() != coords)
      throw precondition_error("subpower: seed tuple length does not match coordinate count");
    add(std::move(seeds[i]), track ? std::move(seed_witnesses[i]) : Term{});
    if (stopped) return cl;
  }
  for (std::size_t oi = 0; oi < a0.ops.size(); ++oi) {
    if (a0.ops[oi].arity != 0) continue;
    std::vector<int> t(coords);
    for (std::size_t c = 0; c < coords; ++c) t[c] = factors[c]->ops[oi].table[0];
    add(std::move(t), Term::apply(a0.ops[oi].symbol, {}));
    if (stopped) return cl;
  }

  std::vector<const std::vector<int>*> args;
  std::vector<Term> child_witnesses;
  std::size_t frontier_begin = 0;
  while (frontier_begin < cl.members.size() && !stopped) {
    const std::size_t frontier_end = cl.members.size();
    for (std::size_t oi = 0; oi < a0.ops.size() && !stopped; ++oi) {
      const int k = a0.ops[oi].arity;
      if (k == 0) continue;
      // Enumerate argument index tuples over [0, frontier_end) with at least
      // one index in the frontier: partition by the first frontier position.
      for (int p = 0; p < k && !stopped; ++p) {
        std::vector<std::size_t> lo(k), hi(k);
        for (int j = 0; j < k; ++j) {
          lo[j] = (j == p) ? frontier_begin : 0;
          hi[j] = (j < p) ? frontier_begin : frontier_end;
        }
        bool empty = false;
        for (int j = 0; j < k; ++j)
          if (lo[j] >= hi[j]) empty = true;
        if (empty) continue;
        std::vector<std::size_t> idx(lo);
        while (!stopped) {
          args.clear();
          for (int j = 0; j < k; ++j) args.push_back(&cl.members[idx[j]]);
          std::vector<int> res(coords);
          for (std::size_t c = 0; c < coords; ++c) {
            const FiniteAlgebra& f = *factors[c];
            std::size_t e = 0;
            for (int j = 0; j < k; ++j)
              e = e * static_cast<std::size_t>(f.size) + static_cast<std::size_t>((*args[j])[c]);
            res[c] = f.ops[oi].table[e];
          }
          if (track) {
            child_witnesses.clear();
            for (int j = 0; j < k; ++j) child_witnesses.push_back(cl.witnesses[idx[j]]);
            add(std::move(res), Term::apply(a0.ops[oi].symbol, child_witnesses));
          } else {
            add(std::move(res), Term{});
          }
          int j = k - 1;
          while (j >= 0) {
            if (++idx[j] < hi[j]) break;
            idx[j] = lo[j];
            --j;
          }
          if (j < 0) break;
        }
      }
    }
    frontier_begin = frontier_end;
  }
  return cl;
}

TupleClosure subpower_generated(const FiniteAlgebra& a, int coords,
                                std::vector<std::vector<int>> seeds,
                                std::vector<Term> seed_witnesses,
                                std::uint64_t max_tuples,
                                const TupleVisitor& on_new) {
  std::vector<const FiniteAlgebra*> factors(static_cast<std::size_t>(coords), &a);
  return subpower_generated(factors, std::move(seeds), std::move(seed_witnesses), max_tuples,
                            on_new);
}

}  // namespace ualoc
