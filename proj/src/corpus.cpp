#include "ualoc/corpus.hpp"

#include "ualoc/errors.hpp"

namespace ualoc {

namespace {

std::vector<FiniteAlgebra> build_corpus() {
  std::vector<FiniteAlgebra> out;

  // Two-element meet-semilattice.
  out.push_back(FiniteAlgebra{"SL2", 2, {{"meet", 2, {0, 0, 0, 1}}}});

  // Three-element cycle: one unary 3-cycle.
  out.push_back(FiniteAlgebra{"C3", 3, {{"s", 1, {1, 2, 0}}}});

  // The symmetric group S3 acting on three points via two unary generators.
  out.push_back(FiniteAlgebra{"S3ACT", 3, {{"a", 1, {1, 0, 2}}, {"b", 1, {1, 2, 0}}}});

  // Affine algebra on Z3 with m(x,y,z) = x - y + z + 1 (mod 3).
  {
    OperationTable m{"m", 3, {}};
    m.table.resize(27);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y)
        for (int z = 0; z < 3; ++z)
          m.table[x * 9 + y * 3 + z] = ((x - y + z + 1) % 3 + 3) % 3;
    out.push_back(FiniteAlgebra{"Z3AFF", 3, {std::move(m)}});
  }

  // A non-separating example: the chosen idempotent e = (0,1,1) cannot tell
  // 1 and 2 apart.
  out.push_back(FiniteAlgebra{
      "NSEP", 3, {{"e", 1, {0, 1, 1}}, {"f", 2, {0, 0, 0, 0, 1, 1, 0, 1, 1}}}});

  // A separating example with two minimal idempotents of range {0,1}.
  out.push_back(FiniteAlgebra{"SEP3",
                              3,
                              {{"e", 1, {0, 1, 1}},
                               {"u", 1, {0, 1, 0}},
                               {"j", 2, {0, 2, 0, 1, 1, 1, 1, 1, 1}}}});

  for (const auto& a : out) a.validate();
  return out;
}

}  // namespace

const std::vector<FiniteAlgebra>& builtin_corpus() {
  static const std::vector<FiniteAlgebra> corpus = build_corpus();
  return corpus;
}

const FiniteAlgebra& builtin_algebra(std::string_view name) {
  for (const auto& a : builtin_corpus())
    if (a.name == name) return a;
  throw precondition_error("unknown builtin algebra '" + std::string(name) + "'");
}

}  // namespace ualoc
