#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ualoc/algebra.hpp"

namespace ualoc {

// Parses the line-oriented algebra format:
//
//   # comment
//   algebra NAME
//   size N
//   op SYMBOL ARITY
//   <N^ARITY whitespace-separated values, row-major, last argument fastest>
//   end
//
// Multiple blocks per file. Errors carry line numbers.
std::vector<FiniteAlgebra> parse_algebras(std::string_view text);

std::string render_algebra(const FiniteAlgebra& a);
std::string render_algebras(std::span<const FiniteAlgebra> algebras);

}  // namespace ualoc
