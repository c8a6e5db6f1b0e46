#pragma once

#include <string_view>
#include <vector>

#include "ualoc/algebra.hpp"

namespace ualoc {

// The built-in corpus: SL2, C3, S3ACT, Z3AFF, NSEP, SEP3.
const std::vector<FiniteAlgebra>& builtin_corpus();

// Throws precondition_error on an unknown name.
const FiniteAlgebra& builtin_algebra(std::string_view name);

}  // namespace ualoc
