#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ualoc {

// Runs one CLI command. Exit codes: 0 success / verdict true, 1 verdict
// false, 2 usage or parse error, 3 resource bound ("unknown").
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ualoc
