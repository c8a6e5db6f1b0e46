#pragma once

#include <string_view>

namespace ualoc {

// Tri-state outcome. "unknown" records that a resource bound was hit; it is
// never folded into yes or no.
enum class Verdict { yes, no, unknown };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "yes";
    case Verdict::no:
      return "no";
    default:
      return "unknown";
  }
}

}  // namespace ualoc
