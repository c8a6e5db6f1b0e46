#pragma once

#include <stdexcept>
#include <string>

namespace ualoc {

// Base class for every error thrown by the library.
class error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the 1-based line number of the offending
// token.
class parse_error : public error {
 public:
  parse_error(int line, const std::string& what)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A configured resource bound was exceeded. Callers surface this as an
// "unknown" verdict, never as a yes or no.
class resource_limit_error : public error {
  using error::error;
};

// An operation was invoked outside its contract: signature mismatch, element
// out of range, missing generators, and so on.
class precondition_error : public error {
  using error::error;
};

// A property that is supposed to hold by construction failed; indicates a
// corrupted input structure or a bug.
class invariant_error : public error {
  using error::error;
};

}  // namespace ualoc
