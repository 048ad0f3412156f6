#pragma once

#include <stdexcept>
#include <string>

namespace mdkit {

// Malformed input: bad ids, self-loops, schema violations, unsatisfied
// preconditions. The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured resource cap (node budget, enumeration cap) was hit before an
// answer was established. Never a wrong answer; the CLI maps this to exit 3.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mdkit
