#pragma once

#include <stdexcept>

namespace monoband {

// Unreadable or unparseable input (files, method/distribution names, malformed
// configuration). The CLI maps this to exit code 2. Numeric domain violations
// (values outside their admissible range, too few observations, ...) use
// std::domain_error, which the CLI maps to exit code 3.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace monoband
