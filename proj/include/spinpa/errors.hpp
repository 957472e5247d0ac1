#pragma once

#include <stdexcept>

namespace spinpa {

/// Structurally invalid input: crossing matching, label on a white face, label out of range.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Colour or arity mismatch between operands, or an operation undefined at this k.
struct ArityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace spinpa
