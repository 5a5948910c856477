#pragma once

#include <stdexcept>
#include <string>

namespace pel {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error in an input file. Line and column are 1-based.
struct ParseError : Error {
  ParseError(std::string msg, int line_, int col_)
      : Error(std::move(msg)), line(line_), col(col_) {}
  int line = 0;
  int col = 0;
};

// A `+[a]` without an enclosing `!a.` (and no ambient label sequence that
// would bind it), or a term that fails its label judgment.
struct LabelClosureError : Error {
  using Error::Error;
};

// Internal invariant breach: a rewrite side condition had to compare two
// labels the label order leaves incomparable. Should be unreachable for
// label-closed canonical terms.
struct IncomparableLabels : Error {
  using Error::Error;
};

// Asked to rewrite at a position where the rule does not match.
struct NotARedex : Error {
  using Error::Error;
};

// An operation with a normal-form precondition was handed something else.
struct NotNormalForm : Error {
  using Error::Error;
};

// The typed-term sampler ran out of retries for the requested shape.
struct GenerationExhausted : Error {
  using Error::Error;
};

}  // namespace pel
