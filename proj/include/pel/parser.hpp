#pragma once

#include <string>
#include <vector>

#include "pel/source.hpp"
#include "pel/term.hpp"

namespace pel {

// Surface grammar, shared by both term flavours:
//
//   term    := binder | choice
//   binder  := '\' IDENT '.' term | '!' IDENT '.' term
//   choice  := operand (('+[' IDENT ']' | '(+)') operand)*   (left assoc)
//   operand := atom+ [binder] | binder                       (left assoc app)
//   atom    := IDENT | '(' term ')'
//
// '--' starts a comment running to end of line. A binder body extends as far
// right as possible. '(+)' abbreviates a fresh generator over a choice on
// that generator's label.
struct ParseOptions {
  bool open = false;                // allow free labels
  std::vector<std::string> theta;   // names a free label may use
};

TermPtr parse_term(const std::string& text, const ParseOptions& opts = {});

// Source flavour: '(+)' is the probabilistic sum; '!a.' and '+[a]' are
// rejected.
SourcePtr parse_source(const std::string& text);

}  // namespace pel
