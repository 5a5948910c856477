#pragma once

#include <string>

#include "pel/term.hpp"

namespace pel {

// Concrete syntax, re-parseable by parse_term. Binders that would shadow or
// capture a visible name are shown with a numeric suffix. Marked redexes
// render as `(\x.M)* N`; the mark star is display-only and not parsed back.
std::string print(const TermPtr& t);

}  // namespace pel
