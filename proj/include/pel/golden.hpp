#pragma once
// The worked overview example: Church booleans, an equality test applied to
// a fair coin, and its two translations. Tests and the CLI share these so
// the binaries stay self-contained.

#include <string>

#include "pel/source.hpp"
#include "pel/term.hpp"

namespace pel::golden {

const char* intro_source_text();
SourcePtr intro_source();
TermPtr intro_cbn();
TermPtr intro_cbv();

TermPtr church_true();
TermPtr church_false();

// Full leftmost trace of the call-by-value translation, one line per step,
// ending in the term it reaches.
std::string intro_cbv_trace();

}  // namespace pel::golden
