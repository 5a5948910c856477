#pragma once
// Call-by-name and call-by-value interpretations of the source language,
// plus call-by-value source reduction.

#include <optional>
#include <vector>

#include "pel/source.hpp"
#include "pel/term.hpp"

namespace pel {

// A translated body together with the labels it still expects, innermost
// first. The body satisfies the label judgment for theta.
struct OpenInterp {
  LabelSeq theta;
  TermPtr body;
};

// Each sum becomes a generator directly over its choice. Labels are named
// a, b, ... in postorder.
TermPtr translate_cbn(const SourcePtr& src);

// The open interpretation: sums become bare choices and their labels are
// collected in theta, the label of a sum after those of both operands.
OpenInterp translate_cbv_open(const SourcePtr& src);

// Wraps body in one generator per label of theta, head innermost. Throws
// LabelClosureError when theta repeats a label or the judgment fails.
TermPtr label_closure(const LabelSeq& theta, const TermPtr& body);

// label_closure of the open interpretation; label-closed.
TermPtr translate_cbv(const SourcePtr& src);

// One call-by-value source step, leftmost outermost. A beta step needs a
// sum-free argument and rewrites in place; a sum fires into the meta-level
// pair of whole-term branches.
struct SourceStep {
  enum class K { Beta, Split };
  K k = K::Beta;
  std::vector<int> path;  // 0 = first child, 1 = second child
  SourcePtr result;       // Beta
  SourcePtr left, right;  // Split
};

std::optional<SourceStep> source_step_v(const SourcePtr& s);

// Capture-avoiding substitution of value for the free occurrences of name.
SourcePtr subst_source(const SourcePtr& body, const std::string& name,
                       const SourcePtr& value);

SourcePtr source_subterm_at(const SourcePtr& s, const std::vector<int>& path);
SourcePtr source_replace_at(const SourcePtr& s, const std::vector<int>& path,
                            const SourcePtr& sub);

}  // namespace pel
