#pragma once

#include <memory>
#include <string>

#include "pel/term.hpp"

namespace pel {

struct SourceTerm;
using SourcePtr = std::shared_ptr<const SourceTerm>;

// Call-by-value source language: plain lambda terms plus a binary
// probabilistic sum. No labels and no generators; those appear only after
// translation.
struct SourceTerm {
  enum class Kind : std::uint8_t { Var, Abs, App, Sum };

  Kind kind;
  std::string var;  // Var occurrence / Abs binder (names, not ids)
  SourcePtr a;      // Abs body, App fun, Sum left
  SourcePtr b;      // App arg, Sum right
};

SourcePtr sv(const std::string& name);
SourcePtr sabs(const std::string& binder, SourcePtr body);
SourcePtr sapp(SourcePtr fun, SourcePtr arg);
SourcePtr ssum(SourcePtr left, SourcePtr right);

std::size_t source_size(const SourcePtr& s);
bool source_eq(const SourcePtr& x, const SourcePtr& y);  // up to binder names

// Values are the sum-free terms.
bool is_value(const SourcePtr& s);

std::string print_source(const SourcePtr& s);

}  // namespace pel
