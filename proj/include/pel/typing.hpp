#pragma once
// Simple types and monomorphic type inference. Labels are invisible to
// types: a choice types like either branch, a generator like its body.

#include <map>
#include <memory>
#include <string>

#include "pel/errors.hpp"
#include "pel/term.hpp"

namespace pel {

struct SimpleType;
using TypePtr = std::shared_ptr<const SimpleType>;

struct SimpleType {
  enum class Kind { Atom, Arrow, Hole };
  Kind kind = Kind::Atom;
  std::string name;  // Atom
  Id hole = 0;       // Hole, only inside inference and error text
  TypePtr dom, cod;  // Arrow
};

TypePtr mk_atom(std::string name);
TypePtr mk_arrow(TypePtr dom, TypePtr cod);

bool type_eq(const TypePtr& a, const TypePtr& b);
bool type_alpha_eq(const TypePtr& a, const TypePtr& b);  // atom renaming
// ty is general with its atoms consistently replaced by types.
bool type_instance_of(const TypePtr& ty, const TypePtr& general);

// `a`, `a -> b`, `(a -> b) -> c`; the arrow associates to the right.
std::string print_type(const TypePtr& t);

// Types of the free variables, by name.
using TypeEnv = std::map<std::string, TypePtr>;

struct TypeError : Error {
  enum class Kind { Unification, Occurs, Unbound };
  TypeError(Kind kind_, Position pos_, const std::string& msg)
      : Error(msg + " at " + position_to_string(pos_)),
        kind(kind_),
        pos(std::move(pos_)) {}
  Kind kind;
  Position pos;
};

// Principal monomorphic type; unconstrained parts come back as fresh atoms
// not clashing with atoms of the environment.
TypePtr infer(const TypeEnv& env, const TermPtr& t);

// As above with an implicit environment: each free variable gets its own
// unknown, constrained only by use.
TypePtr infer(const TermPtr& t);

// Derivability of env |- t : ty, decided by matching the principal shape
// onto ty.
bool check(const TypeEnv& env, const TermPtr& t, const TypePtr& ty);

}  // namespace pel
