#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pel {

using Id = std::uint64_t;

// Global supply of binder identities. Every binder (variable or label) in
// every live term owns a distinct id; substitution and the duplicating
// rewrite rules keep it that way by refreshing the copies they make.
Id fresh_id();
void reset_fresh_ids(Id next = 1);

// A variable occurrence or binder. id == 0 marks a free variable, identified
// by name; bound variables are identified by id alone and carry the name only
// for printing.
struct Var {
  Id id = 0;
  std::string name;

  bool bound() const { return id != 0; }
  friend bool operator==(const Var& a, const Var& b) {
    return a.id == b.id && (a.id != 0 || a.name == b.name);
  }
  friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }
  friend bool operator<(const Var& a, const Var& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.id == 0 && a.name < b.name;
  }
};

// Same identity scheme for event labels.
struct Label {
  Id id = 0;
  std::string name;

  bool bound() const { return id != 0; }
  friend bool operator==(const Label& a, const Label& b) {
    return a.id == b.id && (a.id != 0 || a.name == b.name);
  }
  friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
  friend bool operator<(const Label& a, const Label& b) {
    if (a.id != b.id) return a.id < b.id;
    return a.id == 0 && a.name < b.name;
  }
};

Var fresh_var(const std::string& name);
Label fresh_label(const std::string& name);

// A generator sequence: binds the free labels of an open term, head first.
// The head is the label that would be bound by the innermost generator.
using LabelSeq = std::vector<Label>;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable term tree. Five constructors: variable, abstraction, application,
// labelled choice, label generator. Application nodes additionally carry a
// mark bit used by the parallel-reduction machinery; a set mark is only legal
// on a beta redex, i.e. an application whose function is an abstraction.
struct Term {
  enum class Kind : std::uint8_t { Var, Abs, App, Choice, Gen };

  Kind kind;
  bool marked = false;  // App only
  Var var;              // Var occurrence / Abs binder
  Label label;          // Choice / Gen
  TermPtr a;            // Abs/Gen body, App fun, Choice left
  TermPtr b;            // App arg, Choice right

  const TermPtr& body() const {
    assert(kind == Kind::Abs || kind == Kind::Gen);
    return a;
  }
  const TermPtr& fun() const {
    assert(kind == Kind::App);
    return a;
  }
  const TermPtr& arg() const {
    assert(kind == Kind::App);
    return b;
  }
  const TermPtr& left() const {
    assert(kind == Kind::Choice);
    return a;
  }
  const TermPtr& right() const {
    assert(kind == Kind::Choice);
    return b;
  }
};

using Kind = Term::Kind;

TermPtr mk_var(Var v);
TermPtr mk_free_var(const std::string& name);
TermPtr mk_abs(Var binder, TermPtr body);
TermPtr mk_app(TermPtr fun, TermPtr arg, bool marked = false);
TermPtr mk_choice(Label l, TermPtr left, TermPtr right);
TermPtr mk_gen(Label l, TermPtr body);

// ---------------------------------------------------------------- positions

enum class Dir : std::uint8_t { Body, Fun, Arg, Left, Right };

// Path from the root; empty means the root itself.
using Position = std::vector<Dir>;

std::string position_to_string(const Position& pos);
const TermPtr& child(const TermPtr& t, Dir d);
std::vector<Dir> dirs_of(const TermPtr& t);
TermPtr subterm_at(const TermPtr& t, const Position& pos);
TermPtr replace_at(const TermPtr& t, const Position& pos, TermPtr sub);

// ------------------------------------------------------------------ queries

std::size_t term_size(const TermPtr& t);
std::set<Var> free_vars(const TermPtr& t);
std::set<Label> free_labels(const TermPtr& t);
bool label_closed(const TermPtr& t);

// Structural equality up to renaming of bound variables and bound labels.
// Free occurrences match by name. Marks are compared only when requested.
bool alpha_eq(const TermPtr& x, const TermPtr& y, bool respect_marks = false);

// A string that is equal for exactly the alpha-equivalent terms. Used as a
// merge key for distributions and normal-form sets.
std::string alpha_key(const TermPtr& t, bool respect_marks = false);

// Clone with fresh ids for every binder inside t. Free occurrences, display
// names, and marks are preserved.
TermPtr refresh(const TermPtr& t);

// Capture-avoiding substitution of value for the variable target in body.
// Every inserted copy of value is refreshed, so the result stays canonical.
TermPtr substitute(const TermPtr& body, const Var& target, const TermPtr& value);

// Replace occurrences of the label from with to (choice annotations and, for
// completeness, generator binders equal to from).
TermPtr rename_label(const TermPtr& t, const Label& from, const Label& to);

// Wrap t in a generator binding the free label named name, giving it a fresh
// id. Used to build terms from open interpretations.
TermPtr bind_label(const std::string& name, const TermPtr& t);

// ----------------------------------------------------------------- validity

// Checks the representation invariants: binder ids pairwise distinct and
// nonzero, no label rebound inside its own scope, every bound occurrence in
// scope of its binder, choice labels either bound by an enclosing generator
// or free and permitted by theta, marks only on beta redexes.
bool is_canonical(const TermPtr& t, const LabelSeq* theta = nullptr,
                  std::string* why = nullptr);

// Derivability of the label judgment: choices may only use labels introduced
// by an enclosing generator or present in theta.
bool label_judgment(const LabelSeq& theta, const TermPtr& t);

// -------------------------------------------------------------- label order

// Strict order on the labels occurring in a term: a < b when the generator of
// b sits inside the scope of the generator of a. Free labels are ordered by
// the ambient sequence (later in the sequence = closer to the root = smaller)
// and sit below every bound label.
class LabelOrder {
 public:
  bool less(const Label& a, const Label& b) const;
  bool comparable(const Label& a, const Label& b) const {
    return less(a, b) || less(b, a);
  }
  std::vector<Label> labels() const;
  // Strictly smaller labels of l, innermost last.
  std::vector<Label> ancestors(const Label& l) const;

  struct Entry {
    Label label;
    std::vector<Label> above;  // enclosing generators, outermost first
    bool free = false;
    std::size_t theta_pos = 0;  // index in theta when free
  };

 private:
  friend LabelOrder label_order(const TermPtr&, const LabelSeq*);
  std::vector<Entry> entries_;
  const Entry* find(const Label& l) const;
};

LabelOrder label_order(const TermPtr& t, const LabelSeq* theta = nullptr);

}  // namespace pel
