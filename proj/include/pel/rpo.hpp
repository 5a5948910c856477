#pragma once
// Recursive-path-order certificates for permutative steps.
//
// Terms are read as first-order trees: each choice and each generator
// carries its label as part of its symbol, each abstraction its binder,
// application is a lone binary symbol, and object variables act as rpo
// variables. The precedence puts choice symbols below everything else,
// ordered among themselves by the label order of the term being rewritten,
// and generator symbols below application and abstraction. Every
// permutative rule contracts strictly under the resulting order, which
// certify_perm_step checks instance by instance.

#include <set>
#include <string>

#include "pel/perm.hpp"
#include "pel/term.hpp"

namespace pel {

struct SigSymbol {
  enum class K { Lam, App, Choice, Gen };
  K k = K::App;
  Label label;  // Choice and Gen only
  Var var;      // Lam only

  friend bool operator==(const SigSymbol& a, const SigSymbol& b) {
    return a.k == b.k && a.label == b.label && a.var == b.var;
  }
  friend bool operator<(const SigSymbol& a, const SigSymbol& b) {
    if (a.k != b.k) return a.k < b.k;
    if (!(a.label == b.label)) return a.label < b.label;
    return a.var < b.var;
  }
};

// All non-variable symbols occurring in t.
std::set<SigSymbol> signature_of(const TermPtr& t);

// The symbol precedence induced by a term's label order. Stated over a
// signature in which every choice label also has its generator symbol, so
// choices sit transitively below application and abstraction even when the
// generator itself lives outside the compared subterms.
class Precedence {
 public:
  explicit Precedence(LabelOrder order) : order_(std::move(order)) {}
  bool less(const SigSymbol& f, const SigSymbol& g) const;  // f strictly below g
  const LabelOrder& labels() const { return order_; }

 private:
  LabelOrder order_;
};

Precedence precedence_of(const TermPtr& t, const LabelSeq* theta = nullptr);

// Strict comparison n <rpo m under prec. Marks are ignored.
bool rpo_less(const TermPtr& n, const TermPtr& m, const Precedence& prec);

struct StepCertificate {
  bool ok = false;
  std::string detail;  // reason for failure, empty when ok
};

// Re-derives the contractum of s without freshening, so both sides share
// binder ids and hence symbols, and checks redex >rpo contractum under the
// precedence of the whole term before the step. The rpo is closed under
// contexts, so the local decrease certifies the whole-term step. opts
// should carry the same theta and mark handling as the run that produced s.
StepCertificate certify_perm_step(const Step& s, const PermOptions& opts = {});

}  // namespace pel
