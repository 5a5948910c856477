#include "pel/rpo.hpp"

#include <vector>

#include "pel/printer.hpp"

namespace pel {

namespace {

SigSymbol sym_of(const TermPtr& t) {
  SigSymbol s;
  switch (t->kind) {
    case Kind::Abs:
      s.k = SigSymbol::K::Lam;
      s.var = t->var;
      break;
    case Kind::App:
      s.k = SigSymbol::K::App;
      break;
    case Kind::Choice:
      s.k = SigSymbol::K::Choice;
      s.label = t->label;
      break;
    case Kind::Gen:
      s.k = SigSymbol::K::Gen;
      s.label = t->label;
      break;
    case Kind::Var:
      break;  // variables are handled before symbol lookup
  }
  return s;
}

std::vector<TermPtr> args_of(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return {};
    case Kind::Abs:
    case Kind::Gen: return {t->body()};
    case Kind::App: return {t->fun(), t->arg()};
    case Kind::Choice: return {t->left(), t->right()};
  }
  return {};
}

// Structural equality on ids; marks are not part of the first-order reading.
bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Var: return a->var == b->var;
    case Kind::Abs:
      return a->var == b->var && term_eq(a->body(), b->body());
    case Kind::App:
      return term_eq(a->fun(), b->fun()) && term_eq(a->arg(), b->arg());
    case Kind::Choice:
      return a->label == b->label && term_eq(a->left(), b->left()) &&
             term_eq(a->right(), b->right());
    case Kind::Gen:
      return a->label == b->label && term_eq(a->body(), b->body());
  }
  return false;
}

bool occurs_var(const TermPtr& t, const Var& v) {
  switch (t->kind) {
    case Kind::Var: return t->var == v;
    case Kind::Abs:
    case Kind::Gen: return occurs_var(t->body(), v);
    case Kind::App: return occurs_var(t->fun(), v) || occurs_var(t->arg(), v);
    case Kind::Choice:
      return occurs_var(t->left(), v) || occurs_var(t->right(), v);
  }
  return false;
}

bool rpo_greater(const TermPtr& t, const TermPtr& s, const Precedence& prec);

// Multiset extension of the strict order: strip pairwise-equal elements,
// then every survivor on the small side must sit below some survivor on
// the large side, and the large side must keep at least one element.
bool multiset_greater(std::vector<TermPtr> big, std::vector<TermPtr> small,
                      const Precedence& prec) {
  for (auto it = big.begin(); it != big.end();) {
    bool removed = false;
    for (auto jt = small.begin(); jt != small.end(); ++jt) {
      if (term_eq(*it, *jt)) {
        small.erase(jt);
        it = big.erase(it);
        removed = true;
        break;
      }
    }
    if (!removed) ++it;
  }
  if (big.empty()) return false;
  for (const TermPtr& s : small) {
    bool dominated = false;
    for (const TermPtr& b : big) {
      if (rpo_greater(b, s, prec)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

bool rpo_greater(const TermPtr& t, const TermPtr& s, const Precedence& prec) {
  if (term_eq(t, s)) return false;
  if (t->kind == Kind::Var) return false;
  if (s->kind == Kind::Var) return occurs_var(t, s->var);

  std::vector<TermPtr> targs = args_of(t);
  for (const TermPtr& u : targs)
    if (term_eq(u, s) || rpo_greater(u, s, prec)) return true;

  SigSymbol f = sym_of(t);
  SigSymbol g = sym_of(s);
  std::vector<TermPtr> sargs = args_of(s);
  if (f == g) return multiset_greater(targs, sargs, prec);
  if (prec.less(g, f)) {
    for (const TermPtr& v : sargs)
      if (!rpo_greater(t, v, prec)) return false;
    return true;
  }
  return false;
}

void signature_into(const TermPtr& t, std::set<SigSymbol>& out) {
  if (t->kind != Kind::Var) out.insert(sym_of(t));
  for (const TermPtr& c : args_of(t)) signature_into(c, out);
}

}  // namespace

std::set<SigSymbol> signature_of(const TermPtr& t) {
  std::set<SigSymbol> out;
  signature_into(t, out);
  return out;
}

bool Precedence::less(const SigSymbol& f, const SigSymbol& g) const {
  switch (f.k) {
    case SigSymbol::K::Choice:
      if (g.k == SigSymbol::K::Choice)
        return !(f.label == g.label) && order_.less(f.label, g.label);
      return true;
    case SigSymbol::K::Gen:
      return g.k == SigSymbol::K::App || g.k == SigSymbol::K::Lam;
    case SigSymbol::K::App:
    case SigSymbol::K::Lam:
      return false;
  }
  return false;
}

Precedence precedence_of(const TermPtr& t, const LabelSeq* theta) {
  return Precedence(label_order(t, theta));
}

bool rpo_less(const TermPtr& n, const TermPtr& m, const Precedence& prec) {
  return rpo_greater(m, n, prec);
}

StepCertificate certify_perm_step(const Step& s, const PermOptions& opts) {
  StepCertificate cert;
  if (!is_perm_rule(s.rule)) {
    cert.detail = "not a permutative rule";
    return cert;
  }
  PermOptions raw = opts;
  raw.refresh = false;
  std::optional<TermPtr> contractum;
  try {
    contractum = try_rule(s.before, s.rule, s.pos, raw);
  } catch (const IncomparableLabels& e) {
    cert.detail = e.what();
    return cert;
  }
  if (!contractum) {
    cert.detail = std::string("rule ") + rule_name(s.rule) +
                  " does not apply at " + position_to_string(s.pos);
    return cert;
  }
  if (!alpha_eq(replace_at(s.before, s.pos, *contractum), s.after,
                opts.respect_marks)) {
    cert.detail = "recorded result differs from the derived contractum";
    return cert;
  }
  TermPtr redex = subterm_at(s.before, s.pos);
  Precedence prec = precedence_of(s.before, opts.theta);
  if (!rpo_less(*contractum, redex, prec)) {
    cert.detail = "contractum is not rpo-smaller than the redex: " +
                  print(*contractum) + " vs " + print(redex);
    return cert;
  }
  cert.ok = true;
  return cert;
}

}  // namespace pel
