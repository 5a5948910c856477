#include "pel/perm.hpp"

#include "pel/printer.hpp"

namespace pel {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Beta: return "beta";
    case Rule::Idem: return "idem";
    case Rule::CancelL: return "cancelL";
    case Rule::CancelR: return "cancelR";
    case Rule::PlusAbs: return "plusAbs";
    case Rule::PlusFun: return "plusFun";
    case Rule::PlusArg: return "plusArg";
    case Rule::PlusL: return "plusL";
    case Rule::PlusR: return "plusR";
    case Rule::PlusBox: return "plusBox";
    case Rule::BoxVoid: return "boxVoid";
    case Rule::BoxAbs: return "boxAbs";
    case Rule::BoxFun: return "boxFun";
  }
  return "?";
}

bool is_perm_rule(Rule r) { return r != Rule::Beta; }

const std::vector<Rule>& perm_rule_priority() {
  static const std::vector<Rule> order = {
      Rule::Idem,    Rule::CancelL, Rule::CancelR, Rule::PlusAbs,
      Rule::PlusFun, Rule::PlusArg, Rule::PlusL,   Rule::PlusR,
      Rule::PlusBox, Rule::BoxVoid, Rule::BoxAbs,  Rule::BoxFun,
  };
  return order;
}

std::string format_step(const Step& s) {
  return std::string(rule_name(s.rule)) + " @ " + position_to_string(s.pos) +
         " : " + print(s.after);
}

namespace {

TermPtr maybe_refresh(const TermPtr& t, const PermOptions& opts) {
  return opts.refresh ? refresh(t) : t;
}

// Duplicate-binder variants: the two copies of an abstraction or generator
// binder must not share an id, so the right copy is rebuilt around a fresh
// one (unless the caller asked for the verbatim first-order contractum).
TermPtr copy_abs(const Var& binder, const TermPtr& body,
                 const PermOptions& opts) {
  if (!opts.refresh) return mk_abs(binder, body);
  Var fresh = fresh_var(binder.name);
  return mk_abs(fresh, substitute(body, binder, mk_var(fresh)));
}

TermPtr copy_gen(const Label& binder, const TermPtr& body,
                 const PermOptions& opts) {
  if (!opts.refresh) return mk_gen(binder, body);
  Label fresh = fresh_label(binder.name);
  return mk_gen(fresh, rename_label(body, binder, fresh));
}

}  // namespace

std::optional<TermPtr> match_rule_at(const TermPtr& sub, Rule r,
                                     const LabelOrder& order,
                                     const PermOptions& opts) {
  switch (r) {
    case Rule::Beta:
      return std::nullopt;

    case Rule::Idem:
      if (sub->kind == Kind::Choice &&
          alpha_eq(sub->left(), sub->right(), opts.respect_marks))
        return sub->left();
      return std::nullopt;

    case Rule::CancelL:
      if (sub->kind == Kind::Choice && sub->left()->kind == Kind::Choice &&
          sub->left()->label == sub->label)
        return mk_choice(sub->label, sub->left()->left(), sub->right());
      return std::nullopt;

    case Rule::CancelR:
      if (sub->kind == Kind::Choice && sub->right()->kind == Kind::Choice &&
          sub->right()->label == sub->label)
        return mk_choice(sub->label, sub->left(), sub->right()->right());
      return std::nullopt;

    case Rule::PlusAbs:
      if (sub->kind == Kind::Abs && sub->body()->kind == Kind::Choice) {
        const TermPtr& c = sub->body();
        return mk_choice(c->label, mk_abs(sub->var, c->left()),
                         copy_abs(sub->var, c->right(), opts));
      }
      return std::nullopt;

    case Rule::PlusFun:
      if (sub->kind == Kind::App && sub->fun()->kind == Kind::Choice) {
        const TermPtr& c = sub->fun();
        return mk_choice(c->label, mk_app(c->left(), sub->arg()),
                         mk_app(c->right(), maybe_refresh(sub->arg(), opts)));
      }
      return std::nullopt;

    case Rule::PlusArg:
      if (sub->kind == Kind::App && sub->arg()->kind == Kind::Choice) {
        const TermPtr& c = sub->arg();
        return mk_choice(
            c->label, mk_app(sub->fun(), c->left(), sub->marked),
            mk_app(maybe_refresh(sub->fun(), opts), c->right(), sub->marked));
      }
      return std::nullopt;

    case Rule::PlusL:
      if (sub->kind == Kind::Choice && sub->left()->kind == Kind::Choice &&
          sub->left()->label != sub->label) {
        const Label& a = sub->left()->label;
        const Label& b = sub->label;
        if (!order.comparable(a, b))
          throw IncomparableLabels("plusL compares unordered labels " +
                                   a.name + ", " + b.name);
        if (!order.less(a, b)) return std::nullopt;
        const TermPtr& inner = sub->left();
        return mk_choice(
            a, mk_choice(b, inner->left(), sub->right()),
            mk_choice(b, inner->right(), maybe_refresh(sub->right(), opts)));
      }
      return std::nullopt;

    case Rule::PlusR:
      if (sub->kind == Kind::Choice && sub->right()->kind == Kind::Choice &&
          sub->right()->label != sub->label) {
        const Label& a = sub->right()->label;
        const Label& b = sub->label;
        if (!order.comparable(a, b))
          throw IncomparableLabels("plusR compares unordered labels " +
                                   a.name + ", " + b.name);
        if (!order.less(a, b)) return std::nullopt;
        const TermPtr& inner = sub->right();
        return mk_choice(
            a, mk_choice(b, sub->left(), inner->left()),
            mk_choice(b, maybe_refresh(sub->left(), opts), inner->right()));
      }
      return std::nullopt;

    case Rule::PlusBox:
      if (sub->kind == Kind::Gen && sub->body()->kind == Kind::Choice &&
          sub->body()->label != sub->label) {
        const TermPtr& c = sub->body();
        return mk_choice(c->label, mk_gen(sub->label, c->left()),
                         copy_gen(sub->label, c->right(), opts));
      }
      return std::nullopt;

    case Rule::BoxVoid:
      if (sub->kind == Kind::Gen && !free_labels(sub->body()).count(sub->label))
        return sub->body();
      return std::nullopt;

    case Rule::BoxAbs:
      if (sub->kind == Kind::Abs && sub->body()->kind == Kind::Gen) {
        const TermPtr& g = sub->body();
        return mk_gen(g->label, mk_abs(sub->var, g->body()));
      }
      return std::nullopt;

    case Rule::BoxFun:
      if (sub->kind == Kind::App && sub->fun()->kind == Kind::Gen) {
        const TermPtr& g = sub->fun();
        return mk_gen(g->label, mk_app(g->body(), sub->arg()));
      }
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

bool scan(const TermPtr& root, const TermPtr& sub, Position& pos,
          const LabelOrder& order, const PermOptions& opts,
          std::vector<Step>& out, bool first_only) {
  for (Rule r : perm_rule_priority()) {
    if (auto contractum = match_rule_at(sub, r, order, opts)) {
      out.push_back(
          Step{r, pos, root, replace_at(root, pos, std::move(*contractum))});
      if (first_only) return true;
    }
  }
  for (Dir d : dirs_of(sub)) {
    pos.push_back(d);
    if (scan(root, child(sub, d), pos, order, opts, out, first_only) &&
        first_only)
      return true;
    pos.pop_back();
  }
  return !out.empty();
}

}  // namespace

std::optional<TermPtr> try_rule(const TermPtr& t, Rule r, const Position& pos,
                                const PermOptions& opts) {
  if (!is_perm_rule(r)) return std::nullopt;
  LabelOrder order = label_order(t, opts.theta);
  return match_rule_at(subterm_at(t, pos), r, order, opts);
}

std::optional<Step> step_perm(const TermPtr& t, const PermOptions& opts) {
  LabelOrder order = label_order(t, opts.theta);
  std::vector<Step> out;
  Position pos;
  scan(t, t, pos, order, opts, out, true);
  if (out.empty()) return std::nullopt;
  return out.front();
}

std::vector<Step> all_perm_steps(const TermPtr& t, const PermOptions& opts) {
  LabelOrder order = label_order(t, opts.theta);
  std::vector<Step> out;
  Position pos;
  scan(t, t, pos, order, opts, out, false);
  return out;
}

NormalizeResult p_normalize(const TermPtr& t, std::size_t max_steps,
                            const PermOptions& opts) {
  NormalizeResult res;
  res.term = t;
  while (auto s = step_perm(res.term, opts)) {
    if (res.trace.size() >= max_steps)
      throw BudgetExceeded("permutative normalisation exceeded " +
                               std::to_string(max_steps) + " steps",
                           std::move(res.trace), res.term);
    res.term = s->after;
    res.trace.push_back(std::move(*s));
  }
  return res;
}

namespace {

// The outer-sum shape: a generator immediately over a choice on its own
// label, the label not used further down.
bool is_osum(const TermPtr& t) {
  return t->kind == Kind::Gen && t->body()->kind == Kind::Choice &&
         t->body()->label == t->label &&
         !free_labels(t->body()->left()).count(t->label) &&
         !free_labels(t->body()->right()).count(t->label);
}

bool in_p1(const TermPtr& t);

bool in_p0(const TermPtr& t) {
  if (is_osum(t))
    return in_p0(t->body()->left()) && in_p0(t->body()->right());
  return in_p1(t);
}

bool in_p1(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return true;
    case Kind::Abs: return in_p1(t->body());
    case Kind::App: return in_p1(t->fun()) && in_p0(t->arg());
    default: return false;
  }
}

bool in_n2(const TermPtr& t);
bool in_n0(const TermPtr& t);

bool in_n1(const TermPtr& t) {
  if (t->kind == Kind::Abs) return in_n1(t->body());
  return in_n2(t);
}

bool in_n2(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return true;
    case Kind::App: return in_n2(t->fun()) && in_n0(t->arg());
    default: return false;
  }
}

bool in_n0(const TermPtr& t) {
  if (is_osum(t)) return in_n0(t->body()->left()) && in_n0(t->body()->right());
  return in_n1(t);
}

}  // namespace

NormalClass classify_normal_form(const TermPtr& t) {
  if (step_perm(t).has_value()) return NormalClass::Neither;
  if (in_n0(t)) return NormalClass::N0;
  if (in_p0(t)) return NormalClass::P0;
  return NormalClass::Neither;
}

bool is_p_normal(const TermPtr& t) {
  return classify_normal_form(t) != NormalClass::Neither;
}

}  // namespace pel
