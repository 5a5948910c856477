#include "pel/beta.hpp"

#include <string>

namespace pel {

namespace {

bool is_beta_redex(const TermPtr& t) {
  return t->kind == Kind::App && t->fun()->kind == Kind::Abs;
}

void collect_redexes(const TermPtr& t, Position& pos,
                     std::vector<Position>& out) {
  if (is_beta_redex(t)) out.push_back(pos);
  for (Dir d : dirs_of(t)) {
    pos.push_back(d);
    collect_redexes(child(t, d), pos, out);
    pos.pop_back();
  }
}

}  // namespace

std::vector<Position> beta_redexes(const TermPtr& t) {
  std::vector<Position> out;
  Position pos;
  collect_redexes(t, pos, out);
  return out;
}

TermPtr contract_beta_at(const TermPtr& t, const Position& pos) {
  TermPtr sub = subterm_at(t, pos);
  if (!is_beta_redex(sub))
    throw NotARedex("no beta redex at " + position_to_string(pos));
  const TermPtr& abs = sub->fun();
  return replace_at(t, pos, substitute(abs->body(), abs->var, sub->arg()));
}

std::optional<Step> step_beta(const TermPtr& t) {
  for (const Position& pos : beta_redexes(t))
    return Step{Rule::Beta, pos, t, contract_beta_at(t, pos)};
  return std::nullopt;
}

TermPtr full_labeling(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return t;
    case Kind::Abs: return mk_abs(t->var, full_labeling(t->body()));
    case Kind::App: {
      TermPtr f = full_labeling(t->fun());
      TermPtr a = full_labeling(t->arg());
      return mk_app(f, a, f->kind == Kind::Abs);
    }
    case Kind::Choice:
      return mk_choice(t->label, full_labeling(t->left()),
                       full_labeling(t->right()));
    case Kind::Gen: return mk_gen(t->label, full_labeling(t->body()));
  }
  return t;
}

TermPtr strip_marks(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return t;
    case Kind::Abs: return mk_abs(t->var, strip_marks(t->body()));
    case Kind::App:
      return mk_app(strip_marks(t->fun()), strip_marks(t->arg()));
    case Kind::Choice:
      return mk_choice(t->label, strip_marks(t->left()),
                       strip_marks(t->right()));
    case Kind::Gen: return mk_gen(t->label, strip_marks(t->body()));
  }
  return t;
}

TermPtr mark_at(const TermPtr& t, const Position& pos) {
  TermPtr sub = subterm_at(t, pos);
  if (!is_beta_redex(sub))
    throw NotARedex("no beta redex to mark at " + position_to_string(pos));
  return replace_at(t, pos, mk_app(sub->fun(), sub->arg(), true));
}

std::size_t mark_count(const TermPtr& t) {
  std::size_t n = t->kind == Kind::App && t->marked ? 1 : 0;
  for (Dir d : dirs_of(t)) n += mark_count(child(t, d));
  return n;
}

namespace {

void collect_marked_postorder(const TermPtr& t, Position& pos,
                              std::vector<Position>& out) {
  for (Dir d : dirs_of(t)) {
    pos.push_back(d);
    collect_marked_postorder(child(t, d), pos, out);
    pos.pop_back();
  }
  if (t->kind == Kind::App && t->marked) out.push_back(pos);
}

}  // namespace

std::vector<Position> marked_positions_innermost(const TermPtr& t) {
  std::vector<Position> out;
  Position pos;
  collect_marked_postorder(t, pos, out);
  return out;
}

TermPtr labeled_reduct(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return t;
    case Kind::Abs: return mk_abs(t->var, labeled_reduct(t->body()));
    case Kind::App: {
      if (t->marked && t->fun()->kind == Kind::Abs) {
        TermPtr body = labeled_reduct(t->fun()->body());
        return substitute(body, t->fun()->var, labeled_reduct(t->arg()));
      }
      return mk_app(labeled_reduct(t->fun()), labeled_reduct(t->arg()));
    }
    case Kind::Choice:
      return mk_choice(t->label, labeled_reduct(t->left()),
                       labeled_reduct(t->right()));
    case Kind::Gen: return mk_gen(t->label, labeled_reduct(t->body()));
  }
  return t;
}

TermPtr complete_reduct(const TermPtr& marked, const PermOptions& opts,
                        std::size_t max_steps) {
  return p_normalize(labeled_reduct(marked), max_steps, opts).term;
}

NormalizeResult complete_step(const TermPtr& marked, std::size_t max_steps,
                              const PermOptions& opts) {
  NormalizeResult res;
  res.term = marked;
  for (const Position& pos : marked_positions_innermost(marked)) {
    if (res.trace.size() >= max_steps)
      throw BudgetExceeded("complete step exceeded " +
                               std::to_string(max_steps) + " steps",
                           std::move(res.trace), res.term);
    TermPtr next = contract_beta_at(res.term, pos);
    res.trace.push_back(Step{Rule::Beta, pos, res.term, next});
    res.term = next;
  }
  NormalizeResult perm =
      p_normalize(res.term, max_steps - res.trace.size(), opts);
  res.term = perm.term;
  for (Step& s : perm.trace) res.trace.push_back(std::move(s));
  return res;
}

namespace {

// Marked redex whose abstraction hides a choice or generator: the pair of
// steps that floats it past the redex, keeping the mark on a beta redex.
std::optional<std::pair<Step, Step>> macro_at(const TermPtr& root,
                                              const TermPtr& sub,
                                              const Position& pos) {
  if (sub->kind != Kind::App || !sub->marked || sub->fun()->kind != Kind::Abs)
    return std::nullopt;
  const TermPtr& abs = sub->fun();
  const TermPtr& body = abs->body();
  Position fun_pos = pos;
  fun_pos.push_back(Dir::Fun);
  if (body->kind == Kind::Choice) {
    Var fresh = fresh_var(abs->var.name);
    TermPtr left_abs = mk_abs(abs->var, body->left());
    TermPtr right_abs =
        mk_abs(fresh, substitute(body->right(), abs->var, mk_var(fresh)));
    TermPtr mid = replace_at(
        root, pos,
        mk_app(mk_choice(body->label, left_abs, right_abs), sub->arg(), true));
    TermPtr out = replace_at(
        root, pos,
        mk_choice(body->label, mk_app(left_abs, sub->arg(), true),
                  mk_app(right_abs, refresh(sub->arg()), true)));
    Step s1{Rule::PlusAbs, fun_pos, root, mid};
    Step s2{Rule::PlusFun, pos, mid, out};
    return std::make_pair(std::move(s1), std::move(s2));
  }
  if (body->kind == Kind::Gen) {
    TermPtr inner_abs = mk_abs(abs->var, body->body());
    TermPtr mid = replace_at(
        root, pos, mk_app(mk_gen(body->label, inner_abs), sub->arg(), true));
    TermPtr out = replace_at(
        root, pos,
        mk_gen(body->label, mk_app(inner_abs, sub->arg(), true)));
    Step s1{Rule::BoxAbs, fun_pos, root, mid};
    Step s2{Rule::BoxFun, pos, mid, out};
    return std::make_pair(std::move(s1), std::move(s2));
  }
  return std::nullopt;
}

struct LabeledFound {
  std::vector<Step> steps;  // one ordinary step or a two-step unit
};

bool labeled_scan(const TermPtr& root, const TermPtr& sub, Position& pos,
                  const LabelOrder& order, const PermOptions& opts,
                  LabeledFound& out) {
  for (Rule r : perm_rule_priority()) {
    if (auto contractum = match_rule_at(sub, r, order, opts)) {
      out.steps.push_back(
          Step{r, pos, root, replace_at(root, pos, std::move(*contractum))});
      return true;
    }
  }
  if (auto macro = macro_at(root, sub, pos)) {
    out.steps.push_back(std::move(macro->first));
    out.steps.push_back(std::move(macro->second));
    return true;
  }
  for (Dir d : dirs_of(sub)) {
    pos.push_back(d);
    if (labeled_scan(root, child(sub, d), pos, order, opts, out)) return true;
    pos.pop_back();
  }
  return false;
}

}  // namespace

NormalizeResult labeled_p_normalize(const TermPtr& t, std::size_t max_steps,
                                    const PermOptions& opts) {
  PermOptions marked_opts = opts;
  marked_opts.respect_marks = true;
  NormalizeResult res;
  res.term = t;
  for (;;) {
    LabelOrder order = label_order(res.term, marked_opts.theta);
    LabeledFound found;
    Position pos;
    if (!labeled_scan(res.term, res.term, pos, order, marked_opts, found))
      return res;
    if (res.trace.size() + found.steps.size() > max_steps)
      throw BudgetExceeded("labeled normalisation exceeded " +
                               std::to_string(max_steps) + " steps",
                           std::move(res.trace), res.term);
    res.term = found.steps.back().after;
    for (Step& s : found.steps) res.trace.push_back(std::move(s));
  }
}

namespace {

bool full_scan(const TermPtr& root, const TermPtr& sub, Position& pos,
               const LabelOrder& order, const PermOptions& opts,
               std::optional<Step>& out) {
  for (Rule r : perm_rule_priority()) {
    if (auto contractum = match_rule_at(sub, r, order, opts)) {
      out = Step{r, pos, root, replace_at(root, pos, std::move(*contractum))};
      return true;
    }
  }
  if (is_beta_redex(sub)) {
    const TermPtr& abs = sub->fun();
    out = Step{Rule::Beta, pos, root,
               replace_at(root, pos,
                          substitute(abs->body(), abs->var, sub->arg()))};
    return true;
  }
  for (Dir d : dirs_of(sub)) {
    pos.push_back(d);
    if (full_scan(root, child(sub, d), pos, order, opts, out)) return true;
    pos.pop_back();
  }
  return false;
}

std::optional<Step> step_full(const TermPtr& t, const PermOptions& opts) {
  LabelOrder order = label_order(t, opts.theta);
  std::optional<Step> out;
  Position pos;
  full_scan(t, t, pos, order, opts, out);
  return out;
}

void account(ReduceResult& res, const Step& s) {
  if (s.rule == Rule::Beta)
    ++res.beta_steps;
  else
    ++res.perm_steps;
}

}  // namespace

ReduceResult reduce(const TermPtr& t, Strategy strat, std::size_t max_steps,
                    const PermOptions& opts) {
  ReduceResult res;
  res.term = t;
  auto over = [&] { return res.trace.size() >= max_steps; };
  auto bail = [&](const char* what) {
    throw BudgetExceeded(std::string(what) + " reduction exceeded " +
                             std::to_string(max_steps) + " steps",
                         std::move(res.trace), res.term);
  };

  switch (strat) {
    case Strategy::PermOnly: {
      NormalizeResult r = p_normalize(t, max_steps, opts);
      res.term = r.term;
      res.trace = std::move(r.trace);
      res.perm_steps = res.trace.size();
      return res;
    }
    case Strategy::LeftmostBeta:
      while (auto s = step_beta(res.term)) {
        if (over()) bail("beta");
        res.term = s->after;
        account(res, *s);
        res.trace.push_back(std::move(*s));
      }
      return res;
    case Strategy::FullLeftmost:
      while (auto s = step_full(res.term, opts)) {
        if (over()) bail("full");
        res.term = s->after;
        account(res, *s);
        res.trace.push_back(std::move(*s));
      }
      return res;
    case Strategy::Complete:
      for (;;) {
        TermPtr marked = full_labeling(res.term);
        if (mark_count(marked) == 0 && !step_perm(res.term, opts)) return res;
        NormalizeResult r;
        try {
          r = complete_step(marked, max_steps - res.trace.size(), opts);
        } catch (BudgetExceeded& e) {
          for (Step& s : e.partial) res.trace.push_back(std::move(s));
          throw BudgetExceeded(e.what(), std::move(res.trace), e.last);
        }
        res.term = r.term;
        for (Step& s : r.trace) {
          account(res, s);
          res.trace.push_back(std::move(s));
        }
      }
  }
  return res;
}

}  // namespace pel
