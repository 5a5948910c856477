#include "pel/term.hpp"

#include <atomic>
#include <map>
#include <sstream>

#include "pel/errors.hpp"

namespace pel {

namespace {
std::atomic<Id> next_id{1};
}

Id fresh_id() { return next_id.fetch_add(1, std::memory_order_relaxed); }
void reset_fresh_ids(Id next) { next_id.store(next, std::memory_order_relaxed); }

Var fresh_var(const std::string& name) { return Var{fresh_id(), name}; }
Label fresh_label(const std::string& name) { return Label{fresh_id(), name}; }

TermPtr mk_var(Var v) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Var;
  t->var = std::move(v);
  return t;
}

TermPtr mk_free_var(const std::string& name) { return mk_var(Var{0, name}); }

TermPtr mk_abs(Var binder, TermPtr body) {
  assert(binder.bound());
  auto t = std::make_shared<Term>();
  t->kind = Kind::Abs;
  t->var = std::move(binder);
  t->a = std::move(body);
  return t;
}

TermPtr mk_app(TermPtr fun, TermPtr arg, bool marked) {
  assert(!marked || fun->kind == Kind::Abs);
  auto t = std::make_shared<Term>();
  t->kind = Kind::App;
  t->marked = marked;
  t->a = std::move(fun);
  t->b = std::move(arg);
  return t;
}

TermPtr mk_choice(Label l, TermPtr left, TermPtr right) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Choice;
  t->label = std::move(l);
  t->a = std::move(left);
  t->b = std::move(right);
  return t;
}

TermPtr mk_gen(Label l, TermPtr body) {
  assert(l.bound());
  auto t = std::make_shared<Term>();
  t->kind = Kind::Gen;
  t->label = std::move(l);
  t->a = std::move(body);
  return t;
}

// ---------------------------------------------------------------- positions

std::string position_to_string(const Position& pos) {
  std::string out = "root";
  for (Dir d : pos) {
    switch (d) {
      case Dir::Body: out += ".body"; break;
      case Dir::Fun: out += ".fun"; break;
      case Dir::Arg: out += ".arg"; break;
      case Dir::Left: out += ".left"; break;
      case Dir::Right: out += ".right"; break;
    }
  }
  return out;
}

const TermPtr& child(const TermPtr& t, Dir d) {
  switch (t->kind) {
    case Kind::Abs:
    case Kind::Gen:
      assert(d == Dir::Body);
      return t->a;
    case Kind::App:
      assert(d == Dir::Fun || d == Dir::Arg);
      return d == Dir::Fun ? t->a : t->b;
    case Kind::Choice:
      assert(d == Dir::Left || d == Dir::Right);
      return d == Dir::Left ? t->a : t->b;
    case Kind::Var: break;
  }
  throw NotARedex("position does not exist in term");
}

std::vector<Dir> dirs_of(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return {};
    case Kind::Abs:
    case Kind::Gen: return {Dir::Body};
    case Kind::App: return {Dir::Fun, Dir::Arg};
    case Kind::Choice: return {Dir::Left, Dir::Right};
  }
  return {};
}

TermPtr subterm_at(const TermPtr& t, const Position& pos) {
  TermPtr cur = t;
  for (Dir d : pos) cur = child(cur, d);
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Position& pos, TermPtr sub) {
  if (pos.empty()) return sub;
  Position rest(pos.begin() + 1, pos.end());
  Dir d = pos.front();
  switch (t->kind) {
    case Kind::Abs:
      return mk_abs(t->var, replace_at(t->a, rest, std::move(sub)));
    case Kind::Gen:
      return mk_gen(t->label, replace_at(t->a, rest, std::move(sub)));
    case Kind::App:
      if (d == Dir::Fun)
        return mk_app(replace_at(t->a, rest, std::move(sub)), t->b, t->marked);
      return mk_app(t->a, replace_at(t->b, rest, std::move(sub)), t->marked);
    case Kind::Choice:
      if (d == Dir::Left)
        return mk_choice(t->label, replace_at(t->a, rest, std::move(sub)), t->b);
      return mk_choice(t->label, t->a, replace_at(t->b, rest, std::move(sub)));
    case Kind::Var: break;
  }
  throw NotARedex("position does not exist in term");
}

// ------------------------------------------------------------------ queries

std::size_t term_size(const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return 1;
    case Kind::Abs:
    case Kind::Gen: return 1 + term_size(t->a);
    case Kind::App:
    case Kind::Choice: return 1 + term_size(t->a) + term_size(t->b);
  }
  return 0;
}

namespace {

void free_vars_into(const TermPtr& t, std::set<Id>& bound, std::set<Var>& out) {
  switch (t->kind) {
    case Kind::Var:
      if (!t->var.bound() || !bound.count(t->var.id)) out.insert(t->var);
      return;
    case Kind::Abs: {
      bool fresh = bound.insert(t->var.id).second;
      free_vars_into(t->a, bound, out);
      if (fresh) bound.erase(t->var.id);
      return;
    }
    case Kind::Gen:
      free_vars_into(t->a, bound, out);
      return;
    case Kind::App:
    case Kind::Choice:
      free_vars_into(t->a, bound, out);
      free_vars_into(t->b, bound, out);
      return;
  }
}

void free_labels_into(const TermPtr& t, std::set<Id>& bound,
                      std::set<Label>& out) {
  switch (t->kind) {
    case Kind::Var: return;
    case Kind::Abs:
      free_labels_into(t->a, bound, out);
      return;
    case Kind::Gen: {
      bool fresh = bound.insert(t->label.id).second;
      free_labels_into(t->a, bound, out);
      if (fresh) bound.erase(t->label.id);
      return;
    }
    case Kind::Choice:
      if (!t->label.bound() || !bound.count(t->label.id)) out.insert(t->label);
      free_labels_into(t->a, bound, out);
      free_labels_into(t->b, bound, out);
      return;
    case Kind::App:
      free_labels_into(t->a, bound, out);
      free_labels_into(t->b, bound, out);
      return;
  }
}

}  // namespace

std::set<Var> free_vars(const TermPtr& t) {
  std::set<Id> bound;
  std::set<Var> out;
  free_vars_into(t, bound, out);
  return out;
}

std::set<Label> free_labels(const TermPtr& t) {
  std::set<Id> bound;
  std::set<Label> out;
  free_labels_into(t, bound, out);
  return out;
}

bool label_closed(const TermPtr& t) { return free_labels(t).empty(); }

// ----------------------------------------------------------------- alpha_eq

namespace {

// Bound ids are matched through a bijection built at binders; free
// occurrences must agree on the name.
struct AlphaCtx {
  std::map<Id, Id> vl, vr;  // var bijection, both directions
  std::map<Id, Id> ll, lr;  // label bijection

  static bool pair_ok(std::map<Id, Id>& fwd, std::map<Id, Id>& bwd, Id x, Id y) {
    auto i = fwd.find(x);
    auto j = bwd.find(y);
    if (i == fwd.end() && j == bwd.end()) return true;
    return i != fwd.end() && j != bwd.end() && i->second == y && j->second == x;
  }

  bool var_eq(const Var& x, const Var& y) {
    if (x.bound() != y.bound()) return false;
    if (!x.bound()) return x.name == y.name;
    auto i = vl.find(x.id);
    if (i != vl.end()) return i->second == y.id && vr.count(y.id);
    // Bound outside the compared terms: identical ids only.
    return !vr.count(y.id) && x.id == y.id;
  }

  bool label_eq(const Label& x, const Label& y) {
    if (x.bound() != y.bound()) return false;
    if (!x.bound()) return x.name == y.name;
    auto i = ll.find(x.id);
    if (i != ll.end()) return i->second == y.id && lr.count(y.id);
    return !lr.count(y.id) && x.id == y.id;
  }
};

bool alpha_eq_rec(const TermPtr& x, const TermPtr& y, AlphaCtx& ctx,
                  bool marks) {
  if (x.get() == y.get() && ctx.vl.empty() && ctx.ll.empty()) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::Var:
      return ctx.var_eq(x->var, y->var);
    case Kind::Abs: {
      if (!AlphaCtx::pair_ok(ctx.vl, ctx.vr, x->var.id, y->var.id)) return false;
      auto il = ctx.vl.emplace(x->var.id, y->var.id);
      auto ir = ctx.vr.emplace(y->var.id, x->var.id);
      bool ok = alpha_eq_rec(x->a, y->a, ctx, marks);
      if (il.second) ctx.vl.erase(x->var.id);
      if (ir.second) ctx.vr.erase(y->var.id);
      return ok;
    }
    case Kind::Gen: {
      if (!AlphaCtx::pair_ok(ctx.ll, ctx.lr, x->label.id, y->label.id))
        return false;
      auto il = ctx.ll.emplace(x->label.id, y->label.id);
      auto ir = ctx.lr.emplace(y->label.id, x->label.id);
      bool ok = alpha_eq_rec(x->a, y->a, ctx, marks);
      if (il.second) ctx.ll.erase(x->label.id);
      if (ir.second) ctx.lr.erase(y->label.id);
      return ok;
    }
    case Kind::App:
      if (marks && x->marked != y->marked) return false;
      return alpha_eq_rec(x->a, y->a, ctx, marks) &&
             alpha_eq_rec(x->b, y->b, ctx, marks);
    case Kind::Choice:
      if (!ctx.label_eq(x->label, y->label)) return false;
      return alpha_eq_rec(x->a, y->a, ctx, marks) &&
             alpha_eq_rec(x->b, y->b, ctx, marks);
  }
  return false;
}

}  // namespace

bool alpha_eq(const TermPtr& x, const TermPtr& y, bool respect_marks) {
  AlphaCtx ctx;
  return alpha_eq_rec(x, y, ctx, respect_marks);
}

namespace {

void alpha_key_rec(const TermPtr& t, std::map<Id, std::size_t>& vars,
                   std::map<Id, std::size_t>& labels, bool marks,
                   std::string& out) {
  switch (t->kind) {
    case Kind::Var:
      if (t->var.bound() && vars.count(t->var.id)) {
        out += 'v';
        out += std::to_string(vars.at(t->var.id));
      } else if (t->var.bound()) {
        out += "x#";
        out += std::to_string(t->var.id);
      } else {
        out += 'f';
        out += t->var.name;
        out += ';';
      }
      return;
    case Kind::Abs: {
      std::size_t n = vars.size() + labels.size();
      auto it = vars.emplace(t->var.id, n);
      out += "(\\";
      out += std::to_string(n);
      out += '.';
      alpha_key_rec(t->a, vars, labels, marks, out);
      out += ')';
      if (it.second) vars.erase(t->var.id);
      return;
    }
    case Kind::Gen: {
      std::size_t n = vars.size() + labels.size();
      auto it = labels.emplace(t->label.id, n);
      out += "(!";
      out += std::to_string(n);
      out += '.';
      alpha_key_rec(t->a, vars, labels, marks, out);
      out += ')';
      if (it.second) labels.erase(t->label.id);
      return;
    }
    case Kind::App:
      out += marks && t->marked ? "(*" : "(@";
      alpha_key_rec(t->a, vars, labels, marks, out);
      out += ' ';
      alpha_key_rec(t->b, vars, labels, marks, out);
      out += ')';
      return;
    case Kind::Choice:
      out += "(+";
      if (t->label.bound() && labels.count(t->label.id)) {
        out += std::to_string(labels.at(t->label.id));
      } else if (t->label.bound()) {
        out += "l#";
        out += std::to_string(t->label.id);
      } else {
        out += 'f';
        out += t->label.name;
      }
      out += ' ';
      alpha_key_rec(t->a, vars, labels, marks, out);
      out += ' ';
      alpha_key_rec(t->b, vars, labels, marks, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string alpha_key(const TermPtr& t, bool respect_marks) {
  std::map<Id, std::size_t> vars, labels;
  std::string out;
  alpha_key_rec(t, vars, labels, respect_marks, out);
  return out;
}

// -------------------------------------------------------- refresh and subst

namespace {

TermPtr refresh_rec(const TermPtr& t, std::map<Id, Id>& vmap,
                    std::map<Id, Id>& lmap) {
  switch (t->kind) {
    case Kind::Var: {
      auto it = t->var.bound() ? vmap.find(t->var.id) : vmap.end();
      if (it == vmap.end()) return t;
      return mk_var(Var{it->second, t->var.name});
    }
    case Kind::Abs: {
      Id id = fresh_id();
      vmap[t->var.id] = id;
      return mk_abs(Var{id, t->var.name}, refresh_rec(t->a, vmap, lmap));
    }
    case Kind::Gen: {
      Id id = fresh_id();
      lmap[t->label.id] = id;
      return mk_gen(Label{id, t->label.name}, refresh_rec(t->a, vmap, lmap));
    }
    case Kind::App:
      return mk_app(refresh_rec(t->a, vmap, lmap), refresh_rec(t->b, vmap, lmap),
                    t->marked);
    case Kind::Choice: {
      Label l = t->label;
      if (l.bound()) {
        auto it = lmap.find(l.id);
        if (it != lmap.end()) l = Label{it->second, l.name};
      }
      return mk_choice(l, refresh_rec(t->a, vmap, lmap),
                       refresh_rec(t->b, vmap, lmap));
    }
  }
  return t;
}

}  // namespace

TermPtr refresh(const TermPtr& t) {
  std::map<Id, Id> vmap, lmap;
  return refresh_rec(t, vmap, lmap);
}

TermPtr substitute(const TermPtr& body, const Var& target,
                   const TermPtr& value) {
  switch (body->kind) {
    case Kind::Var:
      if (body->var == target) return refresh(value);
      return body;
    case Kind::Abs: {
      if (body->var == target) return body;  // shadowed (free-name targets)
      return mk_abs(body->var, substitute(body->a, target, value));
    }
    case Kind::Gen:
      return mk_gen(body->label, substitute(body->a, target, value));
    case Kind::App:
      return mk_app(substitute(body->a, target, value),
                    substitute(body->b, target, value), body->marked);
    case Kind::Choice:
      return mk_choice(body->label, substitute(body->a, target, value),
                       substitute(body->b, target, value));
  }
  return body;
}

TermPtr rename_label(const TermPtr& t, const Label& from, const Label& to) {
  switch (t->kind) {
    case Kind::Var: return t;
    case Kind::Abs:
      return mk_abs(t->var, rename_label(t->a, from, to));
    case Kind::Gen:
      if (t->label == from) return mk_gen(to, rename_label(t->a, from, to));
      return mk_gen(t->label, rename_label(t->a, from, to));
    case Kind::App:
      return mk_app(rename_label(t->a, from, to), rename_label(t->b, from, to),
                    t->marked);
    case Kind::Choice: {
      Label l = t->label == from ? to : t->label;
      return mk_choice(l, rename_label(t->a, from, to),
                       rename_label(t->b, from, to));
    }
  }
  return t;
}

TermPtr bind_label(const std::string& name, const TermPtr& t) {
  Label free{0, name};
  Label bound = fresh_label(name);
  return mk_gen(bound, rename_label(t, free, bound));
}

// ----------------------------------------------------------------- validity

namespace {

struct CanonCtx {
  std::set<Id> seen_binders;
  std::set<Id> vars_in_scope;
  std::set<Id> labels_in_scope;
  std::set<std::string> theta_names;
  bool has_theta = false;
  std::string problem;

  bool fail(const std::string& why) {
    if (problem.empty()) problem = why;
    return false;
  }
};

bool canonical_rec(const TermPtr& t, CanonCtx& ctx) {
  switch (t->kind) {
    case Kind::Var:
      if (t->var.bound() && !ctx.vars_in_scope.count(t->var.id))
        return ctx.fail("bound variable occurrence outside its binder: " +
                        t->var.name);
      return true;
    case Kind::Abs: {
      if (!t->var.bound()) return ctx.fail("abstraction binder with id 0");
      if (!ctx.seen_binders.insert(t->var.id).second)
        return ctx.fail("duplicate binder id for variable " + t->var.name);
      ctx.vars_in_scope.insert(t->var.id);
      bool ok = canonical_rec(t->a, ctx);
      ctx.vars_in_scope.erase(t->var.id);
      return ok;
    }
    case Kind::Gen: {
      if (!t->label.bound()) return ctx.fail("generator binder with id 0");
      if (!ctx.seen_binders.insert(t->label.id).second)
        return ctx.fail("duplicate binder id for label " + t->label.name);
      ctx.labels_in_scope.insert(t->label.id);
      bool ok = canonical_rec(t->a, ctx);
      ctx.labels_in_scope.erase(t->label.id);
      return ok;
    }
    case Kind::App:
      if (t->marked && t->a->kind != Kind::Abs)
        return ctx.fail("mark on an application that is not a beta redex");
      return canonical_rec(t->a, ctx) && canonical_rec(t->b, ctx);
    case Kind::Choice: {
      if (t->label.bound()) {
        if (!ctx.labels_in_scope.count(t->label.id))
          return ctx.fail("choice label " + t->label.name +
                          " has no enclosing generator");
      } else if (!ctx.has_theta || !ctx.theta_names.count(t->label.name)) {
        return ctx.fail("free choice label " + t->label.name +
                        " not covered by the ambient label sequence");
      }
      return canonical_rec(t->a, ctx) && canonical_rec(t->b, ctx);
    }
  }
  return true;
}

}  // namespace

bool is_canonical(const TermPtr& t, const LabelSeq* theta, std::string* why) {
  CanonCtx ctx;
  if (theta) {
    ctx.has_theta = true;
    for (const Label& l : *theta) ctx.theta_names.insert(l.name);
  }
  bool ok = canonical_rec(t, ctx);
  if (!ok && why) *why = ctx.problem;
  return ok;
}

bool label_judgment(const LabelSeq& theta, const TermPtr& t) {
  switch (t->kind) {
    case Kind::Var: return true;
    case Kind::Abs: return label_judgment(theta, t->a);
    case Kind::Gen: {
      LabelSeq inner;
      inner.reserve(theta.size() + 1);
      inner.push_back(t->label);
      inner.insert(inner.end(), theta.begin(), theta.end());
      return label_judgment(inner, t->a);
    }
    case Kind::App:
      return label_judgment(theta, t->a) && label_judgment(theta, t->b);
    case Kind::Choice: {
      bool found = false;
      for (const Label& l : theta)
        if (l == t->label) {
          found = true;
          break;
        }
      return found && label_judgment(theta, t->a) &&
             label_judgment(theta, t->b);
    }
  }
  return false;
}

// -------------------------------------------------------------- label order

const LabelOrder::Entry* LabelOrder::find(const Label& l) const {
  for (const Entry& e : entries_)
    if (e.label == l) return &e;
  return nullptr;
}

bool LabelOrder::less(const Label& a, const Label& b) const {
  if (a == b) return false;
  const Entry* ea = find(a);
  const Entry* eb = find(b);
  if (!ea || !eb) return false;
  if (ea->free && eb->free) return ea->theta_pos > eb->theta_pos;
  if (ea->free) return true;   // ambient generators enclose the whole term
  if (eb->free) return false;
  for (const Label& anc : eb->above)
    if (anc == a) return true;
  return false;
}

std::vector<Label> LabelOrder::labels() const {
  std::vector<Label> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.label);
  return out;
}

std::vector<Label> LabelOrder::ancestors(const Label& l) const {
  const Entry* e = find(l);
  if (!e) return {};
  return e->above;
}

namespace {

void order_rec(const TermPtr& t, std::vector<Label>& stack,
               std::vector<LabelOrder::Entry>& entries) {
  switch (t->kind) {
    case Kind::Var: return;
    case Kind::Abs:
      order_rec(t->a, stack, entries);
      return;
    case Kind::Gen: {
      LabelOrder::Entry e;
      e.label = t->label;
      e.above = stack;
      entries.push_back(std::move(e));
      stack.push_back(t->label);
      order_rec(t->a, stack, entries);
      stack.pop_back();
      return;
    }
    case Kind::App:
    case Kind::Choice:
      order_rec(t->a, stack, entries);
      order_rec(t->b, stack, entries);
      return;
  }
}

}  // namespace

LabelOrder label_order(const TermPtr& t, const LabelSeq* theta) {
  LabelOrder order;
  std::vector<Label> stack;
  std::vector<Label> prefix;
  if (theta) {
    for (std::size_t i = 0; i < theta->size(); ++i) {
      LabelOrder::Entry e;
      e.label = (*theta)[i];
      e.free = true;
      e.theta_pos = i;
      order.entries_.push_back(std::move(e));
      prefix.push_back((*theta)[i]);
    }
  }
  order_rec(t, stack, order.entries_);
  // Bound generators sit inside every ambient generator.
  if (theta) {
    // ancestors of bound entries gain the theta labels, outermost first:
    // later theta entries are closer to the root.
    std::vector<Label> ambient(prefix.rbegin(), prefix.rend());
    for (auto& e : order.entries_) {
      if (e.free) continue;
      std::vector<Label> above = ambient;
      above.insert(above.end(), e.above.begin(), e.above.end());
      e.above = std::move(above);
    }
  }
  return order;
}

}  // namespace pel
