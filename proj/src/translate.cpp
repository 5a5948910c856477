#include "pel/translate.hpp"

#include <map>
#include <set>

#include "pel/errors.hpp"

namespace pel {

SourcePtr sv(const std::string& name) {
  auto s = std::make_shared<SourceTerm>();
  s->kind = SourceTerm::Kind::Var;
  s->var = name;
  return s;
}

SourcePtr sabs(const std::string& binder, SourcePtr body) {
  auto s = std::make_shared<SourceTerm>();
  s->kind = SourceTerm::Kind::Abs;
  s->var = binder;
  s->a = std::move(body);
  return s;
}

SourcePtr sapp(SourcePtr fun, SourcePtr arg) {
  auto s = std::make_shared<SourceTerm>();
  s->kind = SourceTerm::Kind::App;
  s->a = std::move(fun);
  s->b = std::move(arg);
  return s;
}

SourcePtr ssum(SourcePtr left, SourcePtr right) {
  auto s = std::make_shared<SourceTerm>();
  s->kind = SourceTerm::Kind::Sum;
  s->a = std::move(left);
  s->b = std::move(right);
  return s;
}

std::size_t source_size(const SourcePtr& s) {
  switch (s->kind) {
    case SourceTerm::Kind::Var: return 1;
    case SourceTerm::Kind::Abs: return 1 + source_size(s->a);
    case SourceTerm::Kind::App:
    case SourceTerm::Kind::Sum:
      return 1 + source_size(s->a) + source_size(s->b);
  }
  return 1;
}

namespace {

bool source_eq_rec(const SourcePtr& x, const SourcePtr& y,
                   std::vector<std::string>& envx,
                   std::vector<std::string>& envy) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case SourceTerm::Kind::Var: {
      for (std::size_t i = envx.size(); i-- > 0;) {
        bool hitx = envx[i] == x->var;
        bool hity = envy[i] == y->var;
        if (hitx || hity) return hitx && hity;
      }
      return x->var == y->var;  // both free
    }
    case SourceTerm::Kind::Abs: {
      envx.push_back(x->var);
      envy.push_back(y->var);
      bool ok = source_eq_rec(x->a, y->a, envx, envy);
      envx.pop_back();
      envy.pop_back();
      return ok;
    }
    case SourceTerm::Kind::App:
    case SourceTerm::Kind::Sum:
      return source_eq_rec(x->a, y->a, envx, envy) &&
             source_eq_rec(x->b, y->b, envx, envy);
  }
  return false;
}

}  // namespace

bool source_eq(const SourcePtr& x, const SourcePtr& y) {
  std::vector<std::string> envx, envy;
  return source_eq_rec(x, y, envx, envy);
}

bool is_value(const SourcePtr& s) {
  switch (s->kind) {
    case SourceTerm::Kind::Var: return true;
    case SourceTerm::Kind::Abs: return is_value(s->a);
    case SourceTerm::Kind::App: return is_value(s->a) && is_value(s->b);
    case SourceTerm::Kind::Sum: return false;
  }
  return false;
}

namespace {

enum class SrcCtx { Root, BinderBody, SumSide, AppFun, AppArg };

bool src_needs_parens(const SourcePtr& s, SrcCtx ctx) {
  switch (s->kind) {
    case SourceTerm::Kind::Var: return false;
    case SourceTerm::Kind::Abs:
      return ctx == SrcCtx::SumSide || ctx == SrcCtx::AppFun ||
             ctx == SrcCtx::AppArg;
    case SourceTerm::Kind::App: return ctx == SrcCtx::AppArg;
    case SourceTerm::Kind::Sum: return ctx != SrcCtx::Root;
  }
  return false;
}

void print_source_rec(const SourcePtr& s, SrcCtx ctx, std::string& out) {
  bool parens = src_needs_parens(s, ctx);
  if (parens) out += '(';
  switch (s->kind) {
    case SourceTerm::Kind::Var:
      out += s->var;
      break;
    case SourceTerm::Kind::Abs:
      out += '\\';
      out += s->var;
      out += '.';
      print_source_rec(s->a, SrcCtx::BinderBody, out);
      break;
    case SourceTerm::Kind::App:
      print_source_rec(s->a, SrcCtx::AppFun, out);
      out += ' ';
      print_source_rec(s->b, SrcCtx::AppArg, out);
      break;
    case SourceTerm::Kind::Sum:
      print_source_rec(s->a, SrcCtx::SumSide, out);
      out += " (+) ";
      print_source_rec(s->b, SrcCtx::SumSide, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_source(const SourcePtr& s) {
  std::string out;
  print_source_rec(s, SrcCtx::Root, out);
  return out;
}

namespace {

// Shared by both translations: scoped variable lookup and postorder label
// names a, b, c, ...
struct Translator {
  std::map<std::string, std::vector<Var>> scope;
  int labels_used = 0;

  std::string next_label_name() {
    int i = labels_used++;
    return i < 26 ? std::string(1, static_cast<char>('a' + i))
                  : "l" + std::to_string(i);
  }

  TermPtr var(const std::string& name) {
    auto it = scope.find(name);
    if (it != scope.end() && !it->second.empty())
      return mk_var(it->second.back());
    return mk_free_var(name);
  }

  TermPtr cbn(const SourcePtr& s) {
    switch (s->kind) {
      case SourceTerm::Kind::Var: return var(s->var);
      case SourceTerm::Kind::Abs: {
        Var v = fresh_var(s->var);
        scope[s->var].push_back(v);
        TermPtr body = cbn(s->a);
        scope[s->var].pop_back();
        return mk_abs(v, body);
      }
      case SourceTerm::Kind::App: {
        TermPtr f = cbn(s->a);
        return mk_app(std::move(f), cbn(s->b));
      }
      case SourceTerm::Kind::Sum: {
        TermPtr l = cbn(s->a);
        TermPtr r = cbn(s->b);
        Label lbl = fresh_label(next_label_name());
        return mk_gen(lbl, mk_choice(lbl, l, r));
      }
    }
    return nullptr;
  }

  OpenInterp cbv(const SourcePtr& s) {
    switch (s->kind) {
      case SourceTerm::Kind::Var: return {{}, var(s->var)};
      case SourceTerm::Kind::Abs: {
        Var v = fresh_var(s->var);
        scope[s->var].push_back(v);
        OpenInterp body = cbv(s->a);
        scope[s->var].pop_back();
        return {std::move(body.theta), mk_abs(v, body.body)};
      }
      case SourceTerm::Kind::App: {
        OpenInterp f = cbv(s->a);
        OpenInterp a = cbv(s->b);
        LabelSeq theta = std::move(a.theta);
        theta.insert(theta.end(), f.theta.begin(), f.theta.end());
        return {std::move(theta), mk_app(f.body, a.body)};
      }
      case SourceTerm::Kind::Sum: {
        OpenInterp l = cbv(s->a);
        OpenInterp r = cbv(s->b);
        Label lbl{0, next_label_name()};
        LabelSeq theta = std::move(r.theta);
        theta.insert(theta.end(), l.theta.begin(), l.theta.end());
        theta.push_back(lbl);
        return {std::move(theta), mk_choice(lbl, l.body, r.body)};
      }
    }
    return {{}, nullptr};
  }
};

}  // namespace

TermPtr translate_cbn(const SourcePtr& src) {
  Translator tr;
  return tr.cbn(src);
}

OpenInterp translate_cbv_open(const SourcePtr& src) {
  Translator tr;
  return tr.cbv(src);
}

TermPtr label_closure(const LabelSeq& theta, const TermPtr& body) {
  std::set<std::string> seen;
  for (const Label& l : theta)
    if (!seen.insert(l.name).second)
      throw LabelClosureError("label " + l.name + " repeats in the closure");
  if (!label_judgment(theta, body))
    throw LabelClosureError("body does not satisfy the label judgment");
  TermPtr out = body;
  for (const Label& l : theta) out = bind_label(l.name, out);
  return out;
}

TermPtr translate_cbv(const SourcePtr& src) {
  OpenInterp open = translate_cbv_open(src);
  return label_closure(open.theta, open.body);
}

namespace {

void free_source_vars_into(const SourcePtr& s, std::vector<std::string>& env,
                           std::set<std::string>& out) {
  switch (s->kind) {
    case SourceTerm::Kind::Var: {
      for (std::size_t i = env.size(); i-- > 0;)
        if (env[i] == s->var) return;
      out.insert(s->var);
      return;
    }
    case SourceTerm::Kind::Abs:
      env.push_back(s->var);
      free_source_vars_into(s->a, env, out);
      env.pop_back();
      return;
    case SourceTerm::Kind::App:
    case SourceTerm::Kind::Sum:
      free_source_vars_into(s->a, env, out);
      free_source_vars_into(s->b, env, out);
      return;
  }
}

std::set<std::string> free_source_vars(const SourcePtr& s) {
  std::vector<std::string> env;
  std::set<std::string> out;
  free_source_vars_into(s, env, out);
  return out;
}

std::string fresh_source_name(const std::string& base,
                              const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace

SourcePtr subst_source(const SourcePtr& body, const std::string& name,
                       const SourcePtr& value) {
  switch (body->kind) {
    case SourceTerm::Kind::Var:
      return body->var == name ? value : body;
    case SourceTerm::Kind::Abs: {
      if (body->var == name) return body;
      std::set<std::string> fv = free_source_vars(value);
      if (fv.count(body->var)) {
        std::set<std::string> avoid = std::move(fv);
        for (const std::string& v : free_source_vars(body->a)) avoid.insert(v);
        avoid.insert(name);
        std::string renamed = fresh_source_name(body->var, avoid);
        SourcePtr fresh_body = subst_source(body->a, body->var, sv(renamed));
        return sabs(renamed, subst_source(fresh_body, name, value));
      }
      return sabs(body->var, subst_source(body->a, name, value));
    }
    case SourceTerm::Kind::App:
      return sapp(subst_source(body->a, name, value),
                  subst_source(body->b, name, value));
    case SourceTerm::Kind::Sum:
      return ssum(subst_source(body->a, name, value),
                  subst_source(body->b, name, value));
  }
  return body;
}

SourcePtr source_subterm_at(const SourcePtr& s, const std::vector<int>& path) {
  SourcePtr cur = s;
  for (int d : path) cur = d == 0 ? cur->a : cur->b;
  return cur;
}

SourcePtr source_replace_at(const SourcePtr& s, const std::vector<int>& path,
                            const SourcePtr& sub) {
  if (path.empty()) return sub;
  std::vector<int> rest(path.begin() + 1, path.end());
  if (path.front() == 0) {
    SourcePtr na = source_replace_at(s->a, rest, sub);
    switch (s->kind) {
      case SourceTerm::Kind::Abs: return sabs(s->var, na);
      case SourceTerm::Kind::App: return sapp(na, s->b);
      case SourceTerm::Kind::Sum: return ssum(na, s->b);
      default: break;
    }
  } else {
    SourcePtr nb = source_replace_at(s->b, rest, sub);
    switch (s->kind) {
      case SourceTerm::Kind::App: return sapp(s->a, nb);
      case SourceTerm::Kind::Sum: return ssum(s->a, nb);
      default: break;
    }
  }
  return s;
}

namespace {

bool find_step_v(const SourcePtr& s, std::vector<int>& path,
                 SourceStep& out) {
  if (s->kind == SourceTerm::Kind::Sum) {
    out.k = SourceStep::K::Split;
    out.path = path;
    return true;
  }
  if (s->kind == SourceTerm::Kind::App &&
      s->a->kind == SourceTerm::Kind::Abs && is_value(s->b)) {
    out.k = SourceStep::K::Beta;
    out.path = path;
    return true;
  }
  if (s->kind == SourceTerm::Kind::Abs) {
    path.push_back(0);
    if (find_step_v(s->a, path, out)) return true;
    path.pop_back();
    return false;
  }
  if (s->kind == SourceTerm::Kind::App) {
    path.push_back(0);
    if (find_step_v(s->a, path, out)) return true;
    path.pop_back();
    path.push_back(1);
    if (find_step_v(s->b, path, out)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

std::optional<SourceStep> source_step_v(const SourcePtr& s) {
  SourceStep step;
  std::vector<int> path;
  if (!find_step_v(s, path, step)) return std::nullopt;
  SourcePtr sub = source_subterm_at(s, step.path);
  if (step.k == SourceStep::K::Beta) {
    step.result = source_replace_at(
        s, step.path, subst_source(sub->a->a, sub->a->var, sub->b));
  } else {
    step.left = source_replace_at(s, step.path, sub->a);
    step.right = source_replace_at(s, step.path, sub->b);
  }
  return step;
}

}  // namespace pel
