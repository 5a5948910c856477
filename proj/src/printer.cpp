#include "pel/printer.hpp"

#include <map>
#include <set>

namespace pel {

namespace {

// Where a subterm sits, for parenthesisation. Binder bodies keep binders and
// applications bare but bracket choices, so a generator over its own choice
// reads `!a.(x +[a] y)`.
enum class Ctx { Root, BinderBody, ChoiceSide, AppFun, AppArg };

struct Names {
  std::set<std::string> used_vars;    // free names + chosen names in scope
  std::set<std::string> used_labels;
  std::map<Id, std::string> vars;     // binder id -> chosen name
  std::map<Id, std::string> labels;

  static std::string pick(const std::string& base,
                          const std::set<std::string>& used) {
    std::string want = base.empty() ? "x" : base;
    if (!used.count(want)) return want;
    for (int i = 1;; ++i) {
      std::string cand = want + std::to_string(i);
      if (!used.count(cand)) return cand;
    }
  }
};

bool needs_parens(const Term& t, Ctx ctx) {
  switch (t.kind) {
    case Kind::Var: return false;
    case Kind::Abs:
    case Kind::Gen:
      return ctx == Ctx::ChoiceSide || ctx == Ctx::AppFun || ctx == Ctx::AppArg;
    case Kind::App:
      return ctx == Ctx::AppArg;
    case Kind::Choice:
      return ctx != Ctx::Root;
  }
  return false;
}

void print_rec(const TermPtr& t, Ctx ctx, Names& ns, std::string& out) {
  bool wrap = needs_parens(*t, ctx);
  if (wrap) out += '(';
  switch (t->kind) {
    case Kind::Var: {
      auto it = t->var.bound() ? ns.vars.find(t->var.id) : ns.vars.end();
      out += it != ns.vars.end() ? it->second : t->var.name;
      break;
    }
    case Kind::Abs: {
      std::string name = Names::pick(t->var.name, ns.used_vars);
      ns.used_vars.insert(name);
      ns.vars[t->var.id] = name;
      out += '\\';
      out += name;
      out += '.';
      print_rec(t->a, Ctx::BinderBody, ns, out);
      ns.vars.erase(t->var.id);
      ns.used_vars.erase(name);
      break;
    }
    case Kind::Gen: {
      std::string name = Names::pick(t->label.name, ns.used_labels);
      ns.used_labels.insert(name);
      ns.labels[t->label.id] = name;
      out += '!';
      out += name;
      out += '.';
      print_rec(t->a, Ctx::BinderBody, ns, out);
      ns.labels.erase(t->label.id);
      ns.used_labels.erase(name);
      break;
    }
    case Kind::App:
      print_rec(t->a, Ctx::AppFun, ns, out);
      if (t->marked) out += '*';
      out += ' ';
      print_rec(t->b, Ctx::AppArg, ns, out);
      break;
    case Kind::Choice: {
      auto it =
          t->label.bound() ? ns.labels.find(t->label.id) : ns.labels.end();
      print_rec(t->a, Ctx::ChoiceSide, ns, out);
      out += " +[";
      out += it != ns.labels.end() ? it->second : t->label.name;
      out += "] ";
      print_rec(t->b, Ctx::ChoiceSide, ns, out);
      break;
    }
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print(const TermPtr& t) {
  Names ns;
  for (const Var& v : free_vars(t)) ns.used_vars.insert(v.name);
  for (const Label& l : free_labels(t)) ns.used_labels.insert(l.name);
  std::string out;
  print_rec(t, Ctx::Root, ns, out);
  return out;
}

}  // namespace pel
