#include "pel/typing.hpp"

#include <set>
#include <vector>

namespace pel {

TypePtr mk_atom(std::string name) {
  auto t = std::make_shared<SimpleType>();
  t->kind = SimpleType::Kind::Atom;
  t->name = std::move(name);
  return t;
}

TypePtr mk_arrow(TypePtr dom, TypePtr cod) {
  auto t = std::make_shared<SimpleType>();
  t->kind = SimpleType::Kind::Arrow;
  t->dom = std::move(dom);
  t->cod = std::move(cod);
  return t;
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SimpleType::Kind::Atom: return a->name == b->name;
    case SimpleType::Kind::Hole: return a->hole == b->hole;
    case SimpleType::Kind::Arrow:
      return type_eq(a->dom, b->dom) && type_eq(a->cod, b->cod);
  }
  return false;
}

namespace {

bool alpha_eq_types(const TypePtr& a, const TypePtr& b,
                    std::map<std::string, std::string>& ab,
                    std::map<std::string, std::string>& ba) {
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SimpleType::Kind::Atom: {
      auto [it, fresh] = ab.emplace(a->name, b->name);
      if (!fresh && it->second != b->name) return false;
      auto [jt, fresh2] = ba.emplace(b->name, a->name);
      return fresh2 ? true : jt->second == a->name;
    }
    case SimpleType::Kind::Hole: return a->hole == b->hole;
    case SimpleType::Kind::Arrow:
      return alpha_eq_types(a->dom, b->dom, ab, ba) &&
             alpha_eq_types(a->cod, b->cod, ab, ba);
  }
  return false;
}

bool match_type(const TypePtr& pattern, const TypePtr& ty,
                std::map<std::string, TypePtr>& binding) {
  switch (pattern->kind) {
    case SimpleType::Kind::Atom: {
      auto [it, fresh] = binding.emplace(pattern->name, ty);
      return fresh || type_eq(it->second, ty);
    }
    case SimpleType::Kind::Hole: return false;  // no holes in public types
    case SimpleType::Kind::Arrow:
      return ty->kind == SimpleType::Kind::Arrow &&
             match_type(pattern->dom, ty->dom, binding) &&
             match_type(pattern->cod, ty->cod, binding);
  }
  return false;
}

}  // namespace

bool type_alpha_eq(const TypePtr& a, const TypePtr& b) {
  std::map<std::string, std::string> ab, ba;
  return alpha_eq_types(a, b, ab, ba);
}

bool type_instance_of(const TypePtr& ty, const TypePtr& general) {
  std::map<std::string, TypePtr> binding;
  return match_type(general, ty, binding);
}

std::string print_type(const TypePtr& t) {
  switch (t->kind) {
    case SimpleType::Kind::Atom: return t->name;
    case SimpleType::Kind::Hole: return "?" + std::to_string(t->hole);
    case SimpleType::Kind::Arrow: {
      std::string dom = print_type(t->dom);
      if (t->dom->kind == SimpleType::Kind::Arrow) dom = "(" + dom + ")";
      return dom + " -> " + print_type(t->cod);
    }
  }
  return "?";
}

namespace {

struct Infer {
  const TypeEnv& env;
  bool auto_bind = false;
  std::map<Id, TypePtr> subst;             // hole id -> type
  std::map<Id, TypePtr> bound;             // binder id -> type
  std::map<std::string, TypePtr> free_types;  // auto-bound free variables
  Id next_hole = 1;

  explicit Infer(const TypeEnv& e) : env(e) {}

  TypePtr hole() {
    auto t = std::make_shared<SimpleType>();
    t->kind = SimpleType::Kind::Hole;
    t->hole = next_hole++;
    return t;
  }

  TypePtr resolve(TypePtr t) const {
    while (t->kind == SimpleType::Kind::Hole) {
      auto it = subst.find(t->hole);
      if (it == subst.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(Id h, const TypePtr& raw) const {
    TypePtr t = resolve(raw);
    switch (t->kind) {
      case SimpleType::Kind::Hole: return t->hole == h;
      case SimpleType::Kind::Atom: return false;
      case SimpleType::Kind::Arrow:
        return occurs(h, t->dom) || occurs(h, t->cod);
    }
    return false;
  }

  void unify(const TypePtr& ra, const TypePtr& rb, const Position& pos) {
    TypePtr a = resolve(ra);
    TypePtr b = resolve(rb);
    if (a->kind == SimpleType::Kind::Hole) {
      if (b->kind == SimpleType::Kind::Hole && b->hole == a->hole) return;
      if (occurs(a->hole, b))
        throw TypeError(TypeError::Kind::Occurs, pos,
                        "occurs check: " + print_type(zonk(a)) +
                            " inside " + print_type(zonk(b)));
      subst[a->hole] = b;
      return;
    }
    if (b->kind == SimpleType::Kind::Hole) {
      unify(b, a, pos);
      return;
    }
    if (a->kind == SimpleType::Kind::Atom &&
        b->kind == SimpleType::Kind::Atom && a->name == b->name)
      return;
    if (a->kind == SimpleType::Kind::Arrow &&
        b->kind == SimpleType::Kind::Arrow) {
      unify(a->dom, b->dom, pos);
      unify(a->cod, b->cod, pos);
      return;
    }
    throw TypeError(TypeError::Kind::Unification, pos,
                    "cannot unify " + print_type(zonk(a)) + " with " +
                        print_type(zonk(b)));
  }

  TypePtr zonk(const TypePtr& raw) const {
    TypePtr t = resolve(raw);
    if (t->kind == SimpleType::Kind::Arrow)
      return mk_arrow(zonk(t->dom), zonk(t->cod));
    return t;
  }

  TypePtr go(const TermPtr& t, Position& pos) {
    switch (t->kind) {
      case Kind::Var: {
        if (t->var.bound()) {
          auto it = bound.find(t->var.id);
          if (it != bound.end()) return it->second;
        } else {
          auto it = env.find(t->var.name);
          if (it != env.end()) return it->second;
          if (auto_bind) {
            auto [jt, fresh] = free_types.emplace(t->var.name, nullptr);
            if (fresh) jt->second = hole();
            return jt->second;
          }
        }
        throw TypeError(TypeError::Kind::Unbound, pos,
                        "no type for variable " + t->var.name);
      }
      case Kind::Abs: {
        TypePtr h = hole();
        bound[t->var.id] = h;
        pos.push_back(Dir::Body);
        TypePtr body = go(t->body(), pos);
        pos.pop_back();
        return mk_arrow(h, body);
      }
      case Kind::App: {
        pos.push_back(Dir::Fun);
        TypePtr f = go(t->fun(), pos);
        pos.pop_back();
        pos.push_back(Dir::Arg);
        TypePtr a = go(t->arg(), pos);
        pos.pop_back();
        TypePtr h = hole();
        unify(f, mk_arrow(a, h), pos);
        return h;
      }
      case Kind::Choice: {
        pos.push_back(Dir::Left);
        TypePtr l = go(t->left(), pos);
        pos.pop_back();
        pos.push_back(Dir::Right);
        TypePtr r = go(t->right(), pos);
        pos.pop_back();
        unify(l, r, pos);
        return l;
      }
      case Kind::Gen: {
        pos.push_back(Dir::Body);
        TypePtr b = go(t->body(), pos);
        pos.pop_back();
        return b;
      }
    }
    throw TypeError(TypeError::Kind::Unification, pos, "unreachable");
  }
};

void collect_atoms(const TypePtr& t, std::set<std::string>& out) {
  switch (t->kind) {
    case SimpleType::Kind::Atom: out.insert(t->name); break;
    case SimpleType::Kind::Hole: break;
    case SimpleType::Kind::Arrow:
      collect_atoms(t->dom, out);
      collect_atoms(t->cod, out);
      break;
  }
}

// Leftover holes become atoms a, b, ... in order of first appearance,
// skipping names the type or environment already uses.
TypePtr name_holes(const TypePtr& t, std::map<Id, TypePtr>& names,
                   std::set<std::string>& used) {
  switch (t->kind) {
    case SimpleType::Kind::Atom: return t;
    case SimpleType::Kind::Hole: {
      auto it = names.find(t->hole);
      if (it != names.end()) return it->second;
      std::string picked;
      for (int i = 0;; ++i) {
        picked = i < 26 ? std::string(1, static_cast<char>('a' + i))
                        : "t" + std::to_string(i - 25);
        if (!used.count(picked)) break;
      }
      used.insert(picked);
      TypePtr atom = mk_atom(picked);
      names.emplace(t->hole, atom);
      return atom;
    }
    case SimpleType::Kind::Arrow: {
      // Two mutating calls: sequence them, argument order is unspecified.
      TypePtr dom = name_holes(t->dom, names, used);
      TypePtr cod = name_holes(t->cod, names, used);
      return mk_arrow(dom, cod);
    }
  }
  return t;
}

}  // namespace

namespace {

TypePtr run_infer(const TypeEnv& env, const TermPtr& t, bool auto_bind) {
  Infer in(env);
  in.auto_bind = auto_bind;
  Position pos;
  TypePtr raw = in.zonk(in.go(t, pos));
  std::set<std::string> used;
  collect_atoms(raw, used);
  for (const auto& [name, ty] : env) collect_atoms(ty, used);
  std::map<Id, TypePtr> names;
  return name_holes(raw, names, used);
}

}  // namespace

TypePtr infer(const TypeEnv& env, const TermPtr& t) {
  return run_infer(env, t, false);
}

TypePtr infer(const TermPtr& t) {
  static const TypeEnv empty;
  return run_infer(empty, t, true);
}

bool check(const TypeEnv& env, const TermPtr& t, const TypePtr& ty) {
  Infer in(env);
  Position pos;
  TypePtr raw;
  try {
    raw = in.zonk(in.go(t, pos));
  } catch (const TypeError&) {
    return false;
  }
  // Holes of the principal shape are the match variables here.
  std::map<Id, TypePtr> binding;
  struct M {
    std::map<Id, TypePtr>& binding;
    bool go(const TypePtr& pattern, const TypePtr& target) {
      if (pattern->kind == SimpleType::Kind::Hole) {
        auto [it, fresh] = binding.emplace(pattern->hole, target);
        return fresh || type_eq(it->second, target);
      }
      if (pattern->kind != target->kind) return false;
      if (pattern->kind == SimpleType::Kind::Atom)
        return pattern->name == target->name;
      return go(pattern->dom, target->dom) && go(pattern->cod, target->cod);
    }
  } m{binding};
  return m.go(raw, ty);
}

}  // namespace pel
