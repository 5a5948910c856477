#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "pel/errors.hpp"
#include "pel/parser.hpp"
#include "pel/printer.hpp"
#include "pel/term.hpp"

using namespace pel;

namespace {

TermPtr rt(const std::string& text, const ParseOptions& opts = {}) {
  return parse_term(text, opts);
}

}  // namespace

TEST_CASE("parse and print round-trip on fixed spellings") {
  // Expected strings fixed by hand from the grammar: application is left
  // associative and bare, binder bodies extend right, choices always
  // bracketed away from the root.
  std::vector<std::pair<std::string, std::string>> cases = {
      {"x", "x"},
      {"x y z", "x y z"},
      {"x (y z)", "x (y z)"},
      {"\\x.x", "\\x.x"},
      {"\\x.\\y.x y", "\\x.\\y.x y"},
      {"(\\x.x) y", "(\\x.x) y"},
      {"\\x.x y", "\\x.x y"},
      {"!a.(x +[a] y)", "!a.(x +[a] y)"},
      {"!a.((x +[a] y) +[a] z)", "!a.((x +[a] y) +[a] z)"},
      {"!a.(x +[a] (y +[a] z))", "!a.(x +[a] (y +[a] z))"},
      {"!a.!b.((x +[b] y) (z +[a] w))", "!a.!b.(x +[b] y) (z +[a] w)"},
      {"!a.(\\x.(x +[a] y))", "!a.\\x.(x +[a] y)"},
      {"(!a.(x +[a] x)) y", "(!a.(x +[a] x)) y"},
  };
  for (auto& [in, want] : cases) {
    CAPTURE(in);
    CHECK(print(rt(in)) == want);
  }
}

TEST_CASE("print is re-parseable and stable") {
  std::vector<std::string> samples = {
      "\\x.\\y.x (y x)",
      "!a.!b.((x +[a] y) +[b] (z +[a] w))",
      "(\\x.!a.(x +[a] x)) (\\y.y)",
  };
  for (const std::string& s : samples) {
    TermPtr t = rt(s);
    std::string once = print(t);
    CHECK(print(rt(once)) == once);
    CHECK(alpha_eq(t, rt(once)));
  }
}

TEST_CASE("sum sugar expands to a fresh generator over its choice") {
  TermPtr t = rt("x (+) y");
  REQUIRE(t->kind == Kind::Gen);
  REQUIRE(t->body()->kind == Kind::Choice);
  CHECK(t->label == t->body()->label);
  CHECK(alpha_eq(t, rt("!e.(x +[e] y)")));
  CHECK(label_closed(t));
}

TEST_CASE("comments and whitespace are skipped") {
  CHECK(alpha_eq(rt("\\x. x -- identity\n"), rt("\\x.x")));
  CHECK(alpha_eq(rt("  ( \\x . x )  y "), rt("(\\x.x) y")));
}

TEST_CASE("parse errors carry positions and reject free labels when closed") {
  CHECK_THROWS_AS(rt("(x"), ParseError);
  CHECK_THROWS_AS(rt("\\.x"), ParseError);
  CHECK_THROWS_AS(rt("x +"), ParseError);
  CHECK_THROWS_AS(rt("x +[a] y"), ParseError);  // free label, closed mode
  ParseOptions open;
  open.open = true;
  open.theta = {"a"};
  CHECK(rt("x +[a] y", open)->kind == Kind::Choice);
  // Open mode still rejects labels outside theta when theta is given.
  CHECK_THROWS_AS(rt("x +[b] y", open), ParseError);
}

TEST_CASE("alpha equality ignores binder names, not structure") {
  CHECK(alpha_eq(rt("\\x.x"), rt("\\y.y")));
  CHECK(alpha_eq(rt("!a.(x +[a] y)"), rt("!b.(x +[b] y)")));
  CHECK_FALSE(alpha_eq(rt("\\x.\\y.x"), rt("\\x.\\y.y")));
  CHECK_FALSE(alpha_eq(rt("x"), rt("y")));  // free names matter
  CHECK_FALSE(alpha_eq(rt("!a.(x +[a] y)"), rt("!a.(y +[a] x)")));
  CHECK(alpha_key(rt("\\x.x")) == alpha_key(rt("\\y.y")));
  CHECK(alpha_key(rt("x")) != alpha_key(rt("y")));
}

TEST_CASE("free variables and labels") {
  TermPtr t = rt("\\x.x y (!a.(z +[a] x))");
  std::set<std::string> names;
  for (const Var& v : free_vars(t)) names.insert(v.name);
  CHECK(names == std::set<std::string>{"y", "z"});
  CHECK(free_labels(t).empty());
  CHECK(label_closed(t));

  ParseOptions open;
  open.open = true;
  open.theta = {"a"};
  TermPtr u = rt("x +[a] y", open);
  CHECK(free_labels(u).size() == 1);
  CHECK(free_labels(u).begin()->name == "a");
  CHECK_FALSE(label_closed(u));
}

TEST_CASE("substitution is capture avoiding") {
  // (\y.x)[x := y] must rename the binder, not capture.
  TermPtr body = rt("\\y.x");
  Var target{0, "x"};
  TermPtr out = substitute(body, target, mk_free_var("y"));
  CHECK(alpha_eq(out, rt("\\z.y")));
  CHECK_FALSE(alpha_eq(out, rt("\\y.y")));

  // Substitution refreshes every inserted copy, keeping ids distinct.
  TermPtr dup = substitute(rt("x x"), target, rt("\\u.u"));
  CHECK(alpha_eq(dup, rt("(\\u.u) (\\u.u)")));
  REQUIRE(dup->fun()->kind == Kind::Abs);
  REQUIRE(dup->arg()->kind == Kind::Abs);
  CHECK(dup->fun()->var.id != dup->arg()->var.id);
  std::string why;
  CHECK(is_canonical(dup, nullptr, &why));
}

TEST_CASE("positions address subterms") {
  TermPtr t = rt("(\\x.x) (y z)");
  CHECK(position_to_string({}) == "root");
  CHECK(position_to_string({Dir::Arg, Dir::Fun}) == "root.arg.fun");
  CHECK(print(subterm_at(t, {Dir::Fun})) == "\\x.x");
  CHECK(print(subterm_at(t, {Dir::Arg, Dir::Fun})) == "y");
  TermPtr swapped = replace_at(t, {Dir::Arg}, mk_free_var("w"));
  CHECK(print(swapped) == "(\\x.x) w");
  CHECK(print(t) == "(\\x.x) (y z)");  // original untouched
}

TEST_CASE("refresh renames binders but preserves shape and free names") {
  TermPtr t = rt("\\x.!a.(x +[a] y)");
  TermPtr r = refresh(t);
  CHECK(alpha_eq(t, r));
  CHECK(r->var.id != t->var.id);
  CHECK(r->body()->label.id != t->body()->label.id);
  TermPtr pair = mk_app(t, r);
  std::string why;
  CHECK(is_canonical(pair, nullptr, &why));
}

TEST_CASE("canonicity rejects shared and rebound binders") {
  TermPtr inner = rt("\\x.x");
  std::string why;
  CHECK(is_canonical(inner, nullptr, &why));
  // Same binder id twice in one term.
  TermPtr shared = mk_app(inner, inner);
  CHECK_FALSE(is_canonical(shared, nullptr, &why));
  // A label rebound inside its own scope.
  Label a = fresh_label("a");
  TermPtr rebound = mk_gen(a, mk_gen(Label{a.id, "a"}, mk_free_var("x")));
  CHECK_FALSE(is_canonical(rebound, nullptr, &why));
  // A mark away from a beta redex.
  TermPtr marked = mk_app(mk_free_var("x"), mk_free_var("y"), true);
  CHECK_FALSE(is_canonical(marked, nullptr, &why));
}

TEST_CASE("label judgment tracks theta") {
  ParseOptions open;
  open.open = true;
  open.theta = {"a"};
  TermPtr u = rt("x +[a] y", open);
  CHECK(label_judgment({Label{0, "a"}}, u));
  CHECK_FALSE(label_judgment({}, u));
  CHECK(label_judgment({}, rt("!a.(x +[a] y)")));
}

TEST_CASE("label order follows generator nesting") {
  TermPtr t = rt("!a.!b.((x +[a] y) +[b] z)");
  LabelOrder ord = label_order(t);
  Label a = t->label;
  Label b = t->body()->label;
  CHECK(ord.less(a, b));
  CHECK_FALSE(ord.less(b, a));
  CHECK(ord.comparable(a, b));

  // Parallel generators are incomparable.
  TermPtr par = rt("(!a.(x +[a] x)) (!b.(y +[b] y))");
  LabelOrder pord = label_order(par);
  Label pa = par->fun()->label;
  Label pb = par->arg()->label;
  CHECK_FALSE(pord.comparable(pa, pb));
}

TEST_CASE("free labels sit below bound ones and follow theta") {
  ParseOptions open;
  open.open = true;
  open.theta = {"h", "k"};  // h innermost, k closer to the root
  TermPtr t = rt("!b.((x +[h] y) +[b] (z +[k] w))", open);
  LabelSeq theta = {Label{0, "h"}, Label{0, "k"}};
  LabelOrder ord = label_order(t, &theta);
  Label b = t->label;
  Label h{0, "h"};
  Label k{0, "k"};
  CHECK(ord.less(h, b));
  CHECK(ord.less(k, b));
  CHECK(ord.less(k, h));  // later in theta = outer closure = smaller
  CHECK_FALSE(ord.less(h, k));
}

TEST_CASE("bind_label closes exactly the named free label") {
  ParseOptions open;
  open.open = true;
  open.theta = {"a"};
  TermPtr body = rt("x +[a] (y +[a] z)", open);
  TermPtr closed = bind_label("a", body);
  REQUIRE(closed->kind == Kind::Gen);
  CHECK(label_closed(closed));
  CHECK(alpha_eq(closed, rt("!a.(x +[a] (y +[a] z))")));
}

TEST_CASE("printer renames shadowing binders instead of capturing") {
  // \x.\x.x must not print two binders with one name blurring scope.
  Var x1 = fresh_var("x");
  Var x2 = fresh_var("x");
  TermPtr t = mk_abs(x1, mk_abs(x2, mk_app(mk_var(x2), mk_var(x1))));
  std::string s = print(t);
  CHECK(s == "\\x.\\x1.x1 x");
  CHECK(alpha_eq(parse_term(s), t));
  // A binder must also dodge a visible free name.
  Var y = fresh_var("y");
  TermPtr u = mk_abs(y, mk_app(mk_var(y), mk_free_var("y")));
  std::string su = print(u);
  CHECK(su == "\\y1.y1 y");
  CHECK(alpha_eq(parse_term(su), u));
}

TEST_CASE("marks print as a display-only star") {
  TermPtr t = mk_app(parse_term("\\x.x"), mk_free_var("y"), true);
  CHECK(print(t) == "(\\x.x)* y");
  // The star is not part of the grammar.
  CHECK_THROWS_AS(parse_term("(\\x.x)* y"), ParseError);
}

TEST_CASE("term size counts nodes") {
  CHECK(term_size(rt("x")) == 1);
  CHECK(term_size(rt("x y")) == 3);
  CHECK(term_size(rt("!a.(x +[a] y)")) == 4);
}
