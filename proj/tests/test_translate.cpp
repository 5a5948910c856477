#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "pel/errors.hpp"
#include "pel/harness.hpp"
#include "pel/parser.hpp"
#include "pel/printer.hpp"
#include "pel/source.hpp"
#include "pel/term.hpp"
#include "pel/translate.hpp"
#include "pel/typing.hpp"

using namespace pel;

namespace {

SourcePtr sp(const std::string& text) { return parse_source(text); }

TermPtr rt(const std::string& text) { return parse_term(text); }

TermPtr ro(const std::string& text, std::vector<std::string> theta) {
  ParseOptions opts;
  opts.open = true;
  opts.theta = std::move(theta);
  return parse_term(text, opts);
}

}  // namespace

TEST_CASE("source surface syntax round-trips") {
  std::vector<std::string> texts = {
      "x",
      "\\x.x",
      "x (+) y",
      "\\x.(x (+) y)",
      "(x (+) y) z",
      "(\\x.x) (+) (\\y.y)",
      "x (+) y (+) z",
      "f x y",
      "f (x y)",
  };
  for (const std::string& text : texts) {
    CAPTURE(text);
    SourcePtr s = sp(text);
    CHECK(source_eq(sp(print_source(s)), s));
  }
  // Left-nested sums keep their brackets in the canonical spelling.
  CHECK(print_source(sp("x (+) y (+) z")) == "(x (+) y) (+) z");
  CHECK(source_eq(sp("x (+) y (+) z"), ssum(ssum(sv("x"), sv("y")), sv("z"))));
  CHECK(print_source(sp("\\x.x (+) y")) == "\\x.(x (+) y)");
  CHECK(print_source(sp("(x (+) y) z")) == "(x (+) y) z");

  CHECK_THROWS_AS(sp("!a.x"), ParseError);
  CHECK_THROWS_AS(sp("x +[a] y"), ParseError);
  CHECK_THROWS_AS(sp("x (+)"), ParseError);

  // source_eq ignores binder names, not free names.
  CHECK(source_eq(sp("\\x.x"), sp("\\y.y")));
  CHECK_FALSE(source_eq(sp("x"), sp("y")));
  CHECK_FALSE(source_eq(sp("\\x.x"), sp("\\x.y")));
}

TEST_CASE("values are the sum-free terms") {
  CHECK(is_value(sp("x")));
  CHECK(is_value(sp("\\x.x")));
  CHECK(is_value(sp("x y")));
  CHECK(is_value(sp("(\\x.x) (\\y.y)")));  // redexes are still values
  CHECK_FALSE(is_value(sp("x (+) y")));
  CHECK_FALSE(is_value(sp("\\x.(x (+) y)")));
  CHECK_FALSE(is_value(sp("z (x (+) y)")));
}

TEST_CASE("call-by-name translation boxes each sum in place") {
  TermPtr one = translate_cbn(sp("x (+) y"));
  CHECK(alpha_eq(one, rt("!a.(x +[a] y)")));
  CHECK(one->label.name == "a");
  CHECK(one->body()->label == one->label);
  CHECK(label_closed(one));
  std::string why;
  CHECK(is_canonical(one, nullptr, &why));

  // Labels are named in postorder: inner sums first.
  TermPtr nested = translate_cbn(sp("(x (+) y) (+) z"));
  CHECK(alpha_eq(nested, rt("!b.((!a.(x +[a] y)) +[b] z)")));
  CHECK(nested->label.name == "b");
  CHECK(nested->body()->left()->label.name == "a");

  TermPtr app = translate_cbn(sp("(\\x.x x) (y (+) z)"));
  CHECK(alpha_eq(app, rt("(\\x.x x) (!a.(y +[a] z))")));
}

TEST_CASE("call-by-value translation floats all labels to one closure") {
  OpenInterp open = translate_cbv_open(sp("x (+) y"));
  REQUIRE(open.theta.size() == 1);
  CHECK(open.theta[0].name == "a");
  CHECK(open.body->kind == Kind::Choice);
  CHECK(open.body->label == open.theta[0]);
  CHECK(alpha_eq(translate_cbv(sp("x (+) y")), rt("!a.(x +[a] y)")));

  // theta lists the argument's labels before the function's, and a sum's
  // own label after both operands'; the closure binds head innermost.
  OpenInterp nested = translate_cbv_open(sp("(x (+) y) (+) z"));
  REQUIRE(nested.theta.size() == 2);
  CHECK(nested.theta[0].name == "a");
  CHECK(nested.theta[1].name == "b");
  CHECK(print(translate_cbv(sp("(x (+) y) (+) z"))) ==
        "!b.!a.((x +[a] y) +[b] z)");

  OpenInterp two = translate_cbv_open(sp("(x (+) y) (w (+) z)"));
  REQUIRE(two.theta.size() == 2);
  CHECK(two.theta[0].name == "b");  // argument sum, translated second
  CHECK(two.theta[1].name == "a");
  CHECK(print(translate_cbv(sp("(x (+) y) (w (+) z)"))) ==
        "!a.!b.(x +[a] y) (w +[b] z)");

  TermPtr app = translate_cbv(sp("(\\x.x x) (y (+) z)"));
  CHECK(alpha_eq(app, rt("!a.((\\x.x x) (y +[a] z))")));
  CHECK(label_closed(app));
  std::string why;
  CHECK(is_canonical(app, nullptr, &why));
}

TEST_CASE("label_closure enforces distinct names and the judgment") {
  TermPtr body = ro("x +[a] y", {"a"});
  LabelSeq theta = {Label{0, "a"}};
  CHECK(alpha_eq(label_closure(theta, body), rt("!a.(x +[a] y)")));

  LabelSeq dup = {Label{0, "a"}, Label{0, "a"}};
  CHECK_THROWS_AS(label_closure(dup, rt("x")), LabelClosureError);

  // A label the sequence does not mention fails the judgment.
  CHECK_THROWS_AS(label_closure(theta, ro("x +[b] y", {"b"})),
                  LabelClosureError);
}

TEST_CASE("the translations agree on sum-free sources") {
  GenConfig cfg;
  cfg.seed = 61;
  cfg.max_size = 20;
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 80; ++i) {
    SourcePtr s = gen_source(cfg, rng, false);
    CAPTURE(print_source(s));
    OpenInterp open = translate_cbv_open(s);
    CHECK(open.theta.empty());
    CHECK(alpha_eq(translate_cbn(s), translate_cbv(s)));
  }
}

TEST_CASE("source substitution avoids capture") {
  SourcePtr got = subst_source(sp("\\y.x y"), "x", sp("y"));
  CHECK(source_eq(got, sp("\\z.y z")));
  CHECK(print_source(got) != "\\y.y y");

  CHECK(source_eq(subst_source(sp("\\x.x"), "x", sp("z")), sp("\\x.x")));
  CHECK(source_eq(subst_source(sp("x (+) (\\w.x)"), "x", sp("u v")),
                  sp("u v (+) (\\w.u v)")));
}

TEST_CASE("call-by-value source steps: sums first, then value beta") {
  // A sum fires wherever it sits, into whole-term branches.
  auto split = source_step_v(sp("(\\x.x x) (y (+) z)"));
  REQUIRE(split.has_value());
  CHECK(split->k == SourceStep::K::Split);
  CHECK(split->path == std::vector<int>{1});
  CHECK(source_eq(split->left, sp("(\\x.x x) y")));
  CHECK(source_eq(split->right, sp("(\\x.x x) z")));

  auto top = source_step_v(sp("x (+) y (+) z"));
  REQUIRE(top.has_value());
  CHECK(top->k == SourceStep::K::Split);
  CHECK(top->path.empty());
  CHECK(source_eq(top->left, sp("x (+) y")));
  CHECK(source_eq(top->right, sp("z")));

  auto under = source_step_v(sp("\\x.(x (+) y)"));
  REQUIRE(under.has_value());
  CHECK(under->k == SourceStep::K::Split);
  CHECK(source_eq(under->left, sp("\\x.x")));
  CHECK(source_eq(under->right, sp("\\x.y")));

  // Beta asks for a sum-free argument.
  auto beta = source_step_v(sp("(\\x.x x) (\\y.y)"));
  REQUIRE(beta.has_value());
  CHECK(beta->k == SourceStep::K::Beta);
  CHECK(beta->path.empty());
  CHECK(source_eq(beta->result, sp("(\\y.y) (\\y.y)")));

  // Leftmost outermost: the function's redex goes before the argument's sum.
  auto lm = source_step_v(sp("((\\x.x) y) ((\\w.w) (u (+) v))"));
  REQUIRE(lm.has_value());
  CHECK(lm->k == SourceStep::K::Beta);
  CHECK(lm->path == std::vector<int>{0});
  CHECK(source_eq(lm->result, sp("y ((\\w.w) (u (+) v))")));

  CHECK_FALSE(source_step_v(sp("\\x.x")).has_value());
  CHECK_FALSE(source_step_v(sp("x y")).has_value());
}

TEST_CASE("translation preserves typability") {
  std::vector<std::string> good = {
      "(\\f.\\x.f x) (\\y.y)",
      "(\\x.x) (+) (\\y.y)",
      "\\f.f (x (+) y)",
  };
  for (const std::string& text : good) {
    CAPTURE(text);
    CHECK_NOTHROW(infer(translate_cbn(sp(text))));
    CHECK_NOTHROW(infer(translate_cbv(sp(text))));
  }
  CHECK_THROWS_AS(infer(translate_cbn(sp("\\x.x x"))), TypeError);
  CHECK_THROWS_AS(infer(translate_cbv(sp("\\x.x x"))), TypeError);
}
