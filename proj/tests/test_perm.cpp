#include <doctest.h>

#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pel/errors.hpp"
#include "pel/parser.hpp"
#include "pel/perm.hpp"
#include "pel/printer.hpp"
#include "pel/term.hpp"

using namespace pel;

namespace {

TermPtr rt(const std::string& text) { return parse_term(text); }

bool same_nf(const std::string& in, const std::string& want,
             std::size_t budget = kDefaultMaxSteps) {
  return alpha_eq(p_normalize(rt(in), budget).term, rt(want));
}

// Independent oracle: the full reachability set of a term under single
// permutative steps, explored breadth first up to a state cap.
struct Reach {
  std::map<std::string, TermPtr> seen;  // alpha key -> representative
  std::vector<TermPtr> normal;          // elements with no step
  bool capped = false;

  explicit Reach(const TermPtr& start, std::size_t cap = 4000) {
    std::deque<TermPtr> queue = {start};
    seen[alpha_key(start)] = start;
    while (!queue.empty()) {
      if (seen.size() > cap) {
        capped = true;
        break;
      }
      TermPtr t = queue.front();
      queue.pop_front();
      auto steps = all_perm_steps(t);
      if (steps.empty()) normal.push_back(t);
      for (const Step& s : steps) {
        std::string key = alpha_key(s.after);
        if (seen.emplace(key, s.after).second) queue.push_back(s.after);
      }
    }
  }
};

}  // namespace

TEST_CASE("each rule rewrites its minimal instance") {
  // The whole term after one rule at one position, fixed by hand from the
  // rule schemes.
  struct Case {
    const char* term;
    Rule rule;
    Position pos;
    const char* after;
  };
  std::vector<Case> cases = {
      {"!a.(x +[a] x)", Rule::Idem, {Dir::Body}, "!a.x"},
      {"!a.((x +[a] y) +[a] z)", Rule::CancelL, {Dir::Body},
       "!a.(x +[a] z)"},
      {"!a.(x +[a] (y +[a] z))", Rule::CancelR, {Dir::Body},
       "!a.(x +[a] z)"},
      {"!a.\\x.(y +[a] z)", Rule::PlusAbs, {Dir::Body},
       "!a.((\\x.y) +[a] (\\x.z))"},
      {"!a.((x +[a] y) z)", Rule::PlusFun, {Dir::Body},
       "!a.((x z) +[a] (y z))"},
      {"!a.(x (y +[a] z))", Rule::PlusArg, {Dir::Body},
       "!a.((x y) +[a] (x z))"},
      {"!a.!b.((x +[a] y) +[b] z)", Rule::PlusL, {Dir::Body, Dir::Body},
       "!a.!b.((x +[b] z) +[a] (y +[b] z))"},
      {"!a.!b.(x +[b] (y +[a] z))", Rule::PlusR, {Dir::Body, Dir::Body},
       "!a.!b.((x +[b] y) +[a] (x +[b] z))"},
      {"!a.!b.(x +[a] y)", Rule::PlusBox, {Dir::Body},
       "!a.((!b.x) +[a] (!b.y))"},
      {"!a.x", Rule::BoxVoid, {}, "x"},
      {"\\x.!a.(y +[a] z)", Rule::BoxAbs, {}, "!a.\\x.(y +[a] z)"},
      {"(!a.(x +[a] y)) z", Rule::BoxFun, {}, "!a.((x +[a] y) z)"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.term);
    TermPtr t = rt(c.term);
    auto got = try_rule(t, c.rule, c.pos);
    REQUIRE(got.has_value());
    CHECK(alpha_eq(replace_at(t, c.pos, *got), rt(c.after)));
  }
}

TEST_CASE("ordered choice rules refuse the reversed orientation") {
  // (x +[b] y) +[a] z with a < b: the outer label is already minimal.
  TermPtr t = rt("!a.!b.((x +[b] y) +[a] z)");
  CHECK_FALSE(try_rule(t, Rule::PlusL, {Dir::Body, Dir::Body}).has_value());
  CHECK_FALSE(try_rule(t, Rule::PlusR, {Dir::Body, Dir::Body}).has_value());
  // Same-label nesting is cancellation, never reordering.
  TermPtr u = rt("!a.((x +[a] y) +[a] z)");
  CHECK_FALSE(try_rule(u, Rule::PlusL, {Dir::Body}).has_value());
}

TEST_CASE("incomparable labels surface as an error, not a silent skip") {
  // Two parallel generators feed one choice pair only through an
  // application, so the orders never relate them; building such a term
  // directly exercises the guard.
  ParseOptions open;
  open.open = true;
  open.theta = {"a", "b"};
  TermPtr body = parse_term("(x +[a] y) +[b] z", open);
  // With theta the labels are ordered: b innermost puts a outside, so the
  // inner choice on a lifts past the outer one on b.
  LabelSeq theta = {Label{0, "b"}, Label{0, "a"}};
  PermOptions opts;
  opts.theta = &theta;
  auto ordered = step_perm(body, opts);
  REQUIRE(ordered.has_value());
  CHECK(ordered->rule == Rule::PlusL);
  // Without theta the same pair has no order: the matching rule must throw.
  CHECK_THROWS_AS(step_perm(body), IncomparableLabels);
}

TEST_CASE("scan order and priority are deterministic") {
  // cancelL at the outer node beats idem at the inner node: node before
  // children.
  TermPtr t = rt("!a.((x +[a] x) +[a] y)");
  auto s = step_perm(t);
  REQUIRE(s.has_value());
  CHECK(s->rule == Rule::CancelL);
  CHECK(position_to_string(s->pos) == "root.body");
  // idem beats cancelL at one node.
  TermPtr u = rt("!a.((x +[a] y) +[a] (x +[a] y))");
  auto su = step_perm(u);
  REQUIRE(su.has_value());
  CHECK(su->rule == Rule::Idem);
  CHECK(position_to_string(su->pos) == "root.body");
  // plusFun beats plusArg when both sides are choices.
  TermPtr v = rt("!a.((x +[a] y) (z +[a] w))");
  auto sv = step_perm(v);
  REQUIRE(sv.has_value());
  CHECK(sv->rule == Rule::PlusFun);
}

TEST_CASE("p-normal forms of the corner peaks, fixed by hand") {
  CHECK(same_nf("!a.((x +[a] x) +[a] y)", "!a.(x +[a] y)"));
  CHECK(same_nf("!a.((x +[a] y) +[a] (x +[a] y))", "!a.(x +[a] y)"));
  // One event drives both sides: only the diagonal survives.
  CHECK(same_nf("!a.((x +[a] y) (z +[a] w))", "!a.((x z) +[a] (y w))"));
  // Independent events stay independent.
  CHECK(same_nf("!a.!b.((x +[b] y) (z +[a] w))",
                "!a.((!b.((x z) +[b] (y z))) +[a] (!b.((x w) +[b] (y w))))"));
  CHECK(same_nf("!a.!b.(x +[a] y)", "!a.(x +[a] y)"));
  CHECK(same_nf("!a.x", "x"));
  CHECK(same_nf("!a.!b.((x +[a] y) +[b] z)",
                "!a.((!b.(x +[b] z)) +[a] (!b.(y +[b] z)))"));
}

TEST_CASE("reachability oracle: every maximal element is the normal form") {
  // Breadth-first closure under single steps; on these instances the
  // normal form must be unique and equal to what p_normalize returns,
  // whatever path got there.
  std::vector<std::string> instances = {
      "!a.((x +[a] x) +[a] y)",
      "!a.((x +[a] y) +[a] (x +[a] y))",
      "!a.((x +[a] y) (z +[a] w))",
      "!a.!b.((x +[b] y) (z +[a] w))",
      "!a.!b.(x +[a] y)",
      "!a.!b.((x +[a] y) +[b] z)",
      "!a.\\x.((x +[a] y) z)",
      "(!a.(x +[a] y)) (!b.(z +[b] w))",
  };
  for (const std::string& text : instances) {
    CAPTURE(text);
    TermPtr t = rt(text);
    Reach reach(t);
    REQUIRE_FALSE(reach.capped);
    REQUIRE_FALSE(reach.normal.empty());
    TermPtr nf = p_normalize(t).term;
    std::set<std::string> keys;
    for (const TermPtr& n : reach.normal) keys.insert(alpha_key(n));
    CHECK(keys.size() == 1);
    CHECK(*keys.begin() == alpha_key(nf));
  }
}

TEST_CASE("p_normalize trace replays from start to end") {
  TermPtr t = rt("!a.!b.((x +[b] y) (z +[a] w))");
  NormalizeResult r = p_normalize(t);
  REQUIRE_FALSE(r.trace.empty());
  CHECK(alpha_eq(r.trace.front().before, t, true));
  for (std::size_t i = 0; i + 1 < r.trace.size(); ++i)
    CHECK(r.trace[i].after == r.trace[i + 1].before);
  CHECK(r.trace.back().after == r.term);
  // Each recorded step really is one application of its rule at its
  // position.
  for (const Step& s : r.trace) {
    auto redo = try_rule(s.before, s.rule, s.pos);
    REQUIRE(redo.has_value());
    CHECK(alpha_eq(replace_at(s.before, s.pos, *redo), s.after));
  }
}

TEST_CASE("budget exhaustion carries the partial trace") {
  TermPtr t = rt("!a.!b.((x +[b] y) (z +[a] w))");
  std::size_t full = p_normalize(t).trace.size();
  REQUIRE(full >= 3);
  try {
    p_normalize(t, 2);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.partial.size() == 2);
    CHECK(e.last == e.partial.back().after);
  }
}

TEST_CASE("normal form classification") {
  CHECK(classify_normal_form(rt("x")) == NormalClass::N0);
  CHECK(classify_normal_form(rt("\\x.x y")) == NormalClass::N0);
  CHECK(classify_normal_form(rt("x (y z)")) == NormalClass::N0);
  CHECK(classify_normal_form(rt("!a.(x +[a] y)")) == NormalClass::N0);
  CHECK(classify_normal_form(rt("!a.((x z) +[a] (y w))")) == NormalClass::N0);
  // A beta redex is full-stuck only in P0.
  CHECK(classify_normal_form(rt("(\\x.x) y")) == NormalClass::P0);
  CHECK(classify_normal_form(rt("\\x.(\\y.y) x")) == NormalClass::P0);
  // Permutative redexes are in neither grammar.
  CHECK(classify_normal_form(rt("!a.(x +[a] x)")) == NormalClass::Neither);
  CHECK(classify_normal_form(rt("!a.x")) == NormalClass::Neither);
  CHECK(classify_normal_form(rt("!a.((x +[a] y) z)")) == NormalClass::Neither);
  CHECK(is_p_normal(rt("(\\x.x) y")));
  CHECK_FALSE(is_p_normal(rt("!a.x")));
}

TEST_CASE("normal forms are exactly the stuck terms on small instances") {
  std::vector<std::string> samples = {
      "x",
      "\\x.x",
      "(\\x.x) y",
      "!a.(x +[a] y)",
      "!a.(x +[a] x)",
      "!a.((x +[a] y) z)",
      "\\x.!a.(x +[a] y)",
      "x (y (+) z)",
      "(x (+) y) z",
  };
  for (const std::string& text : samples) {
    CAPTURE(text);
    TermPtr t = rt(text);
    CHECK(is_p_normal(t) == !step_perm(t).has_value());
  }
}

TEST_CASE("duplicating rules keep the result canonical") {
  // plusArg copies the function; the two copies must not share binder ids.
  TermPtr t = rt("!a.((\\u.u) (y +[a] z))");
  auto s = step_perm(t);
  REQUIRE(s.has_value());
  REQUIRE(s->rule == Rule::PlusArg);
  std::string why;
  CHECK(is_canonical(s->after, nullptr, &why));
  TermPtr choice = s->after->body();
  REQUIRE(choice->kind == Kind::Choice);
  CHECK(choice->left()->fun()->var.id != choice->right()->fun()->var.id);
}
