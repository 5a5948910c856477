#include <doctest.h>

#include <random>
#include <string>

#include "pel/beta.hpp"
#include "pel/harness.hpp"
#include "pel/parser.hpp"
#include "pel/perm.hpp"
#include "pel/printer.hpp"
#include "pel/term.hpp"
#include "pel/typing.hpp"

using namespace pel;

TEST_CASE("generation is deterministic per seed and stays well-formed") {
  GenConfig cfg;
  cfg.seed = 5;
  cfg.max_size = 22;
  std::mt19937_64 r1(cfg.seed), r2(cfg.seed);
  for (int i = 0; i < 50; ++i) {
    TermPtr a = gen_term(cfg, r1);
    TermPtr b = gen_term(cfg, r2);
    CHECK(print(a) == print(b));
  }

  std::mt19937_64 rng(cfg.seed);
  std::size_t with_labels = 0;
  for (int i = 0; i < 200; ++i) {
    TermPtr t = gen_term(cfg, rng);
    CAPTURE(print(t));
    CHECK(term_size(t) <= cfg.max_size);
    CHECK(label_closed(t));
    std::string why;
    CHECK(is_canonical(t, nullptr, &why));
    if (!free_labels(t).empty()) FAIL("free label escaped");
    bool has_label = false;
    std::function<void(const TermPtr&)> walk = [&](const TermPtr& s) {
      if (s->kind == Kind::Gen || s->kind == Kind::Choice) has_label = true;
      for (Dir d : dirs_of(s)) walk(child(s, d));
    };
    walk(t);
    if (has_label) ++with_labels;
  }
  CHECK(with_labels > 60);  // the generator exercises the label constructs
}

TEST_CASE("typed generation produces typable label-closed terms") {
  GenConfig cfg;
  cfg.seed = 6;
  cfg.max_size = 20;
  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < 100; ++i) {
    TermPtr t = gen_typed_term(cfg, rng);
    CAPTURE(print(t));
    CHECK(label_closed(t));
    CHECK_NOTHROW(infer(t));
    std::string why;
    CHECK(is_canonical(t, nullptr, &why));
  }
}

TEST_CASE("source generation respects the sum switch") {
  GenConfig cfg;
  cfg.seed = 7;
  std::mt19937_64 rng(cfg.seed);
  std::size_t sums_seen = 0;
  std::function<std::size_t(const SourcePtr&)> count_sums =
      [&](const SourcePtr& s) -> std::size_t {
    std::size_t n = s->kind == SourceTerm::Kind::Sum ? 1 : 0;
    if (s->a) n += count_sums(s->a);
    if (s->kind != SourceTerm::Kind::Abs && s->b) n += count_sums(s->b);
    return n;
  };
  for (int i = 0; i < 60; ++i) {
    SourcePtr plain = gen_source(cfg, rng, false);
    CHECK(count_sums(plain) == 0);
    CHECK(is_value(plain));
    SourcePtr rich = gen_source(cfg, rng, true);
    sums_seen += count_sums(rich);
    CHECK(source_size(rich) <= cfg.max_size);
  }
  CHECK(sums_seen > 20);
}

TEST_CASE("head instances decompose back to what they plug to") {
  GenConfig cfg;
  cfg.seed = 8;
  cfg.max_size = 14;
  std::mt19937_64 rng(cfg.seed);
  std::size_t used = 0;
  for (int i = 0; i < 80; ++i) {
    HeadInstance h = gen_head_instance(cfg, rng);
    // The label is free for the body, which satisfies the one-label
    // judgment; the context contributes no labels of its own.
    LabelSeq theta = {h.free_label};
    CHECK(label_judgment(theta, h.body));
    for (const HeadFrame& f : h.context) {
      if (f.k == HeadFrame::K::AppliedTo) CHECK(label_closed(f.arg));
    }
    TermPtr plugged = plug(h.context, mk_gen(h.free_label, h.body));
    CHECK(term_size(plugged) >= term_size(h.body));
    auto fl = free_labels(h.body);
    if (fl.count(h.free_label)) ++used;
  }
  CHECK(used > 20);  // the label actually occurs most of the time
}

TEST_CASE("shrink keeps the predicate while shrinking") {
  TermPtr big = parse_term("((\\x.!a.(x +[a] x)) y) ((\\z.z) w)");
  auto failing = [](const TermPtr& t) {
    // pretend any term containing a generator is a failure
    std::function<bool(const TermPtr&)> has_gen = [&](const TermPtr& s) {
      if (s->kind == Kind::Gen) return true;
      for (Dir d : dirs_of(s))
        if (has_gen(child(s, d))) return true;
      return false;
    };
    return has_gen(t);
  };
  TermPtr small = shrink(big, failing);
  CHECK(failing(small));
  CHECK(term_size(small) <= term_size(big));
  CHECK(term_size(small) <= 6);
  CHECK(label_closed(small));

  // A predicate nothing smaller satisfies keeps the original.
  TermPtr kept = shrink(big, [&](const TermPtr& t) {
    return term_size(t) == term_size(big);
  });
  CHECK(term_size(kept) == term_size(big));
}

TEST_CASE("randomized reduction reaches a normal form on small terms") {
  GenConfig cfg;
  cfg.seed = 9;
  cfg.max_size = 12;
  std::mt19937_64 rng(cfg.seed);
  std::size_t normals = 0;
  for (int i = 0; i < 60; ++i) {
    TermPtr t = gen_term(cfg, rng);
    RandResult r = randomized_reduce(t, rng, 4000);
    if (r.exhausted) continue;
    ++normals;
    CHECK(is_p_normal(r.term));
    CHECK(beta_redexes(r.term).empty());
  }
  CHECK(normals > 40);
}

TEST_CASE("property checks pass on small budgets") {
  GenConfig cfg;
  cfg.max_size = 12;
  cfg.max_labels = 3;

  PropertyReport lc = check_local_confluence(cfg, 25);
  CAPTURE(lc.summary());
  CHECK(lc.ok());
  CHECK(lc.trials >= 25);  // corner peaks are prepended

  GenConfig small = cfg;
  small.max_size = 8;
  PropertyReport dc = check_diamond_complete(small, 15);
  CAPTURE(dc.summary());
  CHECK(dc.ok());

  PropertyReport cr = check_church_rosser(cfg, 10);
  CAPTURE(cr.summary());
  CHECK(cr.ok());

  PropertyReport pj = check_projective_simulation(cfg, 15);
  CAPTURE(pj.summary());
  CHECK(pj.ok());

  PropertyReport cv = check_cbv_simulation(cfg, 15);
  CAPTURE(cv.summary());
  CHECK(cv.ok());

  PropertyReport sn = check_perm_sn_certified(cfg, 25);
  CAPTURE(sn.summary());
  CHECK(sn.ok());
  CHECK(sn.exhausted == 0);

  GenConfig typed = cfg;
  typed.typed_only = true;
  PropertyReport ts = check_typed_sn(typed, 15);
  CAPTURE(ts.summary());
  CHECK(ts.ok());
}

TEST_CASE("reports carry counts and a readable summary") {
  GenConfig cfg;
  cfg.max_size = 10;
  PropertyReport r = check_local_confluence(cfg, 5);
  CHECK(r.property == "local-confluence");
  CHECK(r.trials >= 5);  // corner peaks come on top of the requested count
  CHECK(r.ok());
  std::string s = r.summary();
  CHECK(s.find("local-confluence:") != std::string::npos);
  CHECK(s.find("trials") != std::string::npos);
  CHECK(s.find("0 failures") != std::string::npos);
}
