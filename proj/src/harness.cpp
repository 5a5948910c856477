#include "pel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <sstream>
#include <utility>

#include "pel/errors.hpp"
#include "pel/golden.hpp"
#include "pel/parser.hpp"
#include "pel/printer.hpp"
#include "pel/rpo.hpp"
#include "pel/translate.hpp"
#include "pel/typing.hpp"

namespace pel {

namespace {

constexpr const char* kVarPool[] = {"x", "y", "z", "u", "v", "w"};
constexpr const char* kLabelPool[] = {"a", "b", "c", "d"};

// SplitMix64 finalizer; keeps per-trial streams decorrelated.
std::uint64_t trial_seed(std::uint64_t base, std::uint64_t i) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t rnd(std::mt19937_64& rng, std::size_t n) {
  return n <= 1 ? 0 : std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

std::size_t pool_size(const GenConfig& cfg) {
  return std::min<std::size_t>(std::max<std::size_t>(cfg.var_pool, 1), 6);
}

// Untyped generator. Choices only ever use a generator already in scope, or
// one of the ambient free labels, so the result is well-labeled and, with no
// ambient labels, label-closed.
struct Gen {
  std::mt19937_64& rng;
  const GenConfig& cfg;
  std::vector<Var> vars;
  std::vector<Label> ambient;  // free labels choices may also use
  std::size_t labels_made = 0;
  std::size_t label_name_offset = 0;
  std::vector<Label> scope;

  TermPtr leaf() {
    if (!vars.empty() && coin(rng, 0.6))
      return mk_var(vars[rnd(rng, vars.size())]);
    return mk_free_var(kVarPool[rnd(rng, pool_size(cfg))]);
  }

  Label pick_label() {
    std::size_t i = rnd(rng, scope.size() + ambient.size());
    return i < scope.size() ? scope[i] : ambient[i - scope.size()];
  }

  TermPtr go(std::size_t size) {
    if (size <= 1) return leaf();
    enum { kAbs, kApp, kChoice, kGen };
    std::vector<int> menu = {kAbs, kApp, kApp};
    if (size >= 3 && (!scope.empty() || !ambient.empty()))
      menu.insert(menu.end(), 2, kChoice);
    if (labels_made < cfg.max_labels) menu.push_back(kGen);
    switch (menu[rnd(rng, menu.size())]) {
      case kAbs: {
        Var v = fresh_var(kVarPool[rnd(rng, pool_size(cfg))]);
        vars.push_back(v);
        TermPtr body = go(size - 1);
        vars.pop_back();
        return mk_abs(v, body);
      }
      case kApp: {
        if (size < 3) return mk_abs(fresh_var("x"), go(size - 1));
        std::size_t sl = 1 + rnd(rng, size - 2);
        TermPtr f = go(sl);
        return mk_app(f, go(size - 1 - sl));
      }
      case kChoice: {
        Label l = pick_label();
        // A duplicated side must fit the budget twice over.
        bool dup = coin(rng, 0.25);
        std::size_t sl =
            dup ? 1 + rnd(rng, (size - 1) / 2) : 1 + rnd(rng, size - 2);
        TermPtr left = go(sl);
        TermPtr right = dup ? refresh(left) : go(size - 1 - sl);
        return mk_choice(l, left, right);
      }
      default: {
        Label l =
            fresh_label(kLabelPool[(labels_made + label_name_offset) % 4]);
        ++labels_made;
        scope.push_back(l);
        TermPtr body = go(size - 1);
        scope.pop_back();
        return mk_gen(l, body);
      }
    }
  }
};

std::size_t pick_size(std::mt19937_64& rng, const GenConfig& cfg) {
  std::size_t hi = std::max<std::size_t>(cfg.max_size, 2);
  return 2 + rnd(rng, hi - 1);
}

// Target types for the typed generator.
const std::vector<TypePtr>& type_pool() {
  static const std::vector<TypePtr> pool = [] {
    TypePtr o = mk_atom("o");
    return std::vector<TypePtr>{o, mk_arrow(o, o), mk_arrow(o, mk_arrow(o, o)),
                                mk_arrow(mk_arrow(o, o), o)};
  }();
  return pool;
}

// Typed generator: samples a derivation for the target type. Leaves are
// scope variables only, so successful samples are closed.
struct TGen {
  std::mt19937_64& rng;
  const GenConfig& cfg;
  std::vector<std::pair<Var, TypePtr>> scope;
  std::vector<Label> labels;
  std::size_t labels_made = 0;

  std::vector<std::size_t> hits(const TypePtr& want) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < scope.size(); ++i)
      if (type_eq(scope[i].second, want)) out.push_back(i);
    return out;
  }

  std::optional<TermPtr> go(const TypePtr& want, std::size_t size) {
    auto vs = hits(want);
    if (size <= 1) {
      if (vs.empty()) return std::nullopt;
      return mk_var(scope[vs[rnd(rng, vs.size())]].first);
    }
    enum { kVar, kAbs, kApp, kChoice, kGen };
    std::vector<int> menu;
    if (!vs.empty()) menu.insert(menu.end(), 2, kVar);
    if (want->kind == SimpleType::Kind::Arrow) menu.insert(menu.end(), 3, kAbs);
    if (size >= 3) menu.insert(menu.end(), 2, kApp);
    if (size >= 3 && !labels.empty()) menu.insert(menu.end(), 2, kChoice);
    if (labels_made < cfg.max_labels) menu.push_back(kGen);
    if (menu.empty()) return std::nullopt;
    switch (menu[rnd(rng, menu.size())]) {
      case kVar:
        return mk_var(scope[vs[rnd(rng, vs.size())]].first);
      case kAbs: {
        Var v = fresh_var(kVarPool[scope.size() % pool_size(cfg)]);
        scope.emplace_back(v, want->dom);
        auto body = go(want->cod, size - 1);
        scope.pop_back();
        if (!body) return std::nullopt;
        return mk_abs(v, std::move(*body));
      }
      case kApp: {
        for (int attempt = 0; attempt < 2; ++attempt) {
          const TypePtr& ta = type_pool()[rnd(rng, type_pool().size())];
          std::size_t budget = std::max<std::size_t>(size - 1, 2);
          std::size_t sl = 1 + rnd(rng, budget - 1);
          auto f = go(mk_arrow(ta, want), sl);
          if (!f) continue;
          auto a = go(ta, budget - sl);
          if (!a) continue;
          return mk_app(std::move(*f), std::move(*a));
        }
        return std::nullopt;
      }
      case kChoice: {
        Label l = labels[rnd(rng, labels.size())];
        bool dup = coin(rng, 0.25);
        std::size_t sl =
            dup ? 1 + rnd(rng, (size - 1) / 2) : 1 + rnd(rng, size - 2);
        auto left = go(want, sl);
        if (!left) return std::nullopt;
        TermPtr right;
        if (dup) {
          right = refresh(*left);
        } else {
          auto r = go(want, size - 1 - sl);
          if (!r) return std::nullopt;
          right = *r;
        }
        return mk_choice(l, std::move(*left), right);
      }
      default: {
        Label l = fresh_label(kLabelPool[labels_made % 4]);
        ++labels_made;
        labels.push_back(l);
        auto body = go(want, size - 1);
        labels.pop_back();
        if (!body) return std::nullopt;
        return mk_gen(l, std::move(*body));
      }
    }
  }
};

struct SGen {
  std::mt19937_64& rng;
  const GenConfig& cfg;
  bool allow_sums;
  std::vector<std::string> scope;

  SourcePtr leaf() {
    if (!scope.empty() && coin(rng, 0.6))
      return sv(scope[rnd(rng, scope.size())]);
    return sv(kVarPool[rnd(rng, pool_size(cfg))]);
  }

  SourcePtr go(std::size_t size) {
    if (size <= 1) return leaf();
    enum { kAbs, kApp, kSum };
    std::vector<int> menu = {kAbs, kApp, kApp};
    if (allow_sums && size >= 3) menu.insert(menu.end(), 2, kSum);
    int pick = menu[rnd(rng, menu.size())];
    if (pick == kAbs || size < 3) {
      std::string v = kVarPool[rnd(rng, pool_size(cfg))];
      scope.push_back(v);
      SourcePtr body = go(size - 1);
      scope.pop_back();
      return sabs(v, body);
    }
    std::size_t sl = 1 + rnd(rng, size - 2);
    SourcePtr l = go(sl);
    SourcePtr r = go(size - 1 - sl);
    return pick == kSum ? ssum(l, r) : sapp(l, r);
  }
};

void source_paths(const SourcePtr& s, std::vector<int>& here,
                  std::vector<std::vector<int>>& out) {
  out.push_back(here);
  auto walk = [&](const SourcePtr& c, int i) {
    here.push_back(i);
    source_paths(c, here, out);
    here.pop_back();
  };
  switch (s->kind) {
    case SourceTerm::Kind::Var:
      break;
    case SourceTerm::Kind::Abs:
      walk(s->a, 0);
      break;
    default:
      walk(s->a, 0);
      walk(s->b, 1);
      break;
  }
}

std::size_t count_sums(const SourcePtr& s) {
  switch (s->kind) {
    case SourceTerm::Kind::Var:
      return 0;
    case SourceTerm::Kind::Abs:
      return count_sums(s->a);
    case SourceTerm::Kind::App:
      return count_sums(s->a) + count_sums(s->b);
    default:
      return 1 + count_sums(s->a) + count_sums(s->b);
  }
}

// Maps a source path onto the translated body, which shares its shape.
Position map_source_path(const SourcePtr& s, const std::vector<int>& path) {
  Position out;
  SourcePtr cur = s;
  for (int i : path) {
    switch (cur->kind) {
      case SourceTerm::Kind::Abs:
        out.push_back(Dir::Body);
        cur = cur->a;
        break;
      case SourceTerm::Kind::App:
        out.push_back(i == 0 ? Dir::Fun : Dir::Arg);
        cur = i == 0 ? cur->a : cur->b;
        break;
      case SourceTerm::Kind::Sum:
        out.push_back(i == 0 ? Dir::Left : Dir::Right);
        cur = i == 0 ? cur->a : cur->b;
        break;
      default:
        throw Error("path runs past a variable");
    }
  }
  return out;
}

TermPtr osum(const TermPtr& left, const TermPtr& right) {
  Label l = fresh_label("s");
  return mk_gen(l, mk_choice(l, left, right));
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  }
};

void record(PropertyReport& rep, std::uint64_t seed, std::string message,
            std::string counterexample) {
  rep.failures.push_back(
      Failure{seed, std::move(message), std::move(counterexample)});
}

// Local confluence of the permutative system at one term: the p-normal
// forms of all one-step reducts coincide.
bool perm_locally_confluent(const TermPtr& t, std::string* why) {
  auto steps = all_perm_steps(t);
  TermPtr base;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    TermPtr nf = p_normalize(steps[i].after).term;
    if (!base) {
      base = nf;
    } else if (!alpha_eq(base, nf)) {
      if (why)
        *why = "reducts of " + format_step(steps[0]) + " and " +
               format_step(steps[i]) + " normalize apart";
      return false;
    }
  }
  return true;
}

TermPtr mask_marks(const TermPtr& t, const std::vector<Position>& redexes,
                   std::uint64_t mask) {
  TermPtr cur = t;
  for (std::size_t i = 0; i < redexes.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) cur = mark_at(cur, redexes[i]);
  return cur;
}

// Does some marking of p take it to j in one complete step? Tries the full
// labeling first, then searches every marking. searched goes false when the
// redex count makes the search infeasible.
bool joins_by_complete_step(const TermPtr& p, const TermPtr& j,
                            bool* searched) {
  *searched = true;
  if (alpha_eq(p, j)) return true;
  if (alpha_eq(complete_reduct(full_labeling(p)), j)) return true;
  auto redexes = beta_redexes(p);
  if (redexes.size() > 14) {
    *searched = false;
    return false;
  }
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << redexes.size());
       ++mask)
    if (alpha_eq(complete_reduct(mask_marks(p, redexes, mask)), j)) return true;
  return false;
}

}  // namespace

TermPtr gen_term(const GenConfig& cfg, std::mt19937_64& rng) {
  Gen g{rng, cfg};
  return g.go(pick_size(rng, cfg));
}

TermPtr gen_typed_term(const GenConfig& cfg, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 500; ++attempt) {
    TGen g{rng, cfg};
    const TypePtr& want = type_pool()[rnd(rng, type_pool().size())];
    if (auto t = g.go(want, pick_size(rng, cfg))) return *t;
  }
  throw GenerationExhausted("no typed term found within the retry budget");
}

SourcePtr gen_source(const GenConfig& cfg, std::mt19937_64& rng,
                     bool allow_sums) {
  SGen g{rng, cfg, allow_sums};
  return g.go(pick_size(rng, cfg));
}

HeadInstance gen_head_instance(const GenConfig& cfg, std::mt19937_64& rng) {
  HeadInstance inst;
  inst.free_label = Label{0, "a"};
  GenConfig inner = cfg;
  inner.max_labels = std::min<std::size_t>(cfg.max_labels, 3);
  inner.max_size = std::max<std::size_t>(cfg.max_size / 3, 4);
  Gen g{rng, inner};
  g.label_name_offset = 1;  // keep generated binder names off the free label
  std::size_t frames = rnd(rng, 4);
  for (std::size_t i = 0; i < frames; ++i) {
    if (coin(rng, 0.5)) {
      Var v = fresh_var(kVarPool[rnd(rng, pool_size(cfg))]);
      g.vars.push_back(v);
      inst.context.push_back(HeadFrame{HeadFrame::K::Lambda, v, nullptr});
    } else {
      inst.context.push_back(
          HeadFrame{HeadFrame::K::AppliedTo, Var{}, g.go(3 + rnd(rng, 4))});
    }
  }
  g.ambient.push_back(inst.free_label);
  inst.body = g.go(3 + rnd(rng, inner.max_size));
  if (coin(rng, 0.7) && !free_labels(inst.body).count(inst.free_label)) {
    TermPtr alt = g.go(2 + rnd(rng, 3));
    inst.body = mk_choice(inst.free_label, inst.body, alt);
  }
  return inst;
}

TermPtr shrink(const TermPtr& t,
               const std::function<bool(const TermPtr&)>& failing) {
  TermPtr cur = t;
  for (;;) {
    std::vector<std::pair<std::size_t, TermPtr>> cands;
    std::vector<std::pair<TermPtr, bool>> stack = {{cur, true}};
    while (!stack.empty()) {
      auto [s, is_root] = stack.back();
      stack.pop_back();
      if (!is_root && label_closed(s))
        cands.emplace_back(term_size(s), strip_marks(s));
      for (Dir d : dirs_of(s)) stack.emplace_back(child(s, d), false);
    }
    std::stable_sort(
        cands.begin(), cands.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    bool moved = false;
    for (auto& [sz, sub] : cands) {
      if (sz >= term_size(cur)) break;
      if (failing(sub)) {
        cur = sub;
        moved = true;
        break;
      }
    }
    if (!moved) return cur;
  }
}

RandResult randomized_reduce(const TermPtr& t, std::mt19937_64& rng,
                             std::size_t max_steps, const PermOptions& opts) {
  RandResult r{t, 0, false};
  for (;;) {
    auto perms = all_perm_steps(r.term, opts);
    auto betas = beta_redexes(r.term);
    std::size_t n = perms.size() + betas.size();
    if (n == 0) return r;
    if (r.steps >= max_steps) {
      r.exhausted = true;
      return r;
    }
    std::size_t i = rnd(rng, n);
    r.term = i < perms.size()
                 ? perms[i].after
                 : contract_beta_at(r.term, betas[i - perms.size()]);
    ++r.steps;
  }
}

std::string PropertyReport::summary() const {
  std::ostringstream os;
  os << property << ": " << trials << " trials, " << failures.size()
     << " failures";
  if (exhausted) os << ", " << exhausted << " budget exhaustions";
  os << " (" << elapsed_seconds << "s)";
  return os.str();
}

const std::vector<std::string>& confluence_corner_terms() {
  static const std::vector<std::string> terms = {
      "!a.((x +[a] x) +[a] y)",
      "!a.((x +[a] y) +[a] (x +[a] y))",
      "!a.((x +[a] y) (z +[a] w))",
      "!a.!b.((x +[b] y) (z +[a] w))",
      "!a.!b.(x +[a] y)",
  };
  return terms;
}

PropertyReport check_local_confluence(const GenConfig& cfg,
                                      std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "local-confluence";
  auto run_one = [&](const TermPtr& t, std::uint64_t seed) {
    ++rep.trials;
    std::string why;
    try {
      if (perm_locally_confluent(t, &why)) return;
    } catch (const Error& e) {
      why = e.what();
    }
    TermPtr small = shrink(t, [](const TermPtr& c) {
      try {
        return !perm_locally_confluent(c, nullptr);
      } catch (const Error&) {
        return true;
      }
    });
    record(rep, seed, why, print(small));
  };
  for (const std::string& text : confluence_corner_terms())
    run_one(parse_term(text), 0);
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    run_one(cfg.typed_only ? gen_typed_term(cfg, rng) : gen_term(cfg, rng), s);
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_diamond_complete(const GenConfig& cfg,
                                      std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "diamond";
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    TermPtr t = cfg.typed_only ? gen_typed_term(cfg, rng) : gen_term(cfg, rng);
    ++rep.trials;
    try {
      auto redexes = beta_redexes(t);
      std::size_t k = redexes.size();
      TermPtr j = complete_reduct(full_labeling(t));
      // Every marked development must rejoin the full development in one
      // complete step; that closes every peak of complete steps at j.
      std::vector<std::uint64_t> masks;
      if (k <= 6) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m)
          masks.push_back(m);
      } else {
        std::uint64_t cap =
            k >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
        for (int p = 0; p < 16; ++p) masks.push_back(rng() & cap);
      }
      for (std::uint64_t m : masks) {
        TermPtr p = complete_reduct(mask_marks(t, redexes, m));
        bool searched = true;
        if (joins_by_complete_step(p, j, &searched)) continue;
        if (!searched) {
          ++rep.exhausted;
          continue;
        }
        record(rep, s,
               "complete step from marking " + std::to_string(m) +
                   " does not rejoin the full development",
               print(t));
        break;
      }
    } catch (const BudgetExceeded&) {
      ++rep.exhausted;
    } catch (const Error& e) {
      record(rep, s, e.what(), print(t));
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_church_rosser(const GenConfig& cfg, std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "church-rosser";
  // Fixed sanity instance first: under one translation the endpoint is
  // strategy-independent, while the two translations end apart.
  try {
    auto settle = [&](const TermPtr& t) -> TermPtr {
      std::mt19937_64 r1(trial_seed(cfg.seed, 101));
      std::mt19937_64 r2(trial_seed(cfg.seed, 202));
      RandResult a = randomized_reduce(t, r1, 1000000);
      RandResult b = randomized_reduce(t, r2, 1000000);
      ++rep.trials;
      if (a.exhausted || b.exhausted) {
        ++rep.exhausted;
        return nullptr;
      }
      if (!alpha_eq(a.term, b.term)) {
        record(rep, 0, "two strategies end apart on a fixed instance",
               print(t));
        return nullptr;
      }
      return a.term;
    };
    TermPtr nf_cbn = settle(golden::intro_cbn());
    TermPtr nf_cbv = settle(golden::intro_cbv());
    if (nf_cbn && nf_cbv && alpha_eq(nf_cbn, nf_cbv))
      record(rep, 0,
             "the two translations of the fixed instance normalize alike",
             print(nf_cbn));
  } catch (const Error& e) {
    record(rep, 0, e.what(), "fixed instance");
  }
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    ++rep.trials;
    try {
      TermPtr t = gen_typed_term(cfg, rng);
      std::mt19937_64 r1(trial_seed(s, 1));
      std::mt19937_64 r2(trial_seed(s, 2));
      RandResult a = randomized_reduce(t, r1, 1000000);
      RandResult b = randomized_reduce(t, r2, 1000000);
      if (a.exhausted || b.exhausted) {
        ++rep.exhausted;
        continue;
      }
      ReduceResult c = reduce(t, Strategy::FullLeftmost, 1000000);
      if (!alpha_eq(a.term, b.term) || !alpha_eq(a.term, c.term))
        record(rep, s, "normal forms depend on the strategy", print(t));
    } catch (const BudgetExceeded&) {
      ++rep.exhausted;
    } catch (const Error& e) {
      record(rep, s, e.what(), "");
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_projective_simulation(const GenConfig& cfg,
                                           std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "projective-simulation";
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    ++rep.trials;
    try {
      HeadInstance inst = gen_head_instance(cfg, rng);
      bool has_label = free_labels(inst.body).count(inst.free_label) > 0;

      // The open fact under theta = [a]: a term and the choice of its two
      // projections have one p-normal form once a is the minimal label.
      LabelSeq theta = {inst.free_label};
      PermOptions with_theta;
      with_theta.theta = &theta;
      TermPtr lemma =
          refresh(mk_choice(inst.free_label,
                            project(inst.body, inst.free_label, 0),
                            project(inst.body, inst.free_label, 1)));
      if (!alpha_eq(p_normalize(inst.body, kDefaultMaxSteps, with_theta).term,
                    p_normalize(lemma, kDefaultMaxSteps, with_theta).term)) {
        record(rep, s, "projection choice differs from the open term",
               print(inst.body));
        continue;
      }

      TermPtr genterm = bind_label(inst.free_label.name, inst.body);
      TermPtr whole = plug(inst.context, genterm);
      TermPtr target;
      if (has_label) {
        TermPtr p0 = project(genterm->body(), genterm->label, 0);
        TermPtr p1 = project(genterm->body(), genterm->label, 1);
        target =
            refresh(osum(plug(inst.context, p0), plug(inst.context, p1)));
      } else {
        target = plug(inst.context, genterm->body());
      }
      if (!alpha_eq(p_normalize(whole).term, p_normalize(target).term))
        record(rep, s, "projective split is not simulated permutatively",
               print(whole));
    } catch (const BudgetExceeded&) {
      ++rep.exhausted;
    } catch (const Error& e) {
      record(rep, s, e.what(), "");
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_cbv_simulation(const GenConfig& cfg, std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "cbv-simulation";
  GenConfig small = cfg;
  small.max_size = std::max<std::size_t>(cfg.max_size / 3, 5);
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    ++rep.trials;
    try {
      SourcePtr shell = gen_source(small, rng, false);
      std::vector<std::vector<int>> paths;
      std::vector<int> here;
      source_paths(shell, here, paths);
      const std::vector<int>& path = paths[rnd(rng, paths.size())];
      SourcePtr m0 = gen_source(small, rng, true);
      SourcePtr p0 = gen_source(small, rng, true);
      SourcePtr n = source_replace_at(shell, path, ssum(m0, p0));

      OpenInterp open = translate_cbv_open(n);
      if (open.theta.size() != count_sums(n))
        throw Error("theta length disagrees with the sum count");
      TermPtr at = subterm_at(open.body, map_source_path(n, path));
      if (at->kind != Kind::Choice || !(at->label == open.theta.back()))
        throw Error("the split sum is not the last label in theta");

      TermPtr lhs = label_closure(open.theta, open.body);
      TermPtr left = translate_cbv(source_replace_at(shell, path, m0));
      TermPtr right = translate_cbv(source_replace_at(shell, path, p0));
      TermPtr rhs = osum(left, right);
      if (!alpha_eq(p_normalize(lhs).term, p_normalize(rhs).term))
        record(rep, s, "split target and translation normalize apart",
               print_source(n));
    } catch (const BudgetExceeded&) {
      ++rep.exhausted;
    } catch (const Error& e) {
      record(rep, s, e.what(), "");
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_perm_sn_certified(const GenConfig& cfg,
                                       std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "perm-sn-certified";
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    TermPtr t = cfg.typed_only ? gen_typed_term(cfg, rng) : gen_term(cfg, rng);
    ++rep.trials;
    try {
      NormalizeResult r = p_normalize(t);
      for (const Step& st : r.trace) {
        StepCertificate cert = certify_perm_step(st);
        if (!cert.ok) {
          record(rep, s,
                 "uncertified step " + format_step(st) + ": " + cert.detail,
                 print(t));
          break;
        }
      }
    } catch (const BudgetExceeded&) {
      record(rep, s, "no permutative normal form within the budget", print(t));
    } catch (const Error& e) {
      record(rep, s, e.what(), print(t));
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

PropertyReport check_typed_sn(const GenConfig& cfg, std::size_t trials) {
  Timer timer;
  PropertyReport rep;
  rep.property = "typed-sn";
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    std::mt19937_64 rng(s);
    ++rep.trials;
    try {
      TermPtr t = gen_typed_term(cfg, rng);
      RandResult r = randomized_reduce(t, rng, 1000000);
      if (r.exhausted) {
        record(rep, s, "still reducible after 1000000 random steps", print(t));
        continue;
      }
      if (step_perm(r.term) || !beta_redexes(r.term).empty())
        record(rep, s, "reduction stopped short of a normal form", print(t));
    } catch (const Error& e) {
      record(rep, s, e.what(), "");
    }
  }
  rep.elapsed_seconds = timer.elapsed();
  return rep;
}

}  // namespace pel
