#include "pel/projective.hpp"

#include <algorithm>

#include "pel/beta.hpp"
#include "pel/printer.hpp"

namespace pel {

TermPtr project(const TermPtr& t, const Label& a, int i) {
  switch (t->kind) {
    case Kind::Var: return t;
    case Kind::Abs: return mk_abs(t->var, project(t->body(), a, i));
    case Kind::App:
      return mk_app(project(t->fun(), a, i), project(t->arg(), a, i),
                    t->marked);
    case Kind::Choice:
      if (t->label == a)
        return project(i == 0 ? t->left() : t->right(), a, i);
      return mk_choice(t->label, project(t->left(), a, i),
                       project(t->right(), a, i));
    case Kind::Gen:
      if (t->label == a) return t;  // rebinding generator shields its scope
      return mk_gen(t->label, project(t->body(), a, i));
  }
  return t;
}

TermPtr plug(const HeadContext& H, const TermPtr& t) {
  TermPtr out = t;
  for (auto it = H.rbegin(); it != H.rend(); ++it) {
    if (it->k == HeadFrame::K::Lambda)
      out = mk_abs(it->var, out);
    else
      out = mk_app(out, it->arg);
  }
  return out;
}

std::optional<SplitHead> split_head(const TermPtr& t) {
  HeadContext frames;
  TermPtr cur = t;
  for (;;) {
    switch (cur->kind) {
      case Kind::Gen:
        return SplitHead{std::move(frames), cur->label, cur->body()};
      case Kind::Abs:
        // an abstraction in function position is a beta redex, not a frame
        if (!frames.empty() && frames.back().k == HeadFrame::K::AppliedTo)
          return std::nullopt;
        frames.push_back({HeadFrame::K::Lambda, cur->var, nullptr});
        cur = cur->body();
        break;
      case Kind::App:
        frames.push_back({HeadFrame::K::AppliedTo, {}, cur->arg()});
        cur = cur->fun();
        break;
      case Kind::Var:
      case Kind::Choice:
        return std::nullopt;
    }
  }
}

std::optional<std::pair<TermPtr, TermPtr>> pi_step(const TermPtr& t) {
  auto sh = split_head(t);
  if (!sh) return std::nullopt;
  return std::make_pair(plug(sh->context, project(sh->body, sh->label, 0)),
                        plug(sh->context, project(sh->body, sh->label, 1)));
}

void Dyadic::reduce() {
  if (num == 0) {
    exp = 0;
    return;
  }
  while (exp > 0 && (num & 1) == 0) {
    num >>= 1;
    --exp;
  }
}

Dyadic Dyadic::halved() const {
  Dyadic d{num, exp + 1};
  d.reduce();
  return d;
}

std::string Dyadic::str() const {
  using boost::multiprecision::cpp_int;
  if (exp == 0) return num.str();
  return num.str() + "/" + (cpp_int(1) << exp).str();
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  unsigned e = std::max(a.exp, b.exp);
  Dyadic d{(a.num << (e - a.exp)) + (b.num << (e - b.exp)), e};
  d.reduce();
  return d;
}

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  Dyadic d{a.num * b.num, a.exp + b.exp};
  d.reduce();
  return d;
}

bool operator==(const Dyadic& a, const Dyadic& b) {
  return a.exp == b.exp && a.num == b.num;
}

bool operator<(const Dyadic& a, const Dyadic& b) {
  unsigned e = std::max(a.exp, b.exp);
  return (a.num << (e - a.exp)) < (b.num << (e - b.exp));
}

Dyadic dyadic_zero() { return Dyadic{0, 0}; }
Dyadic dyadic_one() { return Dyadic{1, 0}; }

void Distribution::add(const TermPtr& t, const Dyadic& w) {
  std::string key = alpha_key(t);
  auto it = index_.find(key);
  if (it != index_.end()) {
    entries_[it->second].second = entries_[it->second].second + w;
    return;
  }
  index_.emplace(std::move(key), entries_.size());
  entries_.emplace_back(t, w);
}

Dyadic Distribution::total() const {
  Dyadic t = dyadic_zero();
  for (const auto& [term, w] : entries_) t = t + w;
  return t;
}

bool Distribution::same(const Distribution& other) const {
  if (index_.size() != other.index_.size()) return false;
  for (const auto& [key, slot] : index_) {
    auto it = other.index_.find(key);
    if (it == other.index_.end()) return false;
    if (!(entries_[slot].second == other.entries_[it->second].second))
      return false;
  }
  return true;
}

namespace {

// Head beta redex: the first abstraction met in function position on the
// spine. Returns the contracted term.
std::optional<TermPtr> head_beta(const TermPtr& t) {
  Position pos;
  TermPtr cur = t;
  for (;;) {
    switch (cur->kind) {
      case Kind::Abs:
        if (!pos.empty() && pos.back() == Dir::Fun) {
          pos.pop_back();
          return contract_beta_at(t, pos);
        }
        pos.push_back(Dir::Body);
        cur = cur->body();
        break;
      case Kind::App:
        pos.push_back(Dir::Fun);
        cur = cur->fun();
        break;
      default:
        return std::nullopt;
    }
  }
}

}  // namespace

Distribution evaluate_dist(const TermPtr& t, std::size_t budget) {
  if (!label_closed(t))
    throw LabelClosureError("distribution of a term with free labels");
  Distribution out;
  std::vector<std::pair<TermPtr, Dyadic>> work;
  work.emplace_back(t, dyadic_one());
  std::size_t used = 0;
  auto spend = [&](const Dyadic& w) {
    if (used >= budget) {
      Dyadic residual = w;
      for (const auto& [pending, pw] : work) residual = residual + pw;
      throw DistBudgetExceeded("distribution evaluation exceeded " +
                                   std::to_string(budget) + " steps",
                               std::move(out), residual);
    }
    ++used;
  };
  while (!work.empty()) {
    auto [cur, w] = std::move(work.back());
    work.pop_back();
    for (;;) {
      if (auto sh = split_head(cur)) {
        spend(w);
        work.emplace_back(plug(sh->context, project(sh->body, sh->label, 0)),
                          w.halved());
        cur = plug(sh->context, project(sh->body, sh->label, 1));
        w = w.halved();
        continue;
      }
      if (auto hb = head_beta(cur)) {
        spend(w);
        cur = *hb;
        continue;
      }
      if (auto s = step_perm(cur)) {
        spend(w);
        cur = s->after;
        continue;
      }
      out.add(cur, w);
      break;
    }
  }
  return out;
}

namespace {

bool outer_sum(const TermPtr& t) {
  return t->kind == Kind::Gen && t->body()->kind == Kind::Choice &&
         t->body()->label == t->label;
}

void tree_dist(const TermPtr& t, const Dyadic& w, Distribution& out) {
  if (outer_sum(t)) {
    tree_dist(t->body()->left(), w.halved(), out);
    tree_dist(t->body()->right(), w.halved(), out);
    return;
  }
  out.add(t, w);
}

}  // namespace

Distribution dist_of_normal_form(const TermPtr& t) {
  if (classify_normal_form(t) != NormalClass::N0)
    throw NotNormalForm(print(t) + " is not a full normal form");
  Distribution out;
  tree_dist(t, dyadic_one(), out);
  return out;
}

std::string format_dist(const Distribution& d) {
  std::vector<std::pair<Dyadic, std::string>> rows;
  rows.reserve(d.entries().size());
  for (const auto& [term, w] : d.entries()) rows.emplace_back(w, print(term));
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (!(a.first == b.first)) return b.first < a.first;
    return a.second < b.second;
  });
  std::string out;
  for (const auto& [w, text] : rows) {
    out += w.str();
    out += '\t';
    out += text;
    out += '\n';
  }
  return out;
}

}  // namespace pel
