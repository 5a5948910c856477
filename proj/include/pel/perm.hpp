#pragma once

#include <optional>
#include <vector>

#include "pel/errors.hpp"
#include "pel/term.hpp"

namespace pel {

// Rewrite rules. Beta lives here so traces can mix both kinds; all others
// are the permutative rules.
enum class Rule : std::uint8_t {
  Beta,
  Idem,
  CancelL,
  CancelR,
  PlusAbs,
  PlusFun,
  PlusArg,
  PlusL,
  PlusR,
  PlusBox,
  BoxVoid,
  BoxAbs,
  BoxFun,
};

const char* rule_name(Rule r);
bool is_perm_rule(Rule r);

// The deterministic scan tries rules in this order at each node before
// descending.
const std::vector<Rule>& perm_rule_priority();

struct Step {
  Rule rule;
  Position pos;
  TermPtr before;  // whole term
  TermPtr after;   // whole term
};

// `<rule> @ <position> : <term-after>`
std::string format_step(const Step& s);

struct PermOptions {
  const LabelSeq* theta = nullptr;  // orders free labels, when present
  bool respect_marks = false;       // idem compares marks too
  bool refresh = true;              // refresh binders in duplicated copies
};

// Apply one named rule at one position. Empty result when the rule does not
// match there; IncomparableLabels when a side condition needs an order the
// term does not provide.
std::optional<TermPtr> try_rule(const TermPtr& t, Rule r, const Position& pos,
                                const PermOptions& opts = {});

// Match r at the root of sub, ranking labels via a precomputed order for
// the enclosing term. Building block for custom scans.
std::optional<TermPtr> match_rule_at(const TermPtr& sub, Rule r,
                                     const LabelOrder& order,
                                     const PermOptions& opts = {});

// Leftmost-outermost applicable (rule, position) under the priority order.
std::optional<Step> step_perm(const TermPtr& t, const PermOptions& opts = {});

// Every applicable (rule, position) pair, in scan order.
std::vector<Step> all_perm_steps(const TermPtr& t, const PermOptions& opts = {});

struct BudgetExceeded : Error {
  BudgetExceeded(std::string msg, std::vector<Step> partial_, TermPtr last_)
      : Error(std::move(msg)), partial(std::move(partial_)), last(std::move(last_)) {}
  std::vector<Step> partial;
  TermPtr last;
};

struct NormalizeResult {
  TermPtr term;
  std::vector<Step> trace;
};

inline constexpr std::size_t kDefaultMaxSteps = 100000;

NormalizeResult p_normalize(const TermPtr& t,
                            std::size_t max_steps = kDefaultMaxSteps,
                            const PermOptions& opts = {});

// Membership in the permutative / full normal-form grammars. N0 implies P0.
enum class NormalClass { Neither, P0, N0 };
NormalClass classify_normal_form(const TermPtr& t);
bool is_p_normal(const TermPtr& t);

}  // namespace pel
