#pragma once
// Beta steps, marked redexes, parallel (complete) reduction, and the
// deterministic reduction strategies built from them.

#include <cstddef>
#include <optional>
#include <vector>

#include "pel/perm.hpp"
#include "pel/term.hpp"

namespace pel {

// Positions of all beta redexes, in scan order.
std::vector<Position> beta_redexes(const TermPtr& t);

// Contracts the redex at pos; throws NotARedex otherwise.
TermPtr contract_beta_at(const TermPtr& t, const Position& pos);

// Leftmost-outermost beta step, ignoring permutative redexes.
std::optional<Step> step_beta(const TermPtr& t);

// Marks single out the beta redexes a parallel step will contract.
TermPtr full_labeling(const TermPtr& t);  // mark every redex
TermPtr strip_marks(const TermPtr& t);
TermPtr mark_at(const TermPtr& t, const Position& pos);  // throws NotARedex
std::size_t mark_count(const TermPtr& t);
std::vector<Position> marked_positions_innermost(const TermPtr& t);

// Contracts every marked redex simultaneously (inner marks first under the
// recursion), without p-normalizing.
TermPtr labeled_reduct(const TermPtr& t);

// One complete step from a marked term: reduct, then p-normal form.
TermPtr complete_reduct(const TermPtr& marked, const PermOptions& opts = {},
                        std::size_t max_steps = kDefaultMaxSteps);

// The same step as a trace: one beta step per mark, innermost first, then
// the permutative trace. Budget counts elementary steps.
NormalizeResult complete_step(const TermPtr& marked,
                              std::size_t max_steps = kDefaultMaxSteps,
                              const PermOptions& opts = {});

// Permutative normalisation that keeps marked redexes intact: when a choice
// or generator surfaces directly under a marked redex's abstraction, the two
// rearrangement steps fire as one unit so no mark ever sits on a non-redex.
// idem compares marks. The trace still lists elementary steps.
NormalizeResult labeled_p_normalize(const TermPtr& t,
                                    std::size_t max_steps = kDefaultMaxSteps,
                                    const PermOptions& opts = {});

enum class Strategy { PermOnly, LeftmostBeta, FullLeftmost, Complete };

struct ReduceResult {
  TermPtr term;
  std::vector<Step> trace;
  std::size_t beta_steps = 0;
  std::size_t perm_steps = 0;
};

// Runs the strategy to its normal form within max_steps elementary steps.
// FullLeftmost scans top-down, left to right, trying the permutative rules
// and then beta at each node; Complete iterates full-labeling steps.
ReduceResult reduce(const TermPtr& t, Strategy strat,
                    std::size_t max_steps = kDefaultMaxSteps,
                    const PermOptions& opts = {});

}  // namespace pel
