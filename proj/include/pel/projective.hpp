#pragma once
// Projections, head contexts, projective reduction, and exact outcome
// distributions.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pel/errors.hpp"
#include "pel/perm.hpp"
#include "pel/term.hpp"

namespace pel {

// Replaces every choice on label a by its branch i, stopping at a
// generator that rebinds a.
TermPtr project(const TermPtr& t, const Label& a, int i);

// H ::= [] | \x.H | H N, frames listed from the outside in.
struct HeadFrame {
  enum class K { Lambda, AppliedTo };
  K k = K::Lambda;
  Var var;      // Lambda
  TermPtr arg;  // AppliedTo
};
using HeadContext = std::vector<HeadFrame>;

TermPtr plug(const HeadContext& H, const TermPtr& t);

struct SplitHead {
  HeadContext context;
  Label label;
  TermPtr body;  // the term under the generator
};

// The unique decomposition t = H[!a.N] with maximal H, when the spine
// exposes a generator before any beta redex blocks it.
std::optional<SplitHead> split_head(const TermPtr& t);

// One projective step: both projected outcomes, each at weight 1/2.
std::optional<std::pair<TermPtr, TermPtr>> pi_step(const TermPtr& t);

// Exact dyadic probability num / 2^exp, kept in lowest terms.
struct Dyadic {
  boost::multiprecision::cpp_int num;
  unsigned exp = 0;

  void reduce();
  Dyadic halved() const;
  std::string str() const;  // "1", "3/8", ...

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic& a, const Dyadic& b);
  friend bool operator<(const Dyadic& a, const Dyadic& b);
};

Dyadic dyadic_zero();
Dyadic dyadic_one();

// Weighted outcomes, merged up to alpha equality. Entries keep insertion
// order; comparison and printing are order-independent.
class Distribution {
 public:
  void add(const TermPtr& t, const Dyadic& w);
  const std::vector<std::pair<TermPtr, Dyadic>>& entries() const {
    return entries_;
  }
  Dyadic total() const;
  bool same(const Distribution& other) const;

 private:
  std::vector<std::pair<TermPtr, Dyadic>> entries_;
  std::map<std::string, std::size_t> index_;  // alpha key -> slot
};

struct DistBudgetExceeded : Error {
  DistBudgetExceeded(std::string msg, Distribution partial_, Dyadic residual_)
      : Error(std::move(msg)),
        partial(std::move(partial_)),
        residual(std::move(residual_)) {}
  Distribution partial;
  Dyadic residual;  // mass still unresolved when the budget ran out
};

// Evaluates by head reduction: beta and permutative steps until the head
// exposes a generator, then a projective split at weight 1/2 each branch.
// Leaves are head-normal; their arguments are not evaluated further.
Distribution evaluate_dist(const TermPtr& t,
                           std::size_t budget = kDefaultMaxSteps);

// Reads a full normal form as a decision tree: outer sums split at 1/2,
// anything else is a leaf. Throws NotNormalForm.
Distribution dist_of_normal_form(const TermPtr& t);

// `probability<TAB>term`, by descending probability then term text.
std::string format_dist(const Distribution& d);

}  // namespace pel
