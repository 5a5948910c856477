#pragma once
// Random term generation and the executable meta-theory checks.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "pel/beta.hpp"
#include "pel/perm.hpp"
#include "pel/projective.hpp"
#include "pel/source.hpp"
#include "pel/term.hpp"

namespace pel {

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t max_size = 25;
  std::size_t max_labels = 4;
  bool typed_only = false;
  std::size_t var_pool = 3;  // free-variable names drawn from x, y, z, u, v, w
};

// Label-closed, well-labeled; deterministic in the rng state.
TermPtr gen_term(const GenConfig& cfg, std::mt19937_64& rng);

// Closed term built by sampling a typing derivation, so infer succeeds.
// Throws GenerationExhausted when the retry limit runs out.
TermPtr gen_typed_term(const GenConfig& cfg, std::mt19937_64& rng);

SourcePtr gen_source(const GenConfig& cfg, std::mt19937_64& rng,
                     bool allow_sums = true);

// An instance H, a, N for the projective simulation: the label is free in
// the body (though it may not occur), everything else label-closed.
struct HeadInstance {
  HeadContext context;
  Label free_label;
  TermPtr body;
};
HeadInstance gen_head_instance(const GenConfig& cfg, std::mt19937_64& rng);

// Greedy minimization: repeatedly move to the smallest label-closed
// subterm on which failing still holds.
TermPtr shrink(const TermPtr& t,
               const std::function<bool(const TermPtr&)>& failing);

struct RandResult {
  TermPtr term;
  std::size_t steps = 0;
  bool exhausted = false;
};

// Uniformly random applicable step (permutative or beta) until none is
// left or the budget runs out.
RandResult randomized_reduce(const TermPtr& t, std::mt19937_64& rng,
                             std::size_t max_steps = kDefaultMaxSteps,
                             const PermOptions& opts = {});

struct Failure {
  std::uint64_t seed = 0;  // per-trial seed, enough to replay
  std::string message;
  std::string counterexample;
};

struct PropertyReport {
  std::string property;
  std::size_t trials = 0;
  std::size_t exhausted = 0;  // budget exhaustions, tracked separately
  std::vector<Failure> failures;
  double elapsed_seconds = 0;
  bool ok() const { return failures.empty(); }
  std::string summary() const;
};

PropertyReport check_local_confluence(const GenConfig& cfg, std::size_t trials);
PropertyReport check_diamond_complete(const GenConfig& cfg, std::size_t trials);
PropertyReport check_church_rosser(const GenConfig& cfg, std::size_t trials);
PropertyReport check_projective_simulation(const GenConfig& cfg,
                                           std::size_t trials);
PropertyReport check_cbv_simulation(const GenConfig& cfg, std::size_t trials);
PropertyReport check_perm_sn_certified(const GenConfig& cfg,
                                       std::size_t trials);
PropertyReport check_typed_sn(const GenConfig& cfg, std::size_t trials);

// Corner peaks always prepended to the local-confluence trials.
const std::vector<std::string>& confluence_corner_terms();

}  // namespace pel
