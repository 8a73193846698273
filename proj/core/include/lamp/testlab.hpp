#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lamp/mllbridge.hpp"
#include "lamp/reduction.hpp"
#include "lamp/typing.hpp"

namespace lamp {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_nodes = 12;  // derivation node count
  std::vector<std::string> atom_pool{"A", "B", "C"};
};

// Forward construction from axioms; variables are x0, x1, ... in creation
// order. Identical configs give identical derivations.
Derivation gen_derivation(const GenConfig& cfg);
MllDerivation gen_mll_derivation(const GenConfig& cfg);

// Seed of the i-th case of a suite run, for replay through gen_derivation.
std::uint64_t case_seed(const GenConfig& cfg, std::size_t i);

// Contracts one redex. The suite takes this as a parameter so that broken
// reducers can be checked against it.
using Stepper = std::function<Term(const Term&, const Redex&)>;

// The Δ terms joined in parallel.
Term joined_terms(const Sequent& s);
// Replaces the Δ terms by the n right-nested components of t, keeping types.
Sequent with_joined(const Sequent& s, const Term& t);
// Every one-step reduct of the joined Δ terms, as sequents.
std::vector<Sequent> one_step_reducts(const Sequent& s, const Stepper& step = contract);

struct Verdict {
  bool applicable = true;
  std::optional<std::string> failure;
};

Verdict prop_generated(const Derivation& d);
Verdict prop_reconstruct(const Sequent& s);
Verdict prop_linearity(const Sequent& s);
Verdict prop_no_freaks(const Sequent& s);
Verdict prop_step_decrement(const Sequent& s, const Stepper& step = contract);
Verdict prop_confluence(const Sequent& s, std::size_t max_comm_size = 6, std::size_t state_budget = 100'000);
Verdict prop_subject_reduction(const Sequent& s, const Stepper& step = contract);
// Terms with an applied send, or a binary output over a parallel body, have a
// redex. Every state of the normalization trace is checked.
Verdict prop_progress(const Sequent& s);
// Normal terms that still hold a binary output: the progress argument does
// not cover a body that is not a parallel composition.
Verdict note_stuck_dist(const Sequent& s);
Verdict prop_subformula(const Sequent& s);
Verdict prop_runtime(const Sequent& s, std::size_t seeds = 5);
Verdict prop_cbv(const Sequent& s);
Verdict prop_to_mll(const Derivation& d);
Verdict prop_to_nmll(const MllDerivation& d);

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string first_message;
  bool informational = false;  // failures here are observations, not errors
};

struct Report {
  std::vector<PropertyResult> results;
  bool ok() const;
};

// One line per property: name, cases, failures, first failing seed.
std::string format_report(const Report& r);

struct SuiteOptions {
  Stepper step = contract;
  std::size_t runtime_seeds = 5;
  bool runtime = true;
};

Report run_property_suite(std::size_t n_cases, const GenConfig& cfg, const SuiteOptions& opts = {});

}  // namespace lamp
