#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lamp/syntax.hpp"

namespace lamp {

enum class RedexKind { Beta, Comm, DistComm };

struct Redex {
  RedexKind kind = RedexKind::Beta;
  Path activator;
  std::vector<Path> receivers;  // Beta: none, Comm: x, DistComm: x then y
  std::string chan;             // bound name of the activator
  std::string chan2;            // second name for DistComm

  friend bool operator==(const Redex&, const Redex&) = default;
};

// "Beta", "Comm x" or "Dist x y".
std::string redex_label(const Redex& r);

class StaleRedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t comm_size(const Term& t);

// Leftmost-outermost (preorder by path) list of redexes.
std::vector<Redex> find_redexes(const Term& t);

// Contracts r without checking that it is current.
Term contract(const Term& t, const Redex& r);
// Checks r against find_redexes(t) first.
Term apply_redex(const Term& t, const Redex& r);

struct TraceStep {
  Redex redex;
  Term result;
};

struct Trace {
  Term initial;
  std::vector<TraceStep> steps;

  const Term& final_term() const { return steps.empty() ? initial : steps.back().result; }
};

std::string trace_label(const TraceStep& s);
// Line 0 is the initial term, then "step k: <label> => <term>".
std::string format_trace(const Trace& t, bool color = false);

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

// Always fires the first redex. Untyped terms can loop, hence the budget.
Trace normalize(const Term& t, std::size_t max_steps = kDefaultStepBudget);

struct Enumeration {
  std::set<Term> normal_forms;
  std::size_t states = 0;
  // Shortest and longest reduction sequences to a normal form; unset when
  // the state graph has a cycle.
  std::optional<std::size_t> min_steps;
  std::optional<std::size_t> max_steps;
};

// Explores every redex choice breadth-first. Throws BudgetExceeded when more
// than max_states distinct terms are visited.
Enumeration enumerate_normal_forms(const Term& t, std::size_t max_states);

bool is_value(const Term& t);

struct CbvStep {
  std::vector<Term> components;  // flattened after the step
  Redex redex;                   // addressed inside join_par of the input components
};

std::optional<CbvStep> cbv_step(const std::vector<Term>& components);

// Runs cbv_step until stuck. Trace terms are join_par of the components.
Trace normalize_cbv(const Term& t, std::size_t max_steps = kDefaultStepBudget);

}  // namespace lamp
