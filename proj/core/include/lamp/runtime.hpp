#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "lamp/syntax.hpp"

namespace lamp {

enum class CellState { Empty, Filled, Consumed };

struct ChannelCell {
  std::string name;
  CellState state = CellState::Empty;
  Term value;
};

struct RuntimeOptions {
  std::uint64_t seed = 0;
  unsigned timeout_ms = 5000;
};

struct DeadlockReport {
  std::vector<std::string> blocked;  // printed terms of workers that could not finish
  std::vector<ChannelCell> cells;
};

std::string describe(const DeadlockReport& r);

// Runs each top-level parallel component of the program's Δ terms on its own
// thread. Channel transmissions across components go through one-shot cells.
// Returns the final components in worker order. Throws InvariantViolation on
// a double fill or consume, or if the joined result still has a redex.
std::variant<std::vector<Term>, DeadlockReport> run_concurrent(const Sequent& program,
                                                                const RuntimeOptions& opts = {});

// Components of all Δ terms, in order.
std::vector<Term> program_components(const Sequent& program);

// Multiset equality of component lists.
bool same_components(std::vector<Term> a, std::vector<Term> b);

}  // namespace lamp
