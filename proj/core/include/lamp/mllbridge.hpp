#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lamp/typing.hpp"

namespace lamp {

struct MllSequent {
  std::vector<Type> left;
  std::vector<Type> right;
  friend bool operator==(const MllSequent&, const MllSequent&) = default;
};

enum class MllRule { AxId, AxBot, BotR, LolliL, LolliR, ParrL, ParrR, Cut };

const char* mll_rule_name(MllRule r);
std::optional<MllRule> mll_rule_from_name(std::string_view name);
std::size_t mll_rule_arity(MllRule r);

struct MllDerivation {
  MllRule rule = MllRule::AxId;
  MllSequent conclusion;
  std::vector<MllDerivation> premises;

  std::size_t node_count() const;
};

std::string print_mll_sequent(const MllSequent& s);
MllSequent parse_mll_sequent(std::string_view text);

std::optional<RuleViolation> check_mll(const MllDerivation& d);

// Γ types on the left, types of the typed Δ entries on the right.
MllSequent erase(const Sequent& s);

// Multiset equality of both sides.
bool same_mll_sequent(const MllSequent& a, const MllSequent& b);

MllDerivation nmll_to_mll(const Derivation& d);

// Fresh term variables are c0, c1, ... assigned in a left-to-right traversal.
Derivation mll_to_nmll(const MllDerivation& d);

std::string serialize(const MllDerivation& d);
MllDerivation read_mll_derivation(std::string_view text);

}  // namespace lamp
