#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lamp/syntax.hpp"

namespace lamp {

enum class Rule { Ax, LolliI, LolliE, ParrI, ParrE, BotI, BotE };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
std::size_t rule_arity(Rule r);

struct Derivation {
  Rule rule = Rule::Ax;
  Sequent conclusion;
  std::vector<Derivation> premises;

  std::size_t node_count() const;
};

// Path into a derivation tree: premise indices from the root.
struct RuleViolation {
  Path node;
  std::string message;
};

// nullopt means the derivation is valid.
std::optional<RuleViolation> check_derivation(const Derivation& d);

// Every name occurring in a sequent: declared variables plus all names in Δ.
std::set<std::string> sequent_vars(const Sequent& s);

// Well-formedness of one sequent: distinct declarations, untyped entries are
// close(...). Returns a message on failure.
std::optional<std::string> check_well_formed(const Sequent& s);

enum class TypeErrorKind { UnsatisfiableSplit, UnificationFailure, MissingAnnotation, LinearityViolation };

struct TypeError {
  TypeErrorKind kind;
  std::string subject;  // printed subterm or sequent the error is about
  std::string message;
};

const char* type_error_name(TypeErrorKind k);
std::string describe(const TypeError& e);

struct ReconstructOptions {
  // Metavariables left open after search are instantiated with bot. Any
  // instantiation is valid, and bot keeps the subformula closure unchanged.
  bool default_unsolved_to_bot = true;
  bool memoize_failures = true;
};

std::variant<Derivation, TypeError> reconstruct(const Sequent& goal, const ReconstructOptions& opts = {});

struct LinearityViolation {
  std::string name;
  std::size_t use_count = 0;  // Var nodes with this name, bound or free
  std::size_t binder_count = 0;
  bool declared = false;
};

std::optional<LinearityViolation> check_channel_linearity(const Sequent& s);

class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// d1 concludes Σ ⇒ t:A, Θ with t at index t_index of its Δ; d2 concludes
// Γ, x:A ⇒ Δ. Produces a derivation of Γ, Σ ⇒ Δ[t/x], Θ.
Derivation subst_derivation(const Derivation& d1, std::size_t t_index, const Derivation& d2, const std::string& x);

enum class ShapeKind { Value, HeadVar, BottomLike };
enum class ValueKind { LambdaOrChannel, Parallel };

struct NormalShape {
  ShapeKind kind = ShapeKind::BottomLike;
  ValueKind value = ValueKind::LambdaOrChannel;  // meaningful for Value
  std::string head;                               // meaningful for HeadVar
  std::vector<Term> stack;                        // meaningful for HeadVar
};

class ShapeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

NormalShape classify_normal(const Term& t, const Type& ty);

struct SubformulaCounterexample {
  Path node;
  Type type;
};

std::optional<SubformulaCounterexample> check_subformula(const Derivation& d);

// Subterms at simple positions never bind a channel used in the surrounding
// simple context. Returns a description of the first offending binder.
std::optional<std::string> check_no_freaks(const Sequent& s);

// Subformulas of a type, including the type itself.
void collect_subformulas(const Type& t, std::set<Type>& out);

// S-expression form: (Rule "sequent" premise*), two-space indentation.
std::string serialize(const Derivation& d);
Derivation read_derivation(std::string_view text);

}  // namespace lamp
