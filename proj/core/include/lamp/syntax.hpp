#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lamp {

// Child indices: App fun=0 arg=1, Par left=0 right=1, Send/Dist/Close body=0.
using Path = std::vector<int>;

enum class TermKind { Unit, Var, App, Send, Dist, Par, Close };

class Term {
 public:
  Term();  // the terminated process

  static Term unit();
  static Term var(std::string name);
  static Term app(Term fun, Term arg);
  static Term send(std::string chan, Term body);
  static Term dist(std::string chan1, std::string chan2, Term body);
  static Term par(Term left, Term right);
  static Term close(Term body);

  TermKind kind() const;
  bool is(TermKind k) const { return kind() == k; }
  const std::string& name() const;   // Var name, Send chan, Dist chan1
  const std::string& name2() const;  // Dist chan2
  std::size_t arity() const;
  const Term& child(std::size_t i) const;
  const Term& body() const { return child(0); }
  const Term& fun() const { return child(0); }
  const Term& arg() const { return child(1); }
  const Term& left() const { return child(0); }
  const Term& right() const { return child(1); }

  std::size_t size() const;  // node count

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

enum class TypeKind { Atom, Bot, Lolli, ParT };

class Type {
 public:
  Type();  // bot

  static Type atom(std::string name);
  static Type bot();
  static Type lolli(Type a, Type b);
  static Type parr(Type a, Type b);

  TypeKind kind() const;
  bool is(TypeKind k) const { return kind() == k; }
  const std::string& name() const;
  const Type& left() const;
  const Type& right() const;

  friend bool operator==(const Type& a, const Type& b);
  friend std::strong_ordering operator<=>(const Type& a, const Type& b);

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Decl {
  std::string name;
  Type type;
  friend bool operator==(const Decl&, const Decl&) = default;
  friend auto operator<=>(const Decl&, const Decl&) = default;
};

struct Entry {
  Term term;
  std::optional<Type> type;  // nullopt only for close(...) entries
  friend bool operator==(const Entry&, const Entry&) = default;
  friend std::strong_ordering operator<=>(const Entry& a, const Entry& b);
};

// Type hints written as `(x : T)` on a variable or `(out x. t : T)` on a
// binder. Keyed by name, which is safe because binder names are unique.
struct Annotations {
  std::map<std::string, Type> var_types;
  std::map<std::string, Type> send_types;
  bool empty() const { return var_types.empty() && send_types.empty(); }
};

struct Sequent {
  std::vector<Decl> gamma;
  std::vector<Entry> delta;
  Annotations annotations;

  // Annotations are hints for reconstruction and do not take part in equality.
  friend bool operator==(const Sequent& a, const Sequent& b) {
    return a.gamma == b.gamma && a.delta == b.delta;
  }
};

enum class ParseErrorKind { Syntax, LamWithoutOccurrence, DuplicateBinder, UntypedEntry, BadAnnotation };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, int column, const std::string& msg);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int column_;
};

class InvalidPath : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Raised when an internal check that the metatheory guarantees fails.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Sequent parse_program(std::string_view text);
Term parse_term(std::string_view text);
Type parse_type(std::string_view text);

std::string print_term(const Term& t);
std::string print_type(const Type& t);
std::string print_entry(const Entry& e);
std::string print_sequent(const Sequent& s);

std::vector<Path> occurrences(const Term& t, const std::string& x);
bool occurs_free(const Term& t, const std::string& x);
std::multiset<std::string> free_vars(const Term& t);
std::vector<std::string> binders(const Term& t);
// Every name in t, free or bound.
std::set<std::string> names(const Term& t);

Term substitute(const Term& t, const std::string& x, const Term& s);

std::vector<Term> flatten_par(const Term& t);
// Right-nested parallel composition; requires a non-empty list.
Term join_par(const std::vector<Term>& parts);
// Path of component i inside join_par of n components.
Path join_path(std::size_t i, std::size_t n);

bool is_simple(const Path& path, const Term& root);
const Term& subterm_at(const Term& root, const Path& path);
Term replace_at(const Term& root, const Path& path, const Term& replacement);
bool is_prefix(const Path& prefix, const Path& path);

}  // namespace lamp
