#include "lamp/syntax.hpp"

#include <algorithm>

namespace lamp {

struct Term::Node {
  TermKind kind;
  std::string a;
  std::string b;
  std::vector<Term> kids;
  std::size_t size;
};

namespace {

std::size_t kids_size(const std::vector<Term>& kids) {
  std::size_t s = 1;
  for (const auto& k : kids) s += k.size();
  return s;
}

}  // namespace

Term::Term() {
  static const auto unit = std::make_shared<const Node>(Node{TermKind::Unit, "", "", {}, 1});
  node_ = unit;
}

Term Term::unit() { return Term(); }

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), "", {}, 1}));
}

Term Term::app(Term fun, Term arg) {
  std::vector<Term> kids{std::move(fun), std::move(arg)};
  auto s = kids_size(kids);
  return Term(std::make_shared<const Node>(Node{TermKind::App, "", "", std::move(kids), s}));
}

Term Term::send(std::string chan, Term body) {
  std::vector<Term> kids{std::move(body)};
  auto s = kids_size(kids);
  return Term(std::make_shared<const Node>(Node{TermKind::Send, std::move(chan), "", std::move(kids), s}));
}

Term Term::dist(std::string chan1, std::string chan2, Term body) {
  std::vector<Term> kids{std::move(body)};
  auto s = kids_size(kids);
  return Term(std::make_shared<const Node>(
      Node{TermKind::Dist, std::move(chan1), std::move(chan2), std::move(kids), s}));
}

Term Term::par(Term left, Term right) {
  std::vector<Term> kids{std::move(left), std::move(right)};
  auto s = kids_size(kids);
  return Term(std::make_shared<const Node>(Node{TermKind::Par, "", "", std::move(kids), s}));
}

Term Term::close(Term body) {
  std::vector<Term> kids{std::move(body)};
  auto s = kids_size(kids);
  return Term(std::make_shared<const Node>(Node{TermKind::Close, "", "", std::move(kids), s}));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->a; }
const std::string& Term::name2() const { return node_->b; }
std::size_t Term::arity() const { return node_->kids.size(); }
std::size_t Term::size() const { return node_->size; }

const Term& Term::child(std::size_t i) const {
  if (i >= node_->kids.size()) throw InvalidPath("term has no child " + std::to_string(i));
  return node_->kids[i];
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == std::strong_ordering::equal; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.a <=> y.a; c != 0) return c;
  if (auto c = x.b <=> y.b; c != 0) return c;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (auto c = x.kids[i] <=> y.kids[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

struct Type::Node {
  TypeKind kind;
  std::string name;
  Type l;
  Type r;
};

// A null node encodes bot, so Type() needs no allocation and Node can hold
// Type members without infinite recursion.
Type::Type() = default;

Type Type::atom(std::string name) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Atom, std::move(name), Type(), Type()}));
}

Type Type::bot() { return Type(); }

Type Type::lolli(Type a, Type b) {
  return Type(std::make_shared<const Node>(Node{TypeKind::Lolli, "", std::move(a), std::move(b)}));
}

Type Type::parr(Type a, Type b) {
  return Type(std::make_shared<const Node>(Node{TypeKind::ParT, "", std::move(a), std::move(b)}));
}

TypeKind Type::kind() const { return node_ ? node_->kind : TypeKind::Bot; }

const std::string& Type::name() const {
  static const std::string none;
  return node_ ? node_->name : none;
}

const Type& Type::left() const {
  if (!node_ || node_->kind == TypeKind::Atom) throw InvalidPath("type has no left component");
  return node_->l;
}

const Type& Type::right() const {
  if (!node_ || node_->kind == TypeKind::Atom) throw InvalidPath("type has no right component");
  return node_->r;
}

bool operator==(const Type& a, const Type& b) { return (a <=> b) == std::strong_ordering::equal; }

std::strong_ordering operator<=>(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case TypeKind::Bot:
      return std::strong_ordering::equal;
    case TypeKind::Atom:
      return a.name() <=> b.name();
    default:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
  }
}

std::strong_ordering operator<=>(const Entry& a, const Entry& b) {
  if (auto c = a.term <=> b.term; c != 0) return c;
  if (a.type.has_value() != b.type.has_value()) return a.type.has_value() ? std::strong_ordering::greater : std::strong_ordering::less;
  if (!a.type) return std::strong_ordering::equal;
  return *a.type <=> *b.type;
}

ParseError::ParseError(ParseErrorKind kind, int line, int column, const std::string& msg)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

void collect_occurrences(const Term& t, const std::string& x, Path& cur, std::vector<Path>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (t.name() == x) out.push_back(cur);
      return;
    case TermKind::Send:
      if (t.name() == x) return;
      break;
    case TermKind::Dist:
      if (t.name() == x || t.name2() == x) return;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(static_cast<int>(i));
    collect_occurrences(t.child(i), x, cur, out);
    cur.pop_back();
  }
}

void collect_free(const Term& t, std::vector<std::string>& bound, std::multiset<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
      if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
      return;
    case TermKind::Send:
      bound.push_back(t.name());
      collect_free(t.body(), bound, out);
      bound.pop_back();
      return;
    case TermKind::Dist:
      bound.push_back(t.name());
      bound.push_back(t.name2());
      collect_free(t.body(), bound, out);
      bound.resize(bound.size() - 2);
      return;
    default:
      for (std::size_t i = 0; i < t.arity(); ++i) collect_free(t.child(i), bound, out);
  }
}

void collect_binders(const Term& t, std::vector<std::string>& out) {
  if (t.is(TermKind::Send)) out.push_back(t.name());
  if (t.is(TermKind::Dist)) {
    out.push_back(t.name());
    out.push_back(t.name2());
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_binders(t.child(i), out);
}

void collect_names(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Var:
    case TermKind::Send:
      out.insert(t.name());
      break;
    case TermKind::Dist:
      out.insert(t.name());
      out.insert(t.name2());
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) collect_names(t.child(i), out);
}

void collect_spine(const Term& t, std::vector<Term>& out) {
  if (t.is(TermKind::Par)) {
    collect_spine(t.left(), out);
    collect_spine(t.right(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::vector<Path> occurrences(const Term& t, const std::string& x) {
  std::vector<Path> out;
  Path cur;
  collect_occurrences(t, x, cur, out);
  return out;
}

bool occurs_free(const Term& t, const std::string& x) {
  switch (t.kind()) {
    case TermKind::Unit:
      return false;
    case TermKind::Var:
      return t.name() == x;
    case TermKind::Send:
      return t.name() != x && occurs_free(t.body(), x);
    case TermKind::Dist:
      return t.name() != x && t.name2() != x && occurs_free(t.body(), x);
    default:
      for (std::size_t i = 0; i < t.arity(); ++i) {
        if (occurs_free(t.child(i), x)) return true;
      }
      return false;
  }
}

std::multiset<std::string> free_vars(const Term& t) {
  std::multiset<std::string> out;
  std::vector<std::string> bound;
  collect_free(t, bound, out);
  return out;
}

std::vector<std::string> binders(const Term& t) {
  std::vector<std::string> out;
  collect_binders(t, out);
  return out;
}

std::set<std::string> names(const Term& t) {
  std::set<std::string> out;
  collect_names(t, out);
  return out;
}

Term substitute(const Term& t, const std::string& x, const Term& s) {
  switch (t.kind()) {
    case TermKind::Unit:
      return t;
    case TermKind::Var:
      return t.name() == x ? s : t;
    case TermKind::Send:
      if (t.name() == x) return t;
      return Term::send(t.name(), substitute(t.body(), x, s));
    case TermKind::Dist:
      if (t.name() == x || t.name2() == x) return t;
      return Term::dist(t.name(), t.name2(), substitute(t.body(), x, s));
    case TermKind::App:
      return Term::app(substitute(t.fun(), x, s), substitute(t.arg(), x, s));
    case TermKind::Par:
      return Term::par(substitute(t.left(), x, s), substitute(t.right(), x, s));
    case TermKind::Close:
      return Term::close(substitute(t.body(), x, s));
  }
  return t;
}

std::vector<Term> flatten_par(const Term& t) {
  std::vector<Term> out;
  collect_spine(t, out);
  return out;
}

Term join_par(const std::vector<Term>& parts) {
  if (parts.empty()) throw std::invalid_argument("join_par of an empty list");
  Term acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Term::par(parts[i], acc);
  return acc;
}

Path join_path(std::size_t i, std::size_t n) {
  Path p(i, 1);
  if (i + 1 < n) p.push_back(0);
  return p;
}

const Term& subterm_at(const Term& root, const Path& path) {
  const Term* cur = &root;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity()) throw InvalidPath("invalid path");
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return *cur;
}

namespace {

Term rebuild(const Term& t, std::size_t i, Term kid) {
  switch (t.kind()) {
    case TermKind::App:
      return i == 0 ? Term::app(std::move(kid), t.arg()) : Term::app(t.fun(), std::move(kid));
    case TermKind::Par:
      return i == 0 ? Term::par(std::move(kid), t.right()) : Term::par(t.left(), std::move(kid));
    case TermKind::Send:
      return Term::send(t.name(), std::move(kid));
    case TermKind::Dist:
      return Term::dist(t.name(), t.name2(), std::move(kid));
    case TermKind::Close:
      return Term::close(std::move(kid));
    default:
      throw InvalidPath("leaf has no children");
  }
}

Term replace_from(const Term& t, const Path& path, std::size_t depth, const Term& r) {
  if (depth == path.size()) return r;
  int i = path[depth];
  if (i < 0 || static_cast<std::size_t>(i) >= t.arity()) throw InvalidPath("invalid path");
  auto idx = static_cast<std::size_t>(i);
  return rebuild(t, idx, replace_from(t.child(idx), path, depth + 1, r));
}

}  // namespace

Term replace_at(const Term& root, const Path& path, const Term& replacement) {
  return replace_from(root, path, 0, replacement);
}

bool is_prefix(const Path& prefix, const Path& path) {
  return prefix.size() <= path.size() && std::equal(prefix.begin(), prefix.end(), path.begin());
}

bool is_simple(const Path& path, const Term& root) {
  const Term* cur = &root;
  for (int i : path) {
    if (i < 0 || static_cast<std::size_t>(i) >= cur->arity()) throw InvalidPath("invalid path");
    if (cur->is(TermKind::Par)) return false;
    cur = &cur->child(static_cast<std::size_t>(i));
  }
  return true;
}

}  // namespace lamp
