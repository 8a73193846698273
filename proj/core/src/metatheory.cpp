#include <algorithm>
#include <map>

#include "lamp/typing.hpp"

namespace lamp {

const char* type_error_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnsatisfiableSplit: return "UnsatisfiableSplit";
    case TypeErrorKind::UnificationFailure: return "UnificationFailure";
    case TypeErrorKind::MissingAnnotation: return "MissingAnnotation";
    case TypeErrorKind::LinearityViolation: return "LinearityViolation";
  }
  return "TypeError";
}

std::string describe(const TypeError& e) {
  return std::string(type_error_name(e.kind)) + " at " + e.subject + ": " + e.message;
}

namespace {

// Binder names are unique, so every Var node counts as a use of its name,
// whether or not a binder for it encloses the occurrence.
void count_uses(const Term& t, std::map<std::string, std::pair<std::size_t, std::size_t>>& counts) {
  if (t.is(TermKind::Var)) ++counts[t.name()].first;
  for (std::size_t i = 0; i < t.arity(); ++i) count_uses(t.child(i), counts);
}

}  // namespace

std::optional<LinearityViolation> check_channel_linearity(const Sequent& s) {
  std::map<std::string, std::pair<std::size_t, std::size_t>> counts;  // uses, binders
  std::set<std::string> declared;
  for (const auto& d : s.gamma) {
    declared.insert(d.name);
    counts[d.name];
  }
  for (const auto& e : s.delta) {
    count_uses(e.term, counts);
    for (const auto& b : binders(e.term)) ++counts[b].second;
  }
  for (const auto& [name, c] : counts) {
    bool decl = declared.count(name) > 0;
    bool ok = decl ? (c.first == 1 && c.second == 0) : (c.first == 1 && c.second == 1);
    if (!ok) return LinearityViolation{name, c.first, c.second, decl};
  }
  return std::nullopt;
}

namespace {

Derivation graft(const Derivation& d, const std::string& x, const Derivation& d1, const Term& t,
                 const std::vector<Entry>& theta) {
  const auto& g = d.conclusion.gamma;
  if (d.rule == Rule::Ax && g.size() == 1 && g[0].name == x) return d1;

  Derivation out;
  out.rule = d.rule;
  out.premises = d.premises;
  bool found = false;
  for (auto& p : out.premises) {
    const auto& pg = p.conclusion.gamma;
    if (std::any_of(pg.begin(), pg.end(), [&](const Decl& decl) { return decl.name == x; })) {
      p = graft(p, x, d1, t, theta);
      found = true;
      break;
    }
  }
  if (!found) throw PreconditionViolation("no premise declares " + x);

  for (const auto& decl : g) {
    if (decl.name != x) out.conclusion.gamma.push_back(decl);
  }
  for (const auto& decl : d1.conclusion.gamma) out.conclusion.gamma.push_back(decl);
  for (const auto& e : d.conclusion.delta) out.conclusion.delta.push_back({substitute(e.term, x, t), e.type});
  for (const auto& e : theta) out.conclusion.delta.push_back(e);
  return out;
}

}  // namespace

Derivation subst_derivation(const Derivation& d1, std::size_t t_index, const Derivation& d2, const std::string& x) {
  const auto& c1 = d1.conclusion;
  const auto& c2 = d2.conclusion;
  if (t_index >= c1.delta.size() || !c1.delta[t_index].type) {
    throw PreconditionViolation("t_index does not address a typed conclusion");
  }
  auto decl = std::find_if(c2.gamma.begin(), c2.gamma.end(), [&](const Decl& d) { return d.name == x; });
  if (decl == c2.gamma.end()) throw PreconditionViolation(x + " is not declared in the second derivation");
  if (!(decl->type == *c1.delta[t_index].type)) throw PreconditionViolation("type of t differs from the type of " + x);
  auto v1 = sequent_vars(c1);
  for (const auto& v : sequent_vars(c2)) {
    if (v1.count(v)) throw PreconditionViolation("derivations share variable " + v);
  }
  std::vector<Entry> theta;
  for (std::size_t i = 0; i < c1.delta.size(); ++i) {
    if (i != t_index) theta.push_back(c1.delta[i]);
  }
  return graft(d2, x, d1, c1.delta[t_index].term, theta);
}

NormalShape classify_normal(const Term& t, const Type& ty) {
  NormalShape out;
  if (t.is(TermKind::Send)) {
    if (!ty.is(TypeKind::Lolli)) throw ShapeViolation("abstraction typed " + print_type(ty));
    out.kind = ShapeKind::Value;
    out.value = ValueKind::LambdaOrChannel;
    return out;
  }
  if (t.is(TermKind::Par)) {
    if (!ty.is(TypeKind::ParT)) throw ShapeViolation("parallel composition typed " + print_type(ty));
    out.kind = ShapeKind::Value;
    out.value = ValueKind::Parallel;
    return out;
  }
  if (ty.is(TypeKind::Bot) || t.is(TermKind::Close)) {
    out.kind = ShapeKind::BottomLike;
    return out;
  }
  const Term* cur = &t;
  std::vector<Term> rev;
  while (cur->is(TermKind::App)) {
    rev.push_back(cur->arg());
    cur = &cur->fun();
  }
  if (!cur->is(TermKind::Var)) throw ShapeViolation("normal term " + print_term(t) + " has no head variable");
  out.kind = ShapeKind::HeadVar;
  out.head = cur->name();
  out.stack.assign(rev.rbegin(), rev.rend());
  return out;
}

void collect_subformulas(const Type& t, std::set<Type>& out) {
  if (!out.insert(t).second) return;
  if (t.is(TypeKind::Lolli) || t.is(TypeKind::ParT)) {
    collect_subformulas(t.left(), out);
    collect_subformulas(t.right(), out);
  }
}

namespace {

std::optional<SubformulaCounterexample> audit(const Derivation& d, const std::set<Type>& allowed, Path& path) {
  auto bad = [&](const Type& ty) -> std::optional<SubformulaCounterexample> {
    if (allowed.count(ty)) return std::nullopt;
    return SubformulaCounterexample{path, ty};
  };
  for (const auto& decl : d.conclusion.gamma) {
    if (auto c = bad(decl.type)) return c;
  }
  for (const auto& e : d.conclusion.delta) {
    if (!e.type) continue;
    if (auto c = bad(*e.type)) return c;
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto c = audit(d.premises[i], allowed, path)) return c;
    path.pop_back();
  }
  return std::nullopt;
}

void simple_positions(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  if (t.is(TermKind::Par)) return;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    cur.push_back(static_cast<int>(i));
    simple_positions(t.child(i), cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::optional<SubformulaCounterexample> check_subformula(const Derivation& d) {
  std::set<Type> allowed{Type::bot()};
  for (const auto& decl : d.conclusion.gamma) collect_subformulas(decl.type, allowed);
  for (const auto& e : d.conclusion.delta) {
    if (e.type) collect_subformulas(*e.type, allowed);
  }
  Path path;
  return audit(d, allowed, path);
}

std::optional<std::string> check_no_freaks(const Sequent& s) {
  for (const auto& e : s.delta) {
    std::vector<Path> positions;
    Path cur;
    simple_positions(e.term, cur, positions);
    for (const auto& p : positions) {
      const Term& u = subterm_at(e.term, p);
      for (const auto& z : binders(u)) {
        for (const auto& occ : occurrences(e.term, z)) {
          if (!is_prefix(p, occ)) {
            return "binder " + z + " inside " + print_term(u) + " is used in its simple context within " +
                   print_term(e.term);
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace lamp
