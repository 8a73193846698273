#include <algorithm>
#include <array>

#include "lamp/typing.hpp"

namespace lamp {

namespace {

constexpr std::array<const char*, 7> kRuleNames{"Ax", "LolliI", "LolliE", "ParrI", "ParrE", "BotI", "BotE"};

template <class T>
std::vector<T> sorted(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  return v;
}

template <class T>
bool same_multiset(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() && sorted(a) == sorted(b);
}

template <class T>
std::vector<T> without(const std::vector<T>& v, std::size_t i) {
  std::vector<T> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k != i) out.push_back(v[k]);
  }
  return out;
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Remove one entry with the given term and type; false if absent.
bool take(std::vector<Entry>& v, const Term& t, const std::optional<Type>& ty) {
  Entry e{t, ty};
  auto it = std::find(v.begin(), v.end(), e);
  if (it == v.end()) return false;
  v.erase(it);
  return true;
}

bool take_decl(std::vector<Decl>& v, const std::string& name, Type* ty) {
  auto it = std::find_if(v.begin(), v.end(), [&](const Decl& d) { return d.name == name; });
  if (it == v.end()) return false;
  if (ty) *ty = it->type;
  v.erase(it);
  return true;
}

using Verdict = std::optional<std::string>;

Verdict check_ax(const Derivation& d) {
  const auto& c = d.conclusion;
  if (c.gamma.size() != 1 || c.delta.size() != 1) return "Ax: conclusion must be x:A => x:A";
  const auto& e = c.delta[0];
  if (!e.term.is(TermKind::Var) || e.term.name() != c.gamma[0].name || !e.type || !(*e.type == c.gamma[0].type)) {
    return "Ax: conclusion must be x:A => x:A";
  }
  return std::nullopt;
}

Verdict check_bot_i(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p = d.premises[0].conclusion;
  if (!same_multiset(c.gamma, p.gamma)) return "BotI: contexts differ";
  auto delta = c.delta;
  if (!take(delta, Term::unit(), Type::bot())) return "BotI: conclusion lacks * : bot";
  if (!same_multiset(delta, p.delta)) return "BotI: premise must be the conclusion without * : bot";
  return std::nullopt;
}

Verdict check_bot_e(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p = d.premises[0].conclusion;
  if (!same_multiset(c.gamma, p.gamma)) return "BotE: contexts differ";
  for (std::size_t i = 0; i < c.delta.size(); ++i) {
    const auto& e = c.delta[i];
    if (!e.term.is(TermKind::Close) || e.type) continue;
    auto expect = without(c.delta, i);
    expect.push_back({e.term.body(), Type::bot()});
    if (same_multiset(expect, p.delta)) return std::nullopt;
  }
  return "BotE: no close(t) entry matches a premise entry t : bot";
}

Verdict check_parr_i(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p = d.premises[0].conclusion;
  if (!same_multiset(c.gamma, p.gamma)) return "ParrI: contexts differ";
  for (std::size_t i = 0; i < c.delta.size(); ++i) {
    const auto& e = c.delta[i];
    if (!e.term.is(TermKind::Par) || !e.type || !e.type->is(TypeKind::ParT)) continue;
    auto expect = without(c.delta, i);
    expect.push_back({e.term.left(), e.type->left()});
    expect.push_back({e.term.right(), e.type->right()});
    if (same_multiset(expect, p.delta)) return std::nullopt;
  }
  return "ParrI: no s|t : A par B entry matches premise entries s : A, t : B";
}

Verdict check_lolli_i(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p = d.premises[0].conclusion;
  std::string reason = "LolliI: no abstraction entry matches the premise";
  for (std::size_t i = 0; i < c.delta.size(); ++i) {
    const auto& e = c.delta[i];
    if (!e.term.is(TermKind::Send) || !e.type || !e.type->is(TypeKind::Lolli)) continue;
    const std::string& x = e.term.name();
    auto rest = without(c.delta, i);
    auto expect = rest;
    expect.push_back({e.term.body(), e.type->right()});
    if (!same_multiset(expect, p.delta)) continue;
    auto gamma = c.gamma;
    gamma.push_back({x, e.type->left()});
    if (!same_multiset(gamma, p.gamma)) {
      reason = "LolliI: premise context must be the conclusion context plus " + x + " : " +
               print_type(e.type->left());
      continue;
    }
    bool in_body = occurs_free(e.term.body(), x);
    bool in_rest = std::any_of(rest.begin(), rest.end(), [&](const Entry& r) { return occurs_free(r.term, x); });
    if (!in_body && !in_rest) {
      reason = "LolliI: " + x + " occurs neither in the body nor in the other conclusions";
      continue;
    }
    return std::nullopt;
  }
  return reason;
}

Verdict check_lolli_e(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p1 = d.premises[0].conclusion;
  const auto& p2 = d.premises[1].conclusion;
  if (!same_multiset(c.gamma, concat(p1.gamma, p2.gamma))) return "LolliE: context is not the union of the premises";
  for (std::size_t i = 0; i < c.delta.size(); ++i) {
    const auto& e = c.delta[i];
    if (!e.term.is(TermKind::App) || !e.type) continue;
    const Term& s = e.term.fun();
    const Term& t = e.term.arg();
    for (std::size_t j = 0; j < p1.delta.size(); ++j) {
      const auto& f = p1.delta[j];
      if (!(f.term == s) || !f.type || !f.type->is(TypeKind::Lolli) || !(f.type->right() == *e.type)) continue;
      auto d2 = p2.delta;
      if (!take(d2, t, f.type->left())) continue;
      if (same_multiset(without(c.delta, i), concat(without(p1.delta, j), d2))) return std::nullopt;
    }
  }
  return "LolliE: no application entry s t : B matches s : A -o B and t : A in the premises";
}

Verdict check_parr_e(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p1 = d.premises[0].conclusion;
  const auto& p2 = d.premises[1].conclusion;
  const auto& p3 = d.premises[2].conclusion;
  for (std::size_t i = 0; i < c.delta.size(); ++i) {
    const auto& e = c.delta[i];
    if (!e.term.is(TermKind::Dist) || !e.type || !e.type->is(TypeKind::Bot)) continue;
    Type a;
    Type b;
    auto g2 = p2.gamma;
    auto g3 = p3.gamma;
    if (!take_decl(g2, e.term.name(), &a) || !take_decl(g3, e.term.name2(), &b)) continue;
    auto d1 = p1.delta;
    if (!take(d1, e.term.body(), Type::parr(a, b))) continue;
    if (!same_multiset(c.gamma, concat(concat(p1.gamma, g2), g3))) continue;
    if (same_multiset(without(c.delta, i), concat(concat(d1, p2.delta), p3.delta))) return std::nullopt;
  }
  return "ParrE: no binary output entry matches the premises";
}

Verdict check_node(const Derivation& d) {
  if (auto bad = check_well_formed(d.conclusion)) return *bad;
  if (d.premises.size() != rule_arity(d.rule)) {
    return std::string(rule_name(d.rule)) + ": expected " + std::to_string(rule_arity(d.rule)) + " premises";
  }
  if (d.premises.size() > 1) {
    std::vector<std::set<std::string>> vars;
    for (const auto& p : d.premises) vars.push_back(sequent_vars(p.conclusion));
    for (std::size_t i = 0; i < vars.size(); ++i) {
      for (std::size_t j = i + 1; j < vars.size(); ++j) {
        for (const auto& v : vars[i]) {
          if (vars[j].count(v)) {
            return std::string(rule_name(d.rule)) + ": premises " + std::to_string(i) + " and " + std::to_string(j) +
                   " share variable " + v;
          }
        }
      }
    }
  }
  switch (d.rule) {
    case Rule::Ax: return check_ax(d);
    case Rule::BotI: return check_bot_i(d);
    case Rule::BotE: return check_bot_e(d);
    case Rule::ParrI: return check_parr_i(d);
    case Rule::LolliI: return check_lolli_i(d);
    case Rule::LolliE: return check_lolli_e(d);
    case Rule::ParrE: return check_parr_e(d);
  }
  return "unknown rule";
}

std::optional<RuleViolation> check_at(const Derivation& d, Path& path) {
  if (auto bad = check_node(d)) return RuleViolation{path, *bad};
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto bad = check_at(d.premises[i], path)) return bad;
    path.pop_back();
  }
  return std::nullopt;
}

}  // namespace

const char* rule_name(Rule r) { return kRuleNames[static_cast<std::size_t>(r)]; }

std::optional<Rule> rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
    if (name == kRuleNames[i]) return static_cast<Rule>(i);
  }
  return std::nullopt;
}

std::size_t rule_arity(Rule r) {
  switch (r) {
    case Rule::Ax: return 0;
    case Rule::LolliE: return 2;
    case Rule::ParrE: return 3;
    default: return 1;
  }
}

std::size_t Derivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

std::set<std::string> sequent_vars(const Sequent& s) {
  std::set<std::string> out;
  for (const auto& d : s.gamma) out.insert(d.name);
  for (const auto& e : s.delta) {
    auto n = names(e.term);
    out.insert(n.begin(), n.end());
  }
  return out;
}

std::optional<std::string> check_well_formed(const Sequent& s) {
  std::set<std::string> seen;
  for (const auto& d : s.gamma) {
    if (!seen.insert(d.name).second) return "variable " + d.name + " declared twice";
  }
  for (const auto& e : s.delta) {
    if (!e.type && !e.term.is(TermKind::Close)) return "untyped entry " + print_term(e.term) + " is not close(...)";
  }
  return std::nullopt;
}

std::optional<RuleViolation> check_derivation(const Derivation& d) {
  Path path;
  return check_at(d, path);
}

}  // namespace lamp
