#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "lamp/typing.hpp"

namespace lamp {

namespace {

using Subst = std::map<std::string, Type>;

bool is_meta(const Type& t) { return t.is(TypeKind::Atom) && !t.name().empty() && t.name()[0] == '?'; }

Type resolve(const Type& t, const Subst& s) {
  switch (t.kind()) {
    case TypeKind::Bot: return t;
    case TypeKind::Atom: {
      if (!is_meta(t)) return t;
      auto it = s.find(t.name());
      return it == s.end() ? t : resolve(it->second, s);
    }
    case TypeKind::Lolli: return Type::lolli(resolve(t.left(), s), resolve(t.right(), s));
    case TypeKind::ParT: return Type::parr(resolve(t.left(), s), resolve(t.right(), s));
  }
  return t;
}

bool occurs(const std::string& meta, const Type& t) {
  switch (t.kind()) {
    case TypeKind::Atom: return t.name() == meta;
    case TypeKind::Lolli:
    case TypeKind::ParT: return occurs(meta, t.left()) || occurs(meta, t.right());
    default: return false;
  }
}

bool unify(const Type& a0, const Type& b0, Subst& s) {
  Type a = resolve(a0, s);
  Type b = resolve(b0, s);
  if (a == b) return true;
  if (is_meta(a)) {
    if (occurs(a.name(), b)) return false;
    s[a.name()] = b;
    return true;
  }
  if (is_meta(b)) return unify(b, a, s);
  if (a.kind() != b.kind()) return false;
  if (a.is(TypeKind::Lolli) || a.is(TypeKind::ParT)) {
    return unify(a.left(), b.left(), s) && unify(a.right(), b.right(), s);
  }
  return false;  // distinct atoms
}

struct Goal {
  std::vector<Decl> gamma;
  std::vector<Entry> delta;
};

Sequent as_sequent(const Goal& g) { return Sequent{g.gamma, g.delta, {}}; }

class Reconstructor {
 public:
  Reconstructor(const Annotations& ann, const ReconstructOptions& opts) : ann_(ann), opts_(opts) {}

  bool solve(const Goal& g, Subst& s, Derivation& out, TypeError& err) {
    std::string key;
    if (opts_.memoize_failures) {
      key = goal_key(g, s);
      if (auto it = failed_.find(key); it != failed_.end()) {
        err = it->second;
        return false;
      }
    }
    bool ok = solve_fresh(g, s, out, err);
    if (!ok && opts_.memoize_failures) failed_.emplace(key, err);
    return ok;
  }

 private:
  const Annotations& ann_;
  const ReconstructOptions& opts_;
  std::size_t next_meta_ = 0;
  std::map<std::string, TypeError> failed_;

  Type fresh() { return Type::atom("?" + std::to_string(next_meta_++)); }

  // A fresh type for the bound name x, honouring a `(x : T)` annotation.
  Type bound_type(const std::string& x) {
    auto it = ann_.var_types.find(x);
    return it != ann_.var_types.end() ? it->second : fresh();
  }

  std::string goal_key(const Goal& g, const Subst& s) const {
    std::string k;
    for (const auto& d : g.gamma) k += d.name + ":" + print_type(resolve(d.type, s)) + ";";
    k += "|-";
    for (const auto& e : g.delta) {
      k += print_term(e.term);
      if (e.type) k += ":" + print_type(resolve(*e.type, s));
      k += ";";
    }
    return k;
  }

  static TypeError error(TypeErrorKind k, std::string subject, std::string msg) {
    return TypeError{k, std::move(subject), std::move(msg)};
  }

  bool unary(Rule rule, const Goal& g, const Goal& premise, Subst& s, Derivation& out, TypeError& err) {
    Derivation sub;
    if (!solve(premise, s, sub, err)) return false;
    out = Derivation{rule, as_sequent(g), {std::move(sub)}};
    return true;
  }

  bool solve_fresh(const Goal& g, Subst& s, Derivation& out, TypeError& err) {
    for (std::size_t i = 0; i < g.delta.size(); ++i) {
      const Entry& e = g.delta[i];
      const Term& t = e.term;
      switch (t.kind()) {
        case TermKind::Close: {
          if (e.type) {
            err = error(TypeErrorKind::UnificationFailure, print_term(t), "close(...) conclusions carry no type");
            return false;
          }
          Goal p = g;
          p.delta[i] = Entry{t.body(), Type::bot()};
          return unary(Rule::BotE, g, p, s, out, err);
        }
        case TermKind::Unit: {
          if (!unify(*e.type, Type::bot(), s)) {
            err = error(TypeErrorKind::UnificationFailure, "*", "* has type bot, not " + print_type(resolve(*e.type, s)));
            return false;
          }
          Goal p = g;
          p.delta.erase(p.delta.begin() + static_cast<std::ptrdiff_t>(i));
          return unary(Rule::BotI, g, p, s, out, err);
        }
        case TermKind::Par: {
          Type a = fresh();
          Type b = fresh();
          if (!unify(*e.type, Type::parr(a, b), s)) {
            err = error(TypeErrorKind::UnificationFailure, print_term(t),
                        "parallel composition cannot have type " + print_type(resolve(*e.type, s)));
            return false;
          }
          Goal p = g;
          p.delta[i] = Entry{t.left(), a};
          p.delta.insert(p.delta.begin() + static_cast<std::ptrdiff_t>(i) + 1, Entry{t.right(), b});
          return unary(Rule::ParrI, g, p, s, out, err);
        }
        case TermKind::Send: {
          const std::string& x = t.name();
          if (auto it = ann_.send_types.find(x); it != ann_.send_types.end() && !unify(*e.type, it->second, s)) {
            err = error(TypeErrorKind::UnificationFailure, print_term(t),
                        "annotation " + print_type(it->second) + " conflicts with " + print_type(resolve(*e.type, s)));
            return false;
          }
          Type a = bound_type(x);
          Type b = fresh();
          if (!unify(*e.type, Type::lolli(a, b), s)) {
            err = error(TypeErrorKind::UnificationFailure, print_term(t),
                        "abstraction cannot have type " + print_type(resolve(*e.type, s)));
            return false;
          }
          bool used = occurs_free(t.body(), x);
          for (std::size_t k = 0; k < g.delta.size() && !used; ++k) used = k != i && occurs_free(g.delta[k].term, x);
          if (!used) {
            err = error(TypeErrorKind::LinearityViolation, print_term(t), x + " is bound but never used");
            return false;
          }
          Goal p = g;
          p.gamma.push_back(Decl{x, a});
          p.delta[i] = Entry{t.body(), b};
          return unary(Rule::LolliI, g, p, s, out, err);
        }
        default:
          break;
      }
    }

    if (g.gamma.size() == 1 && g.delta.size() == 1 && g.delta[0].term.is(TermKind::Var) &&
        g.delta[0].term.name() == g.gamma[0].name) {
      if (!unify(g.gamma[0].type, *g.delta[0].type, s)) {
        err = error(TypeErrorKind::UnificationFailure, g.gamma[0].name,
                    "declared " + print_type(resolve(g.gamma[0].type, s)) + " but used at " +
                        print_type(resolve(*g.delta[0].type, s)));
        return false;
      }
      out = Derivation{Rule::Ax, as_sequent(g), {}};
      return true;
    }

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < g.delta.size(); ++i) {
      if (g.delta[i].term.is(TermKind::App) || g.delta[i].term.is(TermKind::Dist)) candidates.push_back(i);
    }
    if (candidates.empty()) {
      err = error(TypeErrorKind::UnsatisfiableSplit, print_sequent(as_sequent(g)), "no typing rule applies");
      return false;
    }
    TypeError last;
    for (std::size_t i : candidates) {
      Subst trial = s;
      if (branch(g, i, trial, out, last)) {
        s = std::move(trial);
        return true;
      }
    }
    err = candidates.size() == 1
              ? last
              : error(TypeErrorKind::UnsatisfiableSplit, print_sequent(as_sequent(g)),
                      "no application or binary output can be split off");
    return false;
  }

  // Components of Γ declarations and Δ entries (other than `skip`) linked by
  // shared names. Each component lists node indices: [0, |Γ|) are
  // declarations, the rest are entries shifted by |Γ|.
  struct Component {
    std::vector<std::size_t> nodes;
    std::set<std::string> names;
  };

  static std::vector<Component> components(const Goal& g, std::size_t skip) {
    std::vector<std::set<std::string>> node_names;
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < g.gamma.size(); ++k) {
      node_names.push_back({g.gamma[k].name});
      ids.push_back(k);
    }
    for (std::size_t k = 0; k < g.delta.size(); ++k) {
      if (k == skip) continue;
      node_names.push_back(names(g.delta[k].term));
      ids.push_back(g.gamma.size() + k);
    }
    std::vector<std::size_t> parent(node_names.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::map<std::string, std::size_t> owner;
    for (std::size_t k = 0; k < node_names.size(); ++k) {
      for (const auto& n : node_names[k]) {
        auto [it, fresh] = owner.emplace(n, k);
        if (!fresh) parent[find(k)] = find(it->second);
      }
    }
    std::map<std::size_t, Component> by_root;
    for (std::size_t k = 0; k < node_names.size(); ++k) {
      auto& c = by_root[find(k)];
      c.nodes.push_back(ids[k]);
      c.names.insert(node_names[k].begin(), node_names[k].end());
    }
    std::vector<Component> out;
    for (auto& [root, c] : by_root) out.push_back(std::move(c));
    return out;
  }

  static bool touches(const Component& c, const std::set<std::string>& anchor) {
    return std::any_of(anchor.begin(), anchor.end(), [&](const std::string& n) { return c.names.count(n) > 0; });
  }

  // Try the branching rule on entry i.
  bool branch(const Goal& g, std::size_t i, Subst& s, Derivation& out, TypeError& err) {
    const Entry& e = g.delta[i];
    const Term& t = e.term;
    bool is_app = t.is(TermKind::App);
    if (!is_app && !unify(*e.type, Type::bot(), s)) {
      err = error(TypeErrorKind::UnificationFailure, print_term(t), "binary output has type bot");
      return false;
    }

    std::vector<std::set<std::string>> anchors;
    if (is_app) {
      anchors = {names(t.fun()), names(t.arg())};
    } else {
      anchors = {names(t.body()), {t.name()}, {t.name2()}};
    }
    auto comps = components(g, i);
    std::vector<int> fixed(comps.size(), -1);
    std::vector<std::size_t> isolated;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      for (std::size_t a = 0; a < anchors.size(); ++a) {
        if (!touches(comps[c], anchors[a])) continue;
        if (fixed[c] >= 0) {
          err = error(TypeErrorKind::UnsatisfiableSplit, print_term(t),
                      "premises would share a variable among " + *comps[c].names.begin() + "...");
          return false;
        }
        fixed[c] = static_cast<int>(a);
      }
      if (fixed[c] < 0) isolated.push_back(c);
    }

    if (isolated.size() > 12) {
      err = error(TypeErrorKind::UnsatisfiableSplit, print_term(t), "too many independent components to split");
      return false;
    }
    std::size_t arity = anchors.size();
    std::size_t choices = 1;
    for (std::size_t k = 0; k < isolated.size(); ++k) choices *= arity;
    std::size_t tried = 0;
    TypeError last;
    for (std::size_t code = 0; code < choices; ++code) {
      std::vector<int> assign = fixed;
      std::size_t rest = code;
      for (std::size_t c : isolated) {
        assign[c] = static_cast<int>(rest % arity);
        rest /= arity;
      }
      std::vector<Goal> parts(arity);
      std::vector<std::size_t> owner(g.gamma.size() + g.delta.size(), arity);
      for (std::size_t c = 0; c < comps.size(); ++c) {
        for (std::size_t node : comps[c].nodes) owner[node] = static_cast<std::size_t>(assign[c]);
      }
      Subst trial = s;
      for (std::size_t k = 0; k < g.gamma.size(); ++k) parts[owner[k]].gamma.push_back(g.gamma[k]);
      if (is_app) {
        Type a = fresh();
        parts[0].delta.push_back({t.fun(), Type::lolli(a, *e.type)});
        parts[1].delta.push_back({t.arg(), a});
      } else {
        Type a = bound_type(t.name());
        Type b = bound_type(t.name2());
        parts[0].delta.push_back({t.body(), Type::parr(a, b)});
        parts[1].gamma.push_back({t.name(), a});
        parts[2].gamma.push_back({t.name2(), b});
      }
      for (std::size_t k = 0; k < g.delta.size(); ++k) {
        if (k != i) parts[owner[g.gamma.size() + k]].delta.push_back(g.delta[k]);
      }
      ++tried;
      std::vector<Derivation> premises(arity);
      bool ok = true;
      for (std::size_t p = 0; p < arity && ok; ++p) ok = solve(parts[p], trial, premises[p], last);
      if (ok) {
        s = std::move(trial);
        out = Derivation{is_app ? Rule::LolliE : Rule::ParrE, as_sequent(g), std::move(premises)};
        return true;
      }
    }
    err = tried == 1 ? last
                     : error(TypeErrorKind::UnsatisfiableSplit, print_term(t),
                             "no assignment of independent components types both premises");
    return false;
  }
};

Type finish_type(const Type& t, const Subst& s, bool default_bot, std::set<std::string>& open) {
  Type r = resolve(t, s);
  std::function<Type(const Type&)> close = [&](const Type& u) -> Type {
    switch (u.kind()) {
      case TypeKind::Atom:
        if (!is_meta(u)) return u;
        open.insert(u.name());
        return default_bot ? Type::bot() : u;
      case TypeKind::Lolli: return Type::lolli(close(u.left()), close(u.right()));
      case TypeKind::ParT: return Type::parr(close(u.left()), close(u.right()));
      default: return u;
    }
  };
  return close(r);
}

void finish(Derivation& d, const Subst& s, bool default_bot, std::set<std::string>& open) {
  for (auto& decl : d.conclusion.gamma) decl.type = finish_type(decl.type, s, default_bot, open);
  for (auto& e : d.conclusion.delta) {
    if (e.type) e.type = finish_type(*e.type, s, default_bot, open);
  }
  for (auto& p : d.premises) finish(p, s, default_bot, open);
}

}  // namespace

std::variant<Derivation, TypeError> reconstruct(const Sequent& goal, const ReconstructOptions& opts) {
  if (auto bad = check_well_formed(goal)) {
    return TypeError{TypeErrorKind::LinearityViolation, print_sequent(goal), *bad};
  }
  if (auto v = check_channel_linearity(goal)) {
    std::string msg = v->name + " is used " + std::to_string(v->use_count) + " time(s) and is bound " +
                      std::to_string(v->binder_count) + " time(s)";
    if (v->declared) msg += " although it is declared";
    return TypeError{TypeErrorKind::LinearityViolation, v->name, msg};
  }

  Subst s;
  Goal g{goal.gamma, goal.delta};
  for (const auto& d : g.gamma) {
    auto it = goal.annotations.var_types.find(d.name);
    if (it != goal.annotations.var_types.end() && !unify(d.type, it->second, s)) {
      return TypeError{TypeErrorKind::UnificationFailure, d.name,
                       "annotation " + print_type(it->second) + " conflicts with declaration " + print_type(d.type)};
    }
  }

  Reconstructor r(goal.annotations, opts);
  Derivation d;
  TypeError err;
  if (!r.solve(g, s, d, err)) return err;

  std::set<std::string> open;
  finish(d, s, opts.default_unsolved_to_bot, open);
  if (!opts.default_unsolved_to_bot && !open.empty()) {
    return TypeError{TypeErrorKind::MissingAnnotation, print_sequent(goal),
                     "type of " + std::to_string(open.size()) + " binder(s) left undetermined"};
  }
  return d;
}

}  // namespace lamp
