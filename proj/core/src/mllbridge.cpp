#include "lamp/mllbridge.hpp"

#include <algorithm>
#include <array>

#include "sexpr.hpp"

namespace lamp {

namespace {

constexpr std::array<const char*, 8> kNames{"AxId", "AxBot", "BotR", "LolliL", "LolliR", "ParrL", "ParrR", "Cut"};

using Types = std::vector<Type>;

Types sorted(Types v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool same(const Types& a, const Types& b) { return a.size() == b.size() && sorted(a) == sorted(b); }

Types plus(Types a, const Types& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::optional<Types> minus(Types v, const Type& t) {
  auto it = std::find(v.begin(), v.end(), t);
  if (it == v.end()) return std::nullopt;
  v.erase(it);
  return v;
}

// Principal formula (or cut formula) that makes the node an instance of its
// schema; nullopt when none does.
std::optional<Type> match(const MllDerivation& d) {
  const auto& c = d.conclusion;
  auto p = [&](std::size_t i) -> const MllSequent& { return d.premises[i].conclusion; };
  switch (d.rule) {
    case MllRule::AxId:
      if (c.left.size() == 1 && c.right.size() == 1 && c.left[0] == c.right[0]) return c.left[0];
      return std::nullopt;
    case MllRule::AxBot:
      if (c.left.size() == 1 && c.right.empty() && c.left[0].is(TypeKind::Bot)) return Type::bot();
      return std::nullopt;
    case MllRule::BotR: {
      auto rest = minus(c.right, Type::bot());
      if (rest && same(c.left, p(0).left) && same(*rest, p(0).right)) return Type::bot();
      return std::nullopt;
    }
    case MllRule::LolliR:
    case MllRule::ParrR: {
      TypeKind k = d.rule == MllRule::LolliR ? TypeKind::Lolli : TypeKind::ParT;
      for (const auto& f : c.right) {
        if (!f.is(k)) continue;
        auto rest = *minus(c.right, f);
        bool ok = k == TypeKind::Lolli
                      ? same(plus(c.left, {f.left()}), p(0).left) && same(plus(rest, {f.right()}), p(0).right)
                      : same(c.left, p(0).left) && same(plus(rest, {f.left(), f.right()}), p(0).right);
        if (ok) return f;
      }
      return std::nullopt;
    }
    case MllRule::LolliL:
    case MllRule::ParrL: {
      TypeKind k = d.rule == MllRule::LolliL ? TypeKind::Lolli : TypeKind::ParT;
      for (const auto& f : c.left) {
        if (!f.is(k)) continue;
        std::optional<Types> left;
        std::optional<Types> right;
        if (k == TypeKind::Lolli) {
          auto delta = minus(p(0).right, f.left());
          auto sigma = minus(p(1).left, f.right());
          if (!delta || !sigma) continue;
          left = plus(plus(p(0).left, *sigma), {f});
          right = plus(*delta, p(1).right);
        } else {
          auto gamma = minus(p(0).left, f.left());
          auto sigma = minus(p(1).left, f.right());
          if (!gamma || !sigma) continue;
          left = plus(plus(*gamma, *sigma), {f});
          right = plus(p(0).right, p(1).right);
        }
        if (same(*left, c.left) && same(*right, c.right)) return f;
      }
      return std::nullopt;
    }
    case MllRule::Cut:
      for (const auto& a : p(0).right) {
        auto sigma = minus(p(1).left, a);
        if (!sigma) continue;
        if (same(plus(p(0).left, *sigma), c.left) && same(plus(*minus(p(0).right, a), p(1).right), c.right)) {
          return a;
        }
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<RuleViolation> check_at(const MllDerivation& d, Path& path) {
  if (d.premises.size() != mll_rule_arity(d.rule)) {
    return RuleViolation{path, std::string(mll_rule_name(d.rule)) + ": expected " +
                                   std::to_string(mll_rule_arity(d.rule)) + " premises"};
  }
  if (!match(d)) {
    return RuleViolation{path, std::string(mll_rule_name(d.rule)) + ": " + print_mll_sequent(d.conclusion) +
                                   " does not follow from its premises"};
  }
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(static_cast<int>(i));
    if (auto bad = check_at(d.premises[i], path)) return bad;
    path.pop_back();
  }
  return std::nullopt;
}

MllDerivation node(MllRule r, MllSequent c, std::vector<MllDerivation> ps = {}) {
  return MllDerivation{r, std::move(c), std::move(ps)};
}

MllDerivation cut(MllDerivation p1, MllDerivation p2, const Type& a) {
  MllSequent c{plus(p1.conclusion.left, *minus(p2.conclusion.left, a)),
               plus(*minus(p1.conclusion.right, a), p2.conclusion.right)};
  return node(MllRule::Cut, std::move(c), {std::move(p1), std::move(p2)});
}

MllDerivation ax(const Type& a) { return node(MllRule::AxId, {{a}, {a}}); }

// The ⊸ type of the function entry consumed by a LolliE node.
Type lolli_e_type(const Derivation& d) {
  const auto& c = d.conclusion;
  const auto& p1 = d.premises[0].conclusion;
  const auto& p2 = d.premises[1].conclusion;
  for (const auto& e : c.delta) {
    if (!e.term.is(TermKind::App) || !e.type) continue;
    for (const auto& f : p1.delta) {
      if (!(f.term == e.term.fun()) || !f.type || !f.type->is(TypeKind::Lolli) || !(f.type->right() == *e.type)) {
        continue;
      }
      Entry arg{e.term.arg(), f.type->left()};
      if (std::find(p2.delta.begin(), p2.delta.end(), arg) != p2.delta.end()) return *f.type;
    }
  }
  throw InvariantViolation("LolliE node without a matching application entry");
}

Type parr_e_type(const Derivation& d) {
  auto decl_type = [](const Sequent& s, const std::string& x) -> std::optional<Type> {
    for (const auto& g : s.gamma) {
      if (g.name == x) return g.type;
    }
    return std::nullopt;
  };
  for (const auto& e : d.conclusion.delta) {
    if (!e.term.is(TermKind::Dist) || !e.type) continue;
    auto a = decl_type(d.premises[1].conclusion, e.term.name());
    auto b = decl_type(d.premises[2].conclusion, e.term.name2());
    if (a && b) return Type::parr(*a, *b);
  }
  throw InvariantViolation("ParrE node without a matching binary output entry");
}

// --- MLL to NMLL ---

class Decorator {
 public:
  Derivation run(const MllDerivation& d) {
    Derivation out = build(d);
    align(out.conclusion, d.conclusion);
    return out;
  }

 private:
  std::size_t next_ = 0;

  std::string fresh() { return "c" + std::to_string(next_++); }

  static std::size_t decl_of(const Sequent& s, const Type& t) {
    for (std::size_t i = 0; i < s.gamma.size(); ++i) {
      if (s.gamma[i].type == t) return i;
    }
    throw InvariantViolation("no declaration of type " + print_type(t));
  }

  static std::size_t entry_of(const Sequent& s, const Type& t, std::size_t skip = SIZE_MAX) {
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
      if (i != skip && s.delta[i].type && *s.delta[i].type == t) return i;
    }
    throw InvariantViolation("no entry of type " + print_type(t));
  }

  // Reorders Γ and the typed entries of Δ to follow the MLL sequent; close
  // entries go last.
  static void align(Sequent& s, const MllSequent& m) {
    std::vector<Decl> gamma;
    auto pool = s.gamma;
    for (const auto& t : m.left) {
      auto it = std::find_if(pool.begin(), pool.end(), [&](const Decl& d) { return d.type == t; });
      if (it == pool.end()) throw InvariantViolation("translation lost a hypothesis of type " + print_type(t));
      gamma.push_back(*it);
      pool.erase(it);
    }
    std::vector<Entry> delta;
    std::vector<Entry> rest = s.delta;
    for (const auto& t : m.right) {
      auto it = std::find_if(rest.begin(), rest.end(), [&](const Entry& e) { return e.type && *e.type == t; });
      if (it == rest.end()) throw InvariantViolation("translation lost a conclusion of type " + print_type(t));
      delta.push_back(*it);
      rest.erase(it);
    }
    if (!pool.empty() || std::any_of(rest.begin(), rest.end(), [](const Entry& e) { return e.type.has_value(); })) {
      throw InvariantViolation("translation produced extra formulas");
    }
    delta.insert(delta.end(), rest.begin(), rest.end());
    s.gamma = std::move(gamma);
    s.delta = std::move(delta);
  }

  static Derivation make(Rule r, Sequent c, std::vector<Derivation> ps = {}) {
    return Derivation{r, std::move(c), std::move(ps)};
  }

  static Derivation axiom(const std::string& x, const Type& t) {
    return make(Rule::Ax, Sequent{{{x, t}}, {{Term::var(x), t}}, {}});
  }

  static Derivation bot_i(Derivation p) {
    Sequent c = p.conclusion;
    c.delta.push_back({Term::unit(), Type::bot()});
    return make(Rule::BotI, std::move(c), {std::move(p)});
  }

  // Closes the entry at index i, which must have type bot.
  static Derivation bot_e(Derivation p, std::size_t i) {
    Sequent c = p.conclusion;
    c.delta[i] = Entry{Term::close(c.delta[i].term), std::nullopt};
    return make(Rule::BotE, std::move(c), {std::move(p)});
  }

  // Abstracts declaration g over entry i.
  static Derivation lolli_i(Derivation p, std::size_t g, std::size_t i) {
    Sequent c = p.conclusion;
    Decl x = c.gamma[g];
    c.gamma.erase(c.gamma.begin() + static_cast<std::ptrdiff_t>(g));
    const Entry& e = c.delta[i];
    c.delta[i] = Entry{Term::send(x.name, e.term), Type::lolli(x.type, *e.type)};
    return make(Rule::LolliI, std::move(c), {std::move(p)});
  }

  // Applies entry fi of p1 (a function) to entry ai of p2. The new entry comes
  // first in the conclusion.
  static Derivation lolli_e(Derivation p1, std::size_t fi, Derivation p2, std::size_t ai) {
    const auto& c1 = p1.conclusion;
    const auto& c2 = p2.conclusion;
    Sequent c;
    c.gamma = c1.gamma;
    c.gamma.insert(c.gamma.end(), c2.gamma.begin(), c2.gamma.end());
    c.delta.push_back({Term::app(c1.delta[fi].term, c2.delta[ai].term), c1.delta[fi].type->right()});
    for (std::size_t k = 0; k < c1.delta.size(); ++k) {
      if (k != fi) c.delta.push_back(c1.delta[k]);
    }
    for (std::size_t k = 0; k < c2.delta.size(); ++k) {
      if (k != ai) c.delta.push_back(c2.delta[k]);
    }
    return make(Rule::LolliE, std::move(c), {std::move(p1), std::move(p2)});
  }

  // ⊥I, then ⊸I on the declaration of type a: yields `out x. * : a -o bot`
  // at index 0 of the result.
  static Derivation negate(Derivation p, const Type& a) {
    std::size_t g = decl_of(p.conclusion, a);
    Derivation b = bot_i(std::move(p));
    std::size_t unit = b.conclusion.delta.size() - 1;
    Derivation l = lolli_i(std::move(b), g, unit);
    Sequent& c = l.conclusion;
    std::rotate(c.delta.begin(), c.delta.begin() + static_cast<std::ptrdiff_t>(unit),
                c.delta.begin() + static_cast<std::ptrdiff_t>(unit + 1));
    return l;
  }

  Derivation build(const MllDerivation& d) {
    std::vector<Derivation> ps;
    for (const auto& p : d.premises) {
      ps.push_back(build(p));
      align(ps.back().conclusion, p.conclusion);
    }
    Type f = *match(d);
    switch (d.rule) {
      case MllRule::AxId: return axiom(fresh(), f);
      case MllRule::AxBot: return bot_e(axiom(fresh(), Type::bot()), 0);
      case MllRule::BotR: return bot_i(std::move(ps[0]));
      case MllRule::LolliR: {
        const auto& c = ps[0].conclusion;
        std::size_t g = decl_of(c, f.left());
        std::size_t i = entry_of(c, f.right());
        return lolli_i(std::move(ps[0]), g, i);
      }
      case MllRule::ParrR: {
        Sequent c = ps[0].conclusion;
        std::size_t i = entry_of(c, f.left());
        std::size_t j = entry_of(c, f.right(), i);
        Entry e{Term::par(c.delta[i].term, c.delta[j].term), f};
        std::vector<Entry> delta;
        for (std::size_t k = 0; k < c.delta.size(); ++k) {
          if (k == i) delta.push_back(e);
          else if (k != j) delta.push_back(c.delta[k]);
        }
        c.delta = std::move(delta);
        return make(Rule::ParrI, std::move(c), {std::move(ps[0])});
      }
      case MllRule::LolliL: {
        // Γ ⇒ A, Δ and Σ, B ⇒ Θ: close((out b. *) (f s)).
        std::size_t si = entry_of(ps[0].conclusion, f.left());
        Derivation app = lolli_e(axiom(fresh(), f), 0, std::move(ps[0]), si);
        Derivation neg = negate(std::move(ps[1]), f.right());
        return bot_e(lolli_e(std::move(neg), 0, std::move(app), 0), 0);
      }
      case MllRule::ParrL: {
        // Γ, A ⇒ Δ and Σ, B ⇒ Θ: close(out2 a b. p).
        const auto& c1 = ps[0].conclusion;
        const auto& c2 = ps[1].conclusion;
        Decl a = c1.gamma[decl_of(c1, f.left())];
        Decl b = c2.gamma[decl_of(c2, f.right())];
        std::string p = fresh();
        Sequent c;
        c.gamma.push_back({p, f});
        for (const auto& g : c1.gamma) {
          if (g.name != a.name) c.gamma.push_back(g);
        }
        for (const auto& g : c2.gamma) {
          if (g.name != b.name) c.gamma.push_back(g);
        }
        c.delta.push_back({Term::dist(a.name, b.name, Term::var(p)), Type::bot()});
        c.delta.insert(c.delta.end(), c1.delta.begin(), c1.delta.end());
        c.delta.insert(c.delta.end(), c2.delta.begin(), c2.delta.end());
        Derivation e = make(Rule::ParrE, std::move(c), {axiom(p, f), std::move(ps[0]), std::move(ps[1])});
        return bot_e(std::move(e), 0);
      }
      case MllRule::Cut: {
        // Γ ⇒ A, Δ and Σ, A ⇒ Θ: close((out a. *) s).
        std::size_t si = entry_of(ps[0].conclusion, f);
        Derivation neg = negate(std::move(ps[1]), f);
        return bot_e(lolli_e(std::move(neg), 0, std::move(ps[0]), si), 0);
      }
    }
    throw InvariantViolation("unknown MLL rule");
  }
};

void write(std::string& out, const MllDerivation& d, int indent) {
  out += std::string(static_cast<std::size_t>(indent), ' ');
  out += '(';
  out += mll_rule_name(d.rule);
  out += ' ';
  out += sexpr::quote(print_mll_sequent(d.conclusion));
  for (const auto& p : d.premises) {
    out += '\n';
    write(out, p, indent + 2);
  }
  out += ')';
}

MllDerivation build(const sexpr::Node& n) {
  if (!n.is_list || n.items.size() < 2 || n.items[0].is_list || !n.items[1].quoted) {
    throw ParseError(ParseErrorKind::Syntax, 0, 0, "expected (Rule \"sequent\" premise...)");
  }
  auto rule = mll_rule_from_name(n.items[0].text);
  if (!rule) throw ParseError(ParseErrorKind::Syntax, 0, 0, "unknown MLL rule " + n.items[0].text);
  MllDerivation d;
  d.rule = *rule;
  d.conclusion = parse_mll_sequent(n.items[1].text);
  for (std::size_t i = 2; i < n.items.size(); ++i) d.premises.push_back(build(n.items[i]));
  return d;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

Types parse_side(std::string_view s) {
  Types out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  for (;;) {
    auto comma = s.find(',', start);
    std::string item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (item.empty()) throw ParseError(ParseErrorKind::Syntax, 0, 0, "empty formula in MLL sequent");
    out.push_back(parse_type(item));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::string print_side(const Types& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += ", ";
    out += print_type(ts[i]);
  }
  return out;
}

}  // namespace

const char* mll_rule_name(MllRule r) { return kNames[static_cast<std::size_t>(r)]; }

std::optional<MllRule> mll_rule_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (name == kNames[i]) return static_cast<MllRule>(i);
  }
  return std::nullopt;
}

std::size_t mll_rule_arity(MllRule r) {
  switch (r) {
    case MllRule::AxId:
    case MllRule::AxBot: return 0;
    case MllRule::LolliL:
    case MllRule::ParrL:
    case MllRule::Cut: return 2;
    default: return 1;
  }
}

std::size_t MllDerivation::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

std::string print_mll_sequent(const MllSequent& s) {
  std::string l = print_side(s.left);
  std::string r = print_side(s.right);
  if (l.empty()) return r.empty() ? "|-" : "|- " + r;
  return r.empty() ? l + " |-" : l + " |- " + r;
}

MllSequent parse_mll_sequent(std::string_view text) {
  auto at = text.find("|-");
  if (at == std::string_view::npos) throw ParseError(ParseErrorKind::Syntax, 0, 0, "MLL sequent needs |-");
  return MllSequent{parse_side(text.substr(0, at)), parse_side(text.substr(at + 2))};
}

std::optional<RuleViolation> check_mll(const MllDerivation& d) {
  Path path;
  return check_at(d, path);
}

MllSequent erase(const Sequent& s) {
  MllSequent m;
  for (const auto& g : s.gamma) m.left.push_back(g.type);
  for (const auto& e : s.delta) {
    if (e.type) m.right.push_back(*e.type);
  }
  return m;
}

bool same_mll_sequent(const MllSequent& a, const MllSequent& b) {
  return same(a.left, b.left) && same(a.right, b.right);
}

MllDerivation nmll_to_mll(const Derivation& d) {
  std::vector<MllDerivation> ps;
  for (const auto& p : d.premises) ps.push_back(nmll_to_mll(p));
  MllSequent c = erase(d.conclusion);
  switch (d.rule) {
    case Rule::Ax: return node(MllRule::AxId, std::move(c));
    case Rule::BotI: return node(MllRule::BotR, std::move(c), std::move(ps));
    case Rule::LolliI: return node(MllRule::LolliR, std::move(c), std::move(ps));
    case Rule::ParrI: return node(MllRule::ParrR, std::move(c), std::move(ps));
    case Rule::BotE: {
      MllDerivation r = cut(std::move(ps[0]), node(MllRule::AxBot, {{Type::bot()}, {}}), Type::bot());
      r.conclusion = std::move(c);
      return r;
    }
    case Rule::LolliE: {
      Type f = lolli_e_type(d);
      MllDerivation left = node(MllRule::LolliL, {{f.left(), f}, {f.right()}}, {ax(f.left()), ax(f.right())});
      MllDerivation inner = cut(std::move(ps[0]), std::move(left), f);
      MllDerivation r = cut(std::move(ps[1]), std::move(inner), f.left());
      r.conclusion = std::move(c);
      return r;
    }
    case Rule::ParrE: {
      Type f = parr_e_type(d);
      const MllSequent& s2 = ps[1].conclusion;
      const MllSequent& s3 = ps[2].conclusion;
      MllSequent lc{plus(plus(*minus(s2.left, f.left()), *minus(s3.left, f.right())), {f}), plus(s2.right, s3.right)};
      MllDerivation left = node(MllRule::ParrL, std::move(lc), {std::move(ps[1]), std::move(ps[2])});
      MllDerivation inner = cut(std::move(ps[0]), std::move(left), f);
      MllSequent bc = inner.conclusion;
      bc.right.push_back(Type::bot());
      MllDerivation r = node(MllRule::BotR, std::move(bc), {std::move(inner)});
      r.conclusion = std::move(c);
      return r;
    }
  }
  throw InvariantViolation("unknown NMLL rule");
}

Derivation mll_to_nmll(const MllDerivation& d) {
  if (auto bad = check_mll(d)) throw PreconditionViolation("mll_to_nmll needs a valid MLL derivation: " + bad->message);
  return Decorator().run(d);
}

std::string serialize(const MllDerivation& d) {
  std::string out;
  write(out, d, 0);
  out += '\n';
  return out;
}

MllDerivation read_mll_derivation(std::string_view text) { return build(sexpr::read(text)); }

}  // namespace lamp
