#include "lamp/testlab.hpp"

#include <algorithm>
#include <random>

#include "lamp/runtime.hpp"

namespace lamp {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  // Plain modulo keeps the sequence identical across standard libraries.
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(g_() % n); }
  bool chance(std::size_t percent) { return below(100) < percent; }
  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

 private:
  std::mt19937_64 g_;
};

Type random_type(Rng& r, const std::vector<std::string>& atoms, int depth) {
  std::size_t k = r.below(depth > 0 ? 6 : 4);
  if (k < 3) return Type::atom(r.pick(atoms));
  if (k == 3) return Type::bot();
  Type a = random_type(r, atoms, depth - 1);
  Type b = random_type(r, atoms, depth - 1);
  return k == 4 ? Type::lolli(a, b) : Type::parr(a, b);
}

template <class D>
D take_at(std::vector<D>& pool, std::size_t i) {
  D d = std::move(pool[i]);
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
  return d;
}

// --- NMLL generation ---

class NmllGen {
 public:
  explicit NmllGen(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Derivation run() {
    std::size_t max = std::max<std::size_t>(cfg_.max_nodes, 1);
    std::optional<Derivation> best;
    for (int attempt = 0; attempt < 100; ++attempt) {
      target_ = max <= 2 ? max : max / 2 + rng_.below(max - max / 2 + 1);
      std::vector<Derivation> pool;
      for (std::size_t iter = 0; iter < 8 * target_ + 20; ++iter) {
        auto hit = std::find_if(pool.begin(), pool.end(), [&](const Derivation& d) { return d.node_count() == target_; });
        if (hit != pool.end()) return *hit;
        step(pool);
      }
      for (auto& d : pool) {
        if (d.node_count() <= target_ && (!best || d.node_count() > best->node_count())) best = d;
      }
      if (best && 2 * best->node_count() >= target_) return *best;
    }
    return best ? *best : axiom(random_type(rng_, cfg_.atom_pool, 1));
  }

 private:
  const GenConfig& cfg_;
  Rng rng_;
  std::size_t next_ = 0;
  std::size_t target_ = 1;

  Derivation axiom(const Type& t) {
    std::string x = "x" + std::to_string(next_++);
    return Derivation{Rule::Ax, Sequent{{{x, t}}, {{Term::var(x), t}}, {}}, {}};
  }

  static std::vector<std::size_t> typed(const Sequent& s, std::optional<TypeKind> k = std::nullopt) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
      if (s.delta[i].type && (!k || s.delta[i].type->is(*k))) out.push_back(i);
    }
    return out;
  }

  bool fits(std::size_t nodes) const { return nodes <= target_; }

  void step(std::vector<Derivation>& pool) {
    if (pool.empty() || (pool.size() < 5 && rng_.chance(20))) {
      pool.push_back(axiom(random_type(rng_, cfg_.atom_pool, 1)));
      return;
    }
    switch (rng_.below(6)) {
      case 0: unary(pool, rng_.chance(50) ? Rule::BotI : Rule::BotE); break;
      case 1: unary(pool, Rule::ParrI); break;
      case 2: unary(pool, Rule::LolliI); break;
      case 3: case 4: lolli_e(pool); break;
      default: parr_e(pool); break;
    }
  }

  void unary(std::vector<Derivation>& pool, Rule rule) {
    std::size_t i = rng_.below(pool.size());
    const Sequent& p = pool[i].conclusion;
    if (!fits(pool[i].node_count() + 1)) return;
    Sequent c = p;
    switch (rule) {
      case Rule::BotI: c.delta.push_back({Term::unit(), Type::bot()}); break;
      case Rule::BotE: {
        auto bots = typed(p, TypeKind::Bot);
        if (bots.empty()) return;
        std::size_t k = rng_.pick(bots);
        c.delta[k] = Entry{Term::close(p.delta[k].term), std::nullopt};
        break;
      }
      case Rule::ParrI: {
        auto ts = typed(p);
        if (ts.size() < 2) return;
        std::size_t a = rng_.pick(ts);
        std::size_t b = a;
        while (b == a) b = rng_.pick(ts);
        c.delta[std::min(a, b)] = Entry{Term::par(p.delta[a].term, p.delta[b].term), Type::parr(*p.delta[a].type, *p.delta[b].type)};
        c.delta.erase(c.delta.begin() + static_cast<std::ptrdiff_t>(std::max(a, b)));
        break;
      }
      case Rule::LolliI: {
        auto ts = typed(p);
        if (p.gamma.empty() || ts.empty()) return;
        std::size_t g = rng_.below(p.gamma.size());
        std::size_t k = rng_.pick(ts);
        c.delta[k] = Entry{Term::send(p.gamma[g].name, p.delta[k].term), Type::lolli(p.gamma[g].type, *p.delta[k].type)};
        c.gamma.erase(c.gamma.begin() + static_cast<std::ptrdiff_t>(g));
        break;
      }
      default: return;
    }
    Derivation prem = take_at(pool, i);
    pool.push_back(Derivation{rule, std::move(c), {std::move(prem)}});
  }

  // A pool member other than `skip...` with an entry (or declaration) of type
  // t that fits the budget; otherwise a fresh axiom is pushed for it.
  std::size_t partner(std::vector<Derivation>& pool, const Type& t, bool want_decl, const std::vector<std::size_t>& skip,
                      std::size_t budget) {
    std::vector<std::size_t> hits;
    for (std::size_t j = 0; j < pool.size(); ++j) {
      if (std::find(skip.begin(), skip.end(), j) != skip.end() || pool[j].node_count() > budget) continue;
      const Sequent& s = pool[j].conclusion;
      bool has = want_decl ? std::any_of(s.gamma.begin(), s.gamma.end(), [&](const Decl& d) { return d.type == t; })
                           : std::any_of(s.delta.begin(), s.delta.end(), [&](const Entry& e) { return e.type && *e.type == t; });
      if (has) hits.push_back(j);
    }
    if (!hits.empty() && rng_.chance(60)) return rng_.pick(hits);
    pool.push_back(axiom(t));
    return pool.size() - 1;
  }

  // Picks a pool member and one of its entries of kind k, preferring entries
  // whose term has the matching constructor so that redexes appear.
  std::optional<std::pair<std::size_t, std::size_t>> principal(const std::vector<Derivation>& pool, TypeKind k, TermKind shape) {
    std::vector<std::pair<std::size_t, std::size_t>> all;
    std::vector<std::pair<std::size_t, std::size_t>> shaped;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t e : typed(pool[i].conclusion, k)) {
        all.emplace_back(i, e);
        if (pool[i].conclusion.delta[e].term.is(shape)) shaped.emplace_back(i, e);
      }
    }
    if (!shaped.empty() && rng_.chance(70)) return rng_.pick(shaped);
    if (all.empty()) return std::nullopt;
    return rng_.pick(all);
  }

  void lolli_e(std::vector<Derivation>& pool) {
    auto pr = principal(pool, TypeKind::Lolli, TermKind::Send);
    if (!pr) return;
    auto [i, fi] = *pr;
    Type f = *pool[i].conclusion.delta[fi].type;
    std::size_t n1 = pool[i].node_count();
    if (!fits(n1 + 2)) return;
    std::size_t before = pool.size();
    std::size_t j = partner(pool, f.left(), false, {i}, target_ - n1 - 1);
    if (!fits(n1 + pool[j].node_count() + 1)) {
      if (pool.size() > before) pool.pop_back();
      return;
    }
    std::vector<std::size_t> args;
    const Sequent& s2 = pool[j].conclusion;
    for (std::size_t k = 0; k < s2.delta.size(); ++k) {
      if (s2.delta[k].type && *s2.delta[k].type == f.left()) args.push_back(k);
    }
    std::size_t ai = rng_.pick(args);
    const Sequent& s1 = pool[i].conclusion;
    Sequent c;
    c.gamma = s1.gamma;
    c.gamma.insert(c.gamma.end(), s2.gamma.begin(), s2.gamma.end());
    c.delta.push_back({Term::app(s1.delta[fi].term, s2.delta[ai].term), f.right()});
    for (std::size_t k = 0; k < s1.delta.size(); ++k) {
      if (k != fi) c.delta.push_back(s1.delta[k]);
    }
    for (std::size_t k = 0; k < s2.delta.size(); ++k) {
      if (k != ai) c.delta.push_back(s2.delta[k]);
    }
    Derivation p1 = pool[i];
    Derivation p2 = pool[j];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    pool.push_back(Derivation{Rule::LolliE, std::move(c), {std::move(p1), std::move(p2)}});
  }

  void parr_e(std::vector<Derivation>& pool) {
    auto pr = principal(pool, TypeKind::ParT, TermKind::Par);
    if (!pr) return;
    auto [i, ti] = *pr;
    Type f = *pool[i].conclusion.delta[ti].type;
    std::size_t n1 = pool[i].node_count();
    if (!fits(n1 + 3)) return;
    std::size_t before = pool.size();
    std::size_t j = partner(pool, f.left(), true, {i}, target_ - n1 - 2);
    std::size_t k = partner(pool, f.right(), true, {i, j}, target_ - n1 - 2);
    if (!fits(n1 + pool[j].node_count() + pool[k].node_count() + 1)) {
      pool.resize(before);
      return;
    }
    auto decl = [&](std::size_t p, const Type& t) {
      std::vector<std::size_t> hits;
      const auto& g = pool[p].conclusion.gamma;
      for (std::size_t q = 0; q < g.size(); ++q) {
        if (g[q].type == t) hits.push_back(q);
      }
      return rng_.pick(hits);
    };
    std::size_t a = decl(j, f.left());
    std::size_t b = decl(k, f.right());
    const Sequent& s1 = pool[i].conclusion;
    const Sequent& s2 = pool[j].conclusion;
    const Sequent& s3 = pool[k].conclusion;
    Sequent c;
    c.gamma = s1.gamma;
    for (std::size_t q = 0; q < s2.gamma.size(); ++q) {
      if (q != a) c.gamma.push_back(s2.gamma[q]);
    }
    for (std::size_t q = 0; q < s3.gamma.size(); ++q) {
      if (q != b) c.gamma.push_back(s3.gamma[q]);
    }
    c.delta.push_back({Term::dist(s2.gamma[a].name, s3.gamma[b].name, s1.delta[ti].term), Type::bot()});
    for (std::size_t q = 0; q < s1.delta.size(); ++q) {
      if (q != ti) c.delta.push_back(s1.delta[q]);
    }
    c.delta.insert(c.delta.end(), s2.delta.begin(), s2.delta.end());
    c.delta.insert(c.delta.end(), s3.delta.begin(), s3.delta.end());
    Derivation d{Rule::ParrE, std::move(c), {pool[i], pool[j], pool[k]}};
    std::vector<std::size_t> gone{i, j, k};
    std::sort(gone.rbegin(), gone.rend());
    for (std::size_t g : gone) pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(g));
    pool.push_back(std::move(d));
  }
};

// --- MLL generation ---

class MllGen {
 public:
  explicit MllGen(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed ^ 0x6d6c6cULL) {}

  MllDerivation run() {
    std::size_t max = std::max<std::size_t>(cfg_.max_nodes, 1);
    std::optional<MllDerivation> best;
    for (int attempt = 0; attempt < 100; ++attempt) {
      target_ = max <= 2 ? max : max / 2 + rng_.below(max - max / 2 + 1);
      std::vector<MllDerivation> pool;
      for (std::size_t iter = 0; iter < 8 * target_ + 20; ++iter) {
        auto hit = std::find_if(pool.begin(), pool.end(), [&](const MllDerivation& d) { return d.node_count() == target_; });
        if (hit != pool.end()) return *hit;
        step(pool);
      }
      for (auto& d : pool) {
        if (d.node_count() <= target_ && (!best || d.node_count() > best->node_count())) best = d;
      }
      if (best && 2 * best->node_count() >= target_) return *best;
    }
    return best ? *best : ax(random_type(rng_, cfg_.atom_pool, 1));
  }

 private:
  const GenConfig& cfg_;
  Rng rng_;
  std::size_t target_ = 1;

  static MllDerivation ax(const Type& t) { return MllDerivation{MllRule::AxId, {{t}, {t}}, {}}; }

  static std::vector<Type> drop(std::vector<Type> v, std::size_t i) {
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
    return v;
  }

  static std::vector<Type> plus(std::vector<Type> a, const std::vector<Type>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }

  void step(std::vector<MllDerivation>& pool) {
    if (pool.empty() || (pool.size() < 5 && rng_.chance(20))) {
      pool.push_back(rng_.chance(15) ? MllDerivation{MllRule::AxBot, {{Type::bot()}, {}}, {}}
                                     : ax(random_type(rng_, cfg_.atom_pool, 1)));
      return;
    }
    std::size_t i = rng_.below(pool.size());
    std::size_t rule = rng_.below(6);
    if (rule < 3) {
      if (pool[i].node_count() + 1 > target_) return;
      const MllSequent& p = pool[i].conclusion;
      MllSequent c = p;
      MllRule r;
      if (rule == 0) {
        r = MllRule::BotR;
        c.right.push_back(Type::bot());
      } else if (rule == 1) {
        if (p.left.empty() || p.right.empty()) return;
        r = MllRule::LolliR;
        std::size_t a = rng_.below(p.left.size());
        std::size_t b = rng_.below(p.right.size());
        c.left = drop(p.left, a);
        c.right = drop(p.right, b);
        c.right.insert(c.right.begin() + static_cast<std::ptrdiff_t>(b), Type::lolli(p.left[a], p.right[b]));
      } else {
        if (p.right.size() < 2) return;
        r = MllRule::ParrR;
        std::size_t a = rng_.below(p.right.size());
        std::size_t b = a;
        while (b == a) b = rng_.below(p.right.size());
        c.right[std::min(a, b)] = Type::parr(p.right[a], p.right[b]);
        c.right = drop(c.right, std::max(a, b));
      }
      MllDerivation prem = take_at(pool, i);
      pool.push_back(MllDerivation{r, std::move(c), {std::move(prem)}});
      return;
    }
    binary(pool, i, rule == 3 ? MllRule::LolliL : rule == 4 ? MllRule::ParrL : MllRule::Cut);
  }

  void binary(std::vector<MllDerivation>& pool, std::size_t i, MllRule r) {
    const MllSequent p = pool[i].conclusion;  // pool may grow below
    // LolliL and Cut act on a right formula of the first premise, ParrL on a left one.
    const auto& side = r == MllRule::ParrL ? p.left : p.right;
    if (side.empty()) return;
    std::size_t a = rng_.below(side.size());
    Type fa = side[a];
    Type fb = r == MllRule::Cut ? fa : random_type(rng_, cfg_.atom_pool, 1);
    std::size_t n1 = pool[i].node_count();
    std::optional<std::size_t> j;
    std::vector<std::size_t> hits;
    for (std::size_t q = 0; q < pool.size(); ++q) {
      if (q == i || n1 + pool[q].node_count() + 1 > target_) continue;
      const auto& l = pool[q].conclusion.left;
      if (r == MllRule::Cut ? std::find(l.begin(), l.end(), fa) != l.end() : !l.empty()) hits.push_back(q);
    }
    if (!hits.empty() && rng_.chance(70)) j = rng_.pick(hits);
    if (!j) {
      if (n1 + 2 > target_) return;
      pool.push_back(ax(fb));
      j = pool.size() - 1;
    }
    const MllSequent q = pool[*j].conclusion;
    std::size_t b;
    if (r == MllRule::Cut) {
      b = static_cast<std::size_t>(std::find(q.left.begin(), q.left.end(), fa) - q.left.begin());
    } else {
      b = rng_.below(q.left.size());
      fb = q.left[b];
    }
    MllSequent c;
    switch (r) {
      case MllRule::LolliL:
        c = {plus(plus(p.left, drop(q.left, b)), {Type::lolli(fa, fb)}), plus(drop(p.right, a), q.right)};
        break;
      case MllRule::ParrL:
        c = {plus(plus(drop(p.left, a), drop(q.left, b)), {Type::parr(fa, fb)}), plus(p.right, q.right)};
        break;
      default:
        c = {plus(p.left, drop(q.left, b)), plus(drop(p.right, a), q.right)};
        break;
    }
    MllDerivation d{r, std::move(c), {pool[i], pool[*j]}};
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::max(i, *j)));
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(std::min(i, *j)));
    pool.push_back(std::move(d));
  }
};

// --- properties ---

Verdict fail(std::string msg) { return Verdict{true, std::move(msg)}; }
Verdict skip() { return Verdict{false, std::nullopt}; }

constexpr std::size_t kTraceLimit = 10'000;

// States of the leftmost trace under `step`, initial term first.
std::vector<Term> trace_states(const Term& t, const Stepper& step) {
  std::vector<Term> out{t};
  for (;;) {
    auto rs = find_redexes(out.back());
    if (rs.empty()) return out;
    if (out.size() > kTraceLimit) throw BudgetExceeded("trace longer than " + std::to_string(kTraceLimit));
    out.push_back(step(out.back(), rs.front()));
  }
}

bool has_active(const Term& t) {
  if (t.is(TermKind::App) && t.fun().is(TermKind::Send)) return true;
  if (t.is(TermKind::Dist) && t.body().is(TermKind::Par)) return true;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (has_active(t.child(i))) return true;
  }
  return false;
}

bool has_dist(const Term& t) {
  if (t.is(TermKind::Dist)) return true;
  for (std::size_t i = 0; i < t.arity(); ++i) {
    if (has_dist(t.child(i))) return true;
  }
  return false;
}

template <class F>
Verdict guarded(F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

}  // namespace

Derivation gen_derivation(const GenConfig& cfg) { return NmllGen(cfg).run(); }
MllDerivation gen_mll_derivation(const GenConfig& cfg) { return MllGen(cfg).run(); }

std::uint64_t case_seed(const GenConfig& cfg, std::size_t i) { return cfg.seed + i; }

Term joined_terms(const Sequent& s) {
  std::vector<Term> ts;
  for (const auto& e : s.delta) ts.push_back(e.term);
  return join_par(ts);
}

Sequent with_joined(const Sequent& s, const Term& t) {
  Sequent out = s;
  Term cur = t;
  for (std::size_t i = 0; i + 1 < s.delta.size(); ++i) {
    if (!cur.is(TermKind::Par)) throw InvariantViolation("joined term lost its parallel spine");
    out.delta[i].term = cur.left();
    cur = cur.right();
  }
  out.delta.back().term = cur;
  return out;
}

std::vector<Sequent> one_step_reducts(const Sequent& s, const Stepper& step) {
  std::vector<Sequent> out;
  if (s.delta.empty()) return out;
  Term t = joined_terms(s);
  for (const auto& r : find_redexes(t)) out.push_back(with_joined(s, step(t, r)));
  return out;
}

Verdict prop_generated(const Derivation& d) {
  if (auto bad = check_derivation(d)) return fail("generated derivation rejected: " + bad->message);
  return {};
}

Verdict prop_reconstruct(const Sequent& s) {
  return guarded([&]() -> Verdict {
    auto r = reconstruct(s);
    if (auto* e = std::get_if<TypeError>(&r)) return fail(describe(*e));
    const auto& d = std::get<Derivation>(r);
    if (auto bad = check_derivation(d)) return fail("reconstructed derivation rejected: " + bad->message);
    if (!(d.conclusion == s)) return fail("reconstructed conclusion differs from the goal");
    return {};
  });
}

Verdict prop_linearity(const Sequent& s) {
  if (auto v = check_channel_linearity(s)) {
    return fail(v->name + " used " + std::to_string(v->use_count) + " time(s) with " + std::to_string(v->binder_count) +
                " binder(s)");
  }
  return {};
}

Verdict prop_no_freaks(const Sequent& s) {
  if (auto bad = check_no_freaks(s)) return fail(*bad);
  return {};
}

Verdict prop_step_decrement(const Sequent& s, const Stepper& step) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    auto states = trace_states(joined_terms(s), step);
    for (const auto& st : states) {
      std::size_t cs = comm_size(st);
      for (const auto& r : find_redexes(st)) {
        Term next = step(st, r);
        if (comm_size(next) + 1 != cs) {
          return fail(redex_label(r) + " on " + print_term(st) + " took comm_size " + std::to_string(cs) + " to " +
                      std::to_string(comm_size(next)));
        }
      }
    }
    std::size_t steps = states.size() - 1;
    if (steps != comm_size(states.front()) - comm_size(states.back())) {
      return fail("trace of " + std::to_string(steps) + " steps does not match the comm_size drop");
    }
    return {};
  });
}

Verdict prop_confluence(const Sequent& s, std::size_t max_comm_size, std::size_t state_budget) {
  if (s.delta.empty()) return skip();
  Term t = joined_terms(s);
  if (comm_size(t) > max_comm_size) return skip();
  return guarded([&]() -> Verdict {
    auto e = enumerate_normal_forms(t, state_budget);
    if (e.normal_forms.size() != 1) {
      std::string msg = std::to_string(e.normal_forms.size()) + " normal forms:";
      for (const auto& n : e.normal_forms) msg += " [" + print_term(n) + "]";
      return fail(msg);
    }
    return {};
  });
}

Verdict prop_subject_reduction(const Sequent& s, const Stepper& step) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    auto states = trace_states(joined_terms(s), step);
    for (const auto& st : states) {
      for (const auto& reduct : one_step_reducts(with_joined(s, st), step)) {
        auto r = reconstruct(reduct);
        if (auto* e = std::get_if<TypeError>(&r)) return fail(print_sequent(reduct) + ": " + describe(*e));
        const auto& d = std::get<Derivation>(r);
        if (auto bad = check_derivation(d)) return fail(print_sequent(reduct) + ": " + bad->message);
        if (!(d.conclusion == reduct)) return fail(print_sequent(reduct) + ": conclusion changed");
      }
    }
    return {};
  });
}

Verdict prop_progress(const Sequent& s) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    bool seen = false;
    for (const auto& st : trace_states(joined_terms(s), contract)) {
      if (!has_active(st)) continue;
      seen = true;
      if (find_redexes(st).empty()) return fail("stuck: " + print_term(st));
    }
    return seen ? Verdict{} : skip();
  });
}

Verdict note_stuck_dist(const Sequent& s) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    Term nf = normalize(joined_terms(s)).final_term();
    if (has_dist(nf)) return fail("normal term keeps a binary output: " + print_term(nf));
    return {};
  });
}

Verdict prop_subformula(const Sequent& s) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    Sequent nf = with_joined(s, normalize(joined_terms(s)).final_term());
    auto r = reconstruct(nf);
    if (auto* e = std::get_if<TypeError>(&r)) return fail(print_sequent(nf) + ": " + describe(*e));
    if (auto c = check_subformula(std::get<Derivation>(r))) {
      return fail(print_sequent(nf) + ": " + print_type(c->type) + " is not a subformula");
    }
    return {};
  });
}

Verdict prop_runtime(const Sequent& s, std::size_t seeds) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    auto expected = flatten_par(normalize(joined_terms(s)).final_term());
    for (std::size_t seed = 0; seed < seeds; ++seed) {
      auto r = run_concurrent(s, RuntimeOptions{seed, 5000});
      if (auto* dl = std::get_if<DeadlockReport>(&r)) {
        return fail("seed " + std::to_string(seed) + ": " + describe(*dl));
      }
      if (!same_components(std::get<std::vector<Term>>(r), expected)) {
        return fail("seed " + std::to_string(seed) + ": result differs from the sequential normal form");
      }
    }
    return {};
  });
}

Verdict prop_cbv(const Sequent& s) {
  if (s.delta.empty()) return skip();
  return guarded([&]() -> Verdict {
    auto trace = normalize_cbv(joined_terms(s));
    Term prev = join_par(flatten_par(trace.initial));  // cbv addresses the flattened join
    for (const auto& st : trace.steps) {
      auto rs = find_redexes(prev);
      if (std::find(rs.begin(), rs.end(), st.redex) == rs.end()) {
        return fail(redex_label(st.redex) + " chosen by call-by-value is not a redex of " + print_term(prev));
      }
      if (!(join_par(flatten_par(contract(prev, st.redex))) == st.result)) {
        return fail("call-by-value step disagrees with the reduction rules on " + print_term(prev));
      }
      prev = st.result;
    }
    return {};
  });
}

Verdict prop_to_mll(const Derivation& d) {
  return guarded([&]() -> Verdict {
    MllDerivation m = nmll_to_mll(d);
    if (auto bad = check_mll(m)) return fail("MLL image rejected: " + bad->message);
    if (!(m.conclusion == erase(d.conclusion))) return fail("MLL image has the wrong conclusion");
    return {};
  });
}

Verdict prop_to_nmll(const MllDerivation& d) {
  return guarded([&]() -> Verdict {
    if (auto bad = check_mll(d)) return fail("generated MLL derivation rejected: " + bad->message);
    Derivation n = mll_to_nmll(d);
    if (auto bad = check_derivation(n)) return fail("NMLL image rejected: " + bad->message);
    if (!(erase(n.conclusion) == d.conclusion)) return fail("NMLL image erases to a different sequent");
    return {};
  });
}

bool Report::ok() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.informational || r.failures == 0; });
}

std::string format_report(const Report& r) {
  std::string out;
  for (const auto& p : r.results) {
    std::string name = p.name + (p.informational ? " (info)" : "");
    if (name.size() < 26) name.resize(26, ' ');
    out += name + " cases=" + std::to_string(p.cases) + " failures=" + std::to_string(p.failures) +
           " first_failing_seed=" + (p.first_failing_seed ? std::to_string(*p.first_failing_seed) : "-") + "\n";
  }
  return out;
}

Report run_property_suite(std::size_t n_cases, const GenConfig& cfg, const SuiteOptions& opts) {
  Report report;
  auto row = [&](const char* name, bool info = false) -> PropertyResult& {
    for (auto& p : report.results) {
      if (p.name == name) return p;
    }
    report.results.push_back(PropertyResult{name, 0, 0, std::nullopt, "", info});
    return report.results.back();
  };
  // Fixed row order so reports diff cleanly even when n_cases is 0.
  for (const char* n : {"generator", "reconstruct", "linearity", "no_freaks", "step_decrement", "confluence",
                        "subject_reduction", "progress"}) {
    row(n);
  }
  row("stuck_dist", true);
  for (const char* n : {"subformula", "runtime", "cbv", "to_mll", "to_nmll"}) row(n);

  auto record = [&](const char* name, std::uint64_t seed, const Verdict& v) {
    if (!v.applicable) return;
    PropertyResult& p = row(name);
    ++p.cases;
    if (v.failure) {
      if (!p.first_failing_seed) {
        p.first_failing_seed = seed;
        p.first_message = *v.failure;
      }
      ++p.failures;
    }
  };

  for (std::size_t i = 0; i < n_cases; ++i) {
    GenConfig c = cfg;
    c.seed = case_seed(cfg, i);
    Derivation d = gen_derivation(c);
    const Sequent& s = d.conclusion;
    record("generator", c.seed, prop_generated(d));
    record("reconstruct", c.seed, prop_reconstruct(s));
    record("linearity", c.seed, prop_linearity(s));
    record("no_freaks", c.seed, prop_no_freaks(s));
    record("step_decrement", c.seed, prop_step_decrement(s, opts.step));
    record("confluence", c.seed, prop_confluence(s));
    record("subject_reduction", c.seed, prop_subject_reduction(s, opts.step));
    record("progress", c.seed, prop_progress(s));
    record("stuck_dist", c.seed, note_stuck_dist(s));
    record("subformula", c.seed, prop_subformula(s));
    if (opts.runtime) record("runtime", c.seed, prop_runtime(s, opts.runtime_seeds));
    record("cbv", c.seed, prop_cbv(s));
    record("to_mll", c.seed, prop_to_mll(d));
    record("to_nmll", c.seed, prop_to_nmll(gen_mll_derivation(c)));
  }
  return report;
}

}  // namespace lamp
