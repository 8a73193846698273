#include "lamp/reduction.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>

namespace lamp {

std::string redex_label(const Redex& r) {
  switch (r.kind) {
    case RedexKind::Beta: return "Beta";
    case RedexKind::Comm: return "Comm " + r.chan;
    case RedexKind::DistComm: return "Dist " + r.chan + " " + r.chan2;
  }
  return "?";
}

std::size_t comm_size(const Term& t) {
  std::size_t n = t.is(TermKind::Send) || t.is(TermKind::Dist) ? 1 : 0;
  for (std::size_t i = 0; i < t.arity(); ++i) n += comm_size(t.child(i));
  return n;
}

namespace {

bool lca_is_par(const Term& root, const Path& a, const Path& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  Path lca(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k));
  return subterm_at(root, lca).is(TermKind::Par);
}

// The unique free occurrence of x, if it sits across a parallel operator
// from the activator.
std::optional<Path> receiver(const Term& root, const std::string& x, const Path& activator) {
  auto occ = occurrences(root, x);
  if (occ.size() != 1 || !lca_is_par(root, occ[0], activator)) return std::nullopt;
  return occ[0];
}

void scan(const Term& root, const Term& t, Path& path, std::vector<Redex>& out) {
  if (t.is(TermKind::App) && t.fun().is(TermKind::Send)) {
    const Term& send = t.fun();
    const std::string& x = send.name();
    if (occurs_free(send.body(), x)) {
      out.push_back(Redex{RedexKind::Beta, path, {}, x, ""});
    } else if (auto r = receiver(root, x, path)) {
      out.push_back(Redex{RedexKind::Comm, path, {*r}, x, ""});
    }
  } else if (t.is(TermKind::Dist) && t.body().is(TermKind::Par)) {
    auto rx = receiver(root, t.name(), path);
    auto ry = receiver(root, t.name2(), path);
    if (rx && ry) out.push_back(Redex{RedexKind::DistComm, path, {*rx, *ry}, t.name(), t.name2()});
  }
  for (std::size_t i = 0; i < t.arity(); ++i) {
    path.push_back(static_cast<int>(i));
    scan(root, t.child(i), path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<Redex> find_redexes(const Term& t) {
  std::vector<Redex> out;
  Path path;
  scan(t, t, path, out);
  return out;
}

Term contract(const Term& t, const Redex& r) {
  const Term& act = subterm_at(t, r.activator);
  switch (r.kind) {
    case RedexKind::Beta: {
      const Term& send = act.fun();
      return replace_at(t, r.activator, substitute(send.body(), send.name(), act.arg()));
    }
    case RedexKind::Comm: {
      // Receiver and activator are disjoint, so the order of replacement is free.
      Term next = replace_at(t, r.receivers.at(0), act.arg());
      return replace_at(next, r.activator, act.fun().body());
    }
    case RedexKind::DistComm: {
      Term next = replace_at(t, r.receivers.at(0), act.body().left());
      next = replace_at(next, r.receivers.at(1), act.body().right());
      return replace_at(next, r.activator, Term::unit());
    }
  }
  return t;
}

Term apply_redex(const Term& t, const Redex& r) {
  auto current = find_redexes(t);
  if (std::find(current.begin(), current.end(), r) == current.end()) {
    throw StaleRedex(redex_label(r) + " is not a redex of " + print_term(t));
  }
  return contract(t, r);
}

std::string trace_label(const TraceStep& s) { return redex_label(s.redex); }

std::string format_trace(const Trace& t, bool color) {
  std::string out = print_term(t.initial) + "\n";
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    std::string label = trace_label(t.steps[k]);
    if (color) label = "\x1b[36m" + label + "\x1b[0m";
    out += "step " + std::to_string(k + 1) + ": " + label + " => " + print_term(t.steps[k].result) + "\n";
  }
  return out;
}

Trace normalize(const Term& t, std::size_t max_steps) {
  Trace trace{t, {}};
  Term cur = t;
  for (;;) {
    auto rs = find_redexes(cur);
    if (rs.empty()) return trace;
    if (trace.steps.size() >= max_steps) {
      throw BudgetExceeded("no normal form within " + std::to_string(max_steps) + " steps");
    }
    cur = contract(cur, rs.front());
    trace.steps.push_back({rs.front(), cur});
  }
}

Enumeration enumerate_normal_forms(const Term& t, std::size_t max_states) {
  std::map<Term, std::vector<Term>> graph;
  std::deque<Term> frontier{t};
  graph[t];
  Enumeration out;
  while (!frontier.empty()) {
    Term cur = frontier.front();
    frontier.pop_front();
    std::vector<Term> next;
    for (const auto& r : find_redexes(cur)) {
      Term n = contract(cur, r);
      next.push_back(n);
      if (graph.emplace(n, std::vector<Term>{}).second) {
        if (graph.size() > max_states) {
          throw BudgetExceeded("more than " + std::to_string(max_states) + " states");
        }
        frontier.push_back(n);
      }
    }
    if (next.empty()) out.normal_forms.insert(cur);
    graph[cur] = std::move(next);
  }
  out.states = graph.size();

  // Path lengths by depth-first search; grey nodes detect cycles.
  enum Colour { White, Grey, Black };
  std::map<Term, Colour> colour;
  std::map<Term, std::pair<std::size_t, std::size_t>> len;
  bool cyclic = false;
  std::vector<std::pair<Term, std::size_t>> stack{{t, 0}};
  colour[t] = Grey;
  while (!stack.empty() && !cyclic) {
    auto& [node, idx] = stack.back();
    const auto& succ = graph[node];
    if (idx < succ.size()) {
      const Term& s = succ[idx++];
      auto c = colour.count(s) ? colour[s] : White;
      if (c == Grey) {
        cyclic = true;
      } else if (c == White) {
        colour[s] = Grey;
        stack.emplace_back(s, 0);
      }
      continue;
    }
    std::pair<std::size_t, std::size_t> l{0, 0};
    if (!succ.empty()) {
      l = {SIZE_MAX, 0};
      for (const auto& s : succ) {
        l.first = std::min(l.first, len[s].first + 1);
        l.second = std::max(l.second, len[s].second + 1);
      }
    }
    len[node] = l;
    colour[node] = Black;
    stack.pop_back();
  }
  if (!cyclic) {
    out.min_steps = len[t].first;
    out.max_steps = len[t].second;
  }
  return out;
}

bool is_value(const Term& t) { return t.is(TermKind::Send) || t.is(TermKind::Par); }

namespace {

enum class FocusKind { None, Wait, Beta, SendReady, DistReady };

struct Focus {
  FocusKind kind = FocusKind::None;
  Path path;  // inside the component
};

// The position a call-by-value evaluation context selects in one component.
Focus focus(const Term& t, Path& path) {
  switch (t.kind()) {
    case TermKind::Var: return {FocusKind::Wait, path};
    case TermKind::App: {
      const Term& f = t.fun();
      const Term& a = t.arg();
      int idx = !is_value(f) ? 0 : !is_value(a) ? 1 : -1;
      if (idx >= 0) {
        path.push_back(idx);
        Focus r = focus(t.child(static_cast<std::size_t>(idx)), path);
        path.pop_back();
        return r;
      }
      if (!f.is(TermKind::Send)) return {};
      return {occurs_free(f.body(), f.name()) ? FocusKind::Beta : FocusKind::SendReady, path};
    }
    case TermKind::Dist: {
      if (t.body().is(TermKind::Par)) return {FocusKind::DistReady, path};
      if (is_value(t.body())) return {};
      path.push_back(0);
      Focus r = focus(t.body(), path);
      path.pop_back();
      return r;
    }
    case TermKind::Close: {
      path.push_back(0);
      Focus r = focus(t.body(), path);
      path.pop_back();
      return r;
    }
    default: return {};
  }
}

Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

std::optional<CbvStep> cbv_step(const std::vector<Term>& components) {
  std::size_t n = components.size();
  std::vector<Focus> foci(n);
  for (std::size_t i = 0; i < n; ++i) {
    Path p;
    foci[i] = focus(components[i], p);
  }
  // Component waiting on channel x, if any.
  auto waiter = [&](const std::string& x, std::size_t except) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == except || foci[j].kind != FocusKind::Wait) continue;
      if (subterm_at(components[j], foci[j].path).name() == x) return j;
    }
    return std::nullopt;
  };
  Term joined = join_par(components);

  for (std::size_t i = 0; i < n; ++i) {
    const Focus& f = foci[i];
    Path act = concat(join_path(i, n), f.path);
    const Term& redex = subterm_at(components[i], f.path);
    std::optional<Redex> r;
    switch (f.kind) {
      case FocusKind::Beta:
        r = Redex{RedexKind::Beta, act, {}, redex.fun().name(), ""};
        break;
      case FocusKind::SendReady:
        if (auto j = waiter(redex.fun().name(), i)) {
          r = Redex{RedexKind::Comm, act, {concat(join_path(*j, n), foci[*j].path)}, redex.fun().name(), ""};
        }
        break;
      case FocusKind::DistReady: {
        auto jx = waiter(redex.name(), i);
        auto jy = waiter(redex.name2(), i);
        if (jx && jy) {
          r = Redex{RedexKind::DistComm,
                    act,
                    {concat(join_path(*jx, n), foci[*jx].path), concat(join_path(*jy, n), foci[*jy].path)},
                    redex.name(),
                    redex.name2()};
        }
        break;
      }
      default:
        break;
    }
    if (!r) continue;
    return CbvStep{flatten_par(contract(joined, *r)), *r};
  }
  return std::nullopt;
}

Trace normalize_cbv(const Term& t, std::size_t max_steps) {
  Trace trace{t, {}};
  auto comps = flatten_par(t);
  while (auto step = cbv_step(comps)) {
    if (trace.steps.size() >= max_steps) {
      throw BudgetExceeded("call-by-value run exceeded " + std::to_string(max_steps) + " steps");
    }
    comps = std::move(step->components);
    trace.steps.push_back({step->redex, join_par(comps)});
  }
  return trace;
}

}  // namespace lamp
