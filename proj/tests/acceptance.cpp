// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lamp/mllbridge.hpp"
#include "lamp/reduction.hpp"
#include "lamp/runtime.hpp"
#include "lamp/testlab.hpp"
#include "lamp/typing.hpp"

using namespace lamp;

namespace {

// Pinned thresholds.
constexpr std::size_t kCases = 500;
constexpr std::size_t kSmallCases = 200;
constexpr std::size_t kMaxCommSize = 6;
constexpr std::size_t kStateBudget = 100'000;
constexpr std::size_t kRuntimeSeeds = 5;
constexpr double kCorpusSeconds = 1.0;
constexpr double kStepSeconds = 30.0;
constexpr double kConfluenceSeconds = 60.0;
constexpr double kSubjectSeconds = 60.0;

const GenConfig kGen{2024, 14, {"A", "B", "C"}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& name) { return std::string(LAMP_CORPUS_DIR) + "/" + name; }

std::string cli_output(std::vector<std::string> args, int& code) {
  args.insert(args.begin(), "lamp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return out.str();
}

Sequent generated(std::size_t i) { return gen_derivation({case_seed(kGen, i), kGen.max_nodes, kGen.atom_pool}).conclusion; }

// Runs prop over n generated cases and counts failures.
Outcome over_cases(std::size_t n, const std::function<Verdict(const Sequent&)>& prop, std::size_t* applicable = nullptr) {
  std::size_t failures = 0, used = 0;
  std::string first;
  for (std::size_t i = 0; i < n; ++i) {
    Verdict v = prop(generated(i));
    if (!v.applicable) continue;
    ++used;
    if (v.failure) {
      if (failures++ == 0) first = "seed " + std::to_string(case_seed(kGen, i)) + ": " + *v.failure;
    }
  }
  if (applicable) *applicable = used;
  Outcome o;
  o.pass = failures == 0;
  o.detail = std::to_string(used) + " cases, " + std::to_string(failures) + " failures";
  if (!first.empty()) o.detail += "; first " + first;
  return o;
}

void timed(Outcome& o, Clock::time_point t0, double limit) {
  double s = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.2fs (limit %.0fs)", s, limit);
  o.detail += buf;
  if (s >= limit) o.pass = false;
}

Outcome corpus_traces() {
  struct Case {
    const char* name;
    std::vector<const char*> final_components;
  };
  const std::vector<Case> cases{
      {"client_server_request", {"cost prod", "*"}},
      {"client_server_dialogue", {"*", "pay (cost prod)"}},
      {"cyclic", {"enc2 (enc1 M)", "*", "*"}},
      {"channel_transmission", {"print M", "*", "*"}},
  };
  Outcome o;
  auto t0 = Clock::now();
  for (const auto& c : cases) {
    std::string file = corpus(std::string(c.name) + ".lamp");
    Term t = joined_terms(parse_program(slurp(file)));
    Trace tr = normalize(t);
    std::vector<Term> expected;
    for (const char* e : c.final_components) expected.push_back(parse_term(e));
    if (!same_components(flatten_par(tr.final_term()), expected)) {
      o.pass = false;
      o.detail += std::string(c.name) + ": final " + print_term(tr.final_term()) + "; ";
    }
    if (tr.steps.size() != comm_size(t) - comm_size(tr.final_term())) {
      o.pass = false;
      o.detail += std::string(c.name) + ": step count; ";
    }
    int code = 0;
    std::string out = cli_output({"run", file}, code);
    if (code != 0 || out != slurp(corpus("golden/" + std::string(c.name) + ".run"))) {
      o.pass = false;
      o.detail += std::string(c.name) + ": golden mismatch; ";
    }
  }
  o.detail += "4 programs";
  timed(o, t0, kCorpusSeconds);
  return o;
}

Outcome excluded_middle() {
  const std::string tree =
      "(ParrI \"|- x | out x. * : A par (A -o bot)\"\n"
      "  (LolliI \"|- x : A, out x. * : A -o bot\"\n"
      "    (BotI \"x : A |- x : A, * : bot\"\n"
      "      (Ax \"x : A |- x : A\"))))\n";
  auto r = reconstruct(parse_program("|- x | out x. * : A par (A -o bot)"));
  if (auto* e = std::get_if<TypeError>(&r)) return {false, describe(*e)};
  const Derivation& d = std::get<Derivation>(r);
  Outcome o;
  if (serialize(d) != tree) o = {false, "tree differs: " + serialize(d)};
  if (check_derivation(d)) o = {false, "check_derivation rejects"};
  MllDerivation m = nmll_to_mll(d);
  if (auto bad = check_mll(m)) o = {false, "check_mll: " + bad->message};
  if (o.pass) o.detail = "tree matches, MLL image " + print_mll_sequent(m.conclusion);
  return o;
}

Outcome step_decrement() {
  auto t0 = Clock::now();
  Outcome o = over_cases(kCases, [](const Sequent& s) { return prop_step_decrement(s); });
  timed(o, t0, kStepSeconds);
  return o;
}

Outcome confluence() {
  auto t0 = Clock::now();
  std::size_t used = 0;
  Outcome o = over_cases(kCases, [](const Sequent& s) { return prop_confluence(s, kMaxCommSize, kStateBudget); }, &used);
  for (const char* name : {"excluded_middle", "client_server_request", "client_server_dialogue", "cyclic",
                           "channel_transmission", "two_order", "cbv_sync"}) {
    Enumeration e = enumerate_normal_forms(joined_terms(parse_program(slurp(corpus(std::string(name) + ".lamp")))),
                                           kStateBudget);
    if (e.normal_forms.size() != 1) {
      o.pass = false;
      o.detail += std::string("; ") + name + ": " + std::to_string(e.normal_forms.size()) + " normal forms";
    }
  }
  o.detail += " (cs <= 6), 7 corpus programs";
  timed(o, t0, kConfluenceSeconds);
  return o;
}

Outcome subject_reduction() {
  auto t0 = Clock::now();
  Outcome o = over_cases(kCases, [](const Sequent& s) { return prop_subject_reduction(s); });
  timed(o, t0, kSubjectSeconds);
  return o;
}

bool has_trigger(const Term& t) {
  if (t.is(TermKind::Dist)) return true;
  if (t.is(TermKind::App) && t.fun().is(TermKind::Send)) return true;
  for (std::size_t i = 0; i < t.arity(); ++i)
    if (has_trigger(t.child(i))) return true;
  return false;
}

// Literal reading: any applied send or any Dist, on every typed state of the
// normalization of each generated program.
Outcome progress() {
  std::size_t terms = 0, stuck = 0, runtime_failures = 0;
  std::string first;
  for (std::size_t i = 0; terms < kCases && i < 20 * kCases; ++i) {
    Sequent s = generated(i);
    Trace tr = normalize(joined_terms(s));
    std::vector<Term> states{tr.initial};
    for (const auto& st : tr.steps) states.push_back(st.result);
    for (const Term& t : states) {
      if (!has_trigger(t)) continue;
      Sequent st = with_joined(s, t);
      if (!std::holds_alternative<Derivation>(reconstruct(st))) continue;
      ++terms;
      if (find_redexes(t).empty() && stuck++ == 0) first = print_sequent(st);
    }
    if (prop_runtime(s, kRuntimeSeeds).failure) ++runtime_failures;
  }
  Outcome o;
  o.pass = terms >= kCases && stuck == 0 && runtime_failures == 0;
  o.detail = std::to_string(terms) + " typed terms, " + std::to_string(stuck) + " without a redex, " +
             std::to_string(runtime_failures) + " runtime failures";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome subformula() { return over_cases(kSmallCases, [](const Sequent& s) { return prop_subformula(s); }); }

Outcome translations() {
  std::size_t fa = 0, fb = 0;
  for (std::size_t i = 0; i < kSmallCases; ++i) {
    GenConfig cfg{case_seed(kGen, i), kGen.max_nodes, kGen.atom_pool};
    if (prop_to_mll(gen_derivation(cfg)).failure) ++fa;
    if (prop_to_nmll(gen_mll_derivation(cfg)).failure) ++fb;
  }
  return {fa == 0 && fb == 0, std::to_string(kSmallCases) + " NMLL -> MLL with " + std::to_string(fa) +
                                  " failures, " + std::to_string(kSmallCases) + " MLL -> NMLL with " +
                                  std::to_string(fb) + " failures"};
}

Outcome cbv_synchrony() {
  Trace tr = normalize_cbv(parse_term("(out x. u) (lam v. v) | (lam z. z (x(y). y)) (lam k. k)"));
  const std::vector<std::pair<std::string, std::string>> expected{
      {"Beta", "(out x. u) (lam v. v) | (lam k. k) (x(y). y)"},
      {"Comm x", "u | (lam k. k) ((lam y. y) (lam v. v))"},
      {"Beta", "u | (lam k. k) (lam v. v)"},
      {"Beta", "u | lam v. v"},
  };
  Outcome o;
  if (tr.steps.size() != expected.size()) return {false, std::to_string(tr.steps.size()) + " steps"};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (trace_label(tr.steps[k]) != expected[k].first || tr.steps[k].result != parse_term(expected[k].second)) {
      o.pass = false;
      o.detail += "step " + std::to_string(k + 1) + " differs; ";
    }
  }
  if (cbv_step({parse_term("x(y). u")}).has_value()) {
    o.pass = false;
    o.detail += "x(y). u is not stuck; ";
  }
  o.detail += "head beta then send, beta, beta; x(y). u stuck";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"corpus traces", corpus_traces},
      {"excluded middle", excluded_middle},
      {"step decrement", step_decrement},
      {"confluence", confluence},
      {"subject reduction", subject_reduction},
      {"progress", progress},
      {"subformula", subformula},
      {"translation soundness", translations},
      {"cbv synchrony", cbv_synchrony},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu %-22s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
