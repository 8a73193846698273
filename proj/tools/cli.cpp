#include "cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lamp/mllbridge.hpp"
#include "lamp/reduction.hpp"
#include "lamp/runtime.hpp"
#include "lamp/testlab.hpp"
#include "lamp/typing.hpp"

namespace lamp::cli {

namespace {

struct Args {
  std::string file;
  std::string mode = "full";
  std::uint64_t seed = 0;
  std::size_t budget = 0;  // 0: command default
  std::size_t n = 100;
  std::size_t max_nodes = 12;
  std::string to = "mll";
};

class TypeFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool color() {
  const char* v = std::getenv("LAMP_COLOR");
  return v && std::string(v) == "1";
}

bool starts_with_paren(const std::string& text) {
  for (char c : text) {
    if (c == ';') return true;  // s-expression comment
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '(';
  }
  return false;
}

Derivation typed(const Sequent& s) {
  auto r = reconstruct(s);
  if (auto* e = std::get_if<TypeError>(&r)) throw TypeFailed(describe(*e));
  Derivation d = std::get<Derivation>(std::move(r));
  if (auto bad = check_derivation(d)) throw InvariantViolation("reconstructed derivation rejected: " + bad->message);
  return d;
}

int cmd_parse(const Args& a, std::ostream& out) {
  out << print_sequent(parse_program(slurp(a.file))) << "\n";
  return Ok;
}

int cmd_check(const Args& a, std::ostream& out) {
  out << serialize(typed(parse_program(slurp(a.file))));
  return Ok;
}

void print_summary(std::ostream& out, const Trace& t) {
  out << t.steps.size() << " step(s), comm_size " << comm_size(t.initial) << " -> " << comm_size(t.final_term()) << "\n";
}

int cmd_run(const Args& a, std::ostream& out) {
  Sequent s = parse_program(slurp(a.file));
  if (s.delta.empty()) return Ok;
  std::size_t budget = a.budget ? a.budget : kDefaultStepBudget;
  Term t = joined_terms(s);
  if (a.mode == "full") {
    Trace tr = normalize(t, budget);
    out << format_trace(tr, color());
    print_summary(out, tr);
    return Ok;
  }
  if (a.mode == "cbv") {
    Trace tr = normalize_cbv(t, budget);
    out << format_trace(tr, color());
    print_summary(out, tr);
    return Ok;
  }
  typed(s);
  auto r = run_concurrent(s, RuntimeOptions{a.seed, 5000});
  if (auto* dl = std::get_if<DeadlockReport>(&r)) {
    out << describe(*dl);
    return InvariantFailure;
  }
  const auto& comps = std::get<std::vector<Term>>(r);
  out << print_term(join_par(comps)) << "\n";
  if (!same_components(comps, flatten_par(normalize(t, budget).final_term()))) {
    out << "result differs from the sequential normal form\n";
    return InvariantFailure;
  }
  return Ok;
}

int cmd_enumerate(const Args& a, std::ostream& out) {
  Sequent s = parse_program(slurp(a.file));
  if (s.delta.empty()) return Ok;
  auto e = enumerate_normal_forms(joined_terms(s), a.budget ? a.budget : 10'000);
  out << "states: " << e.states << "\n";
  out << "normal forms: " << e.normal_forms.size() << "\n";
  for (const auto& nf : e.normal_forms) out << "  " << print_term(nf) << "\n";
  if (e.min_steps) {
    out << "steps: " << *e.min_steps << ".." << *e.max_steps << "\n";
  } else {
    out << "steps: reduction graph has a cycle\n";
  }
  if (e.normal_forms.size() == 1) {
    out << "CONFLUENT\n";
    return Ok;
  }
  out << "NON-CONFLUENT\n";
  // Only a metatheory bug when the program is typed.
  return std::holds_alternative<Derivation>(reconstruct(s)) ? InvariantFailure : Ok;
}

int cmd_translate(const Args& a, std::ostream& out) {
  std::string text = slurp(a.file);
  if (a.to == "nmll") {
    MllDerivation m = read_mll_derivation(text);
    if (auto bad = check_mll(m)) throw TypeFailed("invalid MLL derivation: " + bad->message);
    out << serialize(mll_to_nmll(m));
    return Ok;
  }
  Derivation d;
  if (starts_with_paren(text)) {
    d = read_derivation(text);
    if (auto bad = check_derivation(d)) throw TypeFailed("invalid derivation: " + bad->message);
  } else {
    d = typed(parse_program(text));
  }
  MllDerivation m = nmll_to_mll(d);
  if (auto bad = check_mll(m)) throw InvariantViolation("MLL image rejected: " + bad->message);
  out << serialize(m);
  return Ok;
}

int cmd_props(const Args& a, std::ostream& out) {
  GenConfig cfg;
  cfg.seed = a.seed;
  cfg.max_nodes = a.max_nodes;
  Report r = run_property_suite(a.n, cfg);
  out << format_report(r);
  return r.ok() ? Ok : InvariantFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Typecheck, run and translate linear parallel lambda programs", "lamp"};
  app.require_subcommand(1);
  Args a;

  auto file = [&](CLI::App* c) { c->add_option("file", a.file, "Program file")->required()->check(CLI::ExistingFile); };
  auto* parse = app.add_subcommand("parse", "Pretty-print a program");
  file(parse);
  auto* check = app.add_subcommand("check", "Typecheck and print the derivation");
  file(check);
  auto* runc = app.add_subcommand("run", "Reduce a program and print the trace");
  file(runc);
  runc->add_option("--mode", a.mode, "full, cbv or concurrent")->check(CLI::IsMember({"full", "cbv", "concurrent"}));
  runc->add_option("--seed", a.seed, "Scheduler seed for concurrent mode");
  runc->add_option("--budget", a.budget, "Step budget")->check(CLI::PositiveNumber);
  auto* enumc = app.add_subcommand("enumerate", "Explore every reduction order");
  file(enumc);
  enumc->add_option("--budget", a.budget, "State budget (default 10000)")->check(CLI::PositiveNumber);
  auto* trans = app.add_subcommand("translate", "Translate between NMLL and MLL derivations");
  file(trans);
  trans->add_option("--to", a.to, "mll or nmll")->check(CLI::IsMember({"mll", "nmll"}));
  auto* props = app.add_subcommand("props", "Run the property suite on generated derivations");
  props->add_option("--n", a.n, "Number of cases");
  props->add_option("--seed", a.seed, "Base seed");
  props->add_option("--max-nodes", a.max_nodes, "Derivation size bound")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : ParseFailure;
  }

  try {
    if (parse->parsed()) return cmd_parse(a, out);
    if (check->parsed()) return cmd_check(a, out);
    if (runc->parsed()) return cmd_run(a, out);
    if (enumc->parsed()) return cmd_enumerate(a, out);
    if (trans->parsed()) return cmd_translate(a, out);
    return cmd_props(a, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const TypeFailed& e) {
    err << "type error: " << e.what() << "\n";
    return TypeFailure;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return BudgetFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return InvariantFailure;
  }
}

}  // namespace lamp::cli
