#include "lamp/typing.hpp"
#include "sexpr.hpp"

namespace lamp {

namespace {

void write(std::string& out, const Derivation& d, int indent) {
  out += std::string(static_cast<std::size_t>(indent), ' ');
  out += '(';
  out += rule_name(d.rule);
  out += ' ';
  out += sexpr::quote(print_sequent(d.conclusion));
  for (const auto& p : d.premises) {
    out += '\n';
    write(out, p, indent + 2);
  }
  out += ')';
}

Derivation build(const sexpr::Node& n) {
  if (!n.is_list || n.items.size() < 2 || n.items[0].is_list || !n.items[1].quoted) {
    throw ParseError(ParseErrorKind::Syntax, 0, 0, "expected (Rule \"sequent\" premise...)");
  }
  auto rule = rule_from_name(n.items[0].text);
  if (!rule) throw ParseError(ParseErrorKind::Syntax, 0, 0, "unknown rule " + n.items[0].text);
  Derivation d;
  d.rule = *rule;
  d.conclusion = parse_program(n.items[1].text);
  for (std::size_t i = 2; i < n.items.size(); ++i) d.premises.push_back(build(n.items[i]));
  return d;
}

}  // namespace

std::string serialize(const Derivation& d) {
  std::string out;
  write(out, d, 0);
  out += '\n';
  return out;
}

Derivation read_derivation(std::string_view text) { return build(sexpr::read(text)); }

}  // namespace lamp
