#pragma once

// Minimal s-expression support for derivation files: lists, bare atoms and
// double-quoted strings with \" and \\ escapes.

#include <string>
#include <string_view>
#include <vector>

namespace lamp::sexpr {

struct Node {
  bool is_list = false;
  bool quoted = false;
  std::string text;
  std::vector<Node> items;
};

Node read(std::string_view text);
std::string quote(const std::string& s);

}  // namespace lamp::sexpr
