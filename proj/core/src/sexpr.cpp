#include "sexpr.hpp"

#include <cctype>

#include "lamp/syntax.hpp"

namespace lamp::sexpr {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  Node document() {
    Node n = node();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return n;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseErrorKind::Syntax, line_, col_, msg);
  }

  void bump() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        bump();
      } else {
        break;
      }
    }
  }

  Node node() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of s-expression");
    Node n;
    char c = s_[i_];
    if (c == '(') {
      bump();
      n.is_list = true;
      for (;;) {
        skip();
        if (i_ >= s_.size()) fail("unclosed '('");
        if (s_[i_] == ')') {
          bump();
          return n;
        }
        n.items.push_back(node());
      }
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      bump();
      n.quoted = true;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\') {
          bump();
          if (i_ >= s_.size()) break;
        }
        n.text += s_[i_];
        bump();
      }
      if (i_ >= s_.size()) fail("unterminated string");
      bump();
      return n;
    }
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' && s_[i_] != ')') {
      n.text += s_[i_];
      bump();
    }
    return n;
  }
};

}  // namespace

Node read(std::string_view text) { return Reader(text).document(); }

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace lamp::sexpr
