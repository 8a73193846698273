#include <cctype>
#include <set>

#include "lamp/syntax.hpp"

namespace lamp {

namespace {

enum class Tok { Ident, Star, Bar, Dot, LParen, RParen, Colon, Comma, Turnstile, Lolli, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"out", "lam", "out2", "close", "bot", "par"};
  return k;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int l = line;
    int cl = col;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, std::string(src.substr(i, j - i)), l, cl});
      advance(j - i);
      continue;
    }
    auto single = [&](Tok k) {
      out.push_back({k, std::string(1, c), l, cl});
      advance(1);
    };
    switch (c) {
      case '*': single(Tok::Star); break;
      case '.': single(Tok::Dot); break;
      case '(': single(Tok::LParen); break;
      case ')': single(Tok::RParen); break;
      case ':': single(Tok::Colon); break;
      case ',': single(Tok::Comma); break;
      case '|':
        if (i + 1 < src.size() && src[i + 1] == '-') {
          out.push_back({Tok::Turnstile, "|-", l, cl});
          advance(2);
        } else {
          single(Tok::Bar);
        }
        break;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == 'o' && (i + 2 >= src.size() || !ident_char(src[i + 2]))) {
          out.push_back({Tok::Lolli, "-o", l, cl});
          advance(2);
          break;
        }
        [[fallthrough]];
      default:
        throw ParseError(ParseErrorKind::Syntax, l, cl, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  Sequent program() {
    Sequent s;
    bool has_turnstile = false;
    for (const auto& t : toks_) has_turnstile = has_turnstile || t.kind == Tok::Turnstile;
    if (has_turnstile) {
      if (peek().kind != Tok::Turnstile) {
        do {
          const Token& n = expect_ident("declared variable");
          expect(Tok::Colon, "':'");
          Type ty = type();
          for (const auto& d : s.gamma) {
            if (d.name == n.text) fail(n, "variable '" + n.text + "' declared twice");
          }
          s.gamma.push_back({n.text, ty});
        } while (accept(Tok::Comma));
      }
      expect(Tok::Turnstile, "'|-'");
    }
    do {
      const Token& start = peek();
      Term t = par_term();
      std::optional<Type> ty;
      if (accept(Tok::Colon)) ty = type();
      if (!ty && !t.is(TermKind::Close)) {
        throw ParseError(ParseErrorKind::UntypedEntry, start.line, start.col,
                         "an entry without a type must be close(...)");
      }
      s.delta.push_back({t, ty});
    } while (accept(Tok::Comma));
    expect(Tok::End, "end of input");
    s.annotations = std::move(ann_);
    return s;
  }

  Term lone_term() {
    Term t = par_term();
    expect(Tok::End, "end of input");
    return t;
  }

  Type lone_type() {
    Type t = type();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> bound_;
  Annotations ann_;

  const Token& peek(std::size_t k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(ParseErrorKind::Syntax, at.line, at.col, msg);
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) {
      fail(peek(), std::string("expected ") + what + (peek().text.empty() ? "" : ", found '" + peek().text + "'"));
    }
    return next();
  }

  bool is_kw(const Token& t, const char* kw) const { return t.kind == Tok::Ident && t.text == kw; }

  const Token& expect_ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || keywords().count(t.text)) fail(t, std::string("expected ") + what);
    return next();
  }

  void bind(const Token& at) {
    if (!bound_.insert(at.text).second) {
      throw ParseError(ParseErrorKind::DuplicateBinder, at.line, at.col, "name '" + at.text + "' is bound twice");
    }
  }

  Type type() {
    Type lhs = par_type();
    if (accept(Tok::Lolli)) return Type::lolli(lhs, type());
    return lhs;
  }

  Type par_type() {
    Type acc = atom_type();
    while (is_kw(peek(), "par")) {
      next();
      acc = Type::parr(acc, atom_type());
    }
    return acc;
  }

  Type atom_type() {
    if (is_kw(peek(), "bot")) {
      next();
      return Type::bot();
    }
    if (accept(Tok::LParen)) {
      Type t = type();
      expect(Tok::RParen, "')'");
      return t;
    }
    return Type::atom(expect_ident("a type").text);
  }

  Term par_term() {
    Term lhs = app_term();
    if (accept(Tok::Bar)) return Term::par(lhs, par_term());
    return lhs;
  }

  bool starts_operand(const Token& t) const {
    return t.kind == Tok::Star || t.kind == Tok::LParen ||
           (t.kind == Tok::Ident && t.text != "bot" && t.text != "par");
  }

  bool at_binder() const {
    const Token& t = peek();
    if (is_kw(t, "out") || is_kw(t, "lam") || is_kw(t, "out2")) return true;
    return t.kind == Tok::Ident && !keywords().count(t.text) && peek(1).kind == Tok::LParen &&
           peek(2).kind == Tok::Ident && peek(3).kind == Tok::RParen && peek(4).kind == Tok::Dot;
  }

  Term app_term() {
    if (!starts_operand(peek())) fail(peek(), "expected a term");
    bool was_binder = at_binder();
    Term acc = operand();
    while (!was_binder && starts_operand(peek())) {
      was_binder = at_binder();
      acc = Term::app(acc, operand());
    }
    return acc;
  }

  Term operand() {
    const Token& t = peek();
    if (accept(Tok::Star)) return Term::unit();
    if (accept(Tok::LParen)) {
      Term inner = par_term();
      if (accept(Tok::Colon)) annotate(t, inner, type());
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (is_kw(t, "close")) {
      next();
      expect(Tok::LParen, "'(' after close");
      Term inner = par_term();
      expect(Tok::RParen, "')'");
      return Term::close(inner);
    }
    if (is_kw(t, "out") || is_kw(t, "lam")) {
      next();
      const Token& x = expect_ident("a channel name");
      bind(x);
      expect(Tok::Dot, "'.'");
      Term body = app_term();
      if (t.text == "lam" && !occurs_free(body, x.text)) {
        throw ParseError(ParseErrorKind::LamWithoutOccurrence, t.line, t.col,
                         "lam " + x.text + " does not use " + x.text + " in its body");
      }
      return Term::send(x.text, body);
    }
    if (is_kw(t, "out2")) {
      next();
      const Token& x = expect_ident("a channel name");
      bind(x);
      const Token& y = expect_ident("a channel name");
      bind(y);
      expect(Tok::Dot, "'.'");
      return Term::dist(x.text, y.text, app_term());
    }
    if (at_binder()) {  // x(y).u
      const Token& x = next();
      next();
      const Token& y = next();
      bind(y);
      next();
      next();
      Term body = app_term();
      return Term::app(Term::send(y.text, body), Term::var(x.text));
    }
    return Term::var(expect_ident("a term").text);
  }

  void annotate(const Token& at, const Term& t, const Type& ty) {
    std::map<std::string, Type>* table = nullptr;
    if (t.is(TermKind::Var)) table = &ann_.var_types;
    if (t.is(TermKind::Send)) table = &ann_.send_types;
    if (!table) {
      throw ParseError(ParseErrorKind::BadAnnotation, at.line, at.col,
                       "type annotations are supported on variables and binders only");
    }
    auto [it, fresh] = table->emplace(t.name(), ty);
    if (!fresh && !(it->second == ty)) {
      throw ParseError(ParseErrorKind::BadAnnotation, at.line, at.col, "conflicting annotations for " + t.name());
    }
  }
};

}  // namespace

Sequent parse_program(std::string_view text) { return Parser(text).program(); }
Term parse_term(std::string_view text) { return Parser(text).lone_term(); }
Type parse_type(std::string_view text) { return Parser(text).lone_type(); }

}  // namespace lamp
