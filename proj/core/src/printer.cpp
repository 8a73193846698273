#include "lamp/syntax.hpp"

namespace lamp {

namespace {

enum class TyCtx { Top, LolliLeft, ParLeft, ParRight };

void put_type(std::string& out, const Type& t, TyCtx ctx) {
  switch (t.kind()) {
    case TypeKind::Bot: out += "bot"; return;
    case TypeKind::Atom: out += t.name(); return;
    case TypeKind::Lolli: {
      bool paren = ctx != TyCtx::Top;
      if (paren) out += '(';
      put_type(out, t.left(), TyCtx::LolliLeft);
      out += " -o ";
      put_type(out, t.right(), TyCtx::Top);
      if (paren) out += ')';
      return;
    }
    case TypeKind::ParT: {
      bool paren = ctx == TyCtx::ParRight;
      if (paren) out += '(';
      put_type(out, t.left(), TyCtx::ParLeft);
      out += " par ";
      put_type(out, t.right(), TyCtx::ParRight);
      if (paren) out += ')';
      return;
    }
  }
}

// Top: anything goes. ParLeft/Body: a Par needs parens. Fun: binders too.
// Arg: applications too.
enum class Ctx { Top, ParLeft, Body, Fun, Arg };

class TermPrinter {
 public:
  explicit TermPrinter(const Annotations* ann) : ann_(ann) {}

  void put(std::string& out, const Term& t, Ctx ctx) const {
    const Type* note = annotation(t);
    if (note) {
      out += '(';
      put_bare(out, t, Ctx::Top);
      out += " : ";
      put_type(out, *note, TyCtx::Top);
      out += ')';
      return;
    }
    bool paren = false;
    switch (t.kind()) {
      case TermKind::Par: paren = ctx != Ctx::Top; break;
      case TermKind::Send:
      case TermKind::Dist: paren = ctx == Ctx::Fun || ctx == Ctx::Arg; break;
      case TermKind::App: paren = ctx == Ctx::Arg; break;
      default: break;
    }
    if (paren) out += '(';
    put_bare(out, t, paren ? Ctx::Top : ctx);
    if (paren) out += ')';
  }

 private:
  const Annotations* ann_;

  const Type* annotation(const Term& t) const {
    if (!ann_) return nullptr;
    const std::map<std::string, Type>* table = nullptr;
    if (t.is(TermKind::Var)) table = &ann_->var_types;
    if (t.is(TermKind::Send)) table = &ann_->send_types;
    if (!table) return nullptr;
    auto it = table->find(t.name());
    return it == table->end() ? nullptr : &it->second;
  }

  void put_bare(std::string& out, const Term& t, Ctx ctx) const {
    switch (t.kind()) {
      case TermKind::Unit: out += '*'; return;
      case TermKind::Var: out += t.name(); return;
      case TermKind::App:
        put(out, t.fun(), Ctx::Fun);
        out += ' ';
        put(out, t.arg(), Ctx::Arg);
        return;
      case TermKind::Send:
        out += occurs_free(t.body(), t.name()) ? "lam " : "out ";
        out += t.name();
        out += ". ";
        put(out, t.body(), Ctx::Body);
        return;
      case TermKind::Dist:
        out += "out2 " + t.name() + ' ' + t.name2() + ". ";
        put(out, t.body(), Ctx::Body);
        return;
      case TermKind::Par:
        put(out, t.left(), Ctx::ParLeft);
        out += " | ";
        put(out, t.right(), ctx == Ctx::Top ? Ctx::Top : Ctx::ParLeft);
        return;
      case TermKind::Close:
        out += "close(";
        put(out, t.body(), Ctx::Top);
        out += ')';
        return;
    }
  }
};

std::string entry_text(const Entry& e, const Annotations* ann) {
  std::string out;
  TermPrinter(ann).put(out, e.term, Ctx::Top);
  if (e.type) {
    out += " : ";
    put_type(out, *e.type, TyCtx::Top);
  }
  return out;
}

}  // namespace

std::string print_type(const Type& t) {
  std::string out;
  put_type(out, t, TyCtx::Top);
  return out;
}

std::string print_term(const Term& t) {
  std::string out;
  TermPrinter(nullptr).put(out, t, Ctx::Top);
  return out;
}

std::string print_entry(const Entry& e) { return entry_text(e, nullptr); }

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.gamma.size(); ++i) {
    if (i) out += ", ";
    out += s.gamma[i].name + " : " + print_type(s.gamma[i].type);
  }
  out += out.empty() ? "|- " : " |- ";
  const Annotations* ann = s.annotations.empty() ? nullptr : &s.annotations;
  for (std::size_t i = 0; i < s.delta.size(); ++i) {
    if (i) out += ", ";
    out += entry_text(s.delta[i], ann);
  }
  return out;
}

}  // namespace lamp
