#include <gtest/gtest.h>

#include "lamp/reduction.hpp"
#include "lamp/testlab.hpp"
#include "lamp/typing.hpp"

using namespace lamp;

namespace {

Derivation typed(const char* program) {
  auto r = reconstruct(parse_program(program));
  if (auto* e = std::get_if<TypeError>(&r)) {
    ADD_FAILURE() << program << ": " << describe(*e);
    return {};
  }
  return std::get<Derivation>(r);
}

TypeErrorKind error_kind(const char* program) {
  auto r = reconstruct(parse_program(program));
  if (auto* e = std::get_if<TypeError>(&r)) return e->kind;
  ADD_FAILURE() << program << " was accepted";
  return TypeErrorKind::UnificationFailure;
}

// The linear excluded middle, written out by hand.
const char* kExcludedMiddle =
    "(ParrI \"|- x | out x. * : A par (A -o bot)\"\n"
    "  (LolliI \"|- x : A, out x. * : A -o bot\"\n"
    "    (BotI \"x : A |- x : A, * : bot\"\n"
    "      (Ax \"x : A |- x : A\"))))\n";

}  // namespace

TEST(Checker, AcceptsHandWrittenTree) {
  Derivation d = read_derivation(kExcludedMiddle);
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(d.node_count(), 4u);
  EXPECT_EQ(serialize(d), kExcludedMiddle);
}

TEST(Checker, DeltaIsAMultiset) {
  Derivation d = read_derivation(
      "(BotI \"x : A |- * : bot, x : A\"\n"
      "  (Ax \"x : A |- x : A\"))");
  EXPECT_FALSE(check_derivation(d).has_value());
}

TEST(Checker, ReportsPathOfBadNode) {
  Derivation d = read_derivation(
      "(ParrI \"|- x | out x. * : A par (A -o bot)\"\n"
      "  (LolliI \"|- x : A, out x. * : A -o bot\"\n"
      "    (BotI \"x : B |- x : B, * : bot\"\n"
      "      (Ax \"x : B |- x : B\"))))");
  auto bad = check_derivation(d);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->node, (Path{0}));
}

TEST(Checker, WrongArity) {
  Derivation d = read_derivation("(BotI \"x : A |- x : A, * : bot\")");
  auto bad = check_derivation(d);
  ASSERT_TRUE(bad.has_value());
  EXPECT_TRUE(bad->node.empty());
}

TEST(Checker, PremisesMustBeVariableDisjoint) {
  Derivation d = read_derivation(
      "(LolliE \"f : A -o B, a : A |- f a : B\"\n"
      "  (Ax \"f : A -o B |- f : A -o B\")\n"
      "  (Ax \"f : A -o B |- f : A -o B\"))");
  auto bad = check_derivation(d);
  ASSERT_TRUE(bad.has_value());
  EXPECT_NE(bad->message.find("share variable f"), std::string::npos) << bad->message;
}

TEST(Checker, UntypedEntryMustBeClose) {
  Sequent s;
  s.delta.push_back({Term::var("x"), std::nullopt});
  EXPECT_TRUE(check_well_formed(s).has_value());
}

TEST(Reconstruct, ExcludedMiddleMatchesHandTree) {
  Derivation d = typed("|- x | out x. * : A par (A -o bot)");
  EXPECT_EQ(serialize(d), kExcludedMiddle);
}

TEST(Reconstruct, Errors) {
  EXPECT_EQ(error_kind("|- x : A"), TypeErrorKind::LinearityViolation);
  EXPECT_EQ(error_kind("x : A |- * : bot"), TypeErrorKind::LinearityViolation);
  EXPECT_EQ(error_kind("a : A |- (lam x. x) a : B"), TypeErrorKind::UnificationFailure);
  EXPECT_EQ(error_kind("f : A, a : A |- f a : B"), TypeErrorKind::UnificationFailure);
  // Without mix two independent conclusions cannot be split.
  EXPECT_EQ(error_kind("a : A, b : B |- a : A, b : B"), TypeErrorKind::UnsatisfiableSplit);
}

// Assigning isolated parts of the context needs backtracking: leftmost
// placement of x would make the application untypable.
TEST(Reconstruct, BacktracksOverIsolatedComponents) {
  Derivation d = typed("f : bot -o B, x : A |- f * : B, x : A");
  EXPECT_FALSE(check_derivation(d).has_value());
}

TEST(Reconstruct, BinaryOutput) {
  Derivation d = typed("p : A par B |- close(out2 a b. p), a : A, b : B");
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(d.rule, Rule::BotE);
  EXPECT_EQ(d.premises.at(0).rule, Rule::ParrE);
}

TEST(Reconstruct, AnnotationsGuideTypes) {
  Derivation d = typed("|- (out x. * : A -o bot) | (x : A) : (A -o bot) par A");
  EXPECT_FALSE(check_derivation(d).has_value());
}

TEST(Linearity, Violations) {
  auto v = check_channel_linearity(parse_program("|- x : A"));
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->name, "x");
  EXPECT_EQ(v->use_count, 1u);
  EXPECT_EQ(v->binder_count, 0u);
  EXPECT_FALSE(v->declared);
  auto w = check_channel_linearity(parse_program("x : A |- * : bot"));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->declared);
  EXPECT_EQ(w->use_count, 0u);
  EXPECT_FALSE(check_channel_linearity(parse_program("|- x | out x. * : A par (A -o bot)")).has_value());
}

TEST(Substitution, GraftsDerivation) {
  Derivation d1 = typed("g : C -o A, c : C |- g c : A");
  Derivation d2 = typed("f : A -o B, x : A |- f x : B");
  Derivation d = subst_derivation(d1, 0, d2, "x");
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(print_sequent(d.conclusion), "f : A -o B, g : C -o A, c : C |- f (g c) : B");
}

TEST(Substitution, Preconditions) {
  Derivation d1 = typed("g : C -o A, c : C |- g c : A");
  Derivation d2 = typed("f : A -o B, x : A |- f x : B");
  EXPECT_THROW(subst_derivation(d1, 0, d2, "y"), PreconditionViolation);
  EXPECT_THROW(subst_derivation(d1, 3, d2, "x"), PreconditionViolation);
  Derivation wrong = typed("g : C -o B, c : C |- g c : B");
  EXPECT_THROW(subst_derivation(wrong, 0, d2, "x"), PreconditionViolation);
}

TEST(Shapes, Classify) {
  Type a = Type::atom("A");
  EXPECT_EQ(classify_normal(parse_term("lam x. x"), Type::lolli(a, a)).kind, ShapeKind::Value);
  EXPECT_EQ(classify_normal(parse_term("x | y"), Type::parr(a, a)).value, ValueKind::Parallel);
  auto s = classify_normal(parse_term("f a b"), a);
  EXPECT_EQ(s.kind, ShapeKind::HeadVar);
  EXPECT_EQ(s.head, "f");
  EXPECT_EQ(s.stack, (std::vector<Term>{Term::var("a"), Term::var("b")}));
  EXPECT_EQ(classify_normal(parse_term("f a"), Type::bot()).kind, ShapeKind::BottomLike);
  EXPECT_THROW(classify_normal(parse_term("lam x. x"), a), ShapeViolation);
}

TEST(Subformula, DetourIsCounterexample) {
  auto c = check_subformula(typed("a : A |- (lam x. x) a : A"));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->type, parse_type("A -o A"));
}

TEST(Subformula, NormalTermPasses) {
  EXPECT_FALSE(check_subformula(typed("f : A -o B, a : A |- f a : B")).has_value());
}

TEST(NoFreaks, BinderUsedInItsSimpleContext) {
  EXPECT_TRUE(check_no_freaks(parse_program("f : A |- f z (out z. *) : bot")).has_value());
  EXPECT_FALSE(check_no_freaks(parse_program("|- x | out x. * : A par (A -o bot)")).has_value());
}

// Any generated derivation is re-derivable from its conclusion alone, and its
// serialization round-trips.
TEST(Properties, GeneratedDerivationsRoundTrip) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Derivation d = gen_derivation({seed, 16, {"A", "B"}});
    ASSERT_FALSE(check_derivation(d).has_value()) << seed;
    EXPECT_EQ(serialize(read_derivation(serialize(d))), serialize(d));
    EXPECT_FALSE(prop_reconstruct(d.conclusion).failure.has_value()) << seed;
    EXPECT_FALSE(prop_linearity(d.conclusion).failure.has_value()) << seed;
    EXPECT_FALSE(prop_no_freaks(d.conclusion).failure.has_value()) << seed;
  }
}

// Normal forms of generated programs re-type with the subformula property.
TEST(Properties, SubformulaAfterNormalization) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Derivation d = gen_derivation({seed, 14, {"A", "B"}});
    auto v = prop_subformula(d.conclusion);
    EXPECT_FALSE(v.failure.has_value()) << seed << ": " << v.failure.value_or("");
  }
}
