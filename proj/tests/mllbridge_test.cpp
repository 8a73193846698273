#include <gtest/gtest.h>

#include "lamp/mllbridge.hpp"
#include "lamp/testlab.hpp"

using namespace lamp;

namespace {

Derivation typed(const char* program) {
  auto r = reconstruct(parse_program(program));
  if (auto* e = std::get_if<TypeError>(&r)) ADD_FAILURE() << describe(*e);
  return std::get<Derivation>(r);
}

MllDerivation mll(const char* text) { return read_mll_derivation(text); }

}  // namespace

TEST(MllSequents, PrintAndParse) {
  MllSequent s = parse_mll_sequent("A, B -o C |- A par B");
  ASSERT_EQ(s.left.size(), 2u);
  EXPECT_EQ(s.left[1], parse_type("B -o C"));
  EXPECT_EQ(print_mll_sequent(s), "A, B -o C |- A par B");
  EXPECT_EQ(print_mll_sequent(parse_mll_sequent("bot |-")), "bot |-");
  EXPECT_EQ(print_mll_sequent(parse_mll_sequent(" |- ")), "|-");
}

TEST(CheckMll, Axioms) {
  EXPECT_FALSE(check_mll(mll("(AxId \"A |- A\")")).has_value());
  EXPECT_FALSE(check_mll(mll("(AxBot \"bot |-\")")).has_value());
  EXPECT_TRUE(check_mll(mll("(AxId \"A |- B\")")).has_value());
  EXPECT_TRUE(check_mll(mll("(AxBot \"|- bot\")")).has_value());
}

TEST(CheckMll, CutFormulaMustMatch) {
  EXPECT_FALSE(check_mll(mll("(Cut \"A |- A\" (AxId \"A |- A\") (AxId \"A |- A\"))")).has_value());
  auto bad = check_mll(mll("(Cut \"A |- B\" (AxId \"A |- A\") (AxId \"B |- B\"))"));
  ASSERT_TRUE(bad.has_value());
  EXPECT_TRUE(bad->node.empty());
}

TEST(CheckMll, ContextSplitting) {
  // Γ, Σ, A -o B |- Δ, Θ from Γ |- A, Δ and Σ, B |- Θ; nothing else may appear.
  EXPECT_TRUE(check_mll(mll("(LolliL \"C, A -o B |- B, C\" (AxId \"A |- A\") (AxId \"B |- B\"))")).has_value());
  EXPECT_FALSE(check_mll(mll("(LolliL \"A, A -o B |- B\" (AxId \"A |- A\") (AxId \"B |- B\"))")).has_value());
  EXPECT_TRUE(check_mll(mll("(LolliL \"A -o B |- B\" (AxId \"A |- A\") (AxId \"B |- B\"))")).has_value());
  EXPECT_FALSE(check_mll(mll("(ParrL \"A par B |- A, B\" (AxId \"A |- A\") (AxId \"B |- B\"))")).has_value());
}

TEST(CheckMll, PathPointsIntoPremise) {
  auto bad = check_mll(mll("(BotR \"A |- B, bot\" (AxId \"A |- B\"))"));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->node, (Path{0}));
}

TEST(ToMll, AxiomIsAxId) {
  MllDerivation m = nmll_to_mll(typed("x : A |- x : A"));
  EXPECT_EQ(m.rule, MllRule::AxId);
  EXPECT_EQ(print_mll_sequent(m.conclusion), "A |- A");
}

TEST(ToMll, ExcludedMiddle) {
  MllDerivation m = nmll_to_mll(typed("|- x | out x. * : A par (A -o bot)"));
  EXPECT_FALSE(check_mll(m).has_value());
  EXPECT_EQ(serialize(m),
            "(ParrR \"|- A par (A -o bot)\"\n"
            "  (LolliR \"|- A, A -o bot\"\n"
            "    (BotR \"A |- A, bot\"\n"
            "      (AxId \"A |- A\"))))\n");
}

TEST(ToMll, EliminationsBecomeCuts) {
  MllDerivation m = nmll_to_mll(typed("f : A -o B, a : A |- f a : B"));
  EXPECT_FALSE(check_mll(m).has_value());
  EXPECT_EQ(m.rule, MllRule::Cut);
  EXPECT_EQ(m.premises.at(1).rule, MllRule::Cut);
  EXPECT_EQ(m.premises.at(1).premises.at(1).rule, MllRule::LolliL);

  MllDerivation c = nmll_to_mll(typed("f : A -o bot, a : A |- close(f a)"));
  EXPECT_FALSE(check_mll(c).has_value());
  EXPECT_EQ(c.rule, MllRule::Cut);
  EXPECT_EQ(c.premises.at(1).rule, MllRule::AxBot);

  MllDerivation p = nmll_to_mll(typed("p : A par B |- close(out2 a b. p), a : A, b : B"));
  EXPECT_FALSE(check_mll(p).has_value());
  EXPECT_EQ(p.premises.at(0).rule, MllRule::BotR);
  EXPECT_EQ(p.premises.at(0).premises.at(0).rule, MllRule::Cut);
}

TEST(ToNmll, AxBot) {
  Derivation d = mll_to_nmll(mll("(AxBot \"bot |-\")"));
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(print_sequent(d.conclusion), "c0 : bot |- close(c0)");
}

TEST(ToNmll, CutOfAxioms) {
  Derivation d = mll_to_nmll(mll("(Cut \"A |- A\" (AxId \"A |- A\") (AxId \"A |- A\"))"));
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(print_sequent(d.conclusion), "c0 : A |- c1 : A, close((out c1. *) c0)");
}

TEST(ToNmll, ParrRIsParrI) {
  Derivation d = mll_to_nmll(mll("(ParrR \"A par B |- A par B\" (ParrL \"A par B |- A, B\" (AxId \"A |- A\") (AxId \"B |- B\")))"));
  EXPECT_FALSE(check_derivation(d).has_value());
  EXPECT_EQ(d.rule, Rule::ParrI);
}

TEST(ToNmll, RejectsInvalidInput) {
  EXPECT_THROW(mll_to_nmll(mll("(AxId \"A |- B\")")), PreconditionViolation);
}

TEST(MllIo, RoundTrip) {
  MllDerivation m = mll("(LolliL \"C, A -o B |- B, C\" (AxId \"A |- A\") (AxId \"B |- B\"))");
  EXPECT_EQ(serialize(read_mll_derivation(serialize(m))), serialize(m));
  EXPECT_THROW(read_mll_derivation("(Nope \"A |- A\")"), ParseError);
}

// Both translations land in the other checker, and erasure round-trips.
TEST(Properties, TranslationsBothWays) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg{seed, 16, {"A", "B", "C"}};
    Derivation d = gen_derivation(cfg);
    auto v = prop_to_mll(d);
    EXPECT_FALSE(v.failure.has_value()) << seed << ": " << v.failure.value_or("");
    MllDerivation m = gen_mll_derivation(cfg);
    auto w = prop_to_nmll(m);
    EXPECT_FALSE(w.failure.has_value()) << seed << ": " << w.failure.value_or("");
    // The two translations compose to a derivation with the same erasure.
    EXPECT_TRUE(same_mll_sequent(erase(mll_to_nmll(nmll_to_mll(d)).conclusion), erase(d.conclusion)));
  }
}
