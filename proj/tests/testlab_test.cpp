#include <gtest/gtest.h>

#include <set>

#include "lamp/testlab.hpp"

using namespace lamp;

namespace {

// Comm that drops the message: the activator fires but x is left behind.
Term lossy_step(const Term& t, const Redex& r) {
  if (r.kind != RedexKind::Comm) return contract(t, r);
  return replace_at(t, r.activator, subterm_at(t, r.activator).fun().body());
}

const PropertyResult& row(const Report& r, const std::string& name) {
  for (const auto& p : r.results)
    if (p.name == name) return p;
  throw std::out_of_range(name);
}

void collect(const Derivation& d, std::set<Rule>& out) {
  out.insert(d.rule);
  for (const auto& p : d.premises) collect(p, out);
}

void collect(const MllDerivation& d, std::set<MllRule>& out) {
  out.insert(d.rule);
  for (const auto& p : d.premises) collect(p, out);
}

}  // namespace

TEST(Generator, SingleNodeIsAnAxiom) {
  Derivation d = gen_derivation({3, 1, {"A"}});
  EXPECT_EQ(d.rule, Rule::Ax);
  EXPECT_FALSE(check_derivation(d).has_value());
}

TEST(Generator, Reproducible) {
  GenConfig cfg{42, 20, {"A", "B", "C"}};
  EXPECT_EQ(serialize(gen_derivation(cfg)), serialize(gen_derivation(cfg)));
  EXPECT_EQ(serialize(gen_mll_derivation(cfg)), serialize(gen_mll_derivation(cfg)));
  EXPECT_EQ(case_seed(cfg, 5), 47u);
}

TEST(Generator, RespectsSizeBound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_LE(gen_derivation({seed, 12, {"A", "B"}}).node_count(), 12u);
    EXPECT_LE(gen_mll_derivation({seed, 12, {"A", "B"}}).node_count(), 12u);
  }
}

TEST(Generator, CoversEveryRule) {
  std::set<Rule> nmll;
  std::set<MllRule> mll;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    collect(gen_derivation({seed, 14, {"A", "B"}}), nmll);
    collect(gen_mll_derivation({seed, 14, {"A", "B"}}), mll);
  }
  EXPECT_EQ(nmll.size(), 7u);
  EXPECT_EQ(mll.size(), 8u);
}

TEST(Suite, EmptyRunHasAllRows) {
  Report r = run_property_suite(0, {});
  EXPECT_EQ(r.results.size(), 14u);
  EXPECT_TRUE(r.ok());
  for (const auto& p : r.results) EXPECT_EQ(p.cases, 0u);
}

TEST(Suite, PassesOnGeneratedCases) {
  Report r = run_property_suite(100, {11, 12, {"A", "B", "C"}});
  EXPECT_TRUE(r.ok()) << format_report(r);
  EXPECT_EQ(row(r, "generator").cases, 100u);
  EXPECT_TRUE(row(r, "stuck_dist").informational);
}

TEST(Suite, ReportFormat) {
  Report r;
  r.results.push_back({"confluence", 10, 0, std::nullopt, "", false});
  r.results.push_back({"stuck_dist", 10, 2, 4, "x", true});
  EXPECT_EQ(format_report(r),
            "confluence                 cases=10 failures=0 first_failing_seed=-\n"
            "stuck_dist (info)          cases=10 failures=2 first_failing_seed=4\n");
  EXPECT_TRUE(r.ok());
}

// A reducer that loses messages must be caught.
TEST(Suite, DetectsLossyCommunication) {
  SuiteOptions opts;
  opts.step = lossy_step;
  opts.runtime = false;
  Report r = run_property_suite(200, {5, 14, {"A", "B"}}, opts);
  EXPECT_FALSE(r.ok());
  const auto& sr = row(r, "subject_reduction");
  EXPECT_GT(sr.failures, 0u);
  ASSERT_TRUE(sr.first_failing_seed.has_value());
  // The reported seed replays the failure on its own.
  Sequent s = gen_derivation({*sr.first_failing_seed, 14, {"A", "B"}}).conclusion;
  EXPECT_TRUE(prop_subject_reduction(s, lossy_step).failure.has_value());
  EXPECT_FALSE(prop_subject_reduction(s).failure.has_value());
}

TEST(Joined, SplitsBackPerEntry) {
  Sequent s = parse_program("v : A |- (out x. *) v | x : bot par A, close(*)");
  Term j = joined_terms(s);
  EXPECT_EQ(j, parse_term("((out x. *) v | x) | close(*)"));
  auto next = one_step_reducts(s);
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(print_sequent(next[0]), "v : A |- * | v : bot par A, close(*)");
}
