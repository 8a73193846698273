#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lamp_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lamp");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = lamp::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return std::string(LAMP_CORPUS_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scratch(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("lamp_cli_test_" + name);
  std::ofstream(p) << text;
  return p.string();
}

}  // namespace

TEST(Cli, RunMatchesGolden) {
  auto r = lamp_cli({"run", corpus("two_order.lamp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(corpus("golden/two_order.run")));
}

TEST(Cli, CheckPrintsDerivation) {
  auto r = lamp_cli({"check", corpus("excluded_middle.lamp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, slurp(corpus("golden/excluded_middle.check")));
}

TEST(Cli, Parse) {
  auto r = lamp_cli({"parse", corpus("two_order.lamp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "v : A |- (out x. y) v | (out y. *) x : A par bot\n");
}

TEST(Cli, ConcurrentAgrees) {
  auto r = lamp_cli({"run", corpus("cyclic.lamp"), "--mode", "concurrent", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Cli, Enumerate) {
  auto r = lamp_cli({"enumerate", corpus("two_order.lamp")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("normal forms: 1"), std::string::npos);
  EXPECT_NE(r.out.find("steps: 2..2"), std::string::npos);
  EXPECT_NE(r.out.find("CONFLUENT"), std::string::npos);
}

TEST(Cli, TranslateBothWays) {
  auto m = lamp_cli({"translate", corpus("excluded_middle.lamp"), "--to", "mll"});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_EQ(m.out.rfind("(ParrR", 0), 0u);
  auto n = lamp_cli({"translate", scratch("m.sexp", m.out), "--to", "nmll"});
  EXPECT_EQ(n.code, 0) << n.err;
  EXPECT_EQ(n.out.rfind("(ParrI", 0), 0u);
}

TEST(Cli, Props) {
  auto r = lamp_cli({"props", "--n", "30", "--seed", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("subject_reduction"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(lamp_cli({"run", "/nonexistent/file.lamp"}).code, lamp::cli::ParseFailure);
  EXPECT_EQ(lamp_cli({"check", scratch("lin.lamp", "|- x : A\n")}).code, lamp::cli::TypeFailure);
  EXPECT_EQ(lamp_cli({"parse", scratch("bad.lamp", "|- lam x. * : A\n")}).code, lamp::cli::ParseFailure);
  EXPECT_EQ(lamp_cli({"run", scratch("omega.lamp", "|- (lam x. x x) (lam y. y y) : A\n"), "--budget", "20"}).code,
            lamp::cli::BudgetFailure);
  EXPECT_EQ(lamp_cli({"frobnicate"}).code, lamp::cli::ParseFailure);
  EXPECT_EQ(lamp_cli({"run", corpus("cbv_sync.lamp"), "--mode", "concurrent"}).code, lamp::cli::TypeFailure);
}
