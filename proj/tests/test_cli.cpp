#include "kbg/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace kbg {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "kbg_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

TEST(Cli, DimPrintsTheNumber) {
  auto r = run_cli({"dim", "--group", "g39", "--s", "1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "14\n");
  r = run_cli({"dim", "--group", "G40", "--s", "1", "--restrict-c0"});
  EXPECT_EQ(r.out, "10\n");
}

TEST(Cli, DimOverSeveralGroups) {
  auto r = run_cli({"dim", "--group", "all", "--s", "1"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("G41 s=1 dim=14 expected=14"), std::string::npos);
}

TEST(Cli, NormalForm) {
  auto r = run_cli({"nf", "--group", "g38", "--s", "1", "--poly", "a^2*c + a*c^2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "0\n");
  r = run_cli({"nf", "--group", "g38", "--s", "1", "--poly", "a"});
  EXPECT_EQ(r.out, "a\n");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"verify", "--bogus"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"dim", "--group", "g99"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"dim", "--s", "0"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"nf", "--group", "g38", "--poly", "a +"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"nf", "--group", "g38"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"verify", "--skip", "dimension"}).code, cli::kUsage);
  EXPECT_EQ(run_cli({"gb", "--group", "all"}).code, cli::kUsage);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
  auto r = run_cli({"--version"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, std::string(kToolVersion) + "\n");
}

TEST(Cli, VerifyWritesJson) {
  auto path = scratch("report.json");
  // G38 at s = 1 has one failing membership, so this is a finding.
  auto r = run_cli({"verify", "--group", "g38", "--s", "1", "--json", path.string()});
  EXPECT_EQ(r.code, cli::kFinding) << r.err;
  std::ifstream in(path);
  auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.at("reports").size(), 1u);
  const auto& rep = doc.at("reports")[0];
  EXPECT_EQ(rep.at("dim_computed"), "14");
  EXPECT_EQ(rep.at("relation_checks")[3].at("member"), false);
  EXPECT_EQ(run_cli({"verify", "--group", "g38", "--s", "1", "--skip", "membership"}).code, cli::kOk);
}

TEST(Cli, VerifyResourceExitCode) {
  auto r = run_cli({"verify", "--group", "g38", "--s", "1", "--degree-cap", "1", "--skip", "nilsolve"});
  EXPECT_EQ(r.code, cli::kResource);
}

TEST(Cli, GbCacheRoundTripAndHeaderMismatch) {
  auto dir = scratch("cache");
  std::filesystem::remove_all(dir);
  auto first = run_cli({"gb", "--group", "g40", "--s", "1", "--cache", dir.string()});
  ASSERT_EQ(first.code, cli::kOk) << first.err;
  auto second = run_cli({"gb", "--group", "g40", "--s", "1", "--cache", dir.string()});
  EXPECT_EQ(second.out, first.out);
  EXPECT_EQ(first.out.rfind("group=G40\ns=1\norder=degrevlex:T,x1,y1,x2,y2,a,b,c\ntool_version=", 0), 0u);

  // Rewrite the cache file with a wrong s header.
  ASSERT_FALSE(std::filesystem::is_empty(dir));
  auto file = std::filesystem::directory_iterator(dir)->path();
  std::string text = second.out;
  text.replace(text.find("s=1"), 3, "s=2");
  std::ofstream(file) << text;
  auto bad = run_cli({"dim", "--group", "g40", "--s", "1", "--cache", dir.string()});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("s mismatch"), std::string::npos);

  std::ofstream(file) << "";
  EXPECT_EQ(run_cli({"dim", "--group", "g40", "--s", "1", "--cache", dir.string()}).code, cli::kUsage);
  std::filesystem::remove_all(dir);
}

TEST(Cli, GbWithElimination) {
  auto r = run_cli({"gb", "--group", "g38", "--s", "1", "--order", "elim:x1,y1|T,x2,y2,a,b,c"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("x1 + a*c + x2 + a\n"), std::string::npos) << r.out;
  EXPECT_EQ(run_cli({"gb", "--group", "g38", "--s", "1", "--order", "lex:a"}).code, cli::kUsage);
}

TEST(Cli, PresentationRoundTripThroughFrom) {
  auto path = scratch("g41_s1.txt");
  auto dump = run_cli({"presentation", "--group", "g41", "--s", "1", "--dump", path.string()});
  ASSERT_EQ(dump.code, cli::kOk);
  auto r = run_cli({"dim", "--from", path.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, "14\n");
  std::ofstream(path) << "group=G41\ns=1\nvweight=-1\n";
  EXPECT_EQ(run_cli({"dim", "--from", path.string()}).code, cli::kUsage);
}

TEST(Cli, Census) {
  auto r = run_cli({"census", "--s-max", "3"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("s=3  chi=2528  chi_restriction=2080"), std::string::npos);
  EXPECT_NE(r.out.find("stated-vs-range mismatch"), std::string::npos);
}

TEST(Cli, Fgl) {
  auto r = run_cli({"fgl", "--height", "2"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("[2](x) = v^1*x^4\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("checks: ok"), std::string::npos);
}

}  // namespace
}  // namespace kbg
