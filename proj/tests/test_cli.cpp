#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sdc/cli.hpp"

namespace cli = sdc::cli;
using nlohmann::json;

namespace {

cli::Report run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "sdc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  const auto parsed = cli::parse_job(static_cast<int>(argv.size()), argv.data());
  if (!parsed.job) return {json{{"usage", parsed.message}}, parsed.status};
  return cli::run(*parsed.job);
}

}  // namespace

TEST(Cli, ConstructTrivialDegree8) {
  const auto r = run_args({"construct", "--degree", "8"});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_EQ(r.body["schema"], 1);
  EXPECT_EQ(r.body["outcome"], "code");
  EXPECT_EQ(r.body["code"]["n"], 8);
  EXPECT_EQ(r.body["code"]["k"], 4);
  EXPECT_EQ(r.body["verified"]["doubly_even"], true);
  EXPECT_FALSE(r.body.contains("neighbor"));
}

TEST(Cli, ConstructBothNeighbours) {
  const auto r = run_args({"construct", "--group", "(1,2)(3,4)", "--degree", "8", "--both"});
  EXPECT_EQ(r.status, cli::kExitOk);
  ASSERT_TRUE(r.body.contains("neighbor"));
}

TEST(Cli, ConstructCertificates) {
  const auto c8 = run_args({"construct", "--group", "(1,2,3,4,5,6,7,8)"});
  EXPECT_EQ(c8.status, cli::kExitFalse);
  EXPECT_EQ(c8.body["outcome"], "impossible");
  EXPECT_EQ(c8.body["certificate"]["condition"], "C_ALTERNATING");
  EXPECT_EQ(c8.body["certificate"]["odd_generator"], "(1,2,3,4,5,6,7,8)");

  const auto t12 = run_args({"construct", "--degree", "12"});
  EXPECT_EQ(t12.status, cli::kExitFalse);
  EXPECT_EQ(t12.body["certificate"]["condition"], "A_LENGTH");

  const auto alt8 = run_args({"construct", "--group", "(1,2,3);(2,3,4,5,6,7,8)"});
  EXPECT_EQ(alt8.body["certificate"]["condition"], "B_MULTIPLICITY");
  EXPECT_EQ(alt8.body["certificate"]["factor"]["dim"], 6);
}

TEST(Cli, ConstructedCodeVerifies) {
  const auto r = run_args({"construct", "--group", "(1,2,3)(4,5,6)", "--degree", "8"});
  ASSERT_EQ(r.status, cli::kExitOk);
  const auto v = run_args({"verify-code", "--code", r.body["code"].dump(), "--group", "(1,2,3)(4,5,6)", "--degree", "8"});
  EXPECT_EQ(v.status, cli::kExitOk);
  EXPECT_EQ(v.body["checks"]["invariant"], true);
  EXPECT_EQ(v.body["valid"], true);
  const auto bad = run_args({"verify-code", "--code", r.body["code"].dump(), "--group", "(1,7)(2,8)", "--degree", "8"});
  EXPECT_EQ(bad.status, cli::kExitFalse);
}

TEST(Cli, CheckReport) {
  const auto r = run_args({"check", "--group", "(1,2,3,4,5,6,7,8)"});
  EXPECT_EQ(r.status, cli::kExitFalse);
  EXPECT_EQ(r.body["conditions"], (json{{"a", true}, {"b", true}, {"c", false}}));
  const auto t = run_args({"check", "--degree", "8"});
  EXPECT_EQ(t.status, cli::kExitOk);
  EXPECT_EQ(t.body["evidence"]["self_dual_factors"][0]["multiplicity"], 8);
}

TEST(Cli, GroupCode) {
  const auto c8 = run_args({"group-code", "--group", "(1,2,3,4,5,6,7,8)"});
  EXPECT_EQ(c8.status, cli::kExitFalse);
  EXPECT_EQ(c8.body["self_dual"], true);
  EXPECT_EQ(c8.body["type2"], false);
  const auto c4c2 = run_args({"group-code", "--group", "(1,2,3,4)", "--group", "(5,6)"});
  EXPECT_EQ(c4c2.status, cli::kExitOk);
  EXPECT_EQ(c4c2.body["type2"], true);
  EXPECT_EQ(c4c2.body["evidence"]["consistent"], true);
}

TEST(Cli, DicksonAndEnumerateAndAut) {
  const auto d = run_args({"dickson", "--perm", "(1,2)", "--code", "11110000;00111100;00001111;10101010"});
  EXPECT_EQ(d.status, cli::kExitOk);
  EXPECT_EQ(d.body["dickson"], -1);
  const auto d16 = run_args({"dickson", "--perm", "(1,2,3)(4,5)(6,7)", "--n", "16"});
  EXPECT_EQ(d16.body["dickson"], 1);

  const auto e = run_args({"enumerate", "--n", "8", "--doubly-even"});
  EXPECT_EQ(e.status, cli::kExitOk);
  EXPECT_EQ(e.body["count"], 30);
  const auto none = run_args({"enumerate", "--n", "6", "--doubly-even"});
  EXPECT_EQ(none.status, cli::kExitFalse);
  EXPECT_EQ(none.body["count"], 0);

  const auto a = run_args({"aut", "--code", "11110000;00111100;00001111;10101010"});
  EXPECT_EQ(a.status, cli::kExitOk);
  EXPECT_EQ(a.body["order"], 1344);
  EXPECT_EQ(a.body["in_alternating"], true);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run_args({"check", "--group", "(1,2"}).status, cli::kExitInput);
  EXPECT_EQ(run_args({"check", "--group", "(1,2)", "--degree", "1"}).status, cli::kExitInput);
  EXPECT_EQ(run_args({"verify-code", "--code", "110;1"}).status, cli::kExitInput);
  EXPECT_EQ(run_args({"bogus"}).status, cli::kExitInput);
  EXPECT_EQ(run_args({"construct", "--seed", "x"}).status, cli::kExitInput);
  EXPECT_EQ(run_args({"dickson", "--perm", "(1,2)", "--n", "12"}).status, cli::kExitInput);
  const auto r = run_args({"check", "--group", "@/nonexistent/file"});
  EXPECT_EQ(r.status, cli::kExitInput);
  EXPECT_EQ(r.body["error"]["kind"], "parse");
}

TEST(Cli, CapExceeded) {
  const auto r = run_args({"group-code", "--group", "(1,2,3,4,5,6,7,8)", "--group", "(1,2)", "--cap", "100"});
  EXPECT_EQ(r.status, cli::kExitCap);
  EXPECT_EQ(r.body["error"]["kind"], "cap_exceeded");
  ::setenv("SDC_CLOSURE_CAP", "50", 1);
  const auto e = run_args({"group-code", "--group", "(1,2,3,4,5,6,7,8)", "--group", "(1,2)"});
  ::unsetenv("SDC_CLOSURE_CAP");
  EXPECT_EQ(e.status, cli::kExitCap);
  ::setenv("SDC_CLOSURE_CAP", "zero", 1);
  EXPECT_EQ(run_args({"check", "--degree", "8"}).status, cli::kExitInput);
  ::unsetenv("SDC_CLOSURE_CAP");
}

TEST(Cli, GroupFromJsonFile) {
  const auto path = std::filesystem::temp_directory_path() / "sdc_cli_group.json";
  {
    std::ofstream out(path);
    out << R"j({"degree": 8, "generators": ["(1,2)(3,4)", "(5,6)(7,8)"]})j";
  }
  const auto r = run_args({"construct", "--group", "@" + path.string()});
  EXPECT_EQ(r.status, cli::kExitOk);
  EXPECT_EQ(r.body["group"]["degree"], 8);
  std::filesystem::remove(path);
}

TEST(Cli, ReportsAreDeterministic) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"construct", "--group", "(1,2,3)(4,5,6)", "--degree", "8", "--seed", "7"},
           {"check", "--group", "(1,2,3,4,5,6,7)"},
           {"enumerate", "--n", "6"},
       }) {
    EXPECT_EQ(run_args(args).body.dump(), run_args(args).body.dump());
  }
}

TEST(Cli, EchoesInputs) {
  const auto r = run_args({"construct", "--group", "(1,2)(3,4)", "--degree", "8", "--seed", "3"});
  EXPECT_EQ(r.body["command"], "construct");
  EXPECT_EQ(r.body["input"]["seed"], 3);
  EXPECT_EQ(r.body["input"]["degree"], 8);
  EXPECT_EQ(r.body["input"]["group"], json::array({"(1,2)(3,4)"}));
}
