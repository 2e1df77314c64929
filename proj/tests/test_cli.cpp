#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>

using namespace regseq;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("regseq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string compiled(const std::string& spec, bool minimized = true) {
    const std::string p = path(spec + (minimized ? ".min.json" : ".json"));
    std::vector<std::string> args{"compile", "--a", spec, "-o", p};
    if (minimized) args.push_back("--minimize");
    EXPECT_EQ(run(args).code, 0);
    return p;
  }

  std::string saved(const LinearRepresentation& rep, const std::string& name) {
    write_file(path(name), serialize(rep));
    return path(name);
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, CompileAndEval) {
  const auto rep = compiled("1,-1,0,2");
  EXPECT_EQ(parse_rep(read_file(rep)).rank(), 2u);
  EXPECT_EQ(run({"eval", rep, "--n", "0..7"}).out, "1,1,1,2,1,1,2,3\n");
  EXPECT_EQ(run({"eval", rep, "--n", "11"}).out, "2\n");
  const auto empty = run({"eval", rep, "--n", "5..4"});
  EXPECT_EQ(empty.code, 0);
  EXPECT_EQ(empty.out, "");
}

TEST_F(Cli, CompileToStdoutCarriesProvenance) {
  const auto r = run({"compile", "--a", "1,2,2,-1"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["provenance"]["spec"], nlohmann::json::array({1, 2, 2, -1}));
  EXPECT_EQ(j["provenance"]["minimized"], false);
  EXPECT_GT(j["rank"].get<int>(), 4);
}

TEST_F(Cli, EvalFormats) {
  const auto rep = compiled("1,-1,0,2");
  EXPECT_EQ(run({"eval", rep, "--n", "0..3", "--format", "bfile"}).out, "0 1\n1 1\n2 1\n3 2\n");
  EXPECT_EQ(run({"eval", rep, "--n", "2..3", "--format", "csv"}).out, "n,value\n2,1\n3,2\n");
  const auto j = nlohmann::json::parse(run({"eval", rep, "--n", "3", "--format", "json"}).out);
  EXPECT_EQ(j[0]["value"], "2");
  EXPECT_NE(run({"eval", rep, "--n", "3", "--format", "xml"}).code, 0);
}

TEST_F(Cli, BadInputsExitNonzero) {
  EXPECT_EQ(run({"compile", "--a", "1,-3,0,1"}).code, 2);
  EXPECT_EQ(run({"compile", "--a", "1,2,3"}).code, 2);
  EXPECT_EQ(run({"eval", path("missing.json"), "--n", "1"}).code, 2);
  const auto rep = compiled("1,-1,0,2");
  EXPECT_EQ(run({"eval", rep, "--n", "-1"}).code, 2);
  EXPECT_NE(run({}).code, 0);
  EXPECT_NE(run({"frobnicate"}).code, 0);
}

TEST_F(Cli, NegativeCoefficientsParse) {
  const auto rep = compiled("-1,7,1,1");
  EXPECT_EQ(run({"eval", rep, "--n", "0..7"}).out, "1,1,1,1,1,1,1,2\n");
}

TEST_F(Cli, MinimizeAndEquiv) {
  const auto raw = compiled("1,2,2,-1", false);
  const std::string min = path("min.json");
  ASSERT_EQ(run({"minimize", raw, "-o", min}).code, 0);
  const auto text = read_file(min);
  EXPECT_EQ(parse_rep(text).rank(), 4u);
  EXPECT_EQ(provenance_from_json(nlohmann::json::parse(text))->minimized, true);

  const auto same = run({"equiv", raw, min});
  EXPECT_EQ(same.code, 0);
  EXPECT_EQ(same.out, "equivalent\n");
  const auto diff = run({"equiv", raw, compiled("1,0,0,2")});
  EXPECT_EQ(diff.code, 1);
  EXPECT_EQ(diff.out, "not equivalent\n");
}

TEST_F(Cli, IdentifyFibonacci) {
  const auto r = run({"identify", compiled("1,-1,0,2")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order: 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("coefficients: d0=1 d1=1\n"), std::string::npos);
  EXPECT_NE(r.out.find("initial: 1,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("fixture: thm6"), std::string::npos);
}

TEST_F(Cli, IdentifyRlt4) {
  const auto r = run({"identify", compiled("1,7,3,1")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("coefficients: d0=0 d1=1 d2=1\n"), std::string::npos);
  EXPECT_NE(r.out.find("initial: 1,0,1\n"), std::string::npos);
  EXPECT_NE(r.out.find("fixture: rlt4"), std::string::npos);
}

TEST_F(Cli, IdentifyLsdInput) {
  const auto lsd = counting_representation(compile_pair_automaton({1, -1, 0, 2}));
  const auto r = run({"identify", saved(lsd, "lsd.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fixture: thm6"), std::string::npos);
}

TEST_F(Cli, IdentifyRejectsConstantZero) {
  const auto r = run({"identify", saved(LinearRepresentation({0}, {{1}}, {{1}}, {1}), "zero.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("not-an-RLT", 0), 0u);
}

TEST_F(Cli, RltApply) {
  EXPECT_EQ(run({"rlt-apply", "--coeffs", "1,1", "--init", "1,1", "--n", "0..7"}).out,
            "1,1,1,2,1,1,2,3\n");
  const std::string out = path("nf.json");
  ASSERT_EQ(run({"rlt-apply", "--coeffs", "1,0,1", "--init", "1,1,1", "-o", out}).code, 0);
  EXPECT_TRUE(equivalent(parse_rep(read_file(out)), *find_fixture("thm14")->matrices));
  EXPECT_EQ(run({"rlt-apply", "--coeffs", "1,1", "--init", "2,1", "--n", "0"}).code, 2);
}

TEST_F(Cli, Average) {
  const auto r = run({"average", compiled("1,-1,0,2"), "--r", "0..2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("minimal polynomial: x^2 - 2x - 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("0\t1\t1\n1\t2\t3/2\n2\t5\t7/4\n"), std::string::npos);

  const auto one = run({"average", saved(LinearRepresentation({1}, {{1}}, {{1}}, {1}), "one.json"),
                        "--r", "0..3"});
  EXPECT_NE(one.out.find("3\t8\t1\n"), std::string::npos);
}

TEST_F(Cli, AverageClosedForm) {
  for (const char* spec : {"1,-1,0,2", "0,3,0,1", "1,0,0,2", "1,2,0,2", "1,1,1,-1"}) {
    const auto r = run({"average", compiled(spec), "--r", "0..20", "--closed-form"});
    EXPECT_EQ(r.code, 0) << spec << r.out << r.err;
    EXPECT_NE(r.out.find(": pass"), std::string::npos) << spec;
  }
  const auto none = run({"average", compiled("1,-1,0,6"), "--closed-form"});
  EXPECT_EQ(none.code, 1);
}

TEST_F(Cli, BaumSweet) {
  EXPECT_EQ(run({"baumsweet", "--m", "2", "--n", "0..7"}).out, "1,0,0,1,0,0,1,0\n");
  EXPECT_EQ(run({"baumsweet", "--m", "3", "--n", "7"}).out, "1\n");
  const auto check = run({"baumsweet", "--m", "3", "--n", "0..4095", "--check"});
  EXPECT_EQ(check.code, 0);
  EXPECT_NE(check.out.find("4096 values checked, 0 mismatches: pass"), std::string::npos);
  EXPECT_EQ(run({"baumsweet", "--m", "1", "--n", "0..3"}).code, 2);
}

TEST_F(Cli, Verify) {
  const auto r = run({"verify", "thm17", "rlt4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS thm17  rank 4"), std::string::npos);
  EXPECT_NE(r.out.find("2/2 fixtures pass"), std::string::npos);
  const auto bad = run({"verify", "nosuch"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("nosuch"), std::string::npos);
}
