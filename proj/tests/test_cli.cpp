#include "cli.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using testing_support::fixture;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "lscat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = lscat::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("lscat_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, ValidateBundledFixtures) {
  auto r = run({"validate", fixture("")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out.find("invalid"), std::string::npos);
  EXPECT_NE(r.out.find("torus.json"), std::string::npos);
}

TEST(Cli, ValidateNamesMissingFace) {
  TempDir dir;
  // circle without its edge {b,c}
  const auto f = dir.write("broken.json", R"({"name": "broken", "vertices": ["a", "b", "c"],
      "simplices": [["a"], ["b"], ["c"], ["a", "b"], ["a", "c"], ["a", "b", "c"]], "subcomplexes": {}})");
  auto r = run({"validate", f});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("face {b,c} of {a,b,c} missing"), std::string::npos) << r.out;
}

TEST(Cli, IoAndArgumentErrors) {
  EXPECT_EQ(run({"validate", "/nonexistent/nothing.json"}).code, 3);
  EXPECT_EQ(run({"ring", fixture("complexes/torus.json"), "--field", "f4"}).code, 3);
  EXPECT_EQ(run({"zcl", fixture("complexes/circle3.json"), "--search", "greedy"}).code, 3);
  EXPECT_EQ(run({"zcl", fixture("complexes/circle3.json"), "--max-len", "0"}).code, 3);
  EXPECT_EQ(run({"nosuchcommand"}).code, 3);
  TempDir dir;
  EXPECT_EQ(run({"ring", dir.write("bad.json", "{ not json")}).code, 3);
  EXPECT_EQ(run({"ring", fixture("complexes/torus.json"), "--pair", "nope"}).code, 1);
}

TEST(Cli, RingText) {
  auto r = run({"ring", fixture("complexes/torus.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("betti: 1 2 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x1_0 * x1_1 = -1*x2_0"), std::string::npos) << r.out;
  auto p = run({"ring", fixture("complexes/rp2.json"), "--field", "f2"});
  EXPECT_NE(p.out.find("betti: 1 1 1"), std::string::npos) << p.out;
}

TEST(Cli, RingJsonForPair) {
  auto r = run({"ring", fixture("complexes/torus.json"), "--pair", "diagonal", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = lscat::Json::parse(r.out);
  EXPECT_EQ(j["betti"], lscat::Json::parse("[0, 1, 1]"));
  EXPECT_TRUE(j["relative"].get<bool>());
  EXPECT_EQ(j["field"], "Q");
}

TEST(Cli, InducedDegreeMap) {
  auto r = run({"induced", fixture("maps/degree3.json"), "-c", fixture("complexes/circle9.json"), "-c",
                fixture("complexes/circle3.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = lscat::Json::parse(r.out);
  const auto v = j["blocks"][1]["matrix"][0][0].get<std::string>();
  EXPECT_TRUE(v == "3" || v == "-3") << v;
  auto missing = run({"induced", fixture("maps/degree3.json"), "-c", fixture("complexes/circle3.json")});
  EXPECT_EQ(missing.code, 1);
}

TEST(Cli, NilImageOfPairIdentity) {
  auto r = run({"nil-image", "-c", fixture("complexes/disk.json"), "--pair", "boundary"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("srelcat(f) >= 1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("exact nil of the searched subring"), std::string::npos) << r.out;
}

TEST(Cli, ZclForComplexAndMap) {
  auto r = run({"zcl", fixture("complexes/circle3.json"), "--grade", "2", "--grade", "3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = lscat::Json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["k"], 1);
  EXPECT_EQ(j[1]["k"], 2);
  EXPECT_TRUE(j[1]["witness"]["replays"].get<bool>());

  auto m = run({"zcl", "--map", fixture("maps/degree2.json"), "-c", fixture("complexes/circle6.json"), "-c",
                fixture("complexes/circle3.json")});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("wTC_2(f) >= 1"), std::string::npos) << m.out;
  EXPECT_NE(m.out.find("TC_2(f) >= 1"), std::string::npos) << m.out;
  EXPECT_NE(m.out.find("DERIVED-RULE"), std::string::npos) << m.out;
}

TEST(Cli, BoundsDegreeMapScenario) {
  auto r = run({"bounds", fixture("scenarios/degree_p_circle.json"), "--certificates"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("TC_2(f) ∈ [1, 1]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("DERIVED-RULE"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("R11"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("USER-FACT"), std::string::npos) << r.out;
}

TEST(Cli, BoundsDiskPairScenario) {
  auto r = run({"bounds", fixture("scenarios/disk_pair.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("srelcat(id) ∈ [1, 1]"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("qscat(id) ∈ [0, 0]"), std::string::npos) << r.out;
}

TEST(Cli, ContradictionExitsTwo) {
  auto r = run({"bounds", fixture("scenarios/contradictory.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("contradiction on"), std::string::npos) << r.out;
  auto j = run({"bounds", fixture("scenarios/contradictory.json"), "--json"});
  EXPECT_EQ(j.code, 2);
  EXPECT_FALSE(lscat::Json::parse(j.out)["contradiction"].is_null());
}

TEST(Cli, JsonIsByteIdenticalAndReplays) {
  const std::vector<std::string> args = {"bounds", fixture("scenarios/degree_p_circle.json"), "--json"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = lscat::Json::parse(a.out);
  auto failure = lscat::replay_facts_json(j["facts"]);
  EXPECT_FALSE(failure.has_value()) << *failure;
}

TEST(Cli, SymbolicScenario) {
  auto r = run({"bounds", fixture("scenarios/symbolic.json")});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
}

TEST(Cli, OverridesFromCommandLine) {
  auto r = run({"bounds", fixture("scenarios/degree_p_circle.json"), "--grade", "12"});
  EXPECT_EQ(r.code, 3);
  auto f3 = run({"bounds", fixture("scenarios/degree_p_circle.json"), "--field", "f3"});
  // over F3 the degree-3 map is zero on H^1, so no cohomological lower bound on TC_2(f) remains
  ASSERT_EQ(f3.code, 0) << f3.err;
  EXPECT_NE(f3.out.find("TC_2(f) ∈ [0, 1]"), std::string::npos) << f3.out;
}
