#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dagfix/cli.hpp"

using namespace dagfix;
using io::Json;

namespace {

const std::string kDemos = std::string(DAGFIX_SOURCE_DIR) + "/demos/";

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun invoke(std::vector<std::string> args) {
  std::vector<const char*> argv{"dagfix"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("dagfix_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const FinObject k2{2};
const FinObject k3{3};

}  // namespace

TEST(Documents, MorphismRoundTrip) {
  const std::vector<Morphism> ms{
      RelMorphism(k2, k3, {{0, 2}, {1, 0}, {1, 1}}), RelMorphism(k3, k2),
      PInjMorphism(k3, k3, {{0, 2}, {2, 1}}), StochMorphism::square(2, {{0.5, 0.25}, {0, 0.75}})};
  for (const Morphism& m : ms) {
    const Json j = io::to_json(m);
    EXPECT_EQ(io::morphism_from_json(Json::parse(j.dump())), m) << j.dump();
  }
  EXPECT_EQ(io::to_json(ms[2]).dump(), R"({"dst":3,"map":{"0":2,"2":1},"src":3,"type":"pinj"})");
}

TEST(Documents, RejectsMalformedMorphisms) {
  auto parse = [](const char* text) { return io::morphism_from_json(Json::parse(text)); };
  EXPECT_THROW(parse(R"({"type":"rel","src":2,"dst":2,"pairs":[],"extra":1})"), FormatError);
  EXPECT_THROW(parse(R"({"type":"rel","src":2,"dst":2})"), FormatError);
  EXPECT_THROW(parse(R"({"type":"rel","src":2,"dst":2,"pairs":[[0,2]]})"), DimensionMismatch);
  EXPECT_THROW(parse(R"({"type":"rel","src":-1,"dst":2,"pairs":[]})"), FormatError);
  EXPECT_THROW(parse(R"({"type":"pinj","src":2,"dst":2,"map":{"x":0}})"), FormatError);
  EXPECT_THROW(parse(R"({"type":"pinj","src":2,"dst":2,"map":{"0":1,"1":1}})"), InvalidMorphism);
  EXPECT_THROW(parse(R"({"type":"dstoch","n":1,"rows":[[1.5]]})"), InvalidMorphism);
  EXPECT_THROW(parse(R"({"type":"matrix"})"), FormatError);
  EXPECT_THROW(parse(R"([1,2])"), FormatError);
}

TEST(Documents, FunctionalCanonicalFormRoundTrips) {
  using F = FunctionalExpr;
  const Morphism r = RelMorphism(k3, k3, {{0, 1}, {1, 2}});
  const F phi = F::seq(F::postcompose(r, k3), F::join_with(r));
  const Json j = io::to_json(phi);
  const F back = io::functional_from_json(j);
  EXPECT_EQ(io::to_json(back), j);
  for (const Morphism& h : enumerate_homs(Category::rel, k3, k3, 1u << 9))
    EXPECT_EQ(apply(back, h), apply(phi, h));
}

TEST(Documents, InnerSugarAndConj) {
  const Json j = Json::parse(R"({"op":"conj","of":{"op":"joinwith",
      "m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]},
      "inner":{"op":"postcompose","m":{"type":"rel","src":3,"dst":3,"pairs":[[0,1],[1,2]]}}}})");
  const auto r = fix_functional(io::functional_from_json(j), FixPolicy::exact());
  // converse of reachability 0→1→2
  EXPECT_EQ(r.value, Morphism(RelMorphism(k3, k3, {{1, 0}, {2, 1}, {2, 0}})));
  EXPECT_THROW(io::functional_from_json(Json::parse(R"({"op":"warp"})")), FormatError);
  EXPECT_THROW(io::functional_from_json(Json::parse(R"({"op":"seq","first":{}})")), FormatError);
}

TEST(Documents, ReportOmitsTimingsByDefault) {
  LawReport r;
  r.suite = "s";
  r.expect(false, "law", [] { return std::string("w"); });
  const Json j = io::to_json(r);
  EXPECT_FALSE(j.contains("elapsed_seconds"));
  EXPECT_EQ(j["violations"][0]["witness"], "w");
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_TRUE(io::to_json(r, true).contains("elapsed_seconds"));
}

TEST(Cli, LawsExitCodes) {
  EXPECT_EQ(invoke({"laws", "--category", "rel", "--suite", "dagger"}).code, 0);
  // randomized suites need a seed
  EXPECT_EQ(invoke({"laws", "--category", "dstoch", "--suite", "dagger"}).code, 2);
  EXPECT_EQ(invoke({"laws", "--category", "dstoch", "--suite", "dagger", "--seed", "1"}).code, 0);
  EXPECT_EQ(
      invoke({"laws", "--category", "dstoch", "--suite", "naturality", "--seed", "1"}).code, 2);
  EXPECT_EQ(invoke({"laws", "--category", "rel", "--suite", "nope"}).code, 2);
  EXPECT_EQ(invoke({"laws", "--category", "ring", "--suite", "dagger"}).code, 2);
  EXPECT_EQ(invoke({"laws", "--category", "rel"}).code, 2);
  EXPECT_EQ(invoke({"laws", "--category", "rel", "--suite", "dagger", "--min-size", "3",
                 "--max-size", "2"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, LawsCountsComposablePairs) {
  const CliRun r = invoke({"laws", "--category", "rel", "--suite", "dagger", "--min-size", "2",
                           "--max-size", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["suites"]["dagger"]["checked_by_law"]["contravariance"], 16 * 16);
}

TEST(Cli, LawsJsonIsDeterministic) {
  const std::vector<std::string> args{"laws",   "--category", "pinj", "--suite", "all",
                                      "--seed", "4",          "--trials", "20", "--max-size",
                                      "1",      "--format",   "json"};
  const CliRun a = invoke(args);
  const CliRun b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const Json j = Json::parse(a.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["config"]["seed"], 4);
  EXPECT_EQ(j["suites"].size(), category_suites().size() + functional_suites().size());
  EXPECT_EQ(a.out.find("elapsed"), std::string::npos);
}

TEST(Cli, ConfigFileAndOverride) {
  const std::string cfg = temp_file("laws.toml",
                                    "[laws]\ncategory = \"dstoch\"\nsuite = [\"dagger\"]\n"
                                    "seed = 11\ntrials = 5\n");
  const CliRun a = invoke({"--config", cfg, "laws", "--format", "json"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(Json::parse(a.out)["category"], "dstoch");
  const CliRun b = invoke({"--config", cfg, "laws", "--trials", "7", "--format", "json"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(Json::parse(b.out)["config"]["trials"], 7);
}

TEST(Cli, FixAndTrace) {
  CliRun r = invoke({"fix", kDemos + "specs/transitive_closure.json", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["fixed_point"]["pairs"], Json::parse("[[0,1],[0,2],[1,2]]"));

  r = invoke({"fix", kDemos + "specs/affine.json", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(Json::parse(r.out)["fixed_point"]["rows"][0][0].get<double>(), 0.5, 1e-9);

  // the affine iteration needs more than two steps to get within tolerance
  r = invoke({"fix", kDemos + "specs/affine.json", "--max-iterations", "2"});
  EXPECT_EQ(r.code, 3);

  r = invoke({"trace", kDemos + "specs/orbit.json", "--x", "1", "--y", "1", "--u", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"type":"rel","src":1,"dst":1,"pairs":[[0,0]]})"));
  // x enters a loop in U that never exits
  r = invoke({"trace", kDemos + "specs/cycle.json", "--u", "2", "--format", "json"});
  EXPECT_EQ(Json::parse(r.out)["trace"]["pairs"], Json::array());
  // nothing enters U, so the X→Y block comes back unchanged
  r = invoke({"trace", kDemos + "specs/no_entry.json"});
  EXPECT_EQ(Json::parse(r.out), Json::parse(R"({"type":"pinj","src":1,"dst":1,"map":{"0":0}})"));
  r = invoke({"fix", kDemos + "specs/constant.json"});
  EXPECT_EQ(io::morphism_from_json(Json::parse(r.out.substr(0, r.out.find('\n')))),
            Morphism(PInjMorphism(k3, k3, {{0, 2}, {2, 0}})));
  EXPECT_EQ(invoke({"trace", kDemos + "specs/orbit.json", "--x", "2", "--u", "2"}).code, 2);
  EXPECT_EQ(invoke({"fix", temp_file("bad.json", "{not json")}).code, 2);
  EXPECT_EQ(invoke({"fix", "/no/such/file.json"}).code, 2);
}

TEST(Cli, RunAndInvert) {
  CliRun r = invoke({"run", kDemos + "programs/add.rvl", "--arg", "(S (S Z), S Z)"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "(S (S Z), S (S (S Z)))\n");

  r = invoke({"run", kDemos + "programs/add.rvl", "--arg", "(S (S Z), S Z)", "--fuel", "2"});
  EXPECT_EQ(r.out, "undefined (fuel exhausted)\n");

  r = invoke({"run", kDemos + "programs/map.rvl", "map", "--bind", "g=inc", "--arg",
           "Cons Z (Cons (S Z) Nil)"});
  EXPECT_EQ(r.out, "Cons (S Z) (Cons (S (S Z)) Nil)\n");
  r = invoke(
      {"run", kDemos + "programs/map.rvl", "map", "--bind", "g=inc~", "--arg", "Cons Z Nil"});
  EXPECT_EQ(r.out.rfind("stuck: ", 0), 0U) << r.out;
  EXPECT_EQ(invoke({"run", kDemos + "programs/map.rvl", "map", "--arg", "Nil"}).code, 2);

  r = invoke({"invert", kDemos + "programs/swap.rvl"});
  EXPECT_EQ(r.out, "fun swap_inv (b, a) = (a, b)\n");
  const std::string out = (std::filesystem::temp_directory_path() / "dagfix_inv.rvl").string();
  ASSERT_EQ(invoke({"invert", kDemos + "programs/add.rvl", "-o", out}).code, 0);
  r = invoke({"run", out, "add_inv", "--arg", "(S (S Z), S (S (S Z)))"});
  EXPECT_EQ(r.out, "(S (S Z), S Z)\n");

  EXPECT_EQ(invoke({"run", temp_file("bad.rvl", "fun f x = (x, x)\n"), "--arg", "Z"}).code, 2);
  r = invoke({"run", temp_file("syntax.rvl", "fun f x = \n  Q"), "--arg", "Z"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":2:3:"), std::string::npos) << r.err;
}

TEST(Cli, Roundtrip) {
  CliRun r = invoke({"roundtrip", kDemos + "programs/add.rvl", "--seed", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(Json::parse(r.out)["report"]["passed"].get<bool>());
  EXPECT_EQ(Json::parse(r.out)["fuel"], 10000);
  EXPECT_EQ(invoke({"roundtrip", kDemos + "programs/add.rvl"}).code, 2);

  // not a valid program, so rejected before any trial
  const std::string dup = temp_file("dup.rvl", "fun f x = (x, Z)\nfun f y = (y, S Z)\n");
  EXPECT_EQ(invoke({"roundtrip", dup, "--seed", "1"}).code, 2);
}
