#include "forestsmith/cli.hpp"
#include "forestsmith/io.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace forestsmith;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override { dir = brute::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name()); }
    std::string path(const std::string& name) const { return (dir / name).string(); }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, BuildKofnMajorityRow) {
    const Outcome r = run({"build-kofn", "--n", "5", "--k", "3", "--out", path("b.bag.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const Bag bag = deserialize_bag(read_file(path("b.bag.json")));
    for (int i = 1; i <= 5; ++i) EXPECT_TRUE(bag.tree(i).structurally_equal(brute::var(i)));
    EXPECT_NE(r.out.find("max_tree_size=3"), std::string::npos);
    EXPECT_NE(r.out.find("bound=n^(|m-k|+1)=5"), std::string::npos);
}

TEST_F(Cli, BuildKofnRejectsBadThreshold) {
    const Outcome r = run({"build-kofn", "--n", "5", "--k", "6", "--out", path("b.bag.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(path("b.bag.json")));
    EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, BuildKofnThenVerify) {
    ASSERT_EQ(run({"build-kofn", "--n", "9", "--k", "7", "--out", path("b.bag.json")}).code, 0);
    const Outcome ok = run({"verify", "--bag", path("b.bag.json"), "--oracle", "kofn:7"});
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "ok\n");
    const Outcome bad = run({"verify", "--bag", path("b.bag.json"), "--oracle", "kofn:6"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.out.find("counterexample"), std::string::npos);
    ASSERT_EQ(run({"build-kofn", "--n", "9", "--k", "7", "--naive", "--out", path("n.bag.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--bag", path("n.bag.json"), "--oracle", "bag:" + path("b.bag.json")}).code, 0);
}

TEST_F(Cli, VerifyFirstCounterexample) {
    ASSERT_EQ(run({"build-kofn", "--n", "3", "--k", "2", "--out", path("m.bag.json")}).code, 0);
    const Outcome r = run({"verify", "--bag", path("m.bag.json"), "--oracle", "kofn:1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(r.out, "counterexample x=(1,0,0) expected=1 actual=0\n");
}

TEST_F(Cli, BuildMajority) {
    ASSERT_EQ(run({"build-majority", "--n", "5", "--c", "1", "--out", path("m.bag.json")}).code, 0);
    EXPECT_EQ(deserialize_bag(read_file(path("m.bag.json"))).tree_count(), 3U);
    EXPECT_EQ(run({"build-majority", "--n", "5", "--c", "2", "--out", path("x.bag.json")}).code, 2);
    ASSERT_EQ(run({"build-majority", "--n", "11", "--c", "2", "--out", path("m11.bag.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--bag", path("m11.bag.json"), "--oracle", "maj"}).code, 0);
}

TEST_F(Cli, ReduceWritesBagAndReport) {
    ASSERT_EQ(run({"build-kofn", "--n", "9", "--k", "5", "--out", path("s.bag.json")}).code, 0);
    const Outcome r = run({"reduce", "--bag", path("s.bag.json"), "--K", "3", "--out", path("r.bag.json"), "--report",
                       path("r.report.json"), "--identity-perm"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("error=1/256 bound=1/8"), std::string::npos) << r.out;
    const auto report = nlohmann::json::parse(read_file(path("r.report.json")));
    EXPECT_EQ(report["steps"][0]["j0_minus"], (std::vector<int>{3, 4, 5}));
    EXPECT_EQ(report["steps"][0]["rows"]["t1t2"][0]["constant"], 1);
    EXPECT_EQ(report["steps"][0]["rows"]["not_t1_not_t2"][2]["constant"], 0);
    EXPECT_EQ(deserialize_bag(read_file(path("r.bag.json"))).tree_count(), 7U);

    const Outcome diff = run({"verify", "--bag", path("r.bag.json"), "--oracle", "bag:" + path("s.bag.json"), "--dist",
                          path("u.dist.json")});
    EXPECT_EQ(diff.code, 2);  // distribution file does not exist yet
    ASSERT_EQ(run({"gen-dist", "--uniform", "--l", "9", "--out", path("u.dist.json")}).code, 0);
    const Outcome weighted = run({"verify", "--bag", path("r.bag.json"), "--oracle", "bag:" + path("s.bag.json"),
                              "--dist", path("u.dist.json")});
    EXPECT_EQ(weighted.code, 1);
    EXPECT_EQ(weighted.out, "disagreement weight 1/256\n");
}

TEST_F(Cli, ReduceRejectsTooFewTrees) {
    ASSERT_EQ(run({"build-kofn", "--n", "3", "--k", "2", "--out", path("t.bag.json")}).code, 0);
    EXPECT_EQ(run({"reduce", "--bag", path("t.bag.json"), "--K", "1"}).code, 2);
    ASSERT_EQ(run({"build-kofn", "--n", "7", "--k", "4", "--out", path("s.bag.json")}).code, 0);
    EXPECT_EQ(run({"reduce", "--bag", path("s.bag.json"), "--K", "1", "--c", "3"}).code, 2);
    const Outcome r = run({"reduce", "--bag", path("s.bag.json"), "--K", "2", "--c", "2"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("iteration 2"), std::string::npos) << r.err;
}

TEST_F(Cli, ReduceRandomCorpusWithinBound) {
    for (int seed = 1; seed <= 5; ++seed) {
        ASSERT_EQ(run({"gen-bag", "--seed", std::to_string(seed), "--trees", "11", "--l", "8", "--out",
                       path("g.bag.json")})
                      .code,
                  0);
        ASSERT_EQ(run({"gen-dist", "--seed", std::to_string(seed), "--l", "8", "--out", path("g.dist.json")}).code, 0);
        const Outcome r = run({"reduce", "--bag", path("g.bag.json"), "--dist", path("g.dist.json"), "--K", "2", "--c",
                           "2", "--report", path("g.report.json")});
        EXPECT_EQ(r.code, 0) << r.out << r.err;
        EXPECT_NE(r.out.find("bound=1/2"), std::string::npos);
    }
}

TEST_F(Cli, GeneratorsNeedSeedAndAreDeterministic) {
    EXPECT_EQ(run({"gen-bag", "--out", path("a.bag.json")}).code, 2);
    EXPECT_EQ(run({"gen-dist", "--out", path("a.dist.json")}).code, 2);
    ASSERT_EQ(run({"gen-bag", "--seed", "9", "--out", path("a.bag.json")}).code, 0);
    ASSERT_EQ(run({"gen-bag", "--seed", "9", "--out", path("b.bag.json")}).code, 0);
    EXPECT_EQ(read_file(path("a.bag.json")), read_file(path("b.bag.json")));
    EXPECT_EQ(run({"gen-bag", "--seed", "9", "--trees", "4", "--out", path("c.bag.json")}).code, 2);
}

TEST_F(Cli, SweepEmptyRangeIsHeaderOnly) {
    const Outcome r = run({"sweep", "--mode", "kofn", "--n-min", "7", "--n-max", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, std::string(cli::kSweepHeader) + "\n");
}

TEST_F(Cli, SweepKofnAndMajorityToFile) {
    ASSERT_EQ(run({"sweep", "--mode", "kofn", "--n-min", "3", "--n-max", "7", "--naive", "--csv", path("k.csv")}).code,
              0);
    const std::string csv = read_file(path("k.csv"));
    std::istringstream lines(csv);
    std::string line;
    int rows = 0;
    std::getline(lines, line);
    EXPECT_EQ(line, cli::kSweepHeader);
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_NE(line.find(",true,0/1,"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 2 * (3 + 5 + 7));
    const Outcome m = run({"sweep", "--mode", "majority", "--n-min", "5", "--n-max", "9"});
    EXPECT_EQ(m.code, 0);
    EXPECT_NE(m.out.find("majority,reduced,9,,3,"), std::string::npos);
}

TEST_F(Cli, SweepLossyNeedsSeed) {
    EXPECT_EQ(run({"sweep", "--mode", "lossy"}).code, 2);
    const Outcome r = run({"sweep", "--mode", "lossy", "--seed", "5", "--count", "4", "--K", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 5);
    EXPECT_EQ(r.out, run({"sweep", "--mode", "lossy", "--seed", "5", "--count", "4", "--K", "2"}).out);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"build-kofn", "--n", "five", "--k", "3", "--out", path("x")}).code, 2);
    EXPECT_EQ(run({"sweep", "--mode", "spiral"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
    std::ofstream(path("bad.bag.json")) << R"({"n_vars":2,"trees":[{"leaf":1},{"leaf":0}]})";
    const Outcome r = run({"verify", "--bag", path("bad.bag.json"), "--oracle", "maj"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("odd cardinality"), std::string::npos);
    ASSERT_EQ(run({"build-kofn", "--n", "5", "--k", "3", "--out", path("b.bag.json")}).code, 0);
    EXPECT_EQ(run({"verify", "--bag", path("b.bag.json"), "--oracle", "kofn:x"}).code, 2);
    EXPECT_EQ(run({"verify", "--bag", path("b.bag.json"), "--oracle", "median"}).code, 2);
}

TEST_F(Cli, EnumerationCaps) {
    std::ofstream(path("wide.bag.json")) << R"({"n_vars":21,"trees":[{"leaf":1},{"leaf":1},{"leaf":1}]})";
    const Outcome wide = run({"verify", "--bag", path("wide.bag.json"), "--oracle", "kofn:0"});
    EXPECT_EQ(wide.code, 0);
    EXPECT_NE(wide.err.find("warning"), std::string::npos);
    ::setenv("FORESTSMITH_MAX_L", "4", 1);
    ASSERT_EQ(run({"build-kofn", "--n", "5", "--k", "3", "--out", path("b.bag.json")}).code, 0);
    const Outcome capped = run({"verify", "--bag", path("b.bag.json"), "--oracle", "maj"});
    ::unsetenv("FORESTSMITH_MAX_L");
    EXPECT_EQ(capped.code, 2);
}
