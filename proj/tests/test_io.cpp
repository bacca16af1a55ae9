#include "forestsmith/errors.hpp"
#include "forestsmith/io.hpp"
#include "forestsmith/random.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>

using namespace forestsmith;
using brute::var;

namespace {

std::string schema_message(const std::string& text) {
    try {
        deserialize_bag(text);
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

std::string dist_message(const std::string& text) {
    try {
        deserialize_distribution(text);
    } catch (const SchemaError& e) {
        return e.what();
    }
    return "";
}

bool read_once(const Tree& t, std::set<int> seen) {
    if (t.is_leaf()) return true;
    if (!seen.insert(t.var().value).second) return false;
    return read_once(t.lo(), seen) && read_once(t.hi(), seen);
}

}  // namespace

TEST(Serialize, Leaf) { EXPECT_EQ(serialize_tree(Tree::leaf(true)), R"({"leaf":1})"); }

TEST(Serialize, NodeKeysSorted) {
    EXPECT_EQ(serialize_tree(var(2)), R"({"hi":{"leaf":1},"lo":{"leaf":0},"var":2})");
}

TEST(Serialize, BagRoundTrip) {
    const Bag bag({var(1), var(2), var(3)}, 3);
    const std::string text = serialize_bag(bag);
    EXPECT_EQ(text,
              R"({"n_vars":3,"trees":[{"hi":{"leaf":1},"lo":{"leaf":0},"var":1},)"
              R"({"hi":{"leaf":1},"lo":{"leaf":0},"var":2},{"hi":{"leaf":1},"lo":{"leaf":0},"var":3}]})");
    EXPECT_TRUE(deserialize_bag(text).structurally_equal(bag));
}

TEST(Serialize, MatchesJsonLibraryDump) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::string text = serialize_bag(random_bag(seed, 7, 6, 5));
        EXPECT_EQ(nlohmann::json::parse(text).dump(), text);
    }
    const std::string dist = serialize_distribution(random_distribution(3, 4, 100));
    EXPECT_EQ(nlohmann::json::parse(dist).dump(), dist);
}

TEST(Deserialize, EvenTreeCountRejected) {
    const std::string msg = schema_message(R"({"n_vars":1,"trees":[{"leaf":0},{"leaf":1}]})");
    EXPECT_NE(msg.find("odd cardinality"), std::string::npos) << msg;
    EXPECT_EQ(msg.rfind("$.trees", 0), 0U) << msg;
}

TEST(Deserialize, PathPreciseMessages) {
    EXPECT_EQ(schema_message(R"({"n_vars":2,"trees":[{"leaf":0},{"hi":{"leaf":1},"lo":{"hi":{"leaf":1},"lo":{"leaf":0},"var":3},"var":1},{"leaf":1}]})")
                  .rfind("$.trees[1].lo.var:", 0),
              0U);
    EXPECT_EQ(schema_message(R"({"n_vars":2,"trees":[{"leaf":2}]})").rfind("$.trees[0].leaf:", 0), 0U);
    EXPECT_EQ(schema_message(R"({"n_vars":2,"trees":[{"leaf":1,"var":1}]})").rfind("$.trees[0]:", 0), 0U);
    EXPECT_EQ(schema_message(R"({"n_vars":2,"trees":[{"leaf":1}],"extra":0})").rfind("$:", 0), 0U);
    EXPECT_EQ(schema_message(R"({"trees":[{"leaf":1}]})").rfind("$:", 0), 0U);
    EXPECT_EQ(schema_message(R"({"n_vars":2,"trees":{}})").rfind("$.trees:", 0), 0U);
    EXPECT_EQ(schema_message(R"({"n_vars":"2","trees":[]})").rfind("$.n_vars:", 0), 0U);
    EXPECT_NE(schema_message("{not json").find("malformed JSON"), std::string::npos);
}

TEST(Distribution, RoundTripBothForms) {
    const Distribution u = Distribution::uniform(3);
    EXPECT_EQ(serialize_distribution(u), R"({"l":3,"type":"uniform"})");
    EXPECT_TRUE(deserialize_distribution(serialize_distribution(u)) == u);
    const Distribution t = Distribution::table(2, {0, 3, 1, 0});
    EXPECT_EQ(serialize_distribution(t), R"({"l":2,"type":"table","weights":[0,3,1,0]})");
    EXPECT_TRUE(deserialize_distribution(serialize_distribution(t)) == t);
}

TEST(Distribution, UniformEqualsAllOnesTable) {
    EXPECT_TRUE(Distribution::uniform(3) == Distribution::table(3, std::vector<std::uint64_t>(8, 1)));
    EXPECT_FALSE(Distribution::uniform(3) == Distribution::table(3, std::vector<std::uint64_t>(8, 2)));
    EXPECT_FALSE(Distribution::uniform(3) == Distribution::uniform(2));
}

TEST(Distribution, InvalidDocumentsRejected) {
    EXPECT_EQ(dist_message(R"({"l":2,"type":"table","weights":[0,0,0,0]})").rfind("$:", 0), 0U);
    EXPECT_EQ(dist_message(R"({"l":2,"type":"table","weights":[1,2,3]})").rfind("$.weights:", 0), 0U);
    EXPECT_EQ(dist_message(R"({"l":2,"type":"table","weights":[1,-2,3,4]})").rfind("$.weights[1]:", 0), 0U);
    EXPECT_EQ(dist_message(R"({"l":2,"type":"gauss"})").rfind("$.type:", 0), 0U);
    EXPECT_EQ(dist_message(R"({"l":2,"type":"uniform","weights":[]})").rfind("$:", 0), 0U);
    EXPECT_EQ(dist_message(R"({"l":30,"type":"uniform"})").rfind("$.l:", 0), 0U);
}

TEST(Distribution, TableValidation) {
    EXPECT_THROW(Distribution::table(2, {1, 2, 3}), PreconditionError);
    EXPECT_THROW(Distribution::table(2, {0, 0, 0, 0}), PreconditionError);
    EXPECT_THROW(Distribution::table(1, {UINT64_MAX, 1}), PreconditionError);
    const auto zeroed = Distribution::table(2, {1, 2, 3, 4}).with_zeroed({1, 3});
    EXPECT_EQ(zeroed.weights(), (std::vector<std::uint64_t>{1, 0, 3, 0}));
    EXPECT_EQ(zeroed.total(), 4U);
    EXPECT_THROW(Distribution::uniform(1).with_zeroed({0, 1}), PreconditionError);
}

TEST(RandomBag, Deterministic) {
    EXPECT_EQ(serialize_bag(random_bag(77, 9, 8, 4)), serialize_bag(random_bag(77, 9, 8, 4)));
    EXPECT_NE(serialize_bag(random_bag(77, 9, 8, 4)), serialize_bag(random_bag(78, 9, 8, 4)));
}

TEST(RandomBag, DepthZeroGivesLeaves) {
    const Bag bag = random_bag(5, 9, 8, 0);
    for (const auto& t : bag.trees()) EXPECT_TRUE(t.is_leaf());
}

TEST(RandomBag, CorpusValidatesAndRoundTrips) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const Bag bag = random_bag(seed, 9, 8, 4);
        const std::string text = serialize_bag(bag);
        const Bag back = deserialize_bag(text);
        EXPECT_TRUE(back.structurally_equal(bag));
        EXPECT_EQ(serialize_bag(back), text);
        for (const auto& t : bag.trees()) {
            EXPECT_LE(t.depth(), 4);
            EXPECT_TRUE(read_once(t, {}));
        }
    }
}

TEST(RandomBag, InvalidArgumentsRejected) {
    EXPECT_THROW(random_bag(1, 8, 8, 4), PreconditionError);
    EXPECT_THROW(random_bag(1, 9, 3, 4), PreconditionError);
    EXPECT_THROW(random_bag(1, 9, 3, -1), PreconditionError);
}

TEST(RandomDistribution, DeterministicAndPositive) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Distribution a = random_distribution(seed, 6, 3);
        EXPECT_TRUE(a == random_distribution(seed, 6, 3));
        EXPECT_GT(a.total(), 0U);
        for (auto w : a.weights()) EXPECT_LE(w, 3U);
    }
    // max_weight 1 over l = 0 still never returns an all-zero table.
    for (std::uint64_t seed = 0; seed < 50; ++seed) EXPECT_EQ(random_distribution(seed, 0, 1).total(), 1U);
    EXPECT_THROW(random_distribution(1, 4, 0), PreconditionError);
}

TEST(RandomDistribution, RoundTrip) {
    const Distribution d = random_distribution(9, 8, 16);
    const std::string text = serialize_distribution(d);
    EXPECT_EQ(serialize_distribution(deserialize_distribution(text)), text);
}

TEST(Writers, SerializationCap) {
    Tree t = var(1);
    for (int i = 2; i <= 30; ++i) t = Tree::node(VarIndex{i}, t, t);
    EXPECT_THROW(serialize_bag(Bag({t, t, t}, 30)), CapacityError);
    EXPECT_THROW(serialize_tree(t), CapacityError);
}

TEST(Files, AtomicWriteAndRead) {
    const auto dir = brute::scratch_dir("io");
    const auto path = dir / "bag.json";
    const Bag bag = random_bag(4, 5, 6, 3);
    write_file_atomic(path, [&](std::ostream& os) { write_bag(os, bag); });
    EXPECT_EQ(read_file(path), serialize_bag(bag));
    EXPECT_FALSE(std::filesystem::exists(dir / "bag.json.tmp"));
    write_file_atomic(path, "replaced");
    EXPECT_EQ(read_file(path), "replaced");
    EXPECT_THROW(read_file(dir / "missing.json"), std::runtime_error);
}

TEST(Report, ConstructionRowsAndFractions) {
    std::vector<Tree> trees;
    for (int i = 1; i <= 9; ++i) trees.push_back(var(i));
    const IteratedResult r =
        reduce_c_times(Bag(trees, 9), 3, 1, Distribution::uniform(9), {.identity_permutations = true});
    const nlohmann::json doc = report_to_json(r.report);
    EXPECT_EQ(doc["bound"], "1/8");
    EXPECT_EQ(doc["cumulative_error"], "1/256");
    const auto& step = doc["steps"][0];
    EXPECT_EQ(step["iteration"], 1);
    EXPECT_EQ(step["rows"]["t1t2"][0]["constant"], 1);
    EXPECT_EQ(step["rows"]["not_t1_not_t2"][2]["constant"], 0);
    EXPECT_TRUE(step["rows"]["mixed"][0]["constant"].is_null());
    EXPECT_EQ(step["rows"]["mixed"][6]["expr"], "t9");
    EXPECT_EQ(step["weights"]["total"], 512);
    EXPECT_EQ(step["weights"]["w11"], 128);
}
