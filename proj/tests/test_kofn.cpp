#include "forestsmith/errors.hpp"
#include "forestsmith/kofn.hpp"
#include "forestsmith/truth_table.hpp"
#include "support/brute.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

using namespace forestsmith;
using brute::Bits;
using brute::first_mismatch;
using brute::var;

namespace {

VarWindow window(int n) { return {n, 0}; }

std::vector<BigCount> sorted_sizes(const Bag& bag) {
    std::vector<BigCount> sizes;
    for (const auto& t : bag.trees()) sizes.push_back(t.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
}

}  // namespace

TEST(BuildL, SmallExamples) {
    // L_1(3) = x1 x2 !x3
    const auto l13 = [](const Bits& b) { return b[1] && b[2] && !b[3]; };
    // L_2(3) = x1 x2 !x3 | !x1 x2 !x3 | x1 !x2 !x3
    const auto l23 = [](const Bits& b) {
        return (b[1] && b[2] && !b[3]) || (!b[1] && b[2] && !b[3]) || (b[1] && !b[2] && !b[3]);
    };
    for (int n : {3, 5, 7}) {
        EXPECT_EQ(first_mismatch(build_L(1, 3, window(n)), l13, n), -1) << n;
        EXPECT_EQ(first_mismatch(build_L(2, 3, window(n)), l23, n), -1) << n;
    }
    EXPECT_EQ(first_mismatch(build_L(1, 1, window(5)), [](const Bits& b) { return !b[1]; }, 5), -1);
}

TEST(BuildI, SmallExamples) {
    const auto i12 = [](const Bits& b) {
        return (b[2] && b[3]) || (b[2] && !b[3] && b[4]) || (b[2] && !b[3] && !b[4] && b[5]);
    };
    const auto i22 = [](const Bits& b) {
        return (b[2] && b[3] && b[4]) || (b[2] && b[3] && !b[4] && b[5]) || (b[2] && !b[3] && b[4] && b[5]);
    };
    EXPECT_EQ(first_mismatch(build_I(1, 2, window(5)), i12, 5), -1);
    EXPECT_EQ(first_mismatch(build_I(2, 2, window(5)), i22, 5), -1);
}

TEST(BuildI, NoRoomIsLeafZero) {
    EXPECT_TRUE(build_I(2, 4, window(5)).structurally_equal(Tree::leaf(false)));
    EXPECT_TRUE(build_I(1, 5, window(5)).structurally_equal(Tree::leaf(false)));
}

TEST(BuildLI, MatchSetBuilderDefinitions) {
    for (int n = 1; n <= 13; n += 2) {
        for (int ell = 1; ell <= n; ++ell) {
            for (int i = 1; i <= n; ++i) {
                const auto l_def = [ell, i](const Bits& b) {
                    int zeros = 0;
                    for (int j = 1; j < i; ++j) zeros += !b[static_cast<std::size_t>(j)];
                    return !b[static_cast<std::size_t>(i)] && zeros <= ell - 1;
                };
                const auto i_def = [ell, i, n](const Bits& b) {
                    int ones = 0;
                    for (int j = i + 1; j <= n; ++j) ones += b[static_cast<std::size_t>(j)];
                    return b[static_cast<std::size_t>(i)] && ones >= ell;
                };
                const auto x_or_l = [&](const Bits& b) { return b[static_cast<std::size_t>(i)] || l_def(b); };
                ASSERT_EQ(first_mismatch(build_L(ell, i, window(n)), l_def, n), -1) << n << ' ' << ell << ' ' << i;
                ASSERT_EQ(first_mismatch(build_I(ell, i, window(n)), i_def, n), -1) << n << ' ' << ell << ' ' << i;
                ASSERT_EQ(first_mismatch(build_x_or_L(ell, i, window(n)), x_or_l, n), -1);
            }
        }
    }
}

TEST(BuildLI, BranchInIncreasingOrder) {
    // Along every root-to-leaf path the queried indices strictly increase.
    std::function<bool(const Tree&, int)> increasing = [&](const Tree& t, int last) {
        if (t.is_leaf()) return true;
        return t.var().value > last && increasing(t.lo(), t.var().value) && increasing(t.hi(), t.var().value);
    };
    for (int ell = 1; ell <= 4; ++ell)
        for (int i = 1; i <= 9; ++i) {
            EXPECT_TRUE(increasing(build_L(ell, i, window(9)), 0));
            EXPECT_TRUE(increasing(build_I(ell, i, window(9)), 0));
        }
}

TEST(BuildLI, WindowOffsetShiftsVariables) {
    const Tree shifted = build_L(2, 3, VarWindow{5, 4});
    EXPECT_EQ(shifted.max_var(), 7);
    for (std::uint64_t x = 0; x < 512; ++x) EXPECT_EQ(shifted.eval_index(x), build_L(2, 3, window(5)).eval_index(x >> 4));
}

TEST(BuildLI, BadArgumentsRejected) {
    EXPECT_THROW(build_L(0, 1, window(5)), PreconditionError);
    EXPECT_THROW(build_L(1, 6, window(5)), PreconditionError);
    EXPECT_THROW(build_I(0, 1, window(5)), PreconditionError);
    EXPECT_THROW(build_I(1, 0, window(5)), PreconditionError);
}

TEST(ChooseBag, MajorityRowIsSingleVariables) {
    const Bag bag = build_choose_bag({.n = 5, .k = 3});
    ASSERT_EQ(bag.tree_count(), 5U);
    for (int i = 1; i <= 5; ++i) EXPECT_TRUE(bag.tree(i).structurally_equal(var(i)));
    EXPECT_EQ(first_mismatch(bag, [](const Bits& b) { return brute::ones(b) >= 3; }), -1);
}

TEST(ChooseBag, AllOnesRow) {
    const Bag bag = build_choose_bag({.n = 5, .k = 5});
    for (int i = 1; i <= 3; ++i) EXPECT_TRUE(bag.tree(i).structurally_equal(build_I(2, i, window(5))));
    EXPECT_TRUE(bag.tree(4).structurally_equal(Tree::leaf(false)));
    EXPECT_TRUE(bag.tree(5).structurally_equal(Tree::leaf(false)));
    for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(bag.eval_index(x), x == 31);
}

TEST(ChooseBag, OrRow) {
    const Bag bag = build_choose_bag({.n = 5, .k = 1});
    EXPECT_TRUE(bag.tree(1).structurally_equal(Tree::leaf(true)));
    EXPECT_TRUE(bag.tree(2).structurally_equal(Tree::leaf(true)));
    for (int i = 3; i <= 5; ++i) EXPECT_TRUE(bag.tree(i).structurally_equal(build_x_or_L(2, i, window(5))));
    for (std::uint64_t x = 0; x < 32; ++x) EXPECT_EQ(bag.eval_index(x), x != 0);
}

TEST(ChooseBag, ThresholdOnAllInputs) {
    for (int n = 3; n <= 13; n += 2)
        for (int k = 1; k <= n; ++k) {
            const auto oracle = [k](const Bits& b) { return brute::ones(b) >= k; };
            ASSERT_EQ(first_mismatch(build_choose_bag({.n = n, .k = k}), oracle), -1) << n << ' ' << k;
            ASSERT_EQ(first_mismatch(build_choose_bag_naive({.n = n, .k = k}), oracle), -1) << n << ' ' << k;
        }
}

TEST(ChooseBag, OffsetWindowAndDeclaredVars) {
    const Bag bag = build_choose_bag({.n = 5, .k = 2, .offset = 3, .n_vars = 9});
    EXPECT_EQ(bag.n_vars(), 9);
    for (std::uint64_t x = 0; x < 512; ++x) EXPECT_EQ(bag.eval_index(x), std::popcount((x >> 3) & 31U) >= 2);
}

TEST(ChooseBag, InvalidSpecRejected) {
    EXPECT_THROW(build_choose_bag({.n = 4, .k = 2}), PreconditionError);
    EXPECT_THROW(build_choose_bag({.n = 1, .k = 1}), PreconditionError);
    EXPECT_THROW(build_choose_bag({.n = 5, .k = 0}), PreconditionError);
    EXPECT_THROW(build_choose_bag({.n = 5, .k = 6}), PreconditionError);
    EXPECT_THROW(build_choose_bag({.n = 5, .k = 3, .offset = 1, .n_vars = 5}), PreconditionError);
    EXPECT_THROW(build_choose_bag_naive({.n = 5, .k = 6}), PreconditionError);
}

TEST(NaiveBag, Structure) {
    const Bag bag = build_choose_bag_naive({.n = 3, .k = 2});
    EXPECT_TRUE(bag.tree(2).structurally_equal(Tree::leaf(true)));
    EXPECT_TRUE(bag.tree(3).structurally_equal(Tree::leaf(false)));
    EXPECT_EQ(first_mismatch(bag.tree(1), [](const Bits& b) { return brute::ones(b) >= 2; }, 3), -1);
    for (int n : {3, 5, 7, 9}) {
        const Bag or_bag = build_choose_bag_naive({.n = n, .k = 1});
        EXPECT_EQ(first_mismatch(or_bag.tree(1), [](const Bits& b) { return brute::ones(b) >= 1; }, n), -1);
    }
}

TEST(NaiveBag, LargerThanChooseBagNearMajority) {
    // Far from k = m a single threshold tree is the smaller option; the
    // choose bag wins around the middle.
    for (int k = 4; k <= 6; ++k) {
        const auto choose = build_choose_bag({.n = 9, .k = k}).max_tree_size();
        const auto naive = build_choose_bag_naive({.n = 9, .k = k}).max_tree_size();
        EXPECT_GT(naive, choose) << k;
    }
}

TEST(ChooseBag, SizeRatioDoesNotGrow) {
    // Ratio max_size / n^(|m-k|+1), grouped by k - m, compared with the first n.
    std::map<int, Rational> first;
    for (int n = 3; n <= 13; n += 2) {
        const int m = (n + 1) / 2;
        for (int k = 1; k <= n; ++k) {
            const Rational ratio(build_choose_bag({.n = n, .k = k}).max_tree_size(),
                                 power(n, static_cast<unsigned>(std::abs(m - k) + 1)));
            auto [it, inserted] = first.emplace(k - m, ratio);
            EXPECT_LE(ratio, 2 * it->second) << n << ' ' << k;
        }
    }
}

TEST(ChooseBag, NotTheDualOfTheMirrorRow) {
    bool differs = false;
    for (int n = 5; n <= 13; n += 2) {
        const int m = (n + 1) / 2;
        for (int ell = 1; ell < m; ++ell)
            differs = differs || sorted_sizes(build_choose_bag({.n = n, .k = m + ell})) !=
                                     sorted_sizes(build_choose_bag({.n = n, .k = m - ell}));
    }
    EXPECT_TRUE(differs);
}

TEST(ThresholdTree, ClampsAndDecides) {
    EXPECT_TRUE(build_threshold_tree(0, window(4)).structurally_equal(Tree::leaf(true)));
    EXPECT_TRUE(build_threshold_tree(5, window(4)).structurally_equal(Tree::leaf(false)));
    for (int k = 1; k <= 7; ++k)
        EXPECT_EQ(first_mismatch(build_threshold_tree(k, window(7)), [k](const Bits& b) { return brute::ones(b) >= k; }, 7),
                  -1);
}
