#pragma once

#include "forestsmith/bag.hpp"
#include "forestsmith/tree.hpp"

namespace forestsmith {

/// The variables x_{offset+1}, ..., x_{offset+width} a threshold construction
/// works on. Positions inside the window are 1-based.
struct VarWindow {
    int width = 0;
    int offset = 0;

    VarIndex at(int position) const { return VarIndex{offset + position}; }
};

/// A k-out-of-n choose bag: n trees (n odd, n >= 3) over the window
/// x_{offset+1..offset+n} whose majority vote is 1 iff at least k of those
/// variables are 1.
struct ChooseSpec {
    int n = 0;
    int k = 0;
    int offset = 0;
    /// Declared variable count of the produced bag; 0 means offset + n.
    int n_vars = 0;

    int m() const noexcept { return (n + 1) / 2; }
    int declared_vars() const noexcept { return n_vars == 0 ? offset + n : n_vars; }
    VarWindow window() const noexcept { return {n, offset}; }
};

/// Throws PreconditionError unless n is odd and >= 3, 1 <= k <= n,
/// offset >= 0 and offset + n <= declared_vars().
void validate(const ChooseSpec& spec);

/// Accepts b iff b_i = 0 and at most ell-1 of b_1..b_{i-1} are 0, i.e. b_i is
/// among the ell leftmost zeros. Branches on the window in increasing order.
Tree build_L(int ell, int i, VarWindow window);

/// Accepts b iff b_i = 1 and at least ell of b_{i+1}..b_width are 1.
/// Branches on x_i, x_{i+1}, ... and accepts as soon as ell ones are seen.
Tree build_I(int ell, int i, VarWindow window);

/// x_i ∨ L_ell(i), rooted at x_i; the 0-branch tests the zero budget on
/// b_1..b_{i-1} directly instead of re-querying x_i.
Tree build_x_or_L(int ell, int i, VarWindow window);

/// Three-case construction:
///   k = m - ell: trees 1..ell are Leaf(1), tree i > ell is x_i ∨ L_ell(i);
///   k = m:       tree i is x_i;
///   k = m + ell: tree i <= 2m-ell-1 is I_ell(i), the rest are Leaf(0).
Bag build_choose_bag(const ChooseSpec& spec);

/// T_1 decides [#1 >= k] on its own, T_2..T_m are Leaf(1) and
/// T_{m+1}..T_n are Leaf(0).
Bag build_choose_bag_naive(const ChooseSpec& spec);

/// Single tree over the window deciding [#1 >= k]; accepts once k ones are
/// seen and rejects once k is unreachable. k <= 0 gives Leaf(1),
/// k > width gives Leaf(0).
Tree build_threshold_tree(int k, VarWindow window);

}  // namespace forestsmith
