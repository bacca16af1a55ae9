#include "forestsmith/kofn.hpp"

#include "forestsmith/errors.hpp"

#include <map>
#include <string>
#include <utility>

namespace forestsmith {

namespace {

void check_position(const char* what, int ell, int i, VarWindow window) {
    if (ell < 1)
        throw PreconditionError(std::string(what) + ": ell = " + std::to_string(ell) + " must be >= 1");
    if (window.width < 1 || window.offset < 0)
        throw PreconditionError(std::string(what) + ": empty or negative window");
    if (i < 1 || i > window.width)
        throw PreconditionError(std::string(what) + ": position " + std::to_string(i) + " outside [1, " +
                                std::to_string(window.width) + "]");
}

// Branches on window positions first..last in order, counting zeros; accepts
// at last+1 while at most `budget` zeros were seen.
Tree zero_budget_tree(int first, int last, int budget, VarWindow window) {
    std::map<std::pair<int, int>, Tree> memo;
    auto build = [&](auto&& self, int pos, int zeros) -> Tree {
        if (pos > last) return Tree::leaf(true);
        if (auto it = memo.find({pos, zeros}); it != memo.end()) return it->second;
        Tree lo = zeros + 1 > budget ? Tree::leaf(false) : self(self, pos + 1, zeros + 1);
        Tree hi = self(self, pos + 1, zeros);
        Tree t = Tree::node(window.at(pos), std::move(lo), std::move(hi));
        memo.emplace(std::pair{pos, zeros}, t);
        return t;
    };
    return build(build, first, 0);
}

// Branches on window positions first..width in order, accepting as soon as
// `needed` ones are seen and rejecting once they are out of reach.
Tree ones_count_tree(int first, int needed, VarWindow window) {
    std::map<std::pair<int, int>, Tree> memo;
    auto build = [&](auto&& self, int pos, int ones) -> Tree {
        if (ones >= needed) return Tree::leaf(true);
        if (window.width - pos + 1 < needed - ones) return Tree::leaf(false);
        if (auto it = memo.find({pos, ones}); it != memo.end()) return it->second;
        Tree lo = self(self, pos + 1, ones);
        Tree hi = self(self, pos + 1, ones + 1);
        Tree t = Tree::node(window.at(pos), std::move(lo), std::move(hi));
        memo.emplace(std::pair{pos, ones}, t);
        return t;
    };
    return build(build, first, 0);
}

}  // namespace

void validate(const ChooseSpec& spec) {
    if (spec.n < 3 || spec.n % 2 == 0)
        throw PreconditionError("choose bag: n = " + std::to_string(spec.n) + " must be odd and >= 3");
    if (spec.k < 1 || spec.k > spec.n)
        throw PreconditionError("choose bag: k = " + std::to_string(spec.k) + " outside [1, " +
                                std::to_string(spec.n) + "]");
    if (spec.offset < 0) throw PreconditionError("choose bag: negative variable offset");
    if (spec.n_vars < 0 || spec.offset + spec.n > spec.declared_vars())
        throw PreconditionError("choose bag: window x_" + std::to_string(spec.offset + 1) + "..x_" +
                                std::to_string(spec.offset + spec.n) + " exceeds " +
                                std::to_string(spec.declared_vars()) + " declared variables");
}

Tree build_L(int ell, int i, VarWindow window) {
    check_position("build_L", ell, i, window);
    std::map<std::pair<int, int>, Tree> memo;
    auto build = [&](auto&& self, int pos, int zeros) -> Tree {
        if (pos == i) return Tree::node(window.at(i), Tree::leaf(true), Tree::leaf(false));
        if (auto it = memo.find({pos, zeros}); it != memo.end()) return it->second;
        Tree lo = zeros + 1 > ell - 1 ? Tree::leaf(false) : self(self, pos + 1, zeros + 1);
        Tree hi = self(self, pos + 1, zeros);
        Tree t = Tree::node(window.at(pos), std::move(lo), std::move(hi));
        memo.emplace(std::pair{pos, zeros}, t);
        return t;
    };
    return build(build, 1, 0);
}

Tree build_I(int ell, int i, VarWindow window) {
    check_position("build_I", ell, i, window);
    if (i + ell > window.width) return Tree::leaf(false);
    return Tree::node(window.at(i), Tree::leaf(false), ones_count_tree(i + 1, ell, window));
}

Tree build_x_or_L(int ell, int i, VarWindow window) {
    check_position("build_x_or_L", ell, i, window);
    return Tree::node(window.at(i), zero_budget_tree(1, i - 1, ell - 1, window), Tree::leaf(true));
}

Tree build_threshold_tree(int k, VarWindow window) {
    if (k <= 0) return Tree::leaf(true);
    if (k > window.width) return Tree::leaf(false);
    return ones_count_tree(1, k, window);
}

Bag build_choose_bag(const ChooseSpec& spec) {
    validate(spec);
    const int m = spec.m();
    const VarWindow window = spec.window();
    std::vector<Tree> trees;
    trees.reserve(spec.n);
    if (spec.k == m) {
        for (int i = 1; i <= spec.n; ++i) trees.push_back(Tree::variable(window.at(i)));
    } else if (spec.k < m) {
        const int ell = m - spec.k;
        for (int i = 1; i <= spec.n; ++i)
            trees.push_back(i <= ell ? Tree::leaf(true) : build_x_or_L(ell, i, window));
    } else {
        const int ell = spec.k - m;
        for (int i = 1; i <= spec.n; ++i)
            trees.push_back(i <= spec.n - ell ? build_I(ell, i, window) : Tree::leaf(false));
    }
    return Bag(std::move(trees), spec.declared_vars());
}

Bag build_choose_bag_naive(const ChooseSpec& spec) {
    validate(spec);
    const int m = spec.m();
    std::vector<Tree> trees;
    trees.reserve(spec.n);
    trees.push_back(build_threshold_tree(spec.k, spec.window()));
    for (int i = 2; i <= spec.n; ++i) trees.push_back(Tree::leaf(i <= m));
    return Bag(std::move(trees), spec.declared_vars());
}

}  // namespace forestsmith
