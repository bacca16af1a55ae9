#include "forestsmith/random.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/truth_table.hpp"

#include <string>
#include <vector>

namespace forestsmith {

std::uint64_t CorpusRng::below(std::uint64_t bound) {
    // Rejection sampling on the raw stream; std distributions differ across
    // standard libraries.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t draw;
    do draw = engine_();
    while (draw >= limit);
    return draw % bound;
}

Tree random_tree(CorpusRng& rng, int l, int max_depth) {
    if (max_depth < 0 || max_depth > l)
        throw PreconditionError("random tree: max_depth = " + std::to_string(max_depth) + " outside [0, " +
                                std::to_string(l) + "]");
    std::vector<int> unused(l);
    for (int v = 0; v < l; ++v) unused[v] = v + 1;

    // The root always branches when allowed; deeper nodes stop with
    // probability 1/4 so tree shapes vary.
    auto build = [&](auto&& self, int depth) -> Tree {
        if (depth == max_depth || (depth > 0 && rng.below(4) == 0)) return Tree::leaf(rng.coin());
        const std::size_t pick = rng.below(unused.size() - depth);
        std::swap(unused[pick], unused[unused.size() - depth - 1]);
        const int var = unused[unused.size() - depth - 1];
        Tree lo = self(self, depth + 1);
        Tree hi = self(self, depth + 1);
        return Tree::node(VarIndex{var}, std::move(lo), std::move(hi));
    };
    return build(build, 0);
}

Bag random_bag(std::uint64_t seed, int n_trees, int l, int max_depth) {
    if (n_trees < 1 || n_trees % 2 == 0)
        throw PreconditionError("random bag: n_trees = " + std::to_string(n_trees) + " must be odd");
    if (l < 0 || l > kMaxInputBits) throw PreconditionError("random bag: l outside [0, 63]");
    CorpusRng rng(seed);
    std::vector<Tree> trees;
    trees.reserve(n_trees);
    for (int i = 0; i < n_trees; ++i) trees.push_back(random_tree(rng, l, max_depth));
    return Bag(std::move(trees), l);
}

Distribution random_distribution(std::uint64_t seed, int l, std::uint64_t max_weight) {
    if (max_weight == 0) throw PreconditionError("random distribution: max_weight must be positive");
    require_enumerable(l);
    const std::uint64_t count = std::uint64_t{1} << l;
    if (max_weight > ~std::uint64_t{0} / count)
        throw PreconditionError("random distribution: max_weight too large for a 64-bit total");
    CorpusRng rng(seed);
    std::vector<std::uint64_t> weights(count);
    for (;;) {
        bool any = false;
        for (auto& w : weights) {
            w = rng.below(max_weight + 1);
            any = any || w != 0;
        }
        if (any) break;
    }
    return Distribution::table(l, std::move(weights));
}

}  // namespace forestsmith
